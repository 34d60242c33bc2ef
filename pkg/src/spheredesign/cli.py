"""Command line surface.

Every subcommand is deterministic given --seed: all randomness flows through
named substreams, so reruns and different --threads settings produce
byte-identical primary output.  CSV output is RFC-4180-style (header row,
CRLF, 17 significant digits); JSON output has sorted keys.

Exit codes: 0 success, 1 internal error, 2 argument error, 3 data error
(parse or verification failure).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from ._rng import substream
from .approx import DiscreteFrame, hyperinterpolate, l2_error, residual_at_nodes
from .designs import (BUNDLED_DESIGNS, SphericalDesign, builtin_design,
                      load_bundled, parse_design_file, reference_rule,
                      verify_design)
from .errors import ConditionError, DataError, SphereDesignError
from .harmonics import (CoefficientVector, degree_offsets, dim_poly_space,
                        eval_basis)
from .lecam import (assemble_rate_study, besov_family, besov_stage,
                    bound_from_l2_error, bound_from_node_residuals,
                    needlet_bound_from_l2_error,
                    needlet_bound_from_node_residuals, sobolev_family,
                    sobolev_stage)
from .needlets import (NeedletCoefficients, empirical_needlet_approx,
                       filter_h, needlet_coeffs, needlet_reconstruct,
                       standard_system, window_low_pass)
from .experiments import (simulate_regression, simulate_white_noise,
                          to_regression, to_white_noise)
from .spaces import make_sobolev_function

_BUILTIN_NAMES = ("tetrahedron", "cube", "octahedron", "icosahedron",
                  "dodecahedron")


class UsageError(Exception):
    """Bad arguments detected past argparse."""


# ---------------------------------------------------------------------------
# formatting and plumbing


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.17g}"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        # strict JSON has no NaN/Inf; degenerate slopes come out as null
        return v if math.isfinite(v) else None
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    return obj


def _json_text(doc) -> str:
    return json.dumps(_jsonable(doc), sort_keys=True, indent=2,
                      ensure_ascii=False, allow_nan=False) + "\n"


def _write_text(out, text: str):
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="")
    else:
        sys.stdout.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) if isinstance(v, (int, float, np.floating,
                                              np.integer)) else str(v)
                    for v in row])
    return buf.getvalue()


def _emit(args, doc, csv_header=None, csv_rows=None, bulky=()):
    """Write the primary payload in the chosen format.

    CSV mode writes the table to --out (or stdout) and echoes the JSON
    summary, stripped of bulky arrays, to stdout (stderr when the table
    itself occupies stdout)."""
    if args.format == "json":
        _write_text(args.out, _json_text(doc))
        return
    if csv_header is None:
        raise UsageError(f"{doc.get('command')} has no CSV form; "
                         f"use --format json")
    _write_text(args.out, _csv_text(csv_header, csv_rows))
    summary = {k: v for k, v in doc.items() if k not in bulky}
    stream = sys.stdout if args.out else sys.stderr
    stream.write(_json_text(summary))


def _parallel_map(fn, items, threads: int):
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# shared argument handling


def _resolve(args, *, need_strength: bool = False) -> SphericalDesign:
    name = getattr(args, "design", None)
    if name is None:
        raise UsageError("--design is required")
    if name in BUNDLED_DESIGNS:
        return load_bundled(name)
    if name in _BUILTIN_NAMES or name.startswith("polygon("):
        return builtin_design(name)
    path = Path(name)
    if not path.exists():
        raise DataError(f"design {name!r}: not a bundled or builtin name, "
                        f"and no such file")
    declared = getattr(args, "design_strength", None)
    if declared is None:
        if need_strength:
            raise UsageError("a file design needs --design-strength")
        declared = 0
    pts = parse_design_file(path, args.dim)
    return SphericalDesign(pts, declared)


def parse_function_spec(spec: str, d: int,
                        default_degree: int | None = None) -> CoefficientVector:
    """Build a coefficient vector from a compact string.

    Forms: harmonic:l,m | coeffs:PATH | sobolev:s,R,seed[,L] |
    extremal:L,s,R."""
    kind, _, rest = spec.partition(":")
    try:
        if kind == "harmonic":
            l_s, m_s = rest.split(",")
            l, m = int(l_s), int(m_s)
            if l < 0 or abs(m) > l:
                raise UsageError(f"harmonic needs 0 <= |m| <= l, got {spec!r}")
            offs = degree_offsets(d, l)
            if d == 1 and l >= 1:
                if m == 0:
                    raise UsageError("circle harmonics of positive degree "
                                     "come in sin (m<0) / cos (m>0) pairs")
                idx = offs[l] + (0 if m < 0 else 1)
            else:
                idx = offs[l] + l + m
            vals = np.zeros(dim_poly_space(d, l))
            vals[idx] = 1.0
            return CoefficientVector(d, l, vals)
        if kind == "coeffs":
            return _read_coefficients(rest, d)
        if kind == "sobolev":
            parts = rest.split(",")
            if len(parts) == 3:
                if default_degree is None:
                    raise UsageError("sobolev:s,R,seed needs a degree from "
                                     "context or an explicit 4th field")
                parts.append(str(default_degree))
            s, radius, seed, band = (float(parts[0]), float(parts[1]),
                                     int(parts[2]), int(parts[3]))
            return make_sobolev_function(d, s, radius, band, seed)
        if kind == "extremal":
            l_s, s_s, r_s = rest.split(",")
            return make_sobolev_function(d, float(s_s), float(r_s),
                                         int(l_s), 0, profile="extremal")
    except (ValueError, IndexError) as ex:
        raise UsageError(f"cannot parse function spec {spec!r}: {ex}") from ex
    raise UsageError(f"unknown function spec kind {kind!r}")


def _read_coefficients(path: str, d: int) -> CoefficientVector:
    p = Path(path)
    if not p.exists():
        raise DataError(f"coefficient file {path!r} does not exist")
    text = p.read_text(encoding="utf-8")
    vals = _float_column(text, "coefficient")
    size = len(vals)
    L = 0
    while dim_poly_space(d, L) < size:
        L += 1
    if dim_poly_space(d, L) != size:
        raise DataError(f"{size} coefficients do not fill polynomial space "
                        f"of any degree for d = {d}")
    return CoefficientVector(d, L, np.array(vals))


def _float_column(text: str, column: str):
    """Floats from a CSV column if the header has one, else every token."""
    first = text.lstrip().splitlines()[0] if text.strip() else ""
    if column in first.replace(" ", "").split(","):
        reader = csv.DictReader(io.StringIO(text))
        try:
            return [float(row[column]) for row in reader]
        except (TypeError, ValueError) as ex:
            raise DataError(f"bad value in column {column!r}: {ex}") from ex
    out = []
    for tok in text.replace(",", " ").split():
        try:
            out.append(float(tok))
        except ValueError as ex:
            raise DataError(f"bad numeric token {tok!r}") from ex
    if not out:
        raise DataError("no numbers found")
    return out


def _read_node_values(path: str, n: int) -> np.ndarray:
    p = Path(path)
    if not p.exists():
        raise DataError(f"values file {path!r} does not exist")
    vals = _float_column(p.read_text(encoding="utf-8"), "value")
    if len(vals) != n:
        raise DataError(f"{len(vals)} values for {n} nodes")
    return np.array(vals)


def _function_values(args, design: SphericalDesign, band_default: int):
    """Node values plus the coefficient vector when one is available."""
    if getattr(args, "values", None):
        return _read_node_values(args.values, design.n), None
    if getattr(args, "function", None):
        f = parse_function_spec(args.function, design.dim, band_default)
        return f.evaluate(design.points), f
    raise UsageError("provide --values PATH or --function SPEC")


def _coord_header(d: int):
    return [f"x{i}" for i in range(d + 1)]


def _point_rows(coords: np.ndarray, values: np.ndarray):
    return [list(c) + [v] for c, v in zip(coords, values)]


# ---------------------------------------------------------------------------
# subcommands


def _cmd_verify_design(args) -> int:
    if args.name:
        des = _resolve_named(args)
        strength = args.strength if args.strength else des.strength
        pts = des.points
    else:
        if not args.file:
            raise UsageError("verify-design needs --name or --file")
        if not args.strength:
            raise UsageError("--strength is required with --file")
        pts = parse_design_file(Path(args.file), args.dim)
        strength = args.strength
    report = verify_design(pts, strength, tol=args.tol)
    doc = {
        "command": "verify-design",
        "dim": report.d,
        "n": report.n,
        "strength": report.t,
        "tol": report.tol,
        "max_defect": report.max_defect,
        "per_degree": list(report.per_degree),
        "verified": report.ok,
    }
    rows = [(l + 1, v) for l, v in enumerate(report.per_degree)]
    _emit(args, doc, ["degree", "defect"], rows, bulky=("per_degree",))
    return 0 if report.ok else 3


def _resolve_named(args) -> SphericalDesign:
    name = args.name
    if name in BUNDLED_DESIGNS:
        return load_bundled(name)
    if name in _BUILTIN_NAMES or name.startswith("polygon("):
        return builtin_design(name)
    raise DataError(f"unknown design name {name!r}")


def _cmd_design_info(args) -> int:
    if args.name:
        des = _resolve_named(args)
        source = args.name
    else:
        if not args.file:
            raise UsageError("design-info needs --name or --file")
        pts = parse_design_file(Path(args.file), args.dim)
        des = SphericalDesign(pts, args.strength or 0)
        source = args.file
    claimed = des.strength
    probe = args.probe or (claimed if claimed >= 1 else 32)
    report = verify_design(des.points, probe + 1, tol=args.tol)
    verified = 0
    for l, defect in enumerate(report.per_degree, start=1):
        if defect > args.tol:
            break
        verified = l
    doc = {
        "command": "design-info",
        "source": source,
        "dim": des.dim,
        "n": des.n,
        "claimed_strength": claimed,
        "probed_to": probe + 1,
        "verified_strength": verified,
        "max_defect_within_claim":
            float(np.max(report.per_degree[:claimed])) if claimed else None,
        "defect_beyond": float(report.per_degree[verified])
            if verified < len(report.per_degree) else None,
        "tol": args.tol,
    }
    rows = [(l + 1, v) for l, v in enumerate(report.per_degree)]
    _emit(args, doc, ["degree", "defect"], rows)
    return 0


def _cmd_fit(args) -> int:
    des = _resolve(args, need_strength=not args.least_squares)
    L = args.degree
    vals, f = _function_values(args, des, 2 * L)
    frame = DiscreteFrame(des, L, least_squares=args.least_squares)
    coeffs = hyperinterpolate(frame, vals)
    resid = residual_at_nodes(frame, vals)
    if f is not None:
        ref = reference_rule(des.dim, 2 * max(L, f.max_degree) + 2)
        l2 = l2_error(frame, f, ref)
    else:
        l2 = None
    offs = degree_offsets(des.dim, L)
    degs = np.searchsorted(np.array(offs[1:]), np.arange(coeffs.values.size),
                           side="right")
    doc = {
        "command": "fit",
        "design_n": des.n,
        "degree": L,
        "dim": des.dim,
        "least_squares": bool(args.least_squares),
        "residual_at_nodes": resid,
        "l2_error": l2,
        "coefficients": list(coeffs.values),
    }
    rows = [(int(i), int(degs[i]), coeffs.values[i])
            for i in range(coeffs.values.size)]
    _emit(args, doc, ["index", "degree", "coefficient"], rows,
          bulky=("coefficients",))
    return 0


def _cmd_needlet(args) -> int:
    jmax = args.levels
    if args.action == "decompose":
        d = args.dim
        system = standard_system(d, jmax)
        f = parse_function_spec(args.function, d, 2 ** jmax - 1) \
            if args.function else None
        if f is None:
            raise UsageError("decompose needs --function")
        co = needlet_coeffs(f, system)
        doc = {
            "command": "needlet",
            "action": "decompose",
            "dim": d,
            "jmax": jmax,
            "level_sizes": [system.level_size(j) for j in range(jmax + 1)],
            "coefficients": [
                {"level": j, "k": int(k), "value": float(b)}
                for j, beta in enumerate(co.levels)
                for k, b in enumerate(beta)],
        }
        rows = [(c["level"], c["k"], c["value"]) for c in doc["coefficients"]]
        _emit(args, doc, ["level", "k", "value"], rows,
              bulky=("coefficients",))
        return 0
    if args.action == "reconstruct":
        d = args.dim
        system = standard_system(d, jmax)
        if not args.coeffs_file:
            raise UsageError("reconstruct needs --coeffs-file (decompose "
                             "output)")
        co = _read_needlet_table(args.coeffs_file, system, jmax)
        grid = reference_rule(d, args.grid)
        vals = needlet_reconstruct(co, system, grid.points)
        doc = {
            "command": "needlet",
            "action": "reconstruct",
            "dim": d,
            "jmax": jmax,
            "grid_degree": args.grid,
            "grid_n": len(grid.points),
            "values": list(vals),
        }
        rows = _point_rows(grid.points.coords, vals)
        _emit(args, doc, _coord_header(d) + ["value"], rows,
              bulky=("values",))
        return 0
    if args.action == "empirical":
        des = _resolve(args, need_strength=True)
        vals, _ = _function_values(args, des, 2 ** jmax - 1)
        grid = reference_rule(des.dim, args.grid)
        approx = empirical_needlet_approx(vals, des, jmax, grid.points)
        doc = {
            "command": "needlet",
            "action": "empirical",
            "dim": des.dim,
            "jmax": jmax,
            "design_n": des.n,
            "grid_degree": args.grid,
            "grid_n": len(grid.points),
            "values": list(approx),
        }
        rows = _point_rows(grid.points.coords, approx)
        _emit(args, doc, _coord_header(des.dim) + ["value"], rows,
              bulky=("values",))
        return 0
    raise UsageError(f"unknown action {args.action!r}")


def _read_needlet_table(path: str, system, jmax: int) -> NeedletCoefficients:
    p = Path(path)
    if not p.exists():
        raise DataError(f"coefficient file {path!r} does not exist")
    levels = [np.zeros(system.level_size(j)) for j in range(jmax + 1)]
    reader = csv.DictReader(io.StringIO(p.read_text(encoding="utf-8")))
    if reader.fieldnames is None or not {"level", "k", "value"} <= set(
            reader.fieldnames):
        raise DataError("needlet table needs columns level,k,value")
    try:
        for row in reader:
            j, k, v = int(row["level"]), int(row["k"]), float(row["value"])
            if not 0 <= j <= jmax:
                raise DataError(f"level {j} outside 0..{jmax}")
            if not 0 <= k < levels[j].size:
                raise DataError(f"index {k} outside level {j} "
                                f"(size {levels[j].size})")
            levels[j][k] = v
    except (TypeError, ValueError) as ex:
        raise DataError(f"bad needlet table row: {ex}") from ex
    return NeedletCoefficients(system.d, tuple(levels))


def _cmd_simulate(args) -> int:
    if args.model == "regression":
        des = _resolve(args)
        vals, f = _function_values(args, des, args.degree)
        if f is None:
            raise UsageError("simulate regression needs --function")
        sample = simulate_regression(f, des, args.sigma, args.seed)
        doc = {
            "command": "simulate",
            "model": "regression",
            "design_n": des.n,
            "dim": des.dim,
            "sigma": args.sigma,
            "seed": args.seed,
            "values": list(sample.values),
        }
        rows = _point_rows(des.points.coords, sample.values)
        _emit(args, doc, _coord_header(des.dim) + ["value"], rows,
              bulky=("values",))
        return 0
    if args.model == "whitenoise":
        d = args.dim
        theta = parse_function_spec(args.function, d, args.degree) \
            if args.function else None
        if theta is None:
            raise UsageError("simulate whitenoise needs --function")
        if not args.n:
            raise UsageError("simulate whitenoise needs --n (the matching "
                             "sample count sets the noise scale)")
        obs = simulate_white_noise(theta, args.sigma, args.n, args.seed,
                                   size=args.size or None)
        doc = {
            "command": "simulate",
            "model": "whitenoise",
            "dim": d,
            "n": args.n,
            "sigma": args.sigma,
            "noise_scale": obs.noise_scale,
            "seed": args.seed,
            "size": obs.size,
            "y": list(obs.y),
        }
        rows = list(enumerate(obs.y))
        _emit(args, doc, ["index", "y"], rows, bulky=("y",))
        return 0
    raise UsageError(f"unknown model {args.model!r}")


def _cmd_transfer(args) -> int:
    des = _resolve(args, need_strength=True)
    L = args.degree
    d = des.dim
    f = parse_function_spec(args.function, d, 2 * L) if args.function else None
    if f is None:
        raise UsageError("transfer needs --function")
    frame = DiscreteFrame(des, L)
    f_nodes = f.evaluate(des.points)
    head_true = frame.matrix.T @ f_nodes / frame.n
    reps = args.reps

    if args.direction == "to-wn":
        size = args.size or dim_poly_space(d, 2 * L)

        def one(i):
            s = simulate_regression(f, des, args.sigma,
                                    _rep_seed(args.seed, i))
            return to_white_noise(s, L, _rep_seed(args.seed, i), size=size).y

        ys = np.stack(_parallel_map(one, range(reps), args.threads))
        scale = args.sigma / math.sqrt(des.n)
        truth = np.zeros(size)
        truth[:head_true.size] = head_true
        diag = _moment_diagnostics(ys, truth, scale, reps)
        doc = {
            "command": "transfer",
            "direction": "to-wn",
            "design_n": des.n,
            "dim": d,
            "degree": L,
            "head_size": int(head_true.size),
            "size": size,
            "sigma": args.sigma,
            "noise_scale": scale,
            "seed": args.seed,
            "reps": reps,
            "diagnostics": diag,
            "y": list(ys[0]),
        }
        rows = list(enumerate(ys[0]))
        _emit(args, doc, ["index", "y"], rows, bulky=("y",))
        return 0

    if args.direction == "to-reg":

        def one(i):
            obs = simulate_white_noise(f, args.sigma, des.n,
                                       _rep_seed(args.seed, i))
            return to_regression(obs, des, L, _rep_seed(args.seed, i)).values

        zs = np.stack(_parallel_map(one, range(reps), args.threads))
        m = frame.dim_range
        theta_pad = np.zeros(m)
        k = min(m, f.values.size)
        theta_pad[:k] = f.values[:k]
        truth = frame.matrix @ theta_pad
        diag = _moment_diagnostics(zs, truth, args.sigma, reps)
        doc = {
            "command": "transfer",
            "direction": "to-reg",
            "design_n": des.n,
            "dim": d,
            "degree": L,
            "head_size": int(m),
            "sigma": args.sigma,
            "seed": args.seed,
            "reps": reps,
            "diagnostics": diag,
            "values": list(zs[0]),
        }
        rows = _point_rows(des.points.coords, zs[0])
        _emit(args, doc, _coord_header(d) + ["value"], rows,
              bulky=("values",))
        return 0
    raise UsageError(f"unknown direction {args.direction!r}")


def _rep_seed(seed: int, i: int) -> int:
    # replications get distinct substream roots; stream names inside the
    # transfer kernels stay fixed
    return seed * 1_000_003 + i


def _moment_diagnostics(samples: np.ndarray, truth: np.ndarray, scale: float,
                        reps: int):
    if reps < 2:
        return None
    mean = samples.mean(axis=0)
    probe = samples[:, :4] - truth[:4]
    cov = probe.T @ probe / (reps - 1)
    mean_dev = float(np.abs(mean - truth).max())
    cov_dev = float(np.abs(cov - scale ** 2 * np.eye(probe.shape[1])).max())
    return {
        "reps": reps,
        "probe_size": int(probe.shape[1]),
        "max_mean_dev": mean_dev,
        "max_cov_dev": cov_dev,
        "mean_tol_hint": 4.0 * scale / math.sqrt(reps),
        "cov_tol_hint": 5.0 * scale ** 2 / math.sqrt(reps),
    }


def _cmd_bound(args) -> int:
    des = _resolve(args, need_strength=True)
    d = des.dim
    if args.cls == "sobolev":
        if args.degree is None:
            raise UsageError("--degree is required for --class sobolev")
        family = sobolev_family(d, args.s, args.radius, args.degree,
                                args.family_size, args.seed)
        frame = DiscreteFrame(des, args.degree)
        reference = reference_rule(d, 4 * args.degree + 2)
        b_nodes = bound_from_node_residuals(frame, family, args.sigma)
        b_l2 = bound_from_l2_error(frame, family, args.sigma, reference)
        scale = {"degree": args.degree}
    elif args.cls == "besov":
        if args.level is None:
            raise UsageError("--level is required for --class besov")
        family = besov_family(d, args.s, args.r, args.radius, args.level,
                              args.family_size, args.seed, q=args.q)
        reference = reference_rule(d, 2 ** (args.level + 2))
        b_nodes = needlet_bound_from_node_residuals(des, args.level, family,
                                                    args.sigma)
        b_l2 = needlet_bound_from_l2_error(des, args.level, family,
                                           args.sigma, reference)
        scale = {"level": args.level}
    else:
        raise UsageError(f"unknown class {args.cls!r}")
    doc = {
        "command": "bound",
        "class": args.cls,
        "design_n": des.n,
        "dim": d,
        "s": args.s,
        "r": args.r if args.cls == "besov" else None,
        "q": (args.q if args.q is not None else args.r)
            if args.cls == "besov" else None,
        "radius": args.radius,
        "sigma": args.sigma,
        "family_size": args.family_size,
        "seed": args.seed,
        **scale,
        "sup_nodes": b_nodes.sup_distance,
        "arg_nodes": b_nodes.argument,
        "bound_nodes": b_nodes.bound,
        "sup_l2": b_l2.sup_distance,
        "arg_l2": b_l2.argument,
        "bound_l2": b_l2.bound,
        "arg_total": b_nodes.argument + b_l2.argument,
        "bound_total": min(1.0, b_nodes.bound + b_l2.bound),
        "per_function_nodes": list(b_nodes.per_function),
        "per_function_l2": list(b_l2.per_function),
    }
    rows = [(i, a, b) for i, (a, b) in enumerate(
        zip(b_nodes.per_function, b_l2.per_function))]
    _emit(args, doc, ["index", "dist_nodes", "dist_l2"], rows,
          bulky=("per_function_nodes", "per_function_l2"))
    return 0


def _cmd_rate_study(args) -> int:
    manifest = _load_manifest(args.designs)
    stages = manifest["stages"]
    d = None

    def load_stage(entry):
        ns = argparse.Namespace(design=entry["design"],
                                design_strength=entry.get("strength"),
                                dim=entry.get("dim", args.dim))
        return _resolve(ns, need_strength=False)

    designs = [load_stage(e) for e in stages]
    d = designs[0].dim
    if args.cls == "sobolev":
        degrees = [int(e["degree"]) for e in stages]
        rows = _parallel_map(
            lambda pair: sobolev_stage(pair[0], pair[1], args.s, args.radius,
                                       args.sigma, args.family_size,
                                       args.seed),
            list(zip(designs, degrees)), args.threads)
        result = assemble_rate_study(rows, 0.5 - args.s / d)
    elif args.cls == "besov":
        levels = [int(e["level"]) for e in stages]
        rows = _parallel_map(
            lambda pair: besov_stage(pair[0], pair[1], args.s, args.r,
                                     args.radius, args.sigma,
                                     args.family_size, args.seed),
            list(zip(designs, levels)), args.threads)
        result = assemble_rate_study(rows, 1.0 / args.r - args.s / d)
    else:
        raise UsageError(f"unknown class {args.cls!r}")
    table_fields = ["n", "scale", "sup_nodes", "sup_l2", "arg_nodes",
                    "arg_l2", "arg_total", "bound_nodes", "bound_l2",
                    "bound_total"]
    doc = {
        "command": "rate-study",
        "class": args.cls,
        "dim": d,
        "s": args.s,
        "r": args.r if args.cls == "besov" else None,
        "radius": args.radius,
        "sigma": args.sigma,
        "family_size": args.family_size,
        "seed": args.seed,
        "expected_slope": result.expected_slope,
        "slope_nodes": result.slope_nodes,
        "slope_l2": result.slope_l2,
        "slope_total": result.slope_total,
        "rows": [{k: getattr(r, k) for k in table_fields}
                 for r in result.rows],
    }
    rows = [[getattr(r, k) for k in table_fields] for r in result.rows]
    _emit(args, doc, table_fields, rows, bulky=("rows",))
    return 0


def _load_manifest(path: str):
    p = Path(path)
    if not p.exists():
        raise DataError(f"manifest {path!r} does not exist")
    try:
        manifest = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as ex:
        raise DataError(f"manifest is not valid JSON: {ex}") from ex
    if not isinstance(manifest, dict) or "stages" not in manifest \
            or not isinstance(manifest["stages"], list) \
            or len(manifest["stages"]) == 0:
        raise DataError("manifest must be an object with a nonempty "
                        "'stages' list")
    for e in manifest["stages"]:
        if not isinstance(e, dict) or "design" not in e:
            raise DataError("each stage needs at least a 'design' entry")
    return manifest


def _cmd_filter_check(args) -> int:
    t = np.linspace(0.5, 1.0, 4001)
    partition = float(np.abs(filter_h(t) ** 2 + filter_h(2 * t) ** 2
                             - 1.0).max())
    tt = np.linspace(0.0, 2.5, 5001)
    telescope = float(np.abs(window_low_pass(tt) - window_low_pass(2 * tt)
                             - filter_h(tt) ** 2).max())
    below = np.linspace(-1.0, 0.5, 1001)
    above = np.linspace(2.0, 4.0, 1001)
    support = float(max(np.abs(filter_h(below)).max(),
                        np.abs(filter_h(above)).max(),
                        np.abs(window_low_pass(above)).max(),
                        np.abs(window_low_pass(
                            np.linspace(-1.0, 1.0, 1001)) - 1.0).max()))
    peak = float(abs(filter_h(np.array(1.0)) - 1.0))
    doc = {
        "command": "filter-check",
        "partition_max_dev": partition,
        "telescope_max_dev": telescope,
        "support_max_dev": support,
        "peak_dev": peak,
        "max_residual": max(partition, telescope, support, peak),
    }
    _emit(args, doc, ["identity", "residual"],
          [("partition", partition), ("telescope", telescope),
           ("support", support), ("peak", peak)])
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_common(sp, default_format: str):
    sp.add_argument("--seed", type=int, default=0,
                    help="master seed; all randomness is derived from it")
    sp.add_argument("--threads", type=int,
                    default=max(os.cpu_count() or 1, 1),
                    help="worker threads (results do not depend on this)")
    sp.add_argument("--format", choices=("json", "csv"),
                    default=default_format)
    sp.add_argument("--out", help="primary output file (default stdout)")


def _add_design_args(sp, strength_help="declared strength for file designs"):
    sp.add_argument("--design", help="bundled name, builtin name, or file "
                                     "path")
    sp.add_argument("--design-strength", type=int, help=strength_help)
    sp.add_argument("--dim", type=int, default=2,
                    help="sphere dimension d for file designs")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="spheredesign",
        description="Designs on spheres: verification, hyperinterpolation, "
                    "needlets, model transfer, and distance bounds.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("verify-design", help="check cubature exactness")
    sp.add_argument("--name", help="bundled or builtin design name")
    sp.add_argument("--file", help="point-set file")
    sp.add_argument("--dim", type=int, default=2)
    sp.add_argument("--strength", type=int, default=0,
                    help="strength to test (defaults to the declared one)")
    sp.add_argument("--tol", type=float, default=1e-10)
    _add_common(sp, "json")
    sp.set_defaults(fn=_cmd_verify_design)

    sp = sub.add_parser("design-info", help="summary and verified strength")
    sp.add_argument("--name")
    sp.add_argument("--file")
    sp.add_argument("--dim", type=int, default=2)
    sp.add_argument("--strength", type=int, default=0,
                    help="declared strength for file designs")
    sp.add_argument("--probe", type=int, default=0,
                    help="verify up to this degree (default: claimed, or 32)")
    sp.add_argument("--tol", type=float, default=1e-10)
    _add_common(sp, "json")
    sp.set_defaults(fn=_cmd_design_info)

    sp = sub.add_parser("fit", help="hyperinterpolation coefficients")
    _add_design_args(sp)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--values", help="file with one value per node")
    sp.add_argument("--function", help="function spec (see parse rules)")
    sp.add_argument("--least-squares", action="store_true",
                    help="allow rules below strength 2L (QR fit)")
    _add_common(sp, "csv")
    sp.set_defaults(fn=_cmd_fit)

    sp = sub.add_parser("needlet", help="decompose / reconstruct / empirical")
    sp.add_argument("--action", required=True,
                    choices=("decompose", "reconstruct", "empirical"))
    sp.add_argument("--levels", type=int, required=True, metavar="J")
    _add_design_args(sp)
    sp.add_argument("--function")
    sp.add_argument("--values")
    sp.add_argument("--coeffs-file", help="table from a decompose run")
    sp.add_argument("--grid", type=int, default=24,
                    help="evaluation grid = reference rule of this degree")
    _add_common(sp, "csv")
    sp.set_defaults(fn=_cmd_needlet)

    sp = sub.add_parser("simulate", help="draw one sample of either model")
    sp.add_argument("--model", required=True,
                    choices=("regression", "whitenoise"))
    _add_design_args(sp)
    sp.add_argument("--function")
    sp.add_argument("--values")
    sp.add_argument("--sigma", type=float, default=1.0)
    sp.add_argument("--degree", type=int, default=8,
                    help="default band for function specs")
    sp.add_argument("--n", type=int, default=0,
                    help="whitenoise: matching sample count")
    sp.add_argument("--size", type=int, default=0,
                    help="whitenoise: coordinate count (default dim P_2L)")
    _add_common(sp, "csv")
    sp.set_defaults(fn=_cmd_simulate)

    sp = sub.add_parser("transfer", help="map one model's sample to the other")
    sp.add_argument("--direction", required=True, choices=("to-wn", "to-reg"))
    _add_design_args(sp)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--function", required=True)
    sp.add_argument("--sigma", type=float, default=1.0)
    sp.add_argument("--size", type=int, default=0,
                    help="to-wn: total coordinates (default dim P_2L)")
    sp.add_argument("--reps", type=int, default=1,
                    help="replications for moment diagnostics")
    _add_common(sp, "csv")
    sp.set_defaults(fn=_cmd_transfer)

    sp = sub.add_parser("bound", help="distinguishability bounds for a ball")
    sp.add_argument("--class", dest="cls", required=True,
                    choices=("sobolev", "besov"))
    _add_design_args(sp)
    sp.add_argument("--degree", type=int, help="fit degree (sobolev)")
    sp.add_argument("--level", type=int, help="needlet level J (besov)")
    sp.add_argument("--s", type=float, default=2.0)
    sp.add_argument("--r", type=float, default=2.0)
    sp.add_argument("--q", type=float, default=None,
                    help="secondary index (defaults to r)")
    sp.add_argument("--radius", type=float, default=1.0)
    sp.add_argument("--sigma", type=float, default=1.0)
    sp.add_argument("--family-size", type=int, default=8)
    _add_common(sp, "json")
    sp.set_defaults(fn=_cmd_bound)

    sp = sub.add_parser("rate-study", help="bounds along a design sequence")
    sp.add_argument("--class", dest="cls", required=True,
                    choices=("sobolev", "besov"))
    sp.add_argument("--designs", required=True, metavar="MANIFEST",
                    help="JSON manifest with a 'stages' list")
    sp.add_argument("--dim", type=int, default=2)
    sp.add_argument("--s", type=float, default=2.0)
    sp.add_argument("--r", type=float, default=2.0)
    sp.add_argument("--radius", type=float, default=1.0)
    sp.add_argument("--sigma", type=float, default=1.0)
    sp.add_argument("--family-size", type=int, default=8)
    _add_common(sp, "csv")
    sp.set_defaults(fn=_cmd_rate_study)

    sp = sub.add_parser("filter-check", help="filter identity residuals")
    _add_common(sp, "json")
    sp.set_defaults(fn=_cmd_filter_check)

    return ap


def run(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    return args.fn(args)


def main(argv=None) -> int:
    try:
        return run(argv)
    except UsageError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2
    except SphereDesignError as ex:
        print(f"data error: {ex}", file=sys.stderr)
        return 3
    except Exception:  # pragma: no cover - internal failures
        import traceback
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
