"""Equal-weight cubature on spheres: builtin solids, bundled point-set files,
strength verification by kernel double sums, and reference product rules.

A point set X of n points averages a function by (1/n) sum f(x_i); it is a
design of strength t when that average equals the surface-measure integral
for every polynomial of total degree <= t.  The per-degree defect

    A_l(X) = (1/n^2) sum_{i,j} dim_l * gegenbauer_l(<x_i, x_j>)

is nonnegative and vanishes exactly when degree l is integrated exactly, so
max_{1 <= l <= t} A_l <= tol is the verification criterion.  The double sum
works in every dimension, needing nothing but inner products.
"""
from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from ._rng import substream
from .errors import ConditionError, DataError
from .harmonics import (basis_mean_squares, dim_poly_space, eval_basis,
                        zonal_degree_totals)
from .sphere import PointSet, as_coords

DEFECT_TOL = 1e-10
_FILE_NORM_TOL = 1e-6
_DEFECT_BLOCK = 256


# ---------------------------------------------------------------------------
# rules and designs


@dataclass(frozen=True)
class CubatureRule:
    """Points with positive weights summing to 1 (the measure is normalized)."""

    points: PointSet
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (len(self.points),):
            raise DataError(f"need one weight per point, got {w.shape} for "
                            f"{len(self.points)} points")
        if np.any(w <= 0.0):
            raise DataError("cubature weights must be positive")
        if abs(w.sum() - 1.0) > 1e-12:
            raise DataError(f"weights must sum to 1, got {w.sum():.15f}")
        object.__setattr__(self, "weights", w)

    @property
    def dim(self) -> int:
        return self.points.dim


@dataclass(frozen=True)
class SphericalDesign:
    """An equal-weight rule with a declared exactness strength t."""

    points: PointSet
    strength: int

    @property
    def dim(self) -> int:
        return self.points.dim

    @property
    def n(self) -> int:
        return len(self.points)

    def rule(self) -> CubatureRule:
        n = len(self.points)
        return CubatureRule(self.points, np.full(n, 1.0 / n))


def cubature_integrate(rule: CubatureRule, f) -> float:
    """Apply the rule to f: a callable on coordinate arrays, an object with
    .evaluate(points), or a precomputed value array."""
    if hasattr(f, "evaluate"):
        vals = f.evaluate(rule.points)
    elif callable(f):
        vals = np.asarray(f(rule.points.coords), dtype=float)
    else:
        vals = np.asarray(f, dtype=float)
    if vals.shape != (len(rule.points),):
        raise ConditionError(f"integrand values have shape {vals.shape}, "
                             f"expected ({len(rule.points)},)")
    return float(rule.weights @ vals)


# ---------------------------------------------------------------------------
# builtin designs (exact coordinates)


def _platonic(name: str) -> tuple[np.ndarray, int]:
    s3 = 1.0 / math.sqrt(3.0)
    if name == "tetrahedron":
        pts = s3 * np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]],
                            dtype=float)
        return pts, 2
    if name == "cube":
        pts = s3 * np.array([[sx, sy, sz] for sx in (-1, 1) for sy in (-1, 1)
                             for sz in (-1, 1)], dtype=float)
        return pts, 3
    if name == "octahedron":
        eye = np.eye(3)
        return np.vstack([eye, -eye]), 3
    if name == "icosahedron":
        phi = (1.0 + math.sqrt(5.0)) / 2.0
        r = math.sqrt(1.0 + phi * phi)
        base = []
        for a, b in ((1.0, phi), (1.0, -phi), (-1.0, phi), (-1.0, -phi)):
            base.extend([(0.0, a, b), (a, b, 0.0), (b, 0.0, a)])
        return np.array(base) / r, 5
    if name == "dodecahedron":
        phi = (1.0 + math.sqrt(5.0)) / 2.0
        pts = [(sx, sy, sz) for sx in (-1, 1) for sy in (-1, 1)
               for sz in (-1, 1)]
        for a, b in ((1.0 / phi, phi), (1.0 / phi, -phi),
                     (-1.0 / phi, phi), (-1.0 / phi, -phi)):
            pts.extend([(0.0, a, b), (a, b, 0.0), (b, 0.0, a)])
        return s3 * np.array(pts), 5
    raise DataError(f"unknown builtin design {name!r}")


BUILTIN_NAMES = ("tetrahedron", "cube", "octahedron", "icosahedron",
                 "dodecahedron", "polygon(k)")


def builtin_design(name: str) -> SphericalDesign:
    """Exact small designs: the five Platonic solids on S^2 and regular
    polygons on S^1 (polygon(k) has strength k - 1)."""
    m = re.fullmatch(r"polygon\((\d+)\)", name)
    if m:
        k = int(m.group(1))
        if k < 1:
            raise DataError("polygon needs at least one vertex")
        theta = 2.0 * np.pi * np.arange(k) / k
        pts = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        return SphericalDesign(PointSet(pts), k - 1)
    coords, t = _platonic(name)
    return SphericalDesign(PointSet(coords), t)


# ---------------------------------------------------------------------------
# design files


def parse_design_file(source, d: int) -> PointSet:
    """Read a plain-text point set: one point per line, d+1 whitespace-
    separated reals (a line may also hold several complete points); blank
    lines and CR line endings are tolerated.  Rows are renormalized when
    within 1e-6 of unit length and rejected beyond that."""
    if isinstance(source, (str, Path)) and "\n" not in str(source):
        text = Path(source).read_text()
    else:
        text = str(source)
    rows = []
    width = d + 1
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens:
            continue
        if len(tokens) % width != 0:
            raise DataError(f"line {lineno}: {len(tokens)} values is not a "
                            f"multiple of d+1 = {width}")
        try:
            vals = [float(tok) for tok in tokens]
        except ValueError as exc:
            raise DataError(f"line {lineno}: {exc}") from None
        for k in range(0, len(vals), width):
            rows.append(vals[k:k + width])
    if not rows:
        raise DataError("no points found in design source")
    coords = np.array(rows, dtype=float)
    nrm = np.linalg.norm(coords, axis=1)
    off = np.abs(nrm - 1.0)
    if np.any(off > _FILE_NORM_TOL):
        i = int(np.argmax(off))
        raise DataError(f"point {i} is off the unit sphere by {off[i]:.3e} "
                        f"(tolerance {_FILE_NORM_TOL:.0e})")
    return PointSet(coords / nrm[:, None])


# bundled point-set files: name -> (d, strength, n)
BUNDLED_DESIGNS = {
    "sf008.00045": (2, 8, 45),
    "sf012.00088": (2, 12, 88),
    "sf016.00161": (2, 16, 161),
    "sf020.00222": (2, 20, 222),
    "sf024.00352": (2, 24, 352),
    "sf032.00605": (2, 32, 605),
    "sf048.01408": (2, 48, 1408),
    "sf050.01302": (2, 50, 1302),
    "ss063.02050": (2, 63, 2050),
    "ss127.08130": (2, 127, 8130),
}


def load_bundled(name: str) -> SphericalDesign:
    """Load one of the point-set files shipped with the package."""
    if name not in BUNDLED_DESIGNS:
        raise DataError(f"unknown bundled design {name!r}; available: "
                        f"{', '.join(sorted(BUNDLED_DESIGNS))}")
    d, t, n = BUNDLED_DESIGNS[name]
    ref = resources.files("spheredesign").joinpath("data", name)
    if not ref.is_file():
        raise DataError(f"bundled design {name} is missing from this install")
    pts = parse_design_file(ref.read_text(), d)
    if len(pts) != n:
        raise DataError(f"bundled design {name} has {len(pts)} points, "
                        f"expected {n}")
    return SphericalDesign(pts, t)


def fetch_design(name: str, base_url: str | None = None,
                 cache_dir: str | None = None) -> Path:
    """Optional remote fetch of a design file, disabled unless a base URL is
    configured (argument or SPHEREDESIGN_DESIGN_URL); cached on disk."""
    base_url = base_url or os.environ.get("SPHEREDESIGN_DESIGN_URL")
    if not base_url:
        raise ConditionError(
            "remote design fetch is disabled; pass base_url or set "
            "SPHEREDESIGN_DESIGN_URL")
    cache_dir = Path(cache_dir or os.environ.get("SPHEREDESIGN_CACHE")
                     or Path.home() / ".cache" / "spheredesign")
    cache_dir.mkdir(parents=True, exist_ok=True)
    target = cache_dir / name
    if target.exists():
        return target
    if os.environ.get("SPHEREDESIGN_OFFLINE", "").strip() not in ("", "0"):
        raise ConditionError(f"SPHEREDESIGN_OFFLINE is set and {name} is not "
                             f"in the cache")
    from urllib.request import urlopen
    url = base_url.rstrip("/") + "/" + name
    with urlopen(url) as resp:
        data = resp.read()
    target.write_bytes(data)
    return target


def resolve_design(source: str, d: int = 2,
                   strength: int | None = None) -> SphericalDesign:
    """Turn a CLI-style design reference into a SphericalDesign.

    Accepts a bundled name, a builtin name, or a path to a point-set file
    (for files, pass the known strength or let it default to 0)."""
    if source in BUNDLED_DESIGNS:
        return load_bundled(source)
    if source in ("tetrahedron", "cube", "octahedron", "icosahedron",
                  "dodecahedron") or source.startswith("polygon("):
        return builtin_design(source)
    path = Path(source)
    if path.exists():
        pts = parse_design_file(path, d)
        return SphericalDesign(pts, strength if strength is not None else 0)
    raise DataError(f"design source {source!r} is neither a bundled name, a "
                    f"builtin name, nor an existing file")


# ---------------------------------------------------------------------------
# strength verification


def defect_profile(points, lmax: int) -> np.ndarray:
    """A_l for l = 1..lmax as a (lmax,) array.

    Where the explicit basis exists (d <= 2) the defects are the squared
    node averages of the basis functions, an O(n lmax^2) computation;
    higher dimensions fall back to the O(n^2 lmax) kernel double sum.  The
    two forms agree by the addition theorem (defect_profile_kernel exposes
    the latter for cross-checks)."""
    coords = as_coords(points)
    if lmax < 1:
        raise ConditionError("lmax must be >= 1")
    d = coords.shape[1] - 1
    if d in (1, 2):
        return basis_mean_squares(d, lmax, coords)[1:]
    return defect_profile_kernel(coords, lmax)


def defect_profile_kernel(points, lmax: int) -> np.ndarray:
    """The same defects through blocked zonal kernel double sums."""
    coords = as_coords(points)
    n = coords.shape[0]
    if lmax < 1:
        raise ConditionError("lmax must be >= 1")
    d = coords.shape[1] - 1
    partials = []
    for start in range(0, n, _DEFECT_BLOCK):
        g = np.clip(coords[start:start + _DEFECT_BLOCK] @ coords.T, -1.0, 1.0)
        partials.append(zonal_degree_totals(d, lmax, g))
    totals = np.sum(partials, axis=0)
    # each total is a sum of squared node averages, so round-off dipping
    # below zero is clamped away
    return np.maximum(totals[1:], 0.0) / float(n) ** 2


def strength_defect(points, l: int) -> float:
    """The degree-l defect A_l(X) >= 0 (zero iff degree l is exact)."""
    return float(defect_profile(points, l)[l - 1])


@dataclass(frozen=True)
class VerificationReport:
    d: int
    n: int
    t: int
    tol: float
    per_degree: np.ndarray  # A_l for l = 1..t
    max_defect: float
    ok: bool


def verify_design(points, t: int, tol: float = DEFECT_TOL) -> VerificationReport:
    """Check that the point set is a design of strength t: all per-degree
    defects up to t stay below tol."""
    if t < 1:
        raise ConditionError("strength t must be >= 1")
    coords = as_coords(points)
    prof = defect_profile(coords, t)
    max_defect = float(prof.max())
    return VerificationReport(d=coords.shape[1] - 1, n=coords.shape[0], t=t,
                              tol=tol, per_degree=prof,
                              max_defect=max_defect, ok=max_defect <= tol)


# ---------------------------------------------------------------------------
# reference quadrature (the independent integration route)


def reference_rule(d: int, degree: int,
                   design: SphericalDesign | None = None) -> CubatureRule:
    """A rule integrating all polynomials of degree <= `degree` exactly.

    d = 1 uses a uniform grid, d = 2 a Gauss-Legendre (polar) x uniform
    (azimuth) product; for d >= 3 pass a verified design of strength >=
    degree instead."""
    if degree < 0:
        raise ConditionError("degree must be >= 0")
    if d == 1:
        k = degree + 1
        theta = 2.0 * np.pi * np.arange(k) / k
        pts = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        return CubatureRule(PointSet(pts), np.full(k, 1.0 / k))
    if d == 2:
        nz = max(1, math.ceil((degree + 1) / 2))
        nphi = max(1, degree + 1)
        zq, wq = np.polynomial.legendre.leggauss(nz)
        phi = 2.0 * np.pi * np.arange(nphi) / nphi
        u = np.sqrt(np.maximum(0.0, 1.0 - zq * zq))
        pts = np.empty((nz * nphi, 3))
        w = np.empty(nz * nphi)
        for i in range(nz):
            rows = slice(i * nphi, (i + 1) * nphi)
            pts[rows, 0] = u[i] * np.cos(phi)
            pts[rows, 1] = u[i] * np.sin(phi)
            pts[rows, 2] = zq[i]
            w[rows] = wq[i] / 2.0 / nphi
        return CubatureRule(PointSet(pts), w)
    if design is None:
        raise ConditionError(f"no generic product rule for d = {d}; supply a "
                             f"verified design of strength >= {degree}")
    if design.dim != d or design.strength < degree:
        raise ConditionError(f"supplied design (d={design.dim}, "
                             f"t={design.strength}) cannot integrate degree "
                             f"{degree} on S^{d}")
    return design.rule()


# ---------------------------------------------------------------------------
# discrete-vs-continuous norm ratios


def mz_ratio(rule: CubatureRule, L0: int, L: int, p: float, trials: int,
             seed: int) -> float:
    """Empirical max over random band-L polynomials of

        [sum_i w_i |f(x_i)|^p]  /  [(L/L0)^d * int |f|^p dmu],

    probing how the discrete p-th moment tracks the continuous one once the
    band exceeds the exactness range L0 of the rule.  The integral uses a
    reference rule (exact for even integer p, high-degree otherwise)."""
    if L0 < 1 or L < L0:
        raise ConditionError("need 1 <= L0 <= L")
    if p <= 0:
        raise ConditionError("p must be positive")
    if trials < 1:
        raise ConditionError("trials must be >= 1")
    d = rule.dim
    if float(p).is_integer() and int(p) % 2 == 0:
        qdeg = int(p) * L
    else:
        qdeg = max(4 * L, 2 * L + 16)
    ref = reference_rule(d, qdeg)
    basis_rule = eval_basis(d, L, rule.points)
    basis_ref = eval_basis(d, L, ref.points)
    rng = substream(seed, "designs.mz_ratio")
    coeffs = rng.standard_normal((trials, basis_rule.shape[1]))
    scale = (L / L0) ** d
    worst = 0.0
    for c in coeffs:
        num = float(rule.weights @ np.abs(basis_rule @ c) ** p)
        den = float(ref.weights @ np.abs(basis_ref @ c) ** p)
        worst = max(worst, num / (scale * den))
    return worst
