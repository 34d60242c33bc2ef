"""Acceptance gate: one test per advertised guarantee, each printing a
single summary line with the measured quantities next to its threshold.

Run with -v to get the per-criterion pass/fail listing, and -rA (or -s)
to see the measurement lines for passing criteria too.
"""
import json
import math
import time
from importlib import resources

import numpy as np
import pytest
from scipy.integrate import quad

from spheredesign.approx import (DiscreteFrame, hyperinterpolate, l2_error,
                                 residual_at_nodes)
from spheredesign.cli import main as cli_main
from spheredesign.designs import (builtin_design, load_bundled, mz_ratio,
                                  parse_design_file, reference_rule,
                                  verify_design)
from spheredesign.experiments import (gaussian_tv_bound, simulate_regression,
                                      simulate_white_noise, to_regression,
                                      to_white_noise)
from spheredesign.harmonics import (CoefficientVector, dim_poly_space,
                                    eval_basis)
from spheredesign.lecam import (besov_rate_study, bound_from_l2_error,
                                bound_from_node_residuals,
                                sobolev_rate_study)
from spheredesign.needlets import (empirical_needlet_approx, filter_h,
                                   needlet_eval, standard_system,
                                   window_low_pass)
from spheredesign.spaces import make_sobolev_function


def conclude(label, ok, detail):
    print(f"{label}: {'PASS' if ok else 'FAIL'}  [{detail}]")
    assert ok, f"{label}: {detail}"


def test_criterion_01_platonic_catalog():
    t0 = time.monotonic()
    table = [("tetrahedron", 2), ("cube", 3), ("octahedron", 3),
             ("icosahedron", 5), ("dodecahedron", 5)]
    worst_pass = 0.0
    worst_fail = np.inf
    for name, t in table:
        des = builtin_design(name)
        rep = verify_design(des.points, t, tol=1e-10)
        worst_pass = max(worst_pass, rep.max_defect)
        rep_up = verify_design(des.points, t + 1, tol=1e-10)
        worst_fail = min(worst_fail, rep_up.max_defect)
        if not rep.ok or rep_up.ok:
            break
    elapsed = time.monotonic() - t0
    ok = worst_pass <= 1e-10 and worst_fail >= 1e-3 and elapsed < 1.0
    conclude("criterion 01 platonic catalog", ok,
             f"max defect at strength {worst_pass:.2e} <= 1e-10, "
             f"min defect above {worst_fail:.2e} >= 1e-3, "
             f"{elapsed:.2f}s < 1s")


def test_criterion_02_file_designs():
    t0 = time.monotonic()
    stats = {}
    for name, t in (("sf020.00222", 20), ("ss127.08130", 127)):
        with resources.as_file(resources.files("spheredesign")
                               .joinpath("data", name)) as path:
            pts = parse_design_file(path, 2)
        rep = verify_design(pts, t, tol=1e-9)
        stats[name] = (len(pts), rep.ok, rep.max_defect)
    elapsed = time.monotonic() - t0
    ok = (stats["sf020.00222"][0] == 222
          and all(s[1] and s[2] <= 1e-9 for s in stats.values())
          and elapsed < 30.0)
    conclude("criterion 02 file designs", ok,
             f"sf020 n={stats['sf020.00222'][0]} "
             f"defect {stats['sf020.00222'][2]:.2e}, "
             f"ss127 defect {stats['ss127.08130'][2]:.2e} <= 1e-9, "
             f"{elapsed:.1f}s < 30s")


def test_criterion_03_gram_identity():
    des = load_bundled("sf020.00222")
    X = eval_basis(2, 10, des.points)
    G = X.T @ X
    dev = float(np.abs(G - des.n * np.eye(dim_poly_space(2, 10))).max())
    ok = dev <= 1e-8 * des.n
    conclude("criterion 03 gram identity", ok,
             f"max |X'X - nI| = {dev:.2e} <= {1e-8 * des.n:.2e}")


def test_criterion_04_band_limited_equivalence():
    des = load_bundled("sf020.00222")
    frame = DiscreteFrame(des, 10)
    rng = np.random.default_rng(20260822)
    family = [CoefficientVector(2, 10,
                                rng.standard_normal(dim_poly_space(2, 10)))
              for _ in range(20)]
    ref = reference_rule(2, 22)
    worst_res = max(residual_at_nodes(frame, f) for f in family)
    worst_l2 = max(l2_error(frame, f, ref) for f in family)
    b1 = bound_from_node_residuals(frame, family, 1.0).bound
    b2 = bound_from_l2_error(frame, family, 1.0, ref).bound
    ok = worst_res <= 1e-9 and worst_l2 <= 1e-9 and b1 <= 1e-8 and b2 <= 1e-8
    conclude("criterion 04 band-limited equivalence", ok,
             f"node residual {worst_res:.2e} <= 1e-9, "
             f"l2 error {worst_l2:.2e} <= 1e-9, "
             f"deficiency bounds {b1:.2e}, {b2:.2e} <= 1e-8")


def test_criterion_05_transfer_moments():
    t0 = time.monotonic()
    des = load_bundled("sf008.00045")
    L, sigma, reps = 2, 0.7, 10_000
    f = make_sobolev_function(2, 2.0, 1.5, 4, seed=1)
    frame = DiscreteFrame(des, L)
    head = frame.matrix.T @ f.evaluate(des.points) / frame.n
    fit_nodes = frame.matrix @ head
    size = dim_poly_space(2, 2 * L)
    scale = sigma / math.sqrt(des.n)

    ys = np.empty((reps, size))
    for i in range(reps):
        s = simulate_regression(f, des, sigma, seed=31 + i)
        ys[i] = to_white_noise(s, L, seed=31 + i, size=size).y
    target = np.zeros(size)
    target[:head.size] = head
    mean_dev_wn = float(np.abs(ys.mean(axis=0) - target).max())
    probe = ys[:, :4] - target[:4]
    cov_dev_wn = float(np.abs(probe.T @ probe / reps
                              - scale ** 2 * np.eye(4)).max())

    theta = CoefficientVector(2, L, head)
    zs = np.empty((reps, des.n))
    for i in range(reps):
        obs = simulate_white_noise(theta, sigma, des.n, seed=97 + i)
        zs[i] = to_regression(obs, des, L, seed=97 + i).values
    mean_dev_reg = float(np.abs(zs.mean(axis=0) - fit_nodes).max())
    probe = zs[:, :4] - fit_nodes[:4]
    cov_dev_reg = float(np.abs(probe.T @ probe / reps
                               - sigma ** 2 * np.eye(4)).max())

    elapsed = time.monotonic() - t0
    mean_tol_wn = 4 * scale / 100
    cov_tol_wn = 5 * scale ** 2 / 100
    mean_tol_reg = 4 * sigma / 100
    cov_tol_reg = 5 * sigma ** 2 / 100
    ok = (mean_dev_wn <= mean_tol_wn and cov_dev_wn <= cov_tol_wn
          and mean_dev_reg <= mean_tol_reg and cov_dev_reg <= cov_tol_reg
          and elapsed < 120.0)
    conclude("criterion 05 transfer moments", ok,
             f"to-wn mean {mean_dev_wn:.2e} <= {mean_tol_wn:.2e}, "
             f"cov {cov_dev_wn:.2e} <= {cov_tol_wn:.2e}; "
             f"to-reg mean {mean_dev_reg:.2e} <= {mean_tol_reg:.2e}, "
             f"cov {cov_dev_reg:.2e} <= {cov_tol_reg:.2e}; "
             f"{elapsed:.0f}s < 120s")


def test_criterion_06_tv_closed_form():
    scale = 0.7

    def tv_numeric(u):
        phi = lambda x: math.exp(-0.5 * x * x) / math.sqrt(2 * math.pi)
        f = lambda x: abs(phi(x) - phi(x - u)) / 2.0
        left, _ = quad(f, -np.inf, u / 2, epsabs=1e-12, epsrel=1e-12)
        right, _ = quad(f, u / 2, np.inf, epsabs=1e-12, epsrel=1e-12)
        return left + right

    worst = 0.0
    for u in (0.1, 1.0, 3.0):
        got = gaussian_tv_bound(u * scale, scale)
        worst = max(worst, abs(got - tv_numeric(u)))
    ok = worst <= 1e-6
    conclude("criterion 06 tv closed form", ok,
             f"max |closed form - quadrature| = {worst:.2e} <= 1e-6")


def test_criterion_07_sobolev_rate():
    t0 = time.monotonic()
    designs = [load_bundled(n) for n in
               ("sf008.00045", "sf016.00161", "sf032.00605")]
    result = sobolev_rate_study(designs, [4, 8, 16], s=2.0, radius=1.0,
                                sigma=1.0, family_size=8, seed=0)
    elapsed = time.monotonic() - t0
    slope = result.slope_total
    ok = abs(slope - (-0.5)) <= 0.15 and elapsed < 300.0
    conclude("criterion 07 sobolev rate", ok,
             f"fitted slope {slope:.3f} within -0.5 +/- 0.15, "
             f"{elapsed:.0f}s < 300s")


def test_criterion_08_needlet_suite():
    t0 = time.monotonic()
    # filter identities on dense grids
    x = np.linspace(0.5, 1.0, 4001)
    quadratic = float(np.abs(filter_h(x) ** 2 + filter_h(2 * x) ** 2
                             - 1.0).max())
    xx = np.linspace(0.0, 2.5, 5001)
    partition = float(np.abs(window_low_pass(xx) - window_low_pass(2 * xx)
                             - filter_h(xx) ** 2).max())
    outside = np.concatenate([np.linspace(-1.0, 0.5, 1001),
                              np.linspace(2.0, 4.0, 1001)])
    support = float(np.abs(filter_h(outside)).max())
    filters_dev = max(quadratic, partition, support)

    # cross-level decay on 50 random pairs two or more levels apart
    system = standard_system(2, 4)
    rule = reference_rule(2, 2 ** 5)
    rng = np.random.default_rng(7)
    worst_cross = 0.0
    for _ in range(50):
        j = int(rng.integers(0, 3))
        jp = int(rng.integers(j + 2, 5))
        k = int(rng.integers(0, system.level_size(j)))
        kp = int(rng.integers(0, system.level_size(jp)))
        a = needlet_eval(system, j, k, rule.points)
        b = needlet_eval(system, jp, kp, rule.points)
        worst_cross = max(worst_cross, abs(float(rule.weights @ (a * b))))

    # reproduction through the empirical smoother at jmax = 4
    des = load_bundled("sf048.01408")
    rng = np.random.default_rng(11)
    f = CoefficientVector(2, 7, rng.standard_normal(dim_poly_space(2, 7)))
    grid = reference_rule(2, 16)
    approx = empirical_needlet_approx(f.evaluate(des.points), des, 4,
                                      grid.points)
    repro_dev = float(np.abs(approx - f.evaluate(grid.points)).max())

    elapsed = time.monotonic() - t0
    ok = (filters_dev <= 1e-12 and worst_cross <= 1e-9
          and repro_dev <= 1e-8 and elapsed < 120.0)
    conclude("criterion 08 needlet suite", ok,
             f"filter identities {filters_dev:.2e} <= 1e-12, "
             f"cross-level overlap {worst_cross:.2e} <= 1e-9, "
             f"reproduction {repro_dev:.2e} <= 1e-8, "
             f"{elapsed:.0f}s < 120s")


def test_criterion_09_besov_rate():
    t0 = time.monotonic()
    designs = [load_bundled(n) for n in
               ("sf012.00088", "sf024.00352", "sf048.01408")]
    result = besov_rate_study(designs, [2, 3, 4], s=2.0, r=2.0, radius=1.0,
                              sigma=1.0, family_size=8, seed=0)
    elapsed = time.monotonic() - t0
    slope = result.slope_total
    ok = abs(slope - (-0.5)) <= 0.2 and elapsed < 300.0
    conclude("criterion 09 besov rate", ok,
             f"fitted slope {slope:.3f} within -0.5 +/- 0.2, "
             f"{elapsed:.0f}s < 300s")


def test_criterion_10_norm_ratio_stability():
    rule = load_bundled("sf020.00222").rule()
    details = []
    ok = True
    for p in (1.0, 2.0, 4.0):
        r1 = mz_ratio(rule, 10, 20, p, trials=64, seed=5)
        r2 = mz_ratio(rule, 10, 20, p, trials=128, seed=5)
        variation = abs(r2 - r1) / r1
        ok = ok and np.isfinite(r2) and variation < 0.10 \
            and 1e-2 < r2 < 1e2
        details.append(f"p={p:g}: ratio {r2:.3f} (var {variation:.1%})")
    conclude("criterion 10 norm ratio stability", ok,
             "; ".join(details) + "; each finite, <10% when trials double, "
             "O(1) after degree-ratio scaling")


def test_criterion_11_reproducibility(tmp_path):
    manifest_s = tmp_path / "sob.json"
    manifest_s.write_text(json.dumps({"stages": [
        {"design": "sf008.00045", "degree": 2},
        {"design": "sf012.00088", "degree": 3},
        {"design": "sf016.00161", "degree": 4}]}))
    manifest_b = tmp_path / "bes.json"
    manifest_b.write_text(json.dumps({"stages": [
        {"design": "sf008.00045", "level": 1},
        {"design": "sf012.00088", "level": 2},
        {"design": "sf024.00352", "level": 3}]}))
    battery = [
        ["verify-design", "--name", "sf008.00045", "--seed", "3"],
        ["design-info", "--name", "octahedron", "--probe", "6",
         "--format", "csv"],
        ["fit", "--design", "sf012.00088", "--degree", "5",
         "--function", "sobolev:2,1,5", "--seed", "3", "--format", "csv"],
        ["needlet", "--action", "decompose", "--levels", "3",
         "--function", "harmonic:3,2", "--seed", "3", "--format", "csv"],
        ["simulate", "--model", "regression", "--design", "sf008.00045",
         "--function", "harmonic:2,0", "--seed", "5", "--format", "csv"],
        ["simulate", "--model", "whitenoise", "--function", "harmonic:2,0",
         "--n", "45", "--seed", "5", "--format", "json"],
        ["transfer", "--direction", "to-wn", "--design", "sf008.00045",
         "--degree", "2", "--function", "harmonic:2,1", "--reps", "6",
         "--seed", "7", "--format", "json"],
        ["transfer", "--direction", "to-reg", "--design", "sf008.00045",
         "--degree", "2", "--function", "harmonic:1,0", "--reps", "4",
         "--seed", "7", "--format", "csv"],
        ["bound", "--class", "sobolev", "--design", "sf012.00088",
         "--degree", "5", "--family-size", "2", "--seed", "3"],
        ["bound", "--class", "besov", "--design", "sf032.00605",
         "--level", "3", "--family-size", "2", "--seed", "3"],
        ["rate-study", "--class", "sobolev", "--designs", str(manifest_s),
         "--family-size", "2", "--seed", "3", "--format", "csv"],
        ["rate-study", "--class", "besov", "--designs", str(manifest_b),
         "--family-size", "2", "--seed", "3", "--format", "json"],
        ["filter-check"],
    ]
    failures = []
    for idx, argv in enumerate(battery):
        blobs = []
        for run, threads in ((0, "1"), (1, "1"), (2, "4")):
            out = tmp_path / f"cmd{idx}_run{run}.out"
            rc = cli_main(argv + ["--threads", threads, "--out", str(out)])
            if rc != 0:
                failures.append(f"{argv[0]} rc={rc}")
                break
            blobs.append(out.read_bytes())
        else:
            if not (blobs[0] == blobs[1] == blobs[2]):
                failures.append(f"{argv[0]} differs across runs/threads")
    ok = not failures
    conclude("criterion 11 reproducibility", ok,
             f"{len(battery)} invocations x 3 runs byte-identical"
             if ok else "; ".join(failures))
