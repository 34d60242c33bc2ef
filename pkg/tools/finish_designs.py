#!/usr/bin/env python3
"""Finish the remaining bundled point sets.

Differences from the plain queue driver:
 - Levenberg-Marquardt steps solve the damped normal equations with a dense
   Cholesky factorization instead of truncated lsmr, so the quadratic phase
   actually shows up on the near-square systems.
 - The polished iterate is fed back into the next descent stage.
 - The antipodal sets are walked up a ladder in t (each rung warm-starts the
   next), with a checkpoint per rung, instead of a cold start at full t.

Run: nohup python3 tools/finish_designs.py [names...] > tools/out/finish.log
"""
from __future__ import annotations

import json
import sys
import time
from pathlib import Path

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve
from scipy.optimize import minimize

sys.path.insert(0, str(Path(__file__).resolve().parent))
from gen_designs import (DATA_DIR, OUT_DIR, WeylObjective, fibonacci_points,
                         full_set, kernel_defects, write_design)

T0 = time.time()


def log(msg):
    print(f"[{time.time() - T0:8.0f}s] {msg}", flush=True)


def renorm(P, nf):
    X = P.reshape(nf, 3)
    return X / np.linalg.norm(X, axis=1)[:, None]


def lm_direct(obj: WeylObjective, X, max_steps=240, target=1e-24,
              lam=1e-8, ck: Path | None = None):
    """LM with exact damped-normal-equation steps.  Returns (X, F)."""
    r = obj.residuals(X)
    F = r @ r
    log(f"    lm start F = {F:.3e}")
    A = b = None
    for step in range(max_steps):
        if F < target:
            break
        if A is None:
            J = obj.jacobian(X)
            A = J.T @ J
            b = J.T @ r
            del J
        M = A.copy()
        M[np.diag_indices_from(M)] += lam * lam
        try:
            c = cho_factor(M, lower=True, overwrite_a=True,
                           check_finite=False)
        except LinAlgError:
            del M
            lam = max(lam * 10.0, 1e-8)
            continue
        delta = cho_solve(c, -b, check_finite=False)
        del M, c
        X_new = renorm(X + delta.reshape(obj.nf, 3), obj.nf)
        r_new = obj.residuals(X_new)
        F_new = r_new @ r_new
        if F_new < F:
            X, r, F = X_new, r_new, F_new
            # shrink gently: each reject costs a wasted factorization, and
            # near a critical solution the per-step gain is trust-region
            # limited anyway
            lam = max(lam / 1.3, 1e-11)
            A = b = None
            if ck is not None:
                np.save(ck, X)
            log(f"    lm step {step}: F = {F:.3e} lam = {lam:.1e}")
        else:
            lam = min(lam * 6.0, 1e4)
            log(f"    lm step {step}: reject (F_new = {F_new:.3e}) "
                f"lam -> {lam:.1e}")
            if lam >= 1e4:
                break
    return X, F


def lbfgs_stage(obj: WeylObjective, X, maxiter, ck: Path | None,
                stop_below: float | None = None):
    last = [np.inf]

    def fg(P):
        F, g = obj.value_and_grad(P)
        last[0] = F
        return F, g

    count = [0]

    def saver(P):
        count[0] += 1
        if ck is not None and count[0] % 100 == 0:
            np.save(ck, renorm(P, obj.nf))
        if stop_below is not None and last[0] < stop_below:
            raise StopIteration

    res = minimize(fg, X.ravel().copy(), jac=True,
                   method="L-BFGS-B", callback=saver,
                   options=dict(maxiter=maxiter, maxcor=30,
                                ftol=1e-18, gtol=1e-16))
    X = renorm(res.x, obj.nf)
    if ck is not None:
        np.save(ck, X)
    r = obj.residuals(X)
    return X, float(r @ r), res.nit


def finish(name: str, t: int, n: int, symmetric: bool, rungs, seed=0,
           lbfgs_iters=3000, max_cycles=6, good_enough=3e-12) -> bool:
    nf = n // 2 if symmetric else n
    ck_of = lambda tt: OUT_DIR / f"{name}.t{tt:03d}.ck.npy"
    done_of = lambda tt: OUT_DIR / f"{name}.t{tt:03d}.done"
    legacy = OUT_DIR / f"{name}.ck.npy"

    X = None
    start = 0
    for i in reversed(range(len(rungs))):
        if done_of(rungs[i]).exists() and ck_of(rungs[i]).exists():
            X = np.load(ck_of(rungs[i]))
            start = i + 1
            log(f"{name}: resuming after rung t={rungs[i]}")
            break
    if X is None and legacy.exists():
        X = np.load(legacy)
        if X.shape[0] == nf:
            start = len(rungs)  # legacy checkpoint is at full t: go polish
            log(f"{name}: resuming from legacy checkpoint at t={t}")
        else:
            X = None
    if X is None:
        X = fibonacci_points(nf, seed=seed)

    for tt in rungs[start:]:
        obj = WeylObjective(tt, n, symmetric)
        log(f"{name}: rung t={tt} (residuals {obj.nres}, "
            f"free dof {2 * obj.nf})")
        stop = good_enough if tt < t else None
        X, F, nit = lbfgs_stage(obj, X, lbfgs_iters, ck_of(tt),
                                stop_below=stop)
        log(f"{name}: rung t={tt} lbfgs F = {F:.3e} nit = {nit}")
        np.save(ck_of(tt), X)
        done_of(tt).touch()

    obj = WeylObjective(t, n, symmetric)
    ck = ck_of(t)
    F = prev_F = None
    for cycle in range(max_cycles):
        X, F = lm_direct(obj, X, lam=2e-3, ck=ck)
        log(f"{name}: cycle {cycle} after LM F = {F:.3e}")
        if F < good_enough:
            break
        if prev_F is not None and F > 0.5 * prev_F:
            break  # LM has flattened out; take what we have
        prev_F = F
        if F < 1e-6:
            continue  # close in, lbfgs only dawdles: keep hammering with LM
        X, F2, nit = lbfgs_stage(obj, X, lbfgs_iters, ck)
        log(f"{name}: cycle {cycle} lbfgs F = {F2:.3e} nit = {nit}")
        if nit < 20 and F2 >= F:
            X, F = lm_direct(obj, X, lam=2e-3, ck=ck)
            break

    Xf = full_set(X, symmetric)
    A = kernel_defects(Xf, t)
    amax = float(A.max())
    log(f"{name}: final F = {F:.3e}  max defect (kernel) = {amax:.3e}")
    if amax <= 8e-10:
        write_design(Xf, DATA_DIR / name)
        meta = dict(name=name, t=t, n=n, symmetric=symmetric, seed=seed,
                    max_defect=amax, relaxed=bool(amax > 1e-11))
        with open(OUT_DIR / f"{name}.json", "w") as fh:
            json.dump(meta, fh, indent=2)
        log(f"{name}: written ({'relaxed' if amax > 1e-11 else 'full'} "
            f"tolerance)")
        return True
    log(f"{name}: NOT written")
    return False


TASKS = {
    "sf050.01302": dict(t=50, n=1302, symmetric=False, rungs=[50],
                        lbfgs_iters=2000),
    "ss063.02050": dict(t=63, n=2050, symmetric=True,
                        rungs=[31, 47, 55, 59, 61, 63]),
    "ss127.08130": dict(t=127, n=8130, symmetric=True,
                        rungs=[63, 95, 111, 119, 123, 125, 127],
                        lbfgs_iters=4000, max_cycles=8),
}


def main():
    names = sys.argv[1:] or list(TASKS)
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    results = {}
    for name in names:
        if (DATA_DIR / name).exists():
            log(f"{name}: already present, skipping")
            results[name] = True
            continue
        results[name] = finish(name, **TASKS[name])
    log(json.dumps(results))
    sys.exit(0 if all(results.values()) else 1)


if __name__ == "__main__":
    main()
