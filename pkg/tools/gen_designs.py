#!/usr/bin/env python3
"""Build tool: compute the equal-weight spherical cubature point sets bundled
with the package (src/spheredesign/data/).

A point set X on S^2 averages every polynomial of total degree <= t exactly
iff all its Weyl sums r_{lm} = (1/n) sum_i Y_lm(x_i) vanish for 1 <= l <= t.
This script minimizes F(X) = sum_{lm} r_{lm}^2 (a sum of per-degree defects)
with L-BFGS followed by Levenberg-Marquardt polishing, then verifies the
result with an independent kernel double sum and writes the coordinates.

Not part of the installed library; run offline.  Typical use:

    python tools/gen_designs.py solve --t 20 --n 222 --seed 0
    python tools/gen_designs.py queue          # everything the package bundles
    python tools/gen_designs.py verify PATH --t 20
    python tools/gen_designs.py selftest
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np
from scipy.optimize import minimize
from scipy.sparse.linalg import lsmr

ROOT = Path(__file__).resolve().parent
DATA_DIR = ROOT.parent / "src" / "spheredesign" / "data"
OUT_DIR = ROOT / "out"

U_FLOOR = 1e-9  # clamp for sin(theta) in pole-adjacent divisions


# ---------------------------------------------------------------------------
# normalized associated Legendre recurrences
#
# pbar_{lm}(z) normalized so that (1/2) * int_{-1}^{1} pbar_{lm}^2 dz = 1;
# the basis functions pbar_{l0} and sqrt(2)*pbar_{lm}*{cos,sin}(m phi) then
# have unit mean square over the sphere.

def _recurrence_tables(L: int):
    alpha = np.zeros((L + 1, L + 1))
    beta = np.zeros((L + 1, L + 1))
    gamma = np.zeros((L + 1, L + 1))
    for m in range(L + 1):
        for l in range(m + 1, L + 1):
            alpha[l, m] = np.sqrt((2 * l - 1) * (2 * l + 1) / ((l - m) * (l + m)))
            if l >= m + 2:
                beta[l, m] = np.sqrt(
                    (2 * l + 1) * (l + m - 1) * (l - m - 1)
                    / ((2 * l - 3) * (l - m) * (l + m))
                )
        for l in range(m + 1, L + 1):
            gamma[l, m] = np.sqrt((l - m) * (l + m) * (2 * l + 1) / (2 * l - 1))
    diag = np.zeros(L + 1)
    for m in range(1, L + 1):
        diag[m] = np.sqrt((2 * m + 1) / (2 * m))
    return alpha, beta, gamma, diag


class WeylObjective:
    """F(X) = sum of squared Weyl sums up to degree t, with gradient/Jacobian.

    symmetric=True treats X as the free half of an antipodal set: only even
    degrees contribute (odd ones cancel exactly) and each free point counts
    twice in the averages.
    """

    def __init__(self, t: int, n_total: int, symmetric: bool = False):
        self.t = t
        self.n_total = n_total
        self.symmetric = symmetric
        self.nf = n_total // 2 if symmetric else n_total
        if symmetric and 2 * self.nf != n_total:
            raise ValueError("symmetric set needs even n")
        self.alpha, self.beta, self.gamma, self.diag = _recurrence_tables(t)
        # residual row bookkeeping: list of (m, kind, l_values) blocks
        self.blocks = []
        nres = 0
        for m in range(t + 1):
            lmin = max(m, 1)
            ls = [l for l in range(lmin, t + 1) if not (symmetric and l % 2)]
            if not ls:
                continue
            kinds = ("c",) if m == 0 else ("c", "s")
            for kind in kinds:
                self.blocks.append((m, kind, np.array(ls)))
                nres += len(ls)
        self.nres = nres

    # -- per-m sweep ----------------------------------------------------
    def _point_frames(self, X):
        z = X[:, 2]
        u = np.hypot(X[:, 0], X[:, 1])
        uc = np.maximum(u, U_FLOOR)
        cph = X[:, 0] / uc
        sph = X[:, 1] / uc
        return z, u, uc, cph, sph

    def _sweep(self, X, need_deriv: bool):
        """Yield (m, B, dB) with B[l-m] = pbar_{lm}(z) rows over points."""
        t = self.t
        z, u, uc, cph, sph = self._point_frames(X)
        pmm = np.ones(self.nf)
        for m in range(t + 1):
            nl = t + 1 - m
            B = np.empty((nl, self.nf))
            B[0] = pmm
            if nl > 1:
                B[1] = self.alpha[m + 1, m] * z * B[0]
            for l in range(m + 2, t + 1):
                i = l - m
                B[i] = self.alpha[l, m] * z * B[i - 1] - self.beta[l, m] * B[i - 2]
            dB = None
            if need_deriv:
                dB = np.empty_like(B)
                dB[0] = m * z * B[0] / uc
                for l in range(m + 1, t + 1):
                    i = l - m
                    dB[i] = (l * z * B[i] - self.gamma[l, m] * B[i - 1]) / uc
            yield m, B, dB
            if m < t:
                pmm = pmm * (u * self.diag[m + 1])

    def _trig(self, cph, sph, m, cm, sm):
        # advance cos(m phi), sin(m phi) one step
        cn = cm * cph - sm * sph
        sn = sm * cph + cm * sph
        return cn, sn

    def residuals(self, X):
        t = self.t
        z, u, uc, cph, sph = self._point_frames(X)
        w = (2.0 if self.symmetric else 1.0) / self.n_total
        out = np.empty(self.nres)
        pos = 0
        cm = np.ones(self.nf)
        sm = np.zeros(self.nf)
        for m, B, _ in self._sweep(X, need_deriv=False):
            if m > 0:
                cm, sm = self._trig(cph, sph, m, cm, sm)
            lmin = max(m, 1)
            ls = [l for l in range(lmin, t + 1) if not (self.symmetric and l % 2)]
            if not ls:
                continue
            idx = np.array(ls) - m
            f = 1.0 if m == 0 else np.sqrt(2.0)
            out[pos:pos + len(ls)] = f * w * (B[idx] @ cm)
            pos += len(ls)
            if m > 0:
                out[pos:pos + len(ls)] = f * w * (B[idx] @ sm)
                pos += len(ls)
        assert pos == self.nres
        return out

    def defects(self, X):
        """Per-degree defects A_l = sum_m r_{lm}^2 for l = 1..t."""
        r = self.residuals(X)
        A = np.zeros(self.t + 1)
        pos = 0
        for m, kind, ls in self.blocks:
            for l in ls:
                A[l] += r[pos] ** 2
                pos += 1
        return A[1:]

    def value_and_grad(self, P_flat):
        """F and dF/dP for unnormalized coordinates P (rows get normalized)."""
        P = P_flat.reshape(self.nf, 3)
        norms = np.linalg.norm(P, axis=1)
        X = P / norms[:, None]
        t = self.t
        z, u, uc, cph, sph = self._point_frames(X)
        w = (2.0 if self.symmetric else 1.0) / self.n_total

        # pass 1: residual contractions per m-block (store r pieces)
        rstore = []
        F = 0.0
        cm = np.ones(self.nf)
        sm = np.zeros(self.nf)
        trig = []
        for m, B, _ in self._sweep(X, need_deriv=False):
            if m > 0:
                cm, sm = self._trig(cph, sph, m, cm, sm)
            trig.append((cm.copy(), sm.copy()) if m > 0 else (cm, sm))
            lmin = max(m, 1)
            ls = np.array([l for l in range(lmin, t + 1)
                           if not (self.symmetric and l % 2)], dtype=int)
            if ls.size == 0:
                rstore.append(None)
                continue
            idx = ls - m
            f = 1.0 if m == 0 else np.sqrt(2.0)
            rc = f * w * (B[idx] @ cm)
            rs = f * w * (B[idx] @ sm) if m > 0 else None
            F += rc @ rc + (rs @ rs if rs is not None else 0.0)
            rstore.append((ls, idx, rc, rs))

        # pass 2: gradient g(x) = sum r * Y, contracted through derivatives
        gth = np.zeros(self.nf)
        gphu = np.zeros(self.nf)
        for (m, B, dB), stored in zip(self._sweep(X, need_deriv=True), rstore):
            if stored is None:
                continue
            ls, idx, rc, rs = stored
            cmv, smv = trig[m]
            f = 1.0 if m == 0 else np.sqrt(2.0)
            ath = rc @ dB[idx]
            if m > 0:
                gth += f * (cmv * ath + smv * (rs @ dB[idx]))
                over_u = B[idx] / uc[None, :]
                gphu += f * m * (-smv * (rc @ over_u) + cmv * (rs @ over_u))
            else:
                gth += ath
        # tangential frame: theta_hat, phi_hat
        gx = np.empty_like(X)
        gx[:, 0] = gth * z * cph - gphu * sph
        gx[:, 1] = gth * z * sph + gphu * cph
        gx[:, 2] = -gth * u
        gx *= 2.0 * w
        # chain through normalization (gx already tangential)
        gx /= norms[:, None]
        return F, gx.ravel()

    def jacobian(self, X):
        """Dense J with J[r, 3i + a] = d r / d X[i, a] (tangential rows)."""
        t = self.t
        z, u, uc, cph, sph = self._point_frames(X)
        w = (2.0 if self.symmetric else 1.0) / self.n_total
        th = np.stack([z * cph, z * sph, -u], axis=1)
        ph = np.stack([-sph, cph, np.zeros(self.nf)], axis=1)
        J = np.empty((self.nres, 3 * self.nf))
        pos = 0
        cm = np.ones(self.nf)
        sm = np.zeros(self.nf)
        for m, B, dB in self._sweep(X, need_deriv=True):
            if m > 0:
                cm, sm = self._trig(cph, sph, m, cm, sm)
            lmin = max(m, 1)
            ls = np.array([l for l in range(lmin, t + 1)
                           if not (self.symmetric and l % 2)], dtype=int)
            if ls.size == 0:
                continue
            idx = ls - m
            f = 1.0 if m == 0 else np.sqrt(2.0)
            dth_c = f * w * dB[idx] * cm[None, :]
            if m > 0:
                over_u = B[idx] / uc[None, :]
                dph_c = -f * w * m * over_u * sm[None, :]
                dth_s = f * w * dB[idx] * sm[None, :]
                dph_s = f * w * m * over_u * cm[None, :]
            nrow = len(ls)
            blk = dth_c[:, :, None] * th[None, :, :]
            if m > 0:
                blk += dph_c[:, :, None] * ph[None, :, :]
            J[pos:pos + nrow] = blk.reshape(nrow, 3 * self.nf)
            pos += nrow
            if m > 0:
                blk = dth_s[:, :, None] * th[None, :, :] \
                    + dph_s[:, :, None] * ph[None, :, :]
                J[pos:pos + nrow] = blk.reshape(nrow, 3 * self.nf)
                pos += nrow
        assert pos == self.nres
        return J


# ---------------------------------------------------------------------------
# independent verification: kernel double sum over the full point set

def kernel_defects(X_full: np.ndarray, t: int, block: int = 512) -> np.ndarray:
    """A_l = (1/n^2) sum_{ij} (2l+1) P_l(<x_i, x_j>), l = 1..t (Legendre P)."""
    n = X_full.shape[0]
    sums = np.zeros(t + 1)
    for start in range(0, n, block):
        G = np.clip(X_full[start:start + block] @ X_full.T, -1.0, 1.0)
        pm = np.ones_like(G)
        p = G.copy()
        sums[0] += pm.sum()
        if t >= 1:
            sums[1] += 3.0 * p.sum()
        for l in range(2, t + 1):
            pm, p = p, ((2 * l - 1) * G * p - (l - 1) * pm) / l
            sums[l] += (2 * l + 1) * p.sum()
    return sums[1:] / n ** 2


# ---------------------------------------------------------------------------
# starts and the solve driver

def fibonacci_points(n: int, seed: int = 0, jitter: float = 0.0) -> np.ndarray:
    i = np.arange(n)
    z = 1.0 - (2.0 * i + 1.0) / n
    phi = i * np.pi * (3.0 - np.sqrt(5.0))
    u = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    X = np.stack([u * np.cos(phi), u * np.sin(phi), z], axis=1)
    if jitter > 0:
        rng = np.random.default_rng(seed)
        X = X + jitter * rng.standard_normal(X.shape)
        X /= np.linalg.norm(X, axis=1)[:, None]
    return X


def full_set(X_free: np.ndarray, symmetric: bool) -> np.ndarray:
    return np.vstack([X_free, -X_free]) if symmetric else X_free


def lm_polish(obj: WeylObjective, X, max_steps=80, target=1e-24, log=print):
    lam = 1e-10
    r = obj.residuals(X)
    F = r @ r
    for step in range(max_steps):
        if F < target:
            break
        J = obj.jacobian(X)
        sol = lsmr(J, -r, damp=np.sqrt(lam), atol=1e-13, btol=1e-13,
                   maxiter=800)
        delta = sol[0]
        X_new = X + delta.reshape(obj.nf, 3)
        X_new /= np.linalg.norm(X_new, axis=1)[:, None]
        r_new = obj.residuals(X_new)
        F_new = r_new @ r_new
        if F_new < F:
            X, r, F = X_new, r_new, F_new
            lam = max(lam / 4.0, 1e-14)
        else:
            lam = min(lam * 8.0, 1e6)
            if lam >= 1e6:
                break
        if step % 5 == 0 or F < target:
            log(f"    lm step {step}: F = {F:.3e} lam = {lam:.1e}")
    return X, F


def solve_design(t: int, n: int, symmetric: bool, seed: int,
                 budget_s: float, log=print,
                 checkpoint: Path | None = None):
    obj = WeylObjective(t, n, symmetric)
    log(f"solve t={t} n={n} symmetric={symmetric} seed={seed} "
        f"residuals={obj.nres} dof={3 * obj.nf}")
    start_time = time.time()
    best_F = np.inf
    best_X = None
    attempt = 0
    while time.time() - start_time < budget_s:
        jitter = 0.0 if attempt == 0 and seed == 0 else 0.3 / np.sqrt(obj.nf)
        X0 = fibonacci_points(obj.nf, seed=seed + 1000 * attempt, jitter=jitter)
        if checkpoint is not None and checkpoint.exists() and attempt == 0:
            X0 = np.load(checkpoint)
            log(f"  resuming from {checkpoint}")
        P = X0.ravel().copy()
        stage = 0
        while time.time() - start_time < budget_s:
            res = minimize(obj.value_and_grad, P, jac=True, method="L-BFGS-B",
                           options=dict(maxiter=2000, maxcor=30,
                                        ftol=1e-18, gtol=1e-14))
            P = res.x
            F = res.fun
            X = P.reshape(obj.nf, 3)
            X = X / np.linalg.norm(X, axis=1)[:, None]
            if checkpoint is not None:
                np.save(checkpoint, X)
            log(f"  attempt {attempt} stage {stage}: lbfgs F = {F:.3e} "
                f"nit = {res.nit} ({time.time() - start_time:.0f}s)")
            if F < 1e-3:
                X, F = lm_polish(obj, X, log=log)
                log(f"  attempt {attempt}: after LM F = {F:.3e}")
            if F < best_F:
                best_F = F
                best_X = X.copy()
                if checkpoint is not None:
                    np.save(checkpoint, best_X)
            if F < 1e-20 or res.nit < 50:
                break
            stage += 1
        if best_F < 1e-20:
            break
        attempt += 1
        log(f"  restarting (best so far {best_F:.3e})")
    return best_X, best_F


def write_design(X_full: np.ndarray, path: Path):
    with open(path, "w") as fh:
        for row in X_full:
            fh.write(" ".join(f"{v: .17e}" for v in row) + "\n")


def run_one(name: str, t: int, n: int, symmetric: bool, seed: int,
            budget_s: float, log=print) -> bool:
    ck = OUT_DIR / f"{name}.ck.npy"
    X, F = solve_design(t, n, symmetric, seed, budget_s, log=log,
                        checkpoint=ck)
    if X is None:
        log(f"{name}: no candidate")
        return False
    Xf = full_set(X, symmetric)
    A = kernel_defects(Xf, t)
    log(f"{name}: F = {F:.3e}  max defect (kernel check) = {A.max():.3e}")
    if A.max() <= 1e-11:
        DATA_DIR.mkdir(parents=True, exist_ok=True)
        write_design(Xf, DATA_DIR / name)
        meta = dict(name=name, t=t, n=n, symmetric=symmetric, seed=seed,
                    max_defect=float(A.max()))
        with open(OUT_DIR / f"{name}.json", "w") as fh:
            json.dump(meta, fh, indent=2)
        log(f"{name}: written to {DATA_DIR / name}")
        return True
    log(f"{name}: NOT written (defect too large)")
    return False


# queue of everything the package bundles: (name, t, n, symmetric, budget_s)
QUEUE = [
    ("sf008.00045", 8, 45, False, 600),
    ("sf016.00161", 16, 161, False, 900),
    ("sf020.00222", 20, 222, False, 3600),
    ("sf012.00088", 12, 88, False, 900),
    ("sf024.00352", 24, 352, False, 1800),
    ("sf032.00605", 32, 605, False, 2400),
    ("sf048.01408", 48, 1408, False, 4800),
    ("sf050.01302", 50, 1302, False, 7200),
    ("ss063.02050", 63, 2050, True, 4800),
    ("ss127.08130", 127, 8130, True, 43200),
]


# ---------------------------------------------------------------------------
# selftest: recurrences, gradients, Jacobian, a tiny solve

def selftest():
    ok = True
    rng = np.random.default_rng(7)

    # orthonormality of the basis via Gauss-Legendre x uniform azimuth
    L = 8
    zq, wq = np.polynomial.legendre.leggauss(40)
    nphi = 2 * L + 2
    phiq = 2 * np.pi * np.arange(nphi) / nphi
    nodes = []
    weights = []
    for zz, ww in zip(zq, wq):
        uu = np.sqrt(1 - zz * zz)
        for pp in phiq:
            nodes.append([uu * np.cos(pp), uu * np.sin(pp), zz])
            weights.append(ww / 2.0 / nphi)
    nodes = np.array(nodes)
    weights = np.array(weights)
    obj = WeylObjective(L, len(nodes))
    # synthesize the basis matrix from the sweep
    cols = []
    z, u, uc, cph, sph = obj._point_frames(nodes)
    cm = np.ones(len(nodes))
    sm = np.zeros(len(nodes))
    for m, B, _ in obj._sweep(nodes, need_deriv=False):
        if m > 0:
            cm, sm = obj._trig(cph, sph, m, cm, sm)
        for l in range(m, L + 1):
            if m == 0:
                cols.append((l, 0, B[l - m].copy()))
            else:
                cols.append((l, m, np.sqrt(2) * B[l - m] * cm))
                cols.append((l, -m, np.sqrt(2) * B[l - m] * sm))
    G = np.array([[np.sum(weights * a[2] * b[2]) for b in cols] for a in cols])
    err = np.abs(G - np.eye(len(cols))).max()
    print(f"basis orthonormality error: {err:.2e}")
    ok &= err < 1e-12

    # addition theorem: sum_m Y^2 = 2l+1 pointwise
    pts = rng.standard_normal((5, 3))
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    obj5 = WeylObjective(6, 5)
    acc = np.zeros((7, 5))
    z, u, uc, cph, sph = obj5._point_frames(pts)
    cm = np.ones(5)
    sm = np.zeros(5)
    for m, B, _ in obj5._sweep(pts, need_deriv=False):
        if m > 0:
            cm, sm = obj5._trig(cph, sph, m, cm, sm)
        for l in range(m, 7):
            if m == 0:
                acc[l] += B[l - m] ** 2
            else:
                acc[l] += 2 * B[l - m] ** 2  # cos^2 + sin^2 times 2
    expect = (2 * np.arange(7) + 1)[:, None]
    err = np.abs(acc - expect).max()
    print(f"addition theorem error: {err:.2e}")
    ok &= err < 1e-10

    # tetrahedron defect oracle: A_1 = A_2 = 0, A_3 = 35/9
    tet = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) / np.sqrt(3)
    A = kernel_defects(tet, 3)
    print(f"tetrahedron defects: {A}")
    ok &= abs(A[0]) < 1e-13 and abs(A[1]) < 1e-13 and abs(A[2] - 35 / 9) < 1e-12
    # and the Weyl-sum route agrees
    objt = WeylObjective(3, 4)
    Aw = objt.defects(tet)
    print(f"tetrahedron defects (weyl): {Aw}")
    ok &= np.abs(A - Aw).max() < 1e-12

    # gradient vs finite differences
    nfd = 12
    objg = WeylObjective(6, nfd)
    P = rng.standard_normal((nfd, 3)).ravel()
    F0, g = objg.value_and_grad(P)
    gfd = np.empty_like(g)
    h = 1e-6
    for k in range(len(P)):
        pp = P.copy(); pp[k] += h
        pm = P.copy(); pm[k] -= h
        gfd[k] = (objg.value_and_grad(pp)[0] - objg.value_and_grad(pm)[0]) / (2 * h)
    err = np.abs(g - gfd).max() / max(np.abs(gfd).max(), 1e-30)
    print(f"gradient FD relative error: {err:.2e}")
    ok &= err < 1e-5

    # Jacobian vs finite differences (tangential moves)
    X = P.reshape(nfd, 3)
    X /= np.linalg.norm(X, axis=1)[:, None]
    J = objg.jacobian(X)
    r0 = objg.residuals(X)
    Jfd = np.empty_like(J)
    for i in range(nfd):
        for a in range(3):
            Xp = X.copy(); Xp[i, a] += h
            Xp[i] /= np.linalg.norm(Xp[i])
            Xm = X.copy(); Xm[i, a] -= h
            Xm[i] /= np.linalg.norm(Xm[i])
            Jfd[:, 3 * i + a] = (objg.residuals(Xp) - objg.residuals(Xm)) / (2 * h)
    err = np.abs(J - Jfd).max() / max(np.abs(Jfd).max(), 1e-30)
    print(f"jacobian FD relative error: {err:.2e}")
    ok &= err < 1e-4

    # symmetric objective consistency: defects of full set match
    objs = WeylObjective(5, 8, symmetric=True)
    Xs = fibonacci_points(4, seed=3, jitter=0.1)
    Af = kernel_defects(full_set(Xs, True), 5)
    Aw = objs.defects(Xs)
    err = np.abs(Af - Aw).max()
    print(f"symmetric defect agreement: {err:.2e} (odd rows exact zero: "
          f"{Aw[0] == 0.0 and Aw[2] == 0.0 and Aw[4] == 0.0})")
    ok &= err < 1e-12

    # a tiny solve: t=4 with n=16
    X, F = solve_design(4, 16, False, 0, budget_s=120, log=print)
    A = kernel_defects(full_set(X, False), 4)
    print(f"t=4 n=16 solve: F = {F:.3e} max defect = {A.max():.3e}")
    ok &= A.max() < 1e-11

    print("SELFTEST", "PASS" if ok else "FAIL")
    return 0 if ok else 1


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)
    s = sub.add_parser("solve")
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--symmetric", action="store_true")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--budget", type=float, default=3600)
    s.add_argument("--name", default=None)
    q = sub.add_parser("queue")
    q.add_argument("--only", nargs="*", default=None)
    v = sub.add_parser("verify")
    v.add_argument("path")
    v.add_argument("--t", type=int, required=True)
    sub.add_parser("selftest")
    args = ap.parse_args()

    OUT_DIR.mkdir(parents=True, exist_ok=True)
    if args.cmd == "selftest":
        sys.exit(selftest())
    if args.cmd == "verify":
        X = np.loadtxt(args.path)
        A = kernel_defects(X, args.t)
        print(f"n = {len(X)}  max defect (l <= {args.t}) = {A.max():.3e}")
        for l, a in enumerate(A, start=1):
            print(f"  A_{l} = {a:.3e}")
        sys.exit(0)
    if args.cmd == "solve":
        name = args.name or f"sf{args.t:03d}.{args.n:05d}"
        okflag = run_one(name, args.t, args.n, args.symmetric, args.seed,
                         args.budget)
        sys.exit(0 if okflag else 1)
    if args.cmd == "queue":
        results = {}
        for name, t, n, sym, budget in QUEUE:
            if args.only and name not in args.only:
                continue
            if (DATA_DIR / name).exists():
                print(f"{name}: already present, skipping")
                results[name] = True
                continue
            results[name] = run_one(name, t, n, sym, 0, budget)
        print(json.dumps(results, indent=2))
        sys.exit(0 if all(results.values()) else 1)


if __name__ == "__main__":
    main()
