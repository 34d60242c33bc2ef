"""Needlet frames: smooth dyadic filters, localized zonal kernels anchored at
cubature nodes, analysis and synthesis, and the empirical estimator built
from samples on a single strong design.

Level j of a system holds a rule exact on polynomials of degree 2^(j+1) - 1;
the needlets at that level are sqrt(weight) times the h-filtered kernel at
scale 2^(j-1).  Level 0 is the constant scaling layer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .designs import CubatureRule, SphericalDesign, builtin_design, load_bundled
from .errors import ConditionError
from .harmonics import CoefficientVector, degree_offsets, dim_eigenspace
from .sphere import PointSet, as_coords, dot
from .specialfn import gegenbauer_normalized_sequence


def _point_block(points, d: int) -> np.ndarray:
    coords = as_coords(points)
    if coords.ndim == 1:
        coords = coords[None, :]
    if coords.ndim != 2 or coords.shape[1] != d + 1:
        raise ConditionError(f"points have shape {coords.shape}, expected "
                             f"(*, {d + 1})")
    return coords


def _transition(u):
    """Smooth step: 0 for u <= 0, 1 for u >= 1, C-infinity in between."""
    u = np.asarray(u, dtype=float)
    out = np.zeros(u.shape)
    out[u >= 1.0] = 1.0
    mid = (u > 0.0) & (u < 1.0)
    if np.any(mid):
        um = u[mid]
        a = np.exp(-1.0 / um)
        b = np.exp(-1.0 / (1.0 - um))
        out[mid] = a / (a + b)
    return out


def filter_h(t):
    """Smooth band filter supported on [1/2, 2] with h = 1 at t = 1.

    Rises as sin(pi/2 * step) on [1/2, 1] and falls as cos(pi/2 * step)
    on [1, 2], so h(t)^2 + h(2t)^2 = 1 holds exactly on [1/2, 1]."""
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape)
    rising = (t > 0.5) & (t <= 1.0)
    if np.any(rising):
        out[rising] = np.sin(0.5 * np.pi * _transition(2.0 * t[rising] - 1.0))
    falling = (t > 1.0) & (t < 2.0)
    if np.any(falling):
        out[falling] = np.cos(0.5 * np.pi * _transition(t[falling] - 1.0))
    return out


def window_low_pass(t):
    """Low-pass companion of filter_h: 1 up to t = 1, h(t)^2 out to t = 2.

    Satisfies the telescoping identity H(t) - H(2t) = h(t)^2, which stacks
    the squared band filters into a single smooth cutoff."""
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape)
    out[t <= 1.0] = 1.0
    mid = (t > 1.0) & (t < 2.0)
    if np.any(mid):
        out[mid] = filter_h(t[mid]) ** 2
    return out


def filter_support_degree(tau: float) -> int:
    """Largest degree kept by a filter at scale tau (filters vanish at 2)."""
    return max(int(math.ceil(2.0 * tau)) - 1, 0)


def filtered_kernel(d: int, tau: float, window, dots) -> np.ndarray:
    """Zonal kernel sum_l window(l / tau) N_l P_l(dots), P_l normalized to 1
    at 1.  Scales below 1 give the constant kernel 1 (only l = 0 survives a
    cutoff under one, and the scaling layer is defined that way)."""
    dots = np.asarray(dots, dtype=float)
    if tau < 0:
        raise ConditionError("filter scale must be nonnegative")
    if tau < 1.0:
        return np.ones(dots.shape)
    lmax = filter_support_degree(tau)
    degs = np.arange(lmax + 1, dtype=float)
    w = np.asarray(window(degs / tau), dtype=float)
    dims = np.array([dim_eigenspace(d, l) for l in range(lmax + 1)], dtype=float)
    flat = dots.reshape(-1)
    out = np.zeros(flat.shape)
    coef = w * dims
    for l, vals in _degree_stream(d, lmax, flat):
        if coef[l] != 0.0:
            out += coef[l] * vals
    return out.reshape(dots.shape)


def _degree_stream(d, lmax, t):
    """Yield (l, normalized Gegenbauer values) one degree at a time."""
    from .harmonics import _gegenbauer_degrees
    return _gegenbauer_degrees(d, lmax, t)


@dataclass(frozen=True)
class NeedletSystem:
    """Cubature rules, one per dyadic level.

    The caller guarantees level j integrates polynomials of degree
    2^(j+1) - 1 exactly; standard_system picks rules that do."""

    d: int
    levels: tuple

    def __post_init__(self):
        if not self.levels:
            raise ConditionError("a needlet system needs at least one level")
        for j, rule in enumerate(self.levels):
            if rule.dim != self.d:
                raise ConditionError(f"level {j} rule lives on S^{rule.dim}, "
                                     f"system is on S^{self.d}")

    @property
    def jmax(self) -> int:
        return len(self.levels) - 1

    def level_size(self, j: int) -> int:
        return len(self.levels[j].points)


_S2_LEVEL_SOURCES = (
    ("tetrahedron", None),
    ("octahedron", None),
    (None, "sf008.00045"),
    (None, "sf016.00161"),
    (None, "sf032.00605"),
    (None, "ss063.02050"),
    (None, "ss127.08130"),
)


def standard_system(d: int, jmax: int) -> NeedletSystem:
    """Bundled rules for levels 0..jmax.

    On the circle level j is the regular 2^(j+1)-gon (exact on one degree
    more than needed, with 2^(j+1) nodes).  On the 2-sphere the levels walk
    a fixed catalog of designs up to strength 127, so jmax <= 6."""
    if jmax < 0:
        raise ConditionError("jmax must be >= 0")
    if d == 1:
        rules = tuple(builtin_design(f"polygon({2 ** (j + 1)})").rule()
                      for j in range(jmax + 1))
    elif d == 2:
        if jmax >= len(_S2_LEVEL_SOURCES):
            raise ConditionError(
                f"no bundled rule is strong enough for level {jmax} "
                f"(levels run 0..{len(_S2_LEVEL_SOURCES) - 1})")
        rules = []
        for name, bundled in _S2_LEVEL_SOURCES[:jmax + 1]:
            des = builtin_design(name) if name else load_bundled(bundled)
            rules.append(des.rule())
        rules = tuple(rules)
    else:
        raise ConditionError(f"no bundled systems for d = {d}")
    return NeedletSystem(d, rules)


def level_scale(j: int) -> float:
    """Filter scale of level j: 2^(j-1), so level 0 sits below the cutoff
    and degenerates to the constant kernel."""
    return 2.0 ** (j - 1)


def needlet_eval(system: NeedletSystem, j: int, k: int, points) -> np.ndarray:
    """Values of one needlet at the given points."""
    rule = system.levels[j]
    anchor = rule.points.coords[k]
    coords = _point_block(points, system.d)
    dots = coords @ anchor
    vals = filtered_kernel(system.d, level_scale(j), filter_h, dots)
    return math.sqrt(rule.weights[k]) * vals


@dataclass(frozen=True)
class NeedletCoefficients:
    """Frame coefficients grouped by level."""

    d: int
    levels: tuple

    @property
    def jmax(self) -> int:
        return len(self.levels) - 1

    def level_norms(self, r: float) -> np.ndarray:
        """The l_r norm of each level's coefficient block (r = inf -> max)."""
        out = np.empty(len(self.levels))
        for j, beta in enumerate(self.levels):
            a = np.abs(np.asarray(beta, dtype=float))
            if math.isinf(r):
                out[j] = a.max() if a.size else 0.0
            else:
                out[j] = float(np.sum(a ** r) ** (1.0 / r))
        return out


def _filtered_coefficients(f: CoefficientVector, tau: float) -> CoefficientVector:
    """Multiply each degree block by h(l / tau)."""
    offs = degree_offsets(f.d, f.max_degree)
    vals = f.values.copy()
    if tau < 1.0:
        factors = np.zeros(f.max_degree + 1)
        factors[0] = 1.0
    else:
        factors = filter_h(np.arange(f.max_degree + 1, dtype=float) / tau)
    for l in range(f.max_degree + 1):
        vals[offs[l]:offs[l + 1]] *= factors[l]
    return CoefficientVector(f.d, f.max_degree, vals)


def needlet_coeffs(f, system: NeedletSystem, jmax: int | None = None,
                   reference: CubatureRule | None = None) -> NeedletCoefficients:
    """Analysis coefficients beta_jk = integral of f times the needlet.

    A band-limited f (a CoefficientVector) is handled exactly by filtering
    its degree blocks and evaluating at the anchors, no quadrature involved.
    A plain callable needs an explicit reference rule exact on its products
    with the finest-level needlets."""
    if jmax is None:
        jmax = system.jmax
    if jmax > system.jmax:
        raise ConditionError(f"system has levels 0..{system.jmax}, "
                             f"asked for {jmax}")
    levels = []
    if isinstance(f, CoefficientVector):
        if f.d != system.d:
            raise ConditionError("function and system dimensions differ")
        for j in range(jmax + 1):
            rule = system.levels[j]
            filtered = _filtered_coefficients(f, level_scale(j))
            levels.append(np.sqrt(rule.weights)
                          * filtered.evaluate(rule.points))
    else:
        if reference is None:
            raise ConditionError("a callable f needs a reference rule for "
                                 "the analysis integrals")
        f_ref = np.asarray(f(reference.points.coords), dtype=float)
        wf = reference.weights * f_ref
        for j in range(jmax + 1):
            rule = system.levels[j]
            dots = dot(rule.points, reference.points)
            ker = filtered_kernel(system.d, level_scale(j), filter_h, dots)
            levels.append(np.sqrt(rule.weights) * (ker @ wf))
    return NeedletCoefficients(system.d, tuple(levels))


def needlet_reconstruct(coeffs: NeedletCoefficients, system: NeedletSystem,
                        points) -> np.ndarray:
    """Synthesis sum over all stored levels at the given points.

    Reproduces f exactly when f is band-limited below the finest scale
    2^(jmax - 1); higher degrees come back tapered by the low-pass window."""
    if coeffs.jmax > system.jmax:
        raise ConditionError("coefficients have more levels than the system")
    coords = _point_block(points, system.d)
    out = np.zeros(coords.shape[0])
    for j, beta in enumerate(coeffs.levels):
        rule = system.levels[j]
        dots = coords @ rule.points.coords.T
        ker = filtered_kernel(system.d, level_scale(j), filter_h, dots)
        out += ker @ (np.sqrt(rule.weights) * np.asarray(beta, dtype=float))
    return out


def empirical_needlet_approx(f_vals, design: SphericalDesign, jmax: int,
                             points) -> np.ndarray:
    """Kernel smoother (1/n) sum_i f(x_i) K(x_i, x) with the low-pass window
    at scale 2^(jmax - 1).

    When the design strength reaches 3 * 2^jmax this equals the needlet
    expansion with coefficients estimated by the same node average, level by
    level up to jmax; below that strength the identity fails and the call
    refuses."""
    if design.strength < 3 * 2 ** jmax:
        raise ConditionError(
            f"design strength {design.strength} < 3 * 2^{jmax} = "
            f"{3 * 2 ** jmax}; the empirical expansion is not exact")
    f_vals = np.asarray(f_vals, dtype=float)
    if f_vals.shape != (design.n,):
        raise ConditionError(f"f_vals has shape {f_vals.shape}, expected "
                             f"({design.n},)")
    coords = _point_block(points, design.dim)
    dots = coords @ design.points.coords.T
    ker = filtered_kernel(design.dim, level_scale(jmax), window_low_pass, dots)
    return ker @ f_vals / design.n


def empirical_needlet_coeffs(f_vals, design: SphericalDesign,
                             system: NeedletSystem,
                             jmax: int | None = None) -> NeedletCoefficients:
    """Node-average estimates of the analysis coefficients:
    (1/n) sum_i f(x_i) psi_jk(x_i)."""
    if jmax is None:
        jmax = system.jmax
    if jmax > system.jmax:
        raise ConditionError(f"system has levels 0..{system.jmax}, "
                             f"asked for {jmax}")
    if system.d != design.dim:
        raise ConditionError("design and system dimensions differ")
    f_vals = np.asarray(f_vals, dtype=float)
    if f_vals.shape != (design.n,):
        raise ConditionError(f"f_vals has shape {f_vals.shape}, expected "
                             f"({design.n},)")
    levels = []
    for j in range(jmax + 1):
        rule = system.levels[j]
        dots = dot(rule.points, design.points)
        ker = filtered_kernel(system.d, level_scale(j), filter_h, dots)
        levels.append(np.sqrt(rule.weights) * (ker @ f_vals) / design.n)
    return NeedletCoefficients(system.d, tuple(levels))
