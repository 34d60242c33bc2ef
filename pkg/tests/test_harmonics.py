"""Orthonormality, the addition theorem, and coefficient bookkeeping.

Integrals are checked with product reference rules, which are built from
Gauss-Legendre nodes and are independent of the basis recurrences.
"""
import math

import numpy as np
import pytest

from spheredesign.designs import reference_rule
from spheredesign.errors import ConditionError
from spheredesign.harmonics import (CoefficientVector, basis_mean_squares,
                                    degree_offsets, dim_eigenspace,
                                    dim_poly_space, enumerate_pairs,
                                    eigenvalue, eval_basis, pair_index,
                                    zonal_degree_totals, zonal_kernel,
                                    zonal_sum)
from spheredesign.sphere import sample_uniform


def test_eigenspace_dimensions():
    # d = 2: 2l + 1; d = 1: two per positive degree
    assert [dim_eigenspace(2, l) for l in range(5)] == [1, 3, 5, 7, 9]
    assert [dim_eigenspace(1, l) for l in range(4)] == [1, 2, 2, 2]
    # d = 3 values satisfy the (l+1)^2 pattern
    assert [dim_eigenspace(3, l) for l in range(4)] == [1, 4, 9, 16]


def test_poly_space_dimensions():
    for L in range(8):
        assert dim_poly_space(2, L) == (L + 1) ** 2
        assert dim_poly_space(1, L) == 1 + 2 * L
    assert dim_poly_space(2, 0) == 1


def test_eigenvalue_values():
    assert eigenvalue(2, 0) == 0
    assert eigenvalue(2, 10) == 110
    assert eigenvalue(1, 3) == 9
    with pytest.raises(ConditionError):
        eigenvalue(2, -1)


def test_degree_offsets_partition():
    offs = degree_offsets(2, 6)
    assert offs[0] == 0
    assert offs[-1] == dim_poly_space(2, 6)
    assert all(offs[l + 1] - offs[l] == dim_eigenspace(2, l)
               for l in range(7))


def test_pair_enumeration_round_trip():
    for d in (1, 2):
        pairs = enumerate_pairs(d, 5)
        assert len(pairs) == dim_poly_space(d, 5)
        for idx, (l, m) in enumerate(pairs):
            assert pair_index(d, l, m) == idx


def test_pair_index_rejects_bad_labels():
    with pytest.raises(ConditionError):
        pair_index(2, 3, 4)
    with pytest.raises(ConditionError):
        pair_index(1, 2, 0)


@pytest.mark.parametrize("d,L", [(1, 12), (2, 10)])
def test_basis_orthonormal(d, L):
    ref = reference_rule(d, 2 * L)
    X = eval_basis(d, L, ref.points)
    gram = (X * ref.weights[:, None]).T @ X
    dev = np.abs(gram - np.eye(X.shape[1])).max()
    assert dev < 1e-12


def test_basis_first_column_constant():
    pts = sample_uniform(2, 17, seed=4)
    X = eval_basis(2, 6, pts)
    np.testing.assert_allclose(X[:, 0], 1.0, atol=0.0)


def test_basis_single_point_promotes():
    row = eval_basis(2, 3, np.array([0.0, 0.0, 1.0]))
    assert row.shape == (1, 16)


def test_basis_rejects_wrong_ambient():
    with pytest.raises(ConditionError):
        eval_basis(2, 3, np.zeros((4, 2)))


def test_basis_finite_at_poles():
    # the azimuth is undefined at the poles; values must stay finite and
    # the zonal column must dominate
    poles = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]])
    X = eval_basis(2, 8, poles)
    assert np.all(np.isfinite(X))
    offs = degree_offsets(2, 8)
    for l in range(1, 9):
        block = X[:, offs[l]:offs[l + 1]]
        nonzonal = np.delete(block, l, axis=1)
        assert np.abs(nonzonal).max() < 1e-12


def test_addition_theorem():
    # sum_m Y_lm(x) Y_lm(y) equals the zonal kernel, pointwise
    x = sample_uniform(2, 9, seed=11)
    y = sample_uniform(2, 7, seed=12)
    L = 7
    Xx = eval_basis(2, L, x)
    Xy = eval_basis(2, L, y)
    offs = degree_offsets(2, L)
    for l in range(L + 1):
        sl = slice(offs[l], offs[l + 1])
        direct = Xx[:, sl] @ Xy[:, sl].T
        kern = zonal_kernel(2, l, x, y)
        np.testing.assert_allclose(direct, kern, atol=1e-11)


def test_zonal_sum_is_weighted_stack():
    g = np.linspace(-1.0, 1.0, 25)
    w = np.array([0.5, 0.0, 2.0, -1.0])
    acc = sum(w[l] * dim_eigenspace(2, l)
              * np.polynomial.legendre.legval(g, np.eye(4)[l])
              for l in range(4))
    np.testing.assert_allclose(zonal_sum(2, w, g), acc, atol=1e-12)
    assert isinstance(zonal_sum(2, w, 0.5), float)


def test_zonal_degree_totals_match_kernel():
    pts = sample_uniform(2, 30, seed=5)
    g = np.clip(pts.coords @ pts.coords.T, -1.0, 1.0)
    totals = zonal_degree_totals(2, 6, g)
    for l in range(7):
        direct = zonal_kernel(2, l, pts, pts).sum()
        assert totals[l] == pytest.approx(direct, rel=1e-10, abs=1e-9)


@pytest.mark.parametrize("d,n", [(1, 40), (2, 60)])
def test_basis_mean_squares_matches_double_sum(d, n):
    """The O(n lmax^2) node-average route must agree with the O(n^2 lmax)
    kernel double sum; the two share no recurrence."""
    pts = sample_uniform(d, n, seed=9)
    lmax = 12
    fast = basis_mean_squares(d, lmax, pts)
    g = np.clip(pts.coords @ pts.coords.T, -1.0, 1.0)
    slow = zonal_degree_totals(d, lmax, g) / n ** 2
    np.testing.assert_allclose(fast, slow, atol=1e-12)
    assert fast[0] == pytest.approx(1.0, abs=1e-14)


def test_basis_mean_squares_rejects_high_dim():
    with pytest.raises(NotImplementedError):
        basis_mean_squares(3, 4, sample_uniform(3, 5, seed=0))


# ---------------------------------------------------------------------------
# coefficient vectors


def test_coefficient_vector_validates_length():
    with pytest.raises(ConditionError):
        CoefficientVector(2, 2, np.ones(5))


def test_degree_energies_and_slices():
    vals = np.arange(9, dtype=float)
    c = CoefficientVector(2, 2, vals)
    e = c.degree_energies()
    assert e.shape == (3,)
    assert e[0] == 0.0
    assert e[1] == pytest.approx(1.0 + 4.0 + 9.0)
    assert np.array_equal(vals[c.degree_slice(2)], vals[4:])
    with pytest.raises(ConditionError):
        c.degree_slice(3)


def test_project_and_pad():
    c = CoefficientVector(2, 2, np.arange(9, dtype=float))
    p = c.project(1)
    assert p.max_degree == 1
    assert np.array_equal(p.values, np.arange(4, dtype=float))
    assert c.project(5) is c
    q = p.pad(3)
    assert q.max_degree == 3
    assert q.values.size == 16
    assert np.array_equal(q.values[:4], p.values)
    assert np.all(q.values[4:] == 0.0)
    with pytest.raises(ConditionError):
        c.pad(1)


def test_evaluate_parseval(rng):
    c = CoefficientVector(2, 5, rng.standard_normal(36))
    ref = reference_rule(2, 10)
    vals = c.evaluate(ref.points)
    integral = float(ref.weights @ vals ** 2)
    assert integral == pytest.approx(c.l2_norm() ** 2, rel=1e-12)
    assert c.l2_norm() == pytest.approx(np.linalg.norm(c.values))


def test_evaluate_matches_manual_harmonic():
    # Y_{1,0} = sqrt(3) z in this normalization: mean square 1 on S^2
    c = CoefficientVector(2, 1, np.array([0.0, 0.0, 1.0, 0.0]))
    pts = sample_uniform(2, 25, seed=2)
    np.testing.assert_allclose(c.evaluate(pts),
                               math.sqrt(3.0) * pts.coords[:, 2],
                               atol=1e-13)
