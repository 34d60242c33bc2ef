"""Sobolev and Besov norms with hand-checked small cases, plus the exact
normalization of the generated test functions."""
import math

import numpy as np
import pytest

from spheredesign.errors import ConditionError
from spheredesign.harmonics import CoefficientVector, dim_poly_space
from spheredesign.needlets import needlet_coeffs, standard_system
from spheredesign.spaces import (besov_embedding_check, besov_level_energies,
                                 besov_norm, besov_norm_from_harmonic,
                                 levels_for_band, make_besov_function,
                                 make_sobolev_function, sobolev_norm)


def random_coeffs(d, L, seed):
    rng = np.random.default_rng(seed)
    return CoefficientVector(d, L, rng.standard_normal(dim_poly_space(d, L)))


# ---------------------------------------------------------------------------
# Sobolev


def test_sobolev_norm_single_degree():
    # one degree-2 coefficient c: norm = |c| (1 + 6)^(s/2) on S^2
    vals = np.zeros(9)
    vals[5] = -2.0
    c = CoefficientVector(2, 2, vals)
    assert sobolev_norm(c, 1.5) == pytest.approx(2.0 * 7.0 ** 0.75, rel=1e-13)


def test_sobolev_norm_s_zero_is_l2(rng):
    c = CoefficientVector(2, 4, rng.standard_normal(25))
    assert sobolev_norm(c, 0.0) == pytest.approx(c.l2_norm(), rel=1e-13)


def test_make_sobolev_gates():
    with pytest.raises(ConditionError, match="exceed d/2"):
        make_sobolev_function(2, 1.0, 1.0, 5, seed=0)
    with pytest.raises(ConditionError, match="radius"):
        make_sobolev_function(2, 2.0, 0.0, 5, seed=0)
    with pytest.raises(ConditionError, match="profile"):
        make_sobolev_function(2, 2.0, 1.0, 5, seed=0, profile="flat")


@pytest.mark.parametrize("profile", ["random", "extremal"])
def test_make_sobolev_norm_is_exact(profile):
    f = make_sobolev_function(2, 2.0, 3.0, 8, seed=42, profile=profile)
    assert sobolev_norm(f, 2.0) == pytest.approx(3.0, rel=1e-12)


def test_sobolev_extremal_structure():
    f = make_sobolev_function(2, 2.0, 1.0, 6, seed=0, profile="extremal")
    assert f.max_degree == 7
    energies = f.degree_energies()
    assert np.all(energies[:7] == 0.0)
    assert energies[7] > 0.0
    # all mass at degree 7: the L2 norm is radius / (1 + 56)^(s/2)
    assert f.l2_norm() == pytest.approx(1.0 / 57.0, rel=1e-12)


def test_sobolev_random_fills_band_deterministically():
    a = make_sobolev_function(2, 2.0, 1.0, 6, seed=5)
    b = make_sobolev_function(2, 2.0, 1.0, 6, seed=5)
    c = make_sobolev_function(2, 2.0, 1.0, 6, seed=5, index=1)
    assert np.array_equal(a.values, b.values)
    assert not np.array_equal(a.values, c.values)
    assert np.all(a.degree_energies() > 0.0)


# ---------------------------------------------------------------------------
# Besov


def test_besov_norm_hand_case():
    levels = (np.array([1.5]), np.array([3.0, -4.0]))
    # s = 2, r = 2, d = 2: exponent s - d/r + d/2 = 2, level weight 2^(2j)
    assert besov_norm(levels, 2.0, 2.0, 1.0, 2) == \
        pytest.approx(1.5 + 4.0 * 5.0, rel=1e-13)
    assert besov_norm(levels, 2.0, 2.0, float("inf"), 2) == \
        pytest.approx(20.0, rel=1e-13)
    # r = 1 changes both the block norm and the weight exponent
    w1 = 2.0 ** (2.0 - 2.0 / 1.0 + 1.0)
    assert besov_norm(levels, 2.0, 1.0, 1.0, 2) == \
        pytest.approx(1.5 + w1 * 7.0, rel=1e-13)
    # r = inf: block sup with weight exponent s + d/2
    winf = 2.0 ** (2.0 + 1.0)
    assert besov_norm(levels, 2.0, float("inf"), 1.0, 2) == \
        pytest.approx(1.5 + winf * 4.0, rel=1e-13)


def test_besov_norm_accepts_coefficient_object():
    from spheredesign.needlets import NeedletCoefficients
    levels = (np.array([2.0]), np.array([1.0, 2.0, 2.0]))
    obj = NeedletCoefficients(2, levels)
    assert besov_norm(obj, 1.5, 2.0, 2.0, 2) == \
        pytest.approx(besov_norm(levels, 1.5, 2.0, 2.0, 2))
    with pytest.raises(ConditionError):
        besov_norm(obj, 1.5, 2.0, 2.0, 1)


def test_level_energies_match_needlet_analysis():
    """The spectral shortcut for r = 2 must equal the literal sum of squared
    analysis coefficients, level by level."""
    f = random_coeffs(2, 8, 31)
    jmax = levels_for_band(8)
    system = standard_system(2, jmax)
    coeffs = needlet_coeffs(f, system)
    direct = np.array([float(np.sum(np.asarray(b) ** 2))
                       for b in coeffs.levels])
    shortcut = besov_level_energies(f, jmax)
    np.testing.assert_allclose(shortcut, direct, rtol=1e-10, atol=1e-14)


def test_besov_norm_from_harmonic_consistency():
    f = random_coeffs(2, 6, 33)
    system = standard_system(2, levels_for_band(6))
    via_needlets = besov_norm(needlet_coeffs(f, system), 1.8, 2.0, 3.0, 2)
    assert besov_norm_from_harmonic(f, 1.8, 3.0) == \
        pytest.approx(via_needlets, rel=1e-11)


def test_levels_for_band_values():
    assert [levels_for_band(b) for b in (1, 2, 3, 8, 9, 16)] == \
        [1, 2, 2, 4, 4, 5]


@pytest.mark.parametrize("d,r", [(2, 2.0), (2, 4.0), (1, 1.0),
                                 (2, float("inf"))])
def test_make_besov_norm_is_exact(d, r):
    band = 6 if d == 2 else 10
    f = make_besov_function(d, 2.0, r, 2.5, band, seed=9)
    system = standard_system(d, levels_for_band(f.max_degree))
    got = besov_norm(needlet_coeffs(f, system), 2.0, r, r, d)
    assert got == pytest.approx(2.5, rel=1e-10)


def test_make_besov_q_override():
    f = make_besov_function(2, 2.0, 2.0, 1.0, 5, seed=3, q=float("inf"))
    assert besov_norm_from_harmonic(f, 2.0, float("inf")) == \
        pytest.approx(1.0, rel=1e-11)


def test_make_besov_profiles_and_determinism():
    a = make_besov_function(2, 2.0, 2.0, 1.0, 5, seed=4)
    b = make_besov_function(2, 2.0, 2.0, 1.0, 5, seed=4)
    assert np.array_equal(a.values, b.values)
    ext = make_besov_function(2, 2.0, 2.0, 1.0, 5, seed=4,
                              profile="extremal")
    assert ext.max_degree == 6
    assert np.all(ext.degree_energies()[:6] == 0.0)
    with pytest.raises(ConditionError):
        make_besov_function(2, 2.0, 2.0, 1.0, 5, seed=0, profile="spiky")
    with pytest.raises(ConditionError):
        make_besov_function(2, 2.0, 2.0, -1.0, 5, seed=0)


# ---------------------------------------------------------------------------
# embedding


def test_embedding_rejects_small_r():
    with pytest.raises(ConditionError):
        besov_embedding_check((np.array([1.0]),), 2.0, 1.5, 2.0, 2)


def test_embedding_hand_case():
    levels = (np.array([1.0]), np.array([2.0, 2.0]))
    rep = besov_embedding_check(levels, 2.0, 4.0, 1.0, 2)
    assert rep.constant == pytest.approx(2.0 ** 0.25, rel=1e-13)
    assert rep.ok
    assert rep.norm_r2 <= rep.bound


def test_embedding_holds_on_random_levels(rng):
    levels = tuple(rng.standard_normal(2 ** j) for j in range(5))
    for r in (2.0, 3.0, 8.0, float("inf")):
        rep = besov_embedding_check(levels, 1.7, r, 2.5, 2)
        assert rep.ok
        assert rep.norm_r2 <= rep.bound * (1.0 + 1e-12)
