"""Unit tests for finite local algebras, ideals and multiplicative sets."""
import numpy as np
import pytest

from closurelab.algebra import (
    Algebra,
    check_algebra,
    enumerate_all_ideals,
    ideal,
    ideal_annihilator,
    ideal_colon,
    ideal_power,
    ideal_product,
    ideal_sum,
    is_gorenstein,
    maximal_ideal,
    saturate,
    unit_ideal,
    zero_ideal,
)


def test_shipped_algebras_pass(algebras):
    for name, a in algebras:
        rep = check_algebra(a)
        assert rep.passed, f"{name}: {rep.failures}"


def test_nilpotency_indices(a_x2, a_x3, a_xy):
    assert check_algebra(a_x2).nilpotency_index == 2
    assert check_algebra(a_x3).nilpotency_index == 3
    assert check_algebra(a_xy).nilpotency_index == 2


def test_gorenstein_flags(a_x2, a_x3, a_xy):
    # principal hypersurfaces have a 1-dimensional socle, the fat point does not
    assert is_gorenstein(a_x2)
    assert is_gorenstein(a_x3)
    assert not is_gorenstein(a_xy)


def test_non_nilpotent_table_rejected():
    # x*x = 1 makes x a unit outside the span of 1, so m is not nilpotent
    mult = np.zeros((2, 2, 2), dtype=np.int64)
    mult[0, 0, 0] = 1
    mult[0, 1, 1] = 1
    mult[1, 0, 1] = 1
    mult[1, 1, 0] = 1
    rep = check_algebra(Algebra(2, 2, ("1", "x"), mult))
    assert not rep.passed
    assert any("nilpotent" in f for f in rep.failures)


def test_multiply_matches_element_matrix(a_x3):
    rng = np.random.default_rng(5)
    for _ in range(20):
        u = rng.integers(0, 2, size=3).astype(np.int64)
        v = rng.integers(0, 2, size=3).astype(np.int64)
        assert np.array_equal(
            a_x3.multiply(u, v), a_x3.element_matrix(u).apply(v)
        )
        assert np.array_equal(a_x3.multiply(u, v), a_x3.multiply(v, u))


def test_power(a_x3):
    x = a_x3.basis_vector(1)
    assert np.array_equal(a_x3.power(x, 2), a_x3.basis_vector(2))
    assert not a_x3.power(x, 3).any()
    assert np.array_equal(a_x3.power(x, 1), x)
    assert np.array_equal(a_x3.power(x, 0), a_x3.unit())


def test_unit_detection(a_x3):
    assert a_x3.is_unit(a_x3.unit())
    assert a_x3.is_unit((a_x3.unit() + a_x3.basis_vector(1)) % 2)
    assert not a_x3.is_unit(a_x3.basis_vector(1))


def test_socle(a_x3, a_xy):
    assert a_x3.socle_space().basis_vectors()[0][2] == 1
    assert a_x3.socle_space().dim == 1
    assert a_xy.socle_space().dim == 2  # all of m


def test_ideal_colon_brute_force(a_x3):
    i = ideal(a_x3, [a_x3.basis_vector(2)])      # (x^2)
    j = ideal(a_x3, [a_x3.basis_vector(1)])      # (x)
    col = ideal_colon(i, j)
    # oracle: every element r with rJ <= I
    expected = [
        r for r in a_x3.elements()
        if all(i.contains(a_x3.multiply(r, g)) for g in j.generators())
    ]
    for r in expected:
        assert col.contains(r)
    assert col.dim == 2  # (x^2 : x) = (x)


def test_ideal_arithmetic(a_x3):
    m = maximal_ideal(a_x3)
    assert ideal_product(m, m).dim == 1
    assert ideal_power(m, 3) == zero_ideal(a_x3)
    assert ideal_sum(zero_ideal(a_x3), m) == m
    assert ideal_annihilator(m).dim == 1
    assert unit_ideal(a_x3).dim == 3


def test_enumerate_all_ideals(a_x3, a_xy):
    chain = enumerate_all_ideals(a_x3)
    assert sorted(i.dim for i in chain) == [0, 1, 2, 3]
    fat = enumerate_all_ideals(a_xy)
    # 0, three lines in the socle, m, R
    assert sorted(i.dim for i in fat) == [0, 1, 1, 1, 2, 3]


def test_saturation_dichotomy(a_x3):
    w_nil = saturate(a_x3, [a_x3.basis_vector(1)])
    assert w_nil.contains_zero and not w_nil.units_only
    w_unit = saturate(a_x3, [(a_x3.unit() + a_x3.basis_vector(1)) % 2])
    assert w_unit.units_only and not w_unit.contains_zero
    # Artinian local: never both, never neither
    assert w_nil.contains_zero != w_nil.units_only
    assert w_unit.contains_zero != w_unit.units_only


def test_saturation_closed_under_products(a_x3):
    w = saturate(a_x3, [(a_x3.unit() + a_x3.basis_vector(1)) % 2])
    vecs = w.saturation_vectors()
    keys = {v.tobytes() for v in vecs}
    for u in vecs:
        for v in vecs:
            assert a_x3.multiply(u, v).tobytes() in keys
