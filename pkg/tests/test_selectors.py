"""Closed-form oracles for the builtin selectors."""
import numpy as np
import pytest

from closurelab.algebra import ideal, maximal_ideal, saturate, zero_ideal
from closurelab.duality import injective_hull
from closurelab.modrep import (
    Submodule,
    ideal_times_module,
    quotient,
    regular_module,
    socle,
    submodule_generated,
)
from closurelab.selectors import (
    Selector,
    adic_kernel_selector,
    ann_selector,
    divisible_selector,
    finitistic,
    frobenius_stable_power,
    frobenius_star_selector,
    h0_selector,
    identity_selector,
    join,
    meet,
    mul_selector,
    selectors_agree,
    smile,
    socle_selector,
    tom_selector,
    torsion_selector,
    trace_selector,
    zero_selector,
)


def _k(a):
    r = regular_module(a)
    q, _ = quotient(r, Submodule(r, maximal_ideal(a).space))
    return q


def test_trace_of_simple_is_socle(batteries):
    for _, b in batteries:
        k = _k(b.algebra)
        tr = trace_selector(k, name="trace(k)")
        soc = socle_selector()
        ok, why = selectors_agree(tr, soc, b.modules)
        assert ok, why


def test_trace_of_ring_is_identity(b_x3):
    tr = trace_selector(regular_module(b_x3.algebra))
    ok, why = selectors_agree(tr, identity_selector(), b_x3.modules)
    assert ok, why


def test_tom_of_simple_is_m_times(batteries):
    for _, b in batteries:
        mx = maximal_ideal(b.algebra)
        to = tom_selector(_k(b.algebra))
        mul = mul_selector(mx)
        ok, why = selectors_agree(to, mul, b.modules)
        assert ok, why


def test_tom_of_ring_is_zero(b_x3):
    # 1 (x) z = 0 forces z = 0
    to = tom_selector(regular_module(b_x3.algebra))
    ok, why = selectors_agree(to, zero_selector(), b_x3.modules)
    assert ok, why


def test_mul_ann_closed_forms(b_x3):
    a = b_x3.algebra
    r = regular_module(a)
    mx = maximal_ideal(a)
    assert mul_selector(mx)(r) == Submodule(r, mx.space)
    assert ann_selector(mx)(r) == socle(r)
    i = ideal(a, [a.basis_vector(2)])
    assert mul_selector(i)(r) == ideal_times_module(r, i)


def test_h0_and_adic_at_m(batteries):
    # m is nilpotent: the m-power torsion is everything, the adic kernel nothing
    for _, b in batteries:
        mx = maximal_ideal(b.algebra)
        ok, why = selectors_agree(h0_selector(mx), identity_selector(), b.modules)
        assert ok, why
        ok, why = selectors_agree(adic_kernel_selector(mx), zero_selector(), b.modules)
        assert ok, why


def test_h0_and_adic_at_zero_ideal(b_x3):
    # 0^n = 0 annihilates everything: full torsion, empty adic kernel
    z = zero_ideal(b_x3.algebra)
    ok, why = selectors_agree(h0_selector(z), identity_selector(), b_x3.modules)
    assert ok, why
    ok, why = selectors_agree(adic_kernel_selector(z), zero_selector(), b_x3.modules)
    assert ok, why


def test_frobenius_star_anchor(a_x2):
    # over F_2[x]/(x^2): 0*_R = (x), 0*_E is the 1-dim socle
    star = frobenius_star_selector(a_x2)
    r = regular_module(a_x2)
    assert star(r) == submodule_generated(r, [a_x2.basis_vector(1)])
    assert star(injective_hull(a_x2)).dim == 1
    assert frobenius_stable_power(a_x2) == 2


def test_frobenius_star_brute_force(algebras):
    # oracle on R itself: flat vectors u with u^q = 0 under plain ring powers
    for _, a in algebras:
        star = frobenius_star_selector(a)
        r = regular_module(a)
        q = frobenius_stable_power(a)
        nil = [u for u in a.elements() if not a.power(u, q).any()]
        sp = submodule_generated(r, nil)
        assert star(r) == sp


def test_torsion_divisible_degenerations(b_x3):
    a = b_x3.algebra
    w_nil = saturate(a, [a.basis_vector(1)])
    w_unit = saturate(a, [(a.unit() + a.basis_vector(1)) % 2])
    ok, why = selectors_agree(torsion_selector(w_nil), identity_selector(), b_x3.modules)
    assert ok, why
    ok, why = selectors_agree(divisible_selector(w_nil), zero_selector(), b_x3.modules)
    assert ok, why
    ok, why = selectors_agree(torsion_selector(w_unit), zero_selector(), b_x3.modules)
    assert ok, why
    ok, why = selectors_agree(divisible_selector(w_unit), identity_selector(), b_x3.modules)
    assert ok, why


def test_finitistic_with_full_cap_recovers(b_x3):
    soc = socle_selector()
    fin = finitistic(soc, cap=b_x3.algebra.dim + 4)
    ok, why = selectors_agree(fin, soc, b_x3.modules)
    assert ok, why
    with pytest.raises(ValueError):
        finitistic(soc, cap=0)


def test_smile_closed_form(b_x3):
    # smile(ann(m)) = mul(m), smile(zero) = id
    mx = maximal_ideal(b_x3.algebra)
    ok, why = selectors_agree(smile(ann_selector(mx)), mul_selector(mx), b_x3.modules)
    assert ok, why
    ok, why = selectors_agree(smile(zero_selector()), identity_selector(), b_x3.modules)
    assert ok, why


def test_join_meet_lattice(b_x3):
    soc = socle_selector()
    mx = maximal_ideal(b_x3.algebra)
    mul = mul_selector(mx)
    ok, why = selectors_agree(join(soc, soc), soc, b_x3.modules)
    assert ok, why
    ok, why = selectors_agree(meet(soc, soc), soc, b_x3.modules)
    assert ok, why
    # soc <= mul(m) fails in general but both bound join/meet
    for name, m in b_x3.modules:
        j = join(soc, mul)(m)
        mt = meet(soc, mul)(m)
        assert mt <= j
        assert soc(m) <= j and mul(m) <= j
        assert mt <= soc(m) and mt <= mul(m)


def test_selector_rejects_foreign_submodule(b_x3):
    r = regular_module(b_x3.algebra)
    e = injective_hull(b_x3.algebra)
    bad = Selector("bad", lambda m, e=e: e.zero_submodule())
    with pytest.raises(ValueError):
        bad(r)


def test_selector_memoized(b_x3):
    soc = socle_selector()
    r = regular_module(b_x3.algebra)
    assert soc(r) is soc(r)
