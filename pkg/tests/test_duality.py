"""Unit tests for the transpose-action dual and the perp transfer."""
import numpy as np

from closurelab.duality import (
    dual_map,
    dual_module,
    injective_hull,
    matlis_dual,
    smile_of_submodule,
)
from closurelab.modrep import (
    hom,
    quotient,
    regular_module,
    submodule_generated,
)


def test_double_dual_identity(batteries):
    for _, b in batteries:
        for name, m in b.modules:
            assert dual_module(dual_module(m)) == m, name


def test_injective_hull_is_dual_of_ring(algebras):
    for _, a in algebras:
        e = injective_hull(a)
        assert e == dual_module(regular_module(a))
        assert dual_module(e) == regular_module(a)


def test_hom_into_e_has_dual_dimension(b_x3):
    e = injective_hull(b_x3.algebra)
    for name, m in b_x3.modules:
        assert hom(m, e).hom_dim == dual_module(m).dim, name


def test_dual_map_contravariant(b_x3):
    maps = [entry.map for entry in b_x3.maps][:20]
    for f in maps:
        for g in maps:
            if g.source is not f.target:
                continue
            lhs = dual_map(g.compose(f))
            rhs = dual_map(f).compose(dual_map(g))
            assert lhs.matrix == rhs.matrix


def test_dual_map_swaps_injective_surjective(b_x3):
    for entry in b_x3.maps:
        df = dual_map(entry.map)
        assert df.is_injective() == entry.surjective
        assert df.is_surjective() == entry.injective


def test_smile_transfer_dims_complementary(b_x3):
    for name, m in b_x3.modules:
        dm = dual_module(m)
        for _, sub in [p for p in b_x3.pairs if p[1].parent == dm][:4]:
            back = smile_of_submodule(sub, m)
            assert back.dim + sub.dim == m.dim


def test_dual_exchanges_sub_and_quotient(a_x3):
    # (R/(x^2))^dual has the dimension of the submodule it annihilates away
    r = regular_module(a_x3)
    sub = submodule_generated(r, [a_x3.basis_vector(2)])
    q, _ = quotient(r, sub)
    assert dual_module(q).dim == q.dim
    assert dual_module(q).dim + sub.dim == r.dim
