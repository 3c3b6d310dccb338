"""Matlis duality for finite-length modules, and the smile dual of selectors.

Over a finite local F_p-algebra the Matlis dual of a module is its vector
space dual with transposed actions; the evaluation pairing is the identity
matrix in dual bases, so the dual of a selector can be computed as a perp.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra
from .exactlin import FpMatrix, perp
from .modrep import ModMap, ModuleRep, Submodule, regular_module, socle


def dual_module(m: ModuleRep) -> ModuleRep:
    return ModuleRep(m.algebra, m.dim, tuple(a.T for a in m.actions))


@dataclass(frozen=True)
class DualPackage:
    module: ModuleRep
    dual: ModuleRep
    pairing: FpMatrix           # evaluation pairing between dual and module
    double_dual_iso: ModMap     # module -> dual(dual(module))

    def __post_init__(self):
        if self.dual.dim != self.module.dim:
            raise ValueError("dual dimension mismatch")
        if not self.pairing.is_invertible() and self.module.dim > 0:
            raise ValueError("pairing is not perfect")
        if not self.double_dual_iso.is_isomorphism() and self.module.dim > 0:
            raise ValueError("double dual comparison is not an isomorphism")


def matlis_dual(m: ModuleRep) -> DualPackage:
    dual = dual_module(m)
    p = m.algebra.p
    pairing = FpMatrix.identity(p, m.dim)
    # transposing twice is literally the identity, so the comparison map is too
    iso = ModMap(m, dual_module(dual), FpMatrix.identity(p, m.dim))
    return DualPackage(m, dual, pairing, iso)


def injective_hull(a: Algebra) -> ModuleRep:
    """E = R^dual; validated to have simple socle and E^dual = R."""
    e = dual_module(regular_module(a))
    if socle(e).dim != 1:
        raise AssertionError("injective hull has non-simple socle")
    if dual_module(e) != regular_module(a):
        raise AssertionError("double dual of R is not R")
    return e


def dual_map(f: ModMap) -> ModMap:
    """Contravariant dual: transpose, mapping target^dual -> source^dual."""
    return ModMap(dual_module(f.target), dual_module(f.source), f.matrix.T)


def smile_of_submodule(sub_of_dual: Submodule, m: ModuleRep) -> Submodule:
    """Common kernel in M of all functionals in a submodule of M^dual."""
    pairing = FpMatrix.identity(m.algebra.p, m.dim)
    return Submodule(m, perp(sub_of_dual.space, pairing))
