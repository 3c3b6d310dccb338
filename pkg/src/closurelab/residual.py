"""Residual operations on pairs L <= M, the rho/sigma bijection with
selectors, the closure/interior correspondence, and test ideal reports."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    Algebra,
    Ideal,
    enumerate_all_ideals,
    ideal_colon,
    ideal_power,
    is_gorenstein,
    maximal_ideal,
)
from .duality import injective_hull
from .exactlin import DimensionMismatch, Subspace, subspace_intersection
from .modrep import (
    ModMap,
    ModuleRep,
    Submodule,
    ann_element,
    direct_sum,
    ideal_times_module,
    quotient,
    regular_module,
    restrict,
)
from .selectors import Selector, finitistic, smile


class ResidualOp:
    """Extensive operation on pairs determined by a selector through
    preimages along canonical quotients."""

    def __init__(self, selector: Selector, name: str | None = None):
        self.selector = selector
        self.name = name or f"rho({selector.name})"
        self._cache: dict = {}

    def apply(self, l: Submodule, m: ModuleRep) -> Submodule:
        if l.parent != m:
            raise DimensionMismatch("submodule does not live in the given module")
        ck = (m.key(), l.key())
        hit = self._cache.get(ck)
        if hit is not None:
            return hit
        q, proj = quotient(m, l)
        out = proj.preimage_of(self.selector(q))
        self._cache[ck] = out
        return out

    def __repr__(self):
        return f"ResidualOp({self.name})"


def rho(alpha: Selector) -> ResidualOp:
    return ResidualOp(alpha)


def sigma(r: ResidualOp) -> Selector:
    return Selector(
        f"sigma({r.name})", lambda m: r.apply(m.zero_submodule(), m)
    )


def closure_apply(r: ResidualOp, l: Submodule, m: ModuleRep) -> Submodule:
    return r.apply(l, m)


def interior_of(r: ResidualOp) -> Selector:
    """i(r) = smile(sigma(r)): the interior operation dual to r."""
    return smile(sigma(r))


def closure_of(j: Selector) -> ResidualOp:
    """c(j) = rho(smile(j)): the residual operation dual to a selector."""
    return ResidualOp(smile(j), name=f"c({j.name})")


# -- annihilator of a submodule as an ideal ---------------------------------


def ann_submodule(sub: Submodule) -> Ideal:
    a = sub.parent.algebra
    space = Subspace.full(a.p, a.dim)
    for v in sub.space.basis_vectors():
        space = subspace_intersection(space, ann_element(sub.parent, v).space)
    return Ideal(a, space)


# -- test ideals ------------------------------------------------------------


@dataclass(frozen=True)
class TestIdealReport:
    selector_name: str
    via_smile: Ideal
    via_annE: Ideal
    via_modules: Ideal
    finitistic: Ideal
    cyclic_intersection: Ideal
    via_ideal_colons: Ideal
    gorenstein_flag: bool
    preradical_ok: bool
    assertions: tuple[tuple[str, bool, str], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.assertions)

    def render(self, algebra: Algebra) -> str:
        def show(i: Ideal) -> str:
            if i.dim == 0:
                return "(0)"
            gens = ", ".join(algebra.element_label(g) for g in i.generators())
            return f"({gens})"

        lines = [f"test ideal report for {self.selector_name}"]
        if not self.preradical_ok:
            lines.append("  hypotheses unverified: selector failed the "
                         "functorial (preradical) battery check")
        lines.append(f"  via smile dual of R : {show(self.via_smile)}")
        lines.append(f"  via ann(alpha(E))   : {show(self.via_annE)}")
        lines.append(f"  via module sweep    : {show(self.via_modules)}")
        lines.append(f"  finitistic          : {show(self.finitistic)}")
        lines.append(f"  cyclic intersection : {show(self.cyclic_intersection)}")
        lines.append(f"  via ideal colons    : {show(self.via_ideal_colons)}")
        lines.append(f"  Gorenstein          : {self.gorenstein_flag}")
        for name, ok, detail in self.assertions:
            mark = "PASS" if ok else "FAIL"
            suffix = f" ({detail})" if detail else ""
            lines.append(f"  {mark} {name}{suffix}")
        return "\n".join(lines)


def _is_preradical_on(alpha: Selector, maps) -> bool:
    for f in maps:
        if not f.image_of(alpha(f.source)) <= alpha(f.target):
            return False
    return True


def test_ideal(
    alpha: Selector,
    modules,
    maps,
    ideal_budget: int = 4096,
) -> TestIdealReport:
    """All routes to the test ideal of a selector, with the containment chain.

    `modules` is an iterable of (name, ModuleRep) standing in for the class of
    Artinian modules; `maps` is an iterable of ModMap used to verify the
    functorial hypothesis.  The quantifier over finite-length modules is
    instantiated by the module list plus a complete enumeration of submodules
    of E through the finitistic selector.
    """
    mods = list(modules)
    if not mods:
        raise ValueError("need at least one module")
    a = mods[0][1].algebra
    r = regular_module(a)
    e = injective_hull(a)

    preradical_ok = _is_preradical_on(alpha, maps)

    via_smile = Ideal(a, smile(alpha)(r).space)
    via_annE = ann_submodule(alpha(e))

    sweep = Subspace.full(a.p, a.dim)
    saw_e = False
    for _, m in mods:
        sweep = subspace_intersection(sweep, ann_submodule(alpha(m)).space)
        if m == e:
            saw_e = True
    if not saw_e:
        sweep = subspace_intersection(sweep, via_annE.space)
    via_modules = Ideal(a, sweep)

    alpha_f = finitistic(alpha, cap=max(e.dim, 1), budget=ideal_budget)
    fin_ideal = ann_submodule(alpha_f(e))

    ideals = enumerate_all_ideals(a, budget=ideal_budget)
    cl = rho(alpha)
    cyc = Subspace.full(a.p, a.dim)
    colons = Subspace.full(a.p, a.dim)
    for i in ideals:
        sub_i = Submodule(r, i.space)
        ri, _ = quotient(r, sub_i)
        cyc = subspace_intersection(cyc, ann_submodule(alpha(ri)).space)
        i_cl = Ideal(a, cl.apply(sub_i, r).space)
        colons = subspace_intersection(colons, ideal_colon(i, i_cl).space)
    cyclic_intersection = Ideal(a, cyc)
    via_ideal_colons = Ideal(a, colons)

    gor = is_gorenstein(a)
    assertions = []
    if preradical_ok:
        assertions.append(
            (
                "smile route equals ann(alpha(E))",
                via_smile == via_annE,
                "",
            )
        )
        assertions.append(
            (
                "ann(alpha(E)) equals the module sweep",
                via_annE == via_modules,
                "",
            )
        )
        assertions.append(
            (
                "test ideal contained in finitistic test ideal",
                fin_ideal.space.contains_subspace(via_annE.space),
                "",
            )
        )
        assertions.append(
            (
                "finitistic contained in cyclic intersection",
                cyclic_intersection.space.contains_subspace(fin_ideal.space),
                "",
            )
        )
        if gor:
            assertions.append(
                (
                    "Gorenstein: finitistic equals cyclic intersection",
                    fin_ideal == cyclic_intersection,
                    "",
                )
            )
        assertions.append(
            (
                "cyclic intersection equals ideal-colon intersection",
                cyclic_intersection == via_ideal_colons,
                "",
            )
        )
    return TestIdealReport(
        alpha.name,
        via_smile,
        via_annE,
        via_modules,
        fin_ideal,
        cyclic_intersection,
        via_ideal_colons,
        gor,
        preradical_ok,
        tuple(assertions),
    )


# -- direct sum compatibility and separatedness -----------------------------


def direct_sum_closure_check(r: ResidualOp, pairs) -> list[tuple[str, bool]]:
    """For sampled ((U, L), (V, M)): U^r_L (+) V^r_M = (U (+) V)^r_(L (+) M)."""
    results = []
    for (name1, u), (name2, v) in pairs:
        l, m = u.parent, v.parent
        s = direct_sum(l, m)
        uv = Submodule(
            s.module,
            Subspace.span(
                l.algebra.p,
                s.module.dim,
                [s.injections[0](b) for b in u.space.basis_vectors()]
                + [s.injections[1](b) for b in v.space.basis_vectors()],
            ),
        )
        lhs_vecs = [
            s.injections[0](b) for b in r.apply(u, l).space.basis_vectors()
        ] + [s.injections[1](b) for b in r.apply(v, m).space.basis_vectors()]
        lhs = Subspace.span(l.algebra.p, s.module.dim, lhs_vecs)
        rhs = r.apply(uv, s.module).space
        results.append((f"{name1} (+) {name2}", lhs == rhs))
    return results


def separated_quotient_check(q: ModuleRep, j: Ideal) -> tuple[bool, int]:
    """Discreteness certificate: m^N kills Q/JQ, N the nilpotency index."""
    a = q.algebra
    n = a.nilpotency_index()
    jq = ideal_times_module(q, j)
    quot, _ = quotient(q, jq)
    mn = ideal_power(maximal_ideal(a), n)
    killed = ideal_times_module(quot, mn).dim == 0
    return killed, n
