"""Seeded mutation suite guarding the theorem checks against vacuous passes.

Each mutation swaps one component for a deliberately broken variant and
reruns the corresponding theorem comparison.  A mutation is killed when the
check FAILs (or trips an internal invariant); a surviving mutation means the
check could not distinguish right from wrong and the suite reports it.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import MultSet, maximal_ideal
from .duality import dual_map, dual_module, smile_of_submodule
from .exactlin import FpMatrix, Subspace, kernel, subspace_sum
from .modrep import (
    ModMap,
    ModuleRep,
    Submodule,
    base_change,
    base_change_vector,
    direct_sum,
    free_module,
    hom,
    nilpotent_extension,
    presentation,
    quotient,
    regular_module,
    submodule_generated,
)
from .proplab import (
    Battery,
    PropertyVerdict,
    trace_tom_sample,
    battery_multsets,
    builtin_selectors,
    check_property,
)
from .residual import ResidualOp, rho, sigma
from .selectors import (
    Selector,
    adic_kernel_selector,
    ann_selector,
    mul_selector,
    smile,
    tom_selector,
    trace_selector,
)


# -- broken components ------------------------------------------------------


def _broken_quotient(m: ModuleRep, sub: Submodule):
    """Projects by selecting complement coordinates without reducing against
    the submodule basis, which is wrong whenever that basis is not standard."""
    p = m.algebra.p
    comp = [i for i in range(m.dim) if i not in sub.space.pivots]
    proj = np.zeros((len(comp), m.dim), dtype=np.int64)
    for row, c in enumerate(comp):
        proj[row, c] = 1
    sec = np.zeros((m.dim, len(comp)), dtype=np.int64)
    for row, c in enumerate(comp):
        sec[c, row] = 1
    projm = FpMatrix(p, proj)
    secm = FpMatrix(p, sec)
    actions = tuple(projm @ a @ secm for a in m.actions)
    q = ModuleRep(m.algebra, len(comp), actions)
    return q, ModMap(m, q, projm)


class _BrokenRho:
    def __init__(self, alpha: Selector):
        self.selector = alpha
        self.name = f"broken-rho({alpha.name})"

    def apply(self, l: Submodule, m: ModuleRep) -> Submodule:
        q, proj = _broken_quotient(m, l)
        return proj.preimage_of(self.selector(q))


def _broken_smile(alpha: Selector) -> Selector:
    # skips the perp against the evaluation pairing
    return Selector(
        f"broken-smile({alpha.name})",
        lambda m: Submodule(m, alpha(dual_module(m)).space),
    )


def _broken_trace(l: ModuleRep, s=None) -> Selector:
    # keeps a single Hom generator instead of spanning over the Hom module
    if s is None:
        s = [np.eye(l.dim, dtype=np.int64)[i] for i in range(l.dim)]

    def ev(n: ModuleRep) -> Submodule:
        hs = hom(l, n)
        if hs.hom_dim == 0:
            return n.zero_submodule()
        f = hs.extract(0)
        return submodule_generated(n, [f(sv) for sv in s])

    return Selector("broken-trace", ev)


def _broken_tom(l: ModuleRep, s=None) -> Selector:
    # tensors over the base field, skipping the balancing relations
    if s is None:
        s = [np.eye(l.dim, dtype=np.int64)[i] for i in range(l.dim)]

    from .exactlin import subspace_intersection

    def ev(m: ModuleRep) -> Submodule:
        space = Subspace.full(m.algebra.p, m.dim)
        for sv in s:
            sv = np.asarray(sv, dtype=np.int64) % m.algebra.p
            mat = np.kron(sv.reshape(-1, 1), np.eye(m.dim, dtype=np.int64))
            space = subspace_intersection(
                space, kernel(FpMatrix(m.algebra.p, mat))
            )
        return Submodule(m, space)

    return Selector("broken-tom", ev)


def _broken_star(b: Battery) -> Selector:
    # runs the Frobenius computation at q = 1, where powering is a no-op
    a = b.algebra
    q = 1
    d = a.dim

    def ev(m: ModuleRep) -> Submodule:
        if m.dim == 0:
            return m.zero_submodule()
        pres = presentation(m)
        ng = pres.num_gens
        free = free_module(a, ng)

        def bracket(flat: np.ndarray) -> np.ndarray:
            out = np.zeros_like(flat)
            for j in range(ng):
                out[j * d:(j + 1) * d] = a.power(flat[j * d:(j + 1) * d], q)
            return out

        rel_q = submodule_generated(free, [bracket(r) for r in pres.rel_vectors()])
        fq, proj = quotient(free, rel_q)
        cols = []
        for t in range(m.dim):
            u = np.zeros(m.dim, dtype=np.int64)
            u[t] = 1
            cols.append(proj(bracket(pres.lift(u))))
        mat = (
            FpMatrix(a.p, np.array(cols, dtype=np.int64).T)
            if fq.dim
            else FpMatrix.zeros(a.p, 0, m.dim)
        )
        return Submodule(m, kernel(mat))

    return Selector("broken-star(q=1)", ev)


def _broken_h0(b: Battery) -> Selector:
    # stops the union at n = 1
    mx = maximal_ideal(b.algebra)
    return ann_selector(mx, "broken-h0(m)")


def _broken_tto(w: MultSet) -> Selector:
    # unions homothety kernels over the generators only, not the saturation
    def ev(m: ModuleRep) -> Submodule:
        space = Subspace.zero(m.algebra.p, m.dim)
        for gb in w.generators:
            gv = np.frombuffer(gb, dtype=np.int64).copy()
            space = subspace_sum(space, kernel(m.action_of(gv)))
        return Submodule(m, space)

    return Selector("broken-tto", ev)


# -- mutation runners: rerun the theorem comparison with the broken part ----


def _fail(name: str, detail: str) -> PropertyVerdict:
    return PropertyVerdict(name, False, detail)


def _survive(name: str) -> PropertyVerdict:
    return PropertyVerdict(name, True, note="mutation not detected")


def _run_t1_broken_quotient(b: Battery) -> PropertyVerdict:
    name = "T1[broken-quotient]"
    for sname, alpha in builtin_selectors(b):
        r = _BrokenRho(alpha)
        back = rho(Selector(f"s({sname})", lambda m, r=r: r.apply(m.zero_submodule(), m)))
        for pname, sub in b.pairs:
            if back.apply(sub, sub.parent) != r.apply(sub, sub.parent):
                return _fail(name, f"round trip differs at {sname}, pair {pname}")
    return _survive(name)


def _run_t2_rho_sum(b: Battery) -> PropertyVerdict:
    name = "T2[rho-sum]"
    for sname, alpha in builtin_selectors(b):
        co_idem = check_property(alpha, "co-idempotent", b).passed

        def broken_apply(sub, m, alpha=alpha):
            return Submodule(m, subspace_sum(sub.space, alpha(m).space))

        r_idem = True
        witness = ""
        for pname, sub in b.pairs:
            once = broken_apply(sub, sub.parent)
            if broken_apply(once, sub.parent) != once:
                r_idem, witness = False, pname
                break
        if co_idem != r_idem:
            return _fail(
                name,
                f"correspondence (3) splits at {sname}: alpha co-idempotent "
                f"{co_idem}, broken r idempotent {r_idem} {witness}",
            )
    return _survive(name)


def _run_t3_smile_no_perp(b: Battery) -> PropertyVerdict:
    name = "T3[smile-no-perp]"
    for sname, alpha in builtin_selectors(b):
        broken = _broken_smile(alpha)
        try:
            for mname, m in b.modules:
                if _broken_smile(broken)(m) != alpha(m):
                    return _fail(name, f"involution breaks at {sname} on {mname}")
        except ValueError as ex:
            return _fail(name, f"invariant violation at {sname}: {ex}")
    return _survive(name)


def _run_t4_dual_skip(b: Battery) -> PropertyVerdict:
    name = "T4[dual-skip]"
    for sname, alpha in builtin_selectors(b):
        for mname, m in b.modules:
            try:
                broken = smile_of_submodule(alpha(m), m)  # forgot to dualize M
            except ValueError as ex:
                return _fail(name, f"invariant violation at {sname}: {ex}")
            d = dual_module(m)
            _, proj = quotient(d, alpha(d))
            if dual_map(proj).image() != broken:
                return _fail(name, f"descriptions split at {sname} on {mname}")
    return _survive(name)


def _run_t5_smile_no_perp(b: Battery) -> PropertyVerdict:
    name = "T5[smile-no-perp]"
    for sname, alpha in builtin_selectors(b):
        r = rho(alpha)
        try:
            intr = _broken_smile(sigma(r))
            back = ResidualOp(smile(intr))
            for pname, sub in b.pairs:
                if back.apply(sub, sub.parent) != r.apply(sub, sub.parent):
                    return _fail(name, f"c(i(r)) != r at {sname}, pair {pname}")
        except ValueError as ex:
            return _fail(name, f"invariant violation at {sname}: {ex}")
    return _survive(name)


def _run_t6_wrong_injection(b: Battery) -> PropertyVerdict:
    name = "T6[dirsum-wrong-injection]"
    small = [(n, m) for n, m in b.modules if 0 < m.dim <= b.algebra.dim]
    for sname, alpha in builtin_selectors(b):
        if not check_property(alpha, "functorial", b).passed:
            continue
        for lname, l in small:
            for mname, m in small:
                s = direct_sum(l, m)
                vecs = [
                    s.injections[0](v) for v in alpha(l).space.basis_vectors()
                ] + [s.injections[0](v) for v in alpha(m).space.basis_vectors()]
                wrong = Subspace.span(b.algebra.p, s.module.dim, vecs)
                if alpha(s.module).space != wrong:
                    return _fail(
                        name, f"additivity breaks at {sname} on {lname}(+){mname}"
                    )
    return _survive(name)


def _run_t7_forget_block(b: Battery) -> PropertyVerdict:
    name = "T7[basechange-forget-block]"
    a = b.algebra
    ext = nilpotent_extension(a)
    r = regular_module(a)
    tr = trace_selector(r)(r)
    vecs = [base_change_vector(v, r) for v in tr.space.basis_vectors()]
    lhs = Subspace.span(a.p, 2 * r.dim, vecs)  # forgot the v (x) y block
    rs = base_change(r, ext)
    xprime = [base_change_vector(np.eye(r.dim, dtype=np.int64)[i], r) for i in range(r.dim)]
    rhs = trace_selector(rs, xprime)(rs).space
    if lhs != rhs:
        return _fail(name, "base change equality breaks for B = M = R")
    return _survive(name)


def _run_t8_tensor_skip(b: Battery) -> PropertyVerdict:
    name = "T8[tensor-skip-relations]"
    for label, l, s in trace_tom_sample(b)[:8]:
        tr = trace_selector(l, s)
        broken = _broken_tom(l, s)
        for mname, m in b.modules:
            if smile(tr)(m) != broken(m):
                return _fail(name, f"duality breaks at {label} on {mname}")
    return _survive(name)


def _run_t8_trace_span(b: Battery) -> PropertyVerdict:
    name = "T8[trace-drop-span]"
    for label, l, s in trace_tom_sample(b)[:8]:
        broken = _broken_trace(l, s)
        to = tom_selector(l, s)
        for mname, m in b.modules:
            if smile(broken)(m) != to(m):
                return _fail(name, f"duality breaks at {label} on {mname}")
    return _survive(name)


def _run_t9_smile_no_perp(b: Battery) -> PropertyVerdict:
    name = "T9[smile-no-perp]"
    mx = maximal_ideal(b.algebra)
    broken = _broken_smile(ann_selector(mx))
    healthy = mul_selector(mx)
    try:
        for mname, m in b.modules:
            if broken(m) != healthy(m):
                return _fail(name, f"anchor smile(ann(m)) = mul(m) breaks on {mname}")
    except ValueError as ex:
        return _fail(name, f"invariant violation: {ex}")
    return _survive(name)


def _run_t10_h0_truncated(b: Battery) -> PropertyVerdict:
    name = "T10[h0-truncated]"
    mx = maximal_ideal(b.algebra)
    broken = smile(_broken_h0(b))
    adic = adic_kernel_selector(mx)
    for mname, m in b.modules:
        if broken(m) != adic(m):
            return _fail(name, f"smile(h0(m)) = adic(m) breaks on {mname}")
    return _survive(name)


def _run_t11_star_q1(b: Battery) -> PropertyVerdict:
    name = "T11[star-q-one]"
    a = b.algebra
    r = regular_module(a)
    from .selectors import frobenius_stable_power
    q = frobenius_stable_power(a)
    nilpotents = [v for v in a.elements() if not np.array(a.power(v, q)).any()]
    oracle = submodule_generated(r, nilpotents)
    if _broken_star(b)(r) != oracle:
        return _fail(name, "star of zero differs from the q-th power oracle")
    return _survive(name)


def _run_t12_tto_gens(b: Battery) -> PropertyVerdict:
    name = "T12[tto-generators-only]"
    from .algebra import ideal
    from .selectors import join, zero_selector

    a = b.algebra
    r = regular_module(a)
    for wname, w in battery_multsets(b):
        broken = _broken_tto(w)
        union = zero_selector()
        for wv in w.saturation_vectors():
            iw = ideal(a, [wv])
            qw, _ = quotient(r, Submodule(r, iw.space))
            union = join(union, trace_selector(qw))
        for mname, m in b.modules:
            if broken(m) != union(m):
                return _fail(name, f"tto trace-union identity breaks on {mname} [{wname}]")
    return _survive(name)


MUTATIONS: tuple[tuple[str, str, object], ...] = (
    ("broken-quotient", "T1", _run_t1_broken_quotient),
    ("rho-sum", "T2", _run_t2_rho_sum),
    ("smile-no-perp", "T3", _run_t3_smile_no_perp),
    ("dual-skip", "T4", _run_t4_dual_skip),
    ("smile-no-perp", "T5", _run_t5_smile_no_perp),
    ("dirsum-wrong-injection", "T6", _run_t6_wrong_injection),
    ("basechange-forget-block", "T7", _run_t7_forget_block),
    ("tensor-skip-relations", "T8", _run_t8_tensor_skip),
    ("trace-drop-span", "T8", _run_t8_trace_span),
    ("smile-no-perp", "T9", _run_t9_smile_no_perp),
    ("h0-truncated", "T10", _run_t10_h0_truncated),
    ("star-q-one", "T11", _run_t11_star_q1),
    ("tto-generators-only", "T12", _run_t12_tto_gens),
)


@dataclass(frozen=True)
class MutationOutcome:
    mutation: str
    theorem: str
    killed: bool
    detail: str


@dataclass(frozen=True)
class MutationReport:
    outcomes: tuple[MutationOutcome, ...]

    @property
    def survivors(self) -> list[MutationOutcome]:
        return [o for o in self.outcomes if not o.killed]

    @property
    def all_killed(self) -> bool:
        return not self.survivors

    def render(self) -> str:
        lines = [f"mutation suite: {len(self.outcomes)} mutated runs"]
        for o in self.outcomes:
            mark = "killed" if o.killed else "SURVIVED"
            lines.append(f"  {o.theorem:<4} {o.mutation:<24} {mark}  {o.detail}")
        lines.append(
            "zero survivors" if self.all_killed
            else f"{len(self.survivors)} SURVIVING MUTANTS"
        )
        return "\n".join(lines)


def mutation_suite(b: Battery) -> MutationReport:
    outcomes = []
    for mname, tid, runner in MUTATIONS:
        try:
            verdict = runner(b)
        except Exception as ex:  # an invariant tripped inside the broken run
            verdict = PropertyVerdict(
                f"{tid}[{mname}]", False, f"invariant violation: {ex}"
            )
        outcomes.append(
            MutationOutcome(mname, tid, not verdict.passed, verdict.counterexample or "")
        )
    return MutationReport(tuple(outcomes))
