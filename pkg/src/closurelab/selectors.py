"""Submodule selectors: opaque values mapping each module to a submodule.

Holds every built-in (trace, module torsion, scalar selectors, ideal-power
limits, torsion/divisibility for a multiplicative set, the Frobenius star)
plus the smile dual and finite limit combinators.  Selector equality is always
extensional over a named battery of modules, never intensional.
"""
from __future__ import annotations

import numpy as np

from .algebra import (
    Algebra,
    Ideal,
    MultSet,
    ideal_power,
    maximal_ideal,
    unit_ideal,
)
from .duality import dual_module, smile_of_submodule
from .exactlin import (
    FpMatrix,
    Subspace,
    kernel,
    subspace_intersection,
    subspace_sum,
)
from .modrep import (
    ModuleRep,
    Submodule,
    all_submodules,
    ann_in_module,
    free_module,
    hom,
    ideal_times_module,
    presentation,
    quotient,
    restrict,
    socle as socle_submodule,
    submodule_generated,
    tensor,
)


class Selector:
    """A named function ModuleRep -> Submodule.

    Results are checked to be action-closed submodules of the argument (the
    Submodule constructor enforces this) and memoized per module; evaluation
    is pure.
    """

    def __init__(self, name: str, fn):
        self.name = name
        self._fn = fn
        self._cache: dict[bytes, Submodule] = {}

    def __call__(self, m: ModuleRep) -> Submodule:
        key = m.key()
        hit = self._cache.get(key)
        if hit is not None and hit.parent == m:
            return hit
        out = self._fn(m)
        if not isinstance(out, Submodule) or out.parent != m:
            raise ValueError(f"selector {self.name} returned a foreign submodule")
        self._cache[key] = out
        return out

    def __repr__(self):
        return f"Selector({self.name})"


def zero_selector() -> Selector:
    return Selector("zero", lambda m: m.zero_submodule())


def identity_selector() -> Selector:
    return Selector("id", lambda m: m.full_submodule())


def socle_selector() -> Selector:
    return Selector("socle", socle_submodule)


def mul_selector(i: Ideal, name: str | None = None) -> Selector:
    return Selector(name or "mul(I)", lambda m: ideal_times_module(m, i))


def ann_selector(i: Ideal, name: str | None = None) -> Selector:
    return Selector(name or "ann(I)", lambda m: ann_in_module(m, i))


def smile(alpha: Selector) -> Selector:
    """The dual selector M -> (M^dual / alpha(M^dual))^dual, via the common
    kernel of the functionals in alpha(M^dual)."""

    def ev(m: ModuleRep) -> Submodule:
        return smile_of_submodule(alpha(dual_module(m)), m)

    return Selector(f"smile({alpha.name})", ev)


def join(a: Selector, b: Selector) -> Selector:
    return Selector(
        f"join({a.name},{b.name})",
        lambda m: Submodule(m, subspace_sum(a(m).space, b(m).space)),
    )


def meet(a: Selector, b: Selector) -> Selector:
    return Selector(
        f"meet({a.name},{b.name})",
        lambda m: Submodule(m, subspace_intersection(a(m).space, b(m).space)),
    )


# -- trace and module torsion -----------------------------------------------


def _as_vectors(l: ModuleRep, s) -> list[np.ndarray]:
    vecs = [np.asarray(v, dtype=np.int64).reshape(-1) % l.algebra.p for v in s]
    for v in vecs:
        if v.shape[0] != l.dim:
            raise ValueError("trace/torsion anchor vector has wrong length")
    return vecs


def trace_selector(l: ModuleRep, s=None, name: str | None = None) -> Selector:
    """Submodule of N generated by {f(s) : f in Hom(L, N), s in S}.

    S defaults to a basis of L (whose span is L, which gives the plain
    L-trace)."""
    if s is None:
        s = [
            np.eye(l.dim, dtype=np.int64)[i]
            for i in range(l.dim)
        ]
    svecs = _as_vectors(l, s)

    def ev(n: ModuleRep) -> Submodule:
        hs = hom(l, n)
        gens = [f(sv) for f in hs.maps() for sv in svecs]
        return submodule_generated(n, gens)

    return Selector(name or "trace(L)", ev)


def tom_selector(l: ModuleRep, s=None, name: str | None = None) -> Selector:
    """{z in M : s (x) z = 0 in L (x)_R M for every s in S}."""
    if s is None:
        s = [np.eye(l.dim, dtype=np.int64)[i] for i in range(l.dim)]
    svecs = _as_vectors(l, s)

    def ev(m: ModuleRep) -> Submodule:
        ts = tensor(l, m)
        space = Subspace.full(m.algebra.p, m.dim)
        for sv in svecs:
            space = subspace_intersection(space, kernel(ts.pure_map(sv)))
        return Submodule(m, space)

    return Selector(name or "tom(L)", ev)


# -- ideal-power limit selectors --------------------------------------------


def h0_selector(i: Ideal, name: str | None = None) -> Selector:
    """Union over n of (0 :_M I^n); stabilizes by the nilpotency index."""
    a = i.algebra
    bound = a.nilpotency_index()

    def ev(m: ModuleRep) -> Submodule:
        space = Subspace.zero(a.p, m.dim)
        for n in range(1, bound + 1):
            space = subspace_sum(space, ann_in_module(m, ideal_power(i, n)).space)
        return Submodule(m, space)

    return Selector(name or "h0(I)", ev)


def adic_kernel_selector(i: Ideal, name: str | None = None) -> Selector:
    """Intersection over n of I^n M; stabilizes by the nilpotency index."""
    a = i.algebra
    bound = a.nilpotency_index()

    def ev(m: ModuleRep) -> Submodule:
        space = Subspace.full(a.p, m.dim)
        for n in range(1, bound + 1):
            space = subspace_intersection(
                space, ideal_times_module(m, ideal_power(i, n)).space
            )
        return Submodule(m, space)

    return Selector(name or "adic(I)", ev)


# -- torsion and divisibility for a multiplicative set ----------------------


def torsion_selector(w: MultSet, name: str | None = None) -> Selector:
    """Union over the (finite) saturation of the kernels of the homotheties."""

    def ev(m: ModuleRep) -> Submodule:
        space = Subspace.zero(m.algebra.p, m.dim)
        for wv in w.saturation_vectors():
            space = subspace_sum(space, kernel(m.action_of(wv)))
        return Submodule(m, space)

    return Selector(name or "tto(W)", ev)


def divisible_selector(w: MultSet, name: str | None = None) -> Selector:
    """Intersection over the saturation of the images wM."""

    def ev(m: ModuleRep) -> Submodule:
        space = Subspace.full(m.algebra.p, m.dim)
        from .exactlin import image

        for wv in w.saturation_vectors():
            space = subspace_intersection(
                space, image(m.action_of(wv), Subspace.full(m.algebra.p, m.dim))
            )
        return Submodule(m, space)

    return Selector(name or "dv(W)", ev)


# -- Frobenius star (tight closure of zero, Artinian instantiation) ---------


def frobenius_stable_power(a: Algebra) -> int:
    """Smallest q = p^e with q >= the nilpotency index.

    In characteristic p the q-th power map is additive, and for q >= N every
    element a*1 + n (n nilpotent) has q-th power a^q*1, so bracket powers of
    presentations are constant from this q on.
    """
    n = a.nilpotency_index()
    q = 1
    while q < n:
        q *= a.p
    return q


def frobenius_star_selector(a: Algebra, name: str | None = None) -> Selector:
    """0*_M: elements whose q-th power vanishes in the Frobenius pushforward
    of M, at the stabilizing power q."""
    q = frobenius_stable_power(a)
    d = a.dim

    def ev(m: ModuleRep) -> Submodule:
        if m.dim == 0:
            return m.zero_submodule()
        pres = presentation(m)
        b = pres.num_gens
        free = free_module(a, b)

        def bracket(flat: np.ndarray) -> np.ndarray:
            out = np.zeros_like(flat)
            for j in range(b):
                out[j * d : (j + 1) * d] = a.power(flat[j * d : (j + 1) * d], q)
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

    return Selector(name or "star", ev)


# -- finitistic version -----------------------------------------------------


def finitistic(
    alpha: Selector, cap: int, budget: int = 4096, name: str | None = None
) -> Selector:
    """Sum of alpha(L) over submodules L of dimension at most cap.

    Complete when cap >= dim M; submodule enumeration is budgeted because
    subspace counts grow as Gaussian binomials.
    """
    if cap < 1:
        raise ValueError("finitistic cap must be at least 1")

    def ev(m: ModuleRep) -> Submodule:
        space = Subspace.zero(m.algebra.p, m.dim)
        for sub in all_submodules(m, max_dim=cap, budget=budget):
            lm, incl = restrict(sub)
            space = subspace_sum(space, incl.image_of(alpha(lm)).space)
        return Submodule(m, space)

    return Selector(name or f"fin({alpha.name},{cap})", ev)


# -- extensional comparison -------------------------------------------------


def selectors_agree(
    a: Selector, b: Selector, modules
) -> tuple[bool, str | None]:
    """Pointwise equality over an iterable of (name, ModuleRep) pairs."""
    for name, m in modules:
        if a(m) != b(m):
            return False, (
                f"{a.name} != {b.name} on module {name}: "
                f"dims {a(m).dim} vs {b(m).dim}"
            )
    return True, None
