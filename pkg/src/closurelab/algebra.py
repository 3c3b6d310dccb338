"""Finite local commutative F_p-algebras given by multiplication tables.

The presentation is required to be local: basis element 0 is the unit and the
remaining basis elements span the maximal ideal, which must be nilpotent.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exactlin import (
    BudgetExceeded,
    FpMatrix,
    Subspace,
    all_vectors,
    close_under,
    image,
    invariant_subspaces,
    is_prime,
    kernel,
    preimage,
    subspace_intersection,
    subspace_sum,
    vstack,
)


@dataclass(frozen=True)
class Algebra:
    """Commutative algebra over F_p with structure constants.

    mult[i, j] is the coefficient vector of e_i * e_j in the basis e_0..e_{d-1}.
    """

    p: int
    dim: int
    labels: tuple[str, ...]
    mult: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        m = np.asarray(self.mult, dtype=np.int64) % self.p
        if m.shape != (self.dim, self.dim, self.dim):
            raise ValueError(
                f"multiplication table has shape {m.shape}, "
                f"expected {(self.dim,) * 3}"
            )
        m.setflags(write=False)
        object.__setattr__(self, "mult", m)
        if len(self.labels) != self.dim:
            raise ValueError("need one label per basis element")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Algebra)
            and self.p == other.p
            and self.dim == other.dim
            and bool(np.array_equal(self.mult, other.mult))
        )

    def __hash__(self):
        return hash((self.p, self.dim, self.mult.tobytes()))

    # -- elements -----------------------------------------------------------

    def unit(self) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[0] = 1
        return v

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def left_mult(self, i: int) -> FpMatrix:
        """Matrix of multiplication by basis element e_i."""
        return FpMatrix(self.p, self.mult[i].T)

    def element_matrix(self, v) -> FpMatrix:
        """Matrix of multiplication by the element with coordinates v."""
        v = np.asarray(v, dtype=np.int64).reshape(-1) % self.p
        acc = np.zeros((self.dim, self.dim), dtype=np.int64)
        for i in range(self.dim):
            if v[i]:
                acc += v[i] * self.mult[i].T
        return FpMatrix(self.p, acc)

    def multiply(self, u, v) -> np.ndarray:
        return self.element_matrix(u).apply(v)

    def power(self, u, n: int) -> np.ndarray:
        acc = self.unit()
        for _ in range(n):
            acc = self.multiply(acc, u)
        return acc

    def is_unit(self, v) -> bool:
        return self.element_matrix(v).is_invertible()

    def maximal_ideal_space(self) -> Subspace:
        return Subspace.span(
            self.p, self.dim, [self.basis_vector(i) for i in range(1, self.dim)]
        )

    def nilpotency_index(self) -> int:
        """Minimal N with m^N = 0; raises if m is not nilpotent."""
        idx = _nilpotency_index(self)
        if idx is None:
            raise ValueError("maximal ideal span is not nilpotent")
        return idx

    def socle_space(self) -> Subspace:
        """ann_R(m) inside the regular module."""
        if self.dim == 1:
            return Subspace.full(self.p, 1)
        mats = vstack([self.left_mult(i) for i in range(1, self.dim)])
        return kernel(mats)

    def elements(self):
        return all_vectors(self.p, self.dim)

    def element_label(self, v) -> str:
        v = np.asarray(v, dtype=np.int64) % self.p
        terms = []
        for i in range(self.dim):
            if v[i] == 0:
                continue
            coef = "" if v[i] == 1 else f"{int(v[i])}*"
            terms.append(f"{coef}{self.labels[i]}")
        return " + ".join(terms) if terms else "0"


def _nilpotency_index(a: Algebra) -> int | None:
    cur = Subspace.full(a.p, a.dim)
    m_gens = [a.basis_vector(i) for i in range(1, a.dim)]
    for n in range(1, a.dim + 2):
        nxt = Subspace.span(
            a.p,
            a.dim,
            [a.multiply(g, b) for g in m_gens for b in cur.basis_vectors()],
        )
        if n == 1:
            nxt = Subspace.span(a.p, a.dim, m_gens)
        if nxt.dim == 0:
            return n
        if nxt == cur:
            return None
        cur = nxt
    return None


@dataclass(frozen=True)
class AlgebraReport:
    passed: bool
    failures: tuple[str, ...]
    nilpotency_index: int | None

    def __str__(self):
        if self.passed:
            return f"PASS (nilpotency index {self.nilpotency_index})"
        return "FAIL\n" + "\n".join(f"  - {f}" for f in self.failures)


def check_algebra(a: Algebra) -> AlgebraReport:
    """Validate the algebra axioms; reports every failed axiom with a witness."""
    failures = []
    d = a.dim
    for j in range(d):
        expect = a.basis_vector(j)
        if not np.array_equal(a.mult[0, j], expect):
            failures.append(f"e_0 is not a unit: e_0*e_{j} != e_{j}")
            break
    for i in range(d):
        for j in range(i + 1, d):
            if not np.array_equal(a.mult[i, j], a.mult[j, i]):
                failures.append(f"not commutative at (e_{i}, e_{j})")
    for i in range(d):
        for j in range(d):
            for l in range(d):
                lhs = a.multiply(a.mult[i, j], a.basis_vector(l))
                rhs = a.multiply(a.basis_vector(i), a.mult[j, l])
                if not np.array_equal(lhs, rhs):
                    failures.append(f"not associative at (e_{i}, e_{j}, e_{l})")
    m_space = a.maximal_ideal_space()
    closed = close_under(m_space, [a.left_mult(i) for i in range(d)])
    if closed != m_space:
        failures.append("m = span(e_1..e_{d-1}) is not an ideal")
    idx = _nilpotency_index(a)
    if idx is None:
        failures.append("m not nilpotent")
    return AlgebraReport(not failures, tuple(failures), idx)


def is_gorenstein(a: Algebra) -> bool:
    """True iff the socle of R is one-dimensional."""
    return a.socle_space().dim == 1


# -- ideals -----------------------------------------------------------------


@dataclass(frozen=True)
class Ideal:
    algebra: Algebra
    space: Subspace

    def __post_init__(self):
        a = self.algebra
        for i in range(a.dim):
            if not self.space.contains_subspace(image(a.left_mult(i), self.space)):
                raise ValueError("subspace is not closed under ring multiplication")

    @property
    def dim(self) -> int:
        return self.space.dim

    def generators(self) -> list[np.ndarray]:
        return self.space.basis_vectors()

    def contains(self, v) -> bool:
        return self.space.contains(v)

    def is_proper(self) -> bool:
        return not self.contains(self.algebra.unit())

    def __eq__(self, other):
        return (
            isinstance(other, Ideal)
            and self.algebra == other.algebra
            and self.space == other.space
        )

    def __hash__(self):
        return hash((self.algebra, self.space))

    def key(self) -> bytes:
        return self.space.key()


def ideal(a: Algebra, gens) -> Ideal:
    space = close_under(
        Subspace.span(a.p, a.dim, list(gens)),
        [a.left_mult(i) for i in range(a.dim)],
    )
    return Ideal(a, space)


def zero_ideal(a: Algebra) -> Ideal:
    return Ideal(a, Subspace.zero(a.p, a.dim))


def unit_ideal(a: Algebra) -> Ideal:
    return Ideal(a, Subspace.full(a.p, a.dim))


def maximal_ideal(a: Algebra) -> Ideal:
    return Ideal(a, a.maximal_ideal_space())


def ideal_product(i: Ideal, j: Ideal) -> Ideal:
    a = i.algebra
    prods = [a.multiply(u, v) for u in i.generators() for v in j.generators()]
    return Ideal(a, Subspace.span(a.p, a.dim, prods))


def ideal_power(i: Ideal, n: int) -> Ideal:
    acc = unit_ideal(i.algebra)
    for _ in range(n):
        acc = ideal_product(acc, i)
    return acc


def ideal_colon(i: Ideal, j: Ideal) -> Ideal:
    """(I : J) = {r : r J <= I}."""
    a = i.algebra
    space = Subspace.full(a.p, a.dim)
    for g in j.generators():
        space = subspace_intersection(space, preimage(a.element_matrix(g), i.space))
    return Ideal(a, space)


def ideal_annihilator(i: Ideal) -> Ideal:
    return ideal_colon(zero_ideal(i.algebra), i)


def ideal_sum(i: Ideal, j: Ideal) -> Ideal:
    return Ideal(i.algebra, subspace_sum(i.space, j.space))


def enumerate_all_ideals(a: Algebra, budget: int = 4096) -> list[Ideal]:
    """Every ideal of R, smallest dimension first.  Raises BudgetExceeded."""
    spaces = invariant_subspaces(
        a.p, a.dim, [a.left_mult(i) for i in range(a.dim)], budget=budget
    )
    return [Ideal(a, s) for s in spaces]


# -- multiplicative sets ----------------------------------------------------


@dataclass(frozen=True)
class MultSet:
    algebra: Algebra
    generators: tuple[bytes, ...]
    saturation: tuple[bytes, ...]
    contains_zero: bool
    units_only: bool

    def saturation_vectors(self) -> list[np.ndarray]:
        return [
            np.frombuffer(b, dtype=np.int64).copy() for b in self.saturation
        ]


def saturate(a: Algebra, gens) -> MultSet:
    """Multiplicative closure of gens together with 1 (finite, since R is)."""
    gen_vecs = [np.asarray(g, dtype=np.int64) % a.p for g in gens]
    pool = {a.unit().tobytes(): a.unit()}
    for g in gen_vecs:
        pool.setdefault(g.tobytes(), g)
    changed = True
    while changed:
        changed = False
        items = list(pool.values())
        for u in items:
            for v in items:
                w = a.multiply(u, v)
                k = w.tobytes()
                if k not in pool:
                    pool[k] = w
                    changed = True
    sat = sorted(pool)
    zero = np.zeros(a.dim, dtype=np.int64).tobytes()
    contains_zero = zero in pool
    units_only = all(a.is_unit(v) for v in pool.values())
    return MultSet(
        a,
        tuple(sorted(g.tobytes() for g in gen_vecs)),
        tuple(sat),
        contains_zero,
        units_only,
    )
