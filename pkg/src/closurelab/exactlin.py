"""Exact dense linear algebra over the prime field F_p.

Everything downstream (algebras, module representations, duality) reduces to
the operations here.  Subspaces are kept in a canonical reduced column echelon
form so that subspace equality is a byte comparison.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class DimensionMismatch(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _as_array(p, entries) -> np.ndarray:
    a = np.asarray(entries, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {a.shape}")
    return a


@dataclass(frozen=True)
class FpMatrix:
    """Dense matrix with entries reduced mod a prime p."""

    p: int
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        a = _as_array(self.p, self.data)
        a.setflags(write=False)
        object.__setattr__(self, "data", a)

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "FpMatrix":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls(p, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpMatrix)
            and self.p == other.p
            and self.data.shape == other.data.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self):
        return hash((self.p, self.data.shape, self.data.tobytes()))

    def _check(self, other: "FpMatrix"):
        if self.p != other.p:
            raise DimensionMismatch(f"moduli differ: {self.p} vs {other.p}")

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        self._check(other)
        return FpMatrix(self.p, self.data + other.data)

    def __sub__(self, other: "FpMatrix") -> "FpMatrix":
        self._check(other)
        return FpMatrix(self.p, self.data - other.data)

    def __neg__(self) -> "FpMatrix":
        return FpMatrix(self.p, -self.data)

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.data.shape} by {other.data.shape}"
            )
        return FpMatrix(self.p, self.data @ other.data)

    def scale(self, c: int) -> "FpMatrix":
        return FpMatrix(self.p, self.data * (c % self.p))

    def transpose(self) -> "FpMatrix":
        return FpMatrix(self.p, self.data.T)

    @property
    def T(self) -> "FpMatrix":
        return self.transpose()

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Matrix-vector product, returning a reduced 1-d array."""
        return (self.data @ (np.asarray(v, dtype=np.int64) % self.p)) % self.p

    def rank(self) -> int:
        _, pivots = _rref(self.data, self.p)
        return len(pivots)

    def is_zero(self) -> bool:
        return not self.data.any()

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "FpMatrix":
        if self.rows != self.cols:
            raise DimensionMismatch("only square matrices can be inverted")
        n = self.rows
        aug = np.hstack([self.data, np.eye(n, dtype=np.int64)])
        red, pivots = _rref(aug, self.p)
        if pivots != list(range(n)):
            raise ValueError("matrix is singular")
        return FpMatrix(self.p, red[:, n:])


def hstack(mats: list[FpMatrix]) -> FpMatrix:
    p = mats[0].p
    return FpMatrix(p, np.hstack([m.data for m in mats]))


def vstack(mats: list[FpMatrix]) -> FpMatrix:
    p = mats[0].p
    return FpMatrix(p, np.vstack([m.data for m in mats]))


def _rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p; returns (matrix, pivot column list)."""
    m = (np.array(a, dtype=np.int64)) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rref(m: FpMatrix) -> FpMatrix:
    red, _ = _rref(m.data, m.p)
    return FpMatrix(m.p, red)


def solve(a: FpMatrix, b: np.ndarray) -> np.ndarray | None:
    """One solution x of a x = b, or None if inconsistent."""
    bvec = np.asarray(b, dtype=np.int64).reshape(-1) % a.p
    if bvec.shape[0] != a.rows:
        raise DimensionMismatch("right-hand side has wrong length")
    aug = np.hstack([a.data, bvec.reshape(-1, 1)])
    red, pivots = _rref(aug, a.p)
    if a.cols in pivots:
        return None
    x = np.zeros(a.cols, dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = red[r, a.cols]
    return x


@dataclass(frozen=True)
class Subspace:
    """Subspace of F_p^n in canonical form.

    The basis matrix has the subspace basis as its columns, in reduced column
    echelon form with pivot rows strictly increasing.  Two equal subspaces have
    bit-identical basis matrices.
    """

    ambient_dim: int
    basis: FpMatrix
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, p: int, ambient_dim: int, vectors) -> "Subspace":
        """Canonical subspace spanned by the given coordinate vectors."""
        vecs = [np.asarray(v, dtype=np.int64).reshape(-1) % p for v in vectors]
        for v in vecs:
            if v.shape[0] != ambient_dim:
                raise DimensionMismatch(
                    f"vector of length {v.shape[0]} in ambient dim {ambient_dim}"
                )
        if not vecs:
            mat = np.zeros((0, ambient_dim), dtype=np.int64)
        else:
            mat = np.vstack(vecs)
        red, pivots = _rref(mat, p)
        red = red[: len(pivots)]
        return cls(ambient_dim, FpMatrix(p, red.T), tuple(pivots))

    @classmethod
    def zero(cls, p: int, ambient_dim: int) -> "Subspace":
        return cls.span(p, ambient_dim, [])

    @classmethod
    def full(cls, p: int, ambient_dim: int) -> "Subspace":
        return cls.span(p, ambient_dim, np.eye(ambient_dim, dtype=np.int64))

    @property
    def p(self) -> int:
        return self.basis.p

    @property
    def dim(self) -> int:
        return self.basis.cols

    def key(self) -> bytes:
        return self.basis.data.tobytes() + bytes([self.ambient_dim % 251])

    def basis_vectors(self) -> list[np.ndarray]:
        return [self.basis.data[:, j].copy() for j in range(self.dim)]

    def coords_of(self, v: np.ndarray) -> np.ndarray | None:
        """Coordinates of v in the echelon basis, or None if v is outside."""
        v = np.asarray(v, dtype=np.int64).reshape(-1) % self.p
        coords = v[list(self.pivots)] if self.pivots else np.zeros(0, dtype=np.int64)
        if np.array_equal(self.basis.apply(coords) if self.dim else v * 0, v):
            return coords
        return None

    def contains(self, v) -> bool:
        return self.coords_of(np.asarray(v, dtype=np.int64)) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis_vectors())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return Subspace.span(a.p, a.ambient_dim, a.basis_vectors() + b.basis_vectors())


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.p, a.ambient_dim)
    stacked = hstack([a.basis, b.basis.scale(-1)])
    ker = kernel(stacked)
    vecs = [a.basis.apply(k[: a.dim]) for k in ker.basis_vectors()]
    return Subspace.span(a.p, a.ambient_dim, vecs)


def image(f: FpMatrix, s: Subspace) -> Subspace:
    if f.cols != s.ambient_dim:
        raise DimensionMismatch("map domain does not match subspace ambient")
    if s.dim == 0:
        return Subspace.zero(f.p, f.rows)
    return Subspace.span(f.p, f.rows, (f @ s.basis).data.T)


def preimage(f: FpMatrix, s: Subspace) -> Subspace:
    """Subspace {x : f(x) in s} of the domain of f."""
    if f.rows != s.ambient_dim:
        raise DimensionMismatch("map codomain does not match subspace ambient")
    if s.dim == 0:
        return kernel(f)
    stacked = hstack([f, s.basis.scale(-1)])
    ker = kernel(stacked)
    vecs = [k[: f.cols] for k in ker.basis_vectors()]
    return Subspace.span(f.p, f.cols, vecs)


def perp(s: Subspace, pairing: FpMatrix) -> Subspace:
    """{z : b^T G z = 0 for every basis vector b of s}."""
    if pairing.rows != s.ambient_dim:
        raise DimensionMismatch("pairing rows do not match subspace ambient")
    if s.dim == 0:
        return Subspace.full(s.p, pairing.cols)
    return kernel(s.basis.T @ pairing)


def kernel(m: FpMatrix) -> Subspace:
    red, pivots = _rref(m.data, m.p)
    free = [c for c in range(m.cols) if c not in pivots]
    vecs = []
    for c in free:
        v = np.zeros(m.cols, dtype=np.int64)
        v[c] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-red[r, c]) % m.p
        vecs.append(v)
    return Subspace.span(m.p, m.cols, vecs)


def _check_ambient(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim or a.p != b.p:
        raise DimensionMismatch(
            f"subspaces live in different ambients: "
            f"({a.p}, {a.ambient_dim}) vs ({b.p}, {b.ambient_dim})"
        )


def all_vectors(p: int, n: int):
    """All coordinate vectors of F_p^n in lexicographic order."""
    v = np.zeros(n, dtype=np.int64)
    while True:
        yield v.copy()
        i = n - 1
        while i >= 0:
            v[i] += 1
            if v[i] < p:
                break
            v[i] = 0
            i -= 1
        if i < 0:
            return


def close_under(space: Subspace, actions: list[FpMatrix]) -> Subspace:
    """Smallest subspace containing `space` and invariant under the actions."""
    cur = space
    while True:
        nxt = cur
        for a in actions:
            nxt = subspace_sum(nxt, image(a, cur))
        if nxt == cur:
            return cur
        cur = nxt


def invariant_subspaces(
    p: int,
    ambient: int,
    actions: list[FpMatrix],
    max_dim: int | None = None,
    budget: int = 4096,
) -> list[Subspace]:
    """All action-invariant subspaces of F_p^ambient, by closure search.

    Every invariant subspace is a sum of closures of single vectors, so a
    breadth-first search over "add one cyclic closure" finds them all.  The
    `max_dim` cap restricts output to subspaces of at most that dimension;
    `budget` caps the number of distinct subspaces visited.
    """
    cap = ambient if max_dim is None else max_dim
    cyclic = {}
    for v in all_vectors(p, ambient):
        if not v.any():
            continue
        c = close_under(Subspace.span(p, ambient, [v]), actions)
        cyclic.setdefault(c.key(), c)
    zero = Subspace.zero(p, ambient)
    found = {zero.key(): zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for s in frontier:
            for c in cyclic.values():
                if s.contains_subspace(c):
                    continue
                t = subspace_sum(s, c)
                if t.dim > cap or t.key() in found:
                    continue
                if len(found) >= budget:
                    raise BudgetExceeded(
                        f"invariant-subspace enumeration exceeded budget {budget}"
                    )
                found[t.key()] = t
                nxt.append(t)
        frontier = nxt
    return sorted(found.values(), key=lambda s: (s.dim, s.key()))
