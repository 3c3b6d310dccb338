"""Finite-length modules over a finite local algebra, as representations.

A module of dimension n is stored as one n x n action matrix per algebra basis
element.  Submodules are action-closed subspaces in canonical echelon form;
maps are matrices checked for R-linearity.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import Algebra, Ideal, maximal_ideal
from .exactlin import (
    DimensionMismatch,
    FpMatrix,
    Subspace,
    close_under,
    image,
    invariant_subspaces,
    kernel,
    preimage,
    solve,
    subspace_intersection,
    subspace_sum,
    vstack,
)


@dataclass(frozen=True)
class ModuleRep:
    algebra: Algebra
    dim: int
    actions: tuple[FpMatrix, ...]

    def __post_init__(self):
        a = self.algebra
        if len(self.actions) != a.dim:
            raise ValueError("need one action matrix per algebra basis element")
        for m in self.actions:
            if m.rows != self.dim or m.cols != self.dim or m.p != a.p:
                raise DimensionMismatch("action matrix has wrong shape or modulus")
        if self.actions[0] != FpMatrix.identity(a.p, self.dim):
            raise ValueError("the unit must act as the identity")
        for i in range(a.dim):
            for j in range(i, a.dim):
                lhs = self.actions[i] @ self.actions[j]
                acc = FpMatrix.zeros(a.p, self.dim, self.dim)
                for k in range(a.dim):
                    if a.mult[i, j, k]:
                        acc = acc + self.actions[k].scale(int(a.mult[i, j, k]))
                if lhs != acc:
                    raise ValueError(
                        f"representation law fails at (e_{i}, e_{j})"
                    )
                if lhs != self.actions[j] @ self.actions[i]:
                    raise ValueError(f"actions do not commute at (e_{i}, e_{j})")

    def action_of(self, v) -> FpMatrix:
        """Action matrix of the ring element with coordinates v."""
        v = np.asarray(v, dtype=np.int64).reshape(-1) % self.algebra.p
        acc = np.zeros((self.dim, self.dim), dtype=np.int64)
        for i in range(self.algebra.dim):
            if v[i]:
                acc += v[i] * self.actions[i].data
        return FpMatrix(self.algebra.p, acc)

    def key(self) -> bytes:
        # includes the algebra so caches never conflate representations of
        # different rings that happen to share action matrices
        a = self.algebra
        return (
            bytes([a.p % 251, a.dim % 251, self.dim % 251])
            + a.mult.tobytes()
            + b"".join(m.data.tobytes() for m in self.actions)
        )

    def __eq__(self, other):
        return (
            isinstance(other, ModuleRep)
            and self.algebra == other.algebra
            and self.dim == other.dim
            and self.actions == other.actions
        )

    def __hash__(self):
        return hash((self.algebra, self.dim, self.actions))

    def zero_submodule(self) -> "Submodule":
        return Submodule(self, Subspace.zero(self.algebra.p, self.dim))

    def full_submodule(self) -> "Submodule":
        return Submodule(self, Subspace.full(self.algebra.p, self.dim))


def regular_module(a: Algebra) -> ModuleRep:
    """R as a module over itself."""
    return ModuleRep(a, a.dim, tuple(a.left_mult(i) for i in range(a.dim)))


def zero_module(a: Algebra) -> ModuleRep:
    return ModuleRep(a, 0, tuple(FpMatrix.zeros(a.p, 0, 0) for _ in range(a.dim)))


@dataclass(frozen=True)
class Submodule:
    parent: ModuleRep
    space: Subspace

    def __post_init__(self):
        if self.space.ambient_dim != self.parent.dim:
            raise DimensionMismatch("subspace ambient does not match module")
        for m in self.parent.actions:
            if not self.space.contains_subspace(image(m, self.space)):
                raise ValueError("subspace is not closed under the module action")

    @property
    def dim(self) -> int:
        return self.space.dim

    def key(self) -> bytes:
        return self.space.key()

    def __eq__(self, other):
        return (
            isinstance(other, Submodule)
            and self.parent == other.parent
            and self.space == other.space
        )

    def __hash__(self):
        return hash((self.parent, self.space))

    def contains(self, v) -> bool:
        return self.space.contains(v)

    def __le__(self, other: "Submodule") -> bool:
        return other.space.contains_subspace(self.space)


@dataclass(frozen=True)
class ModMap:
    source: ModuleRep
    target: ModuleRep
    matrix: FpMatrix

    def __post_init__(self):
        if self.source.algebra != self.target.algebra:
            raise ValueError("map between modules over different algebras")
        if self.matrix.rows != self.target.dim or self.matrix.cols != self.source.dim:
            raise DimensionMismatch("map matrix has wrong shape")
        for i in range(self.source.algebra.dim):
            if self.matrix @ self.source.actions[i] != self.target.actions[i] @ self.matrix:
                raise ValueError(f"matrix is not R-linear (fails at e_{i})")

    def __call__(self, v) -> np.ndarray:
        return self.matrix.apply(v)

    def compose(self, other: "ModMap") -> "ModMap":
        """self after other."""
        if other.target != self.source:
            raise DimensionMismatch("maps are not composable")
        return ModMap(other.source, self.target, self.matrix @ other.matrix)

    def image_of(self, sub: Submodule) -> Submodule:
        if sub.parent != self.source:
            raise DimensionMismatch("submodule is not in the map source")
        return Submodule(self.target, image(self.matrix, sub.space))

    def image(self) -> Submodule:
        return self.image_of(self.source.full_submodule())

    def preimage_of(self, sub: Submodule) -> Submodule:
        if sub.parent != self.target:
            raise DimensionMismatch("submodule is not in the map target")
        return Submodule(self.source, preimage(self.matrix, sub.space))

    def kernel(self) -> Submodule:
        return Submodule(self.source, kernel(self.matrix))

    def is_injective(self) -> bool:
        return self.matrix.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.matrix.rank() == self.target.dim

    def is_isomorphism(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()


def identity_map(m: ModuleRep) -> ModMap:
    return ModMap(m, m, FpMatrix.identity(m.algebra.p, m.dim))


def zero_map(m: ModuleRep, n: ModuleRep) -> ModMap:
    return ModMap(m, n, FpMatrix.zeros(m.algebra.p, n.dim, m.dim))


# -- generation, quotients, restriction -------------------------------------


def submodule_generated(m: ModuleRep, vectors) -> Submodule:
    space = close_under(
        Subspace.span(m.algebra.p, m.dim, list(vectors)), list(m.actions)
    )
    return Submodule(m, space)


def _quotient_data(p: int, actions: list[FpMatrix], rel: Subspace):
    """Quotient of F_p^n by an action-invariant subspace.

    The complement is the set of non-pivot coordinates of the canonical
    echelon basis of rel, which makes quotients deterministic.  Returns
    (proj matrix, section matrix, quotient actions).
    """
    n = rel.ambient_dim
    pivots = list(rel.pivots)
    comp = [i for i in range(n) if i not in pivots]
    q = len(comp)
    sel_piv = np.zeros((len(pivots), n), dtype=np.int64)
    for r, c in enumerate(pivots):
        sel_piv[r, c] = 1
    sel_comp = np.zeros((q, n), dtype=np.int64)
    for r, c in enumerate(comp):
        sel_comp[r, c] = 1
    reduce_mat = np.eye(n, dtype=np.int64)
    if pivots:
        reduce_mat = reduce_mat - rel.basis.data @ sel_piv
    proj = FpMatrix(p, sel_comp @ reduce_mat)
    sec = FpMatrix(p, sel_comp.T)
    new_actions = tuple(proj @ a @ sec for a in actions)
    return proj, sec, new_actions


# quotient/restrict outputs are deterministic in their arguments, so caching
# by key is sound and saves the suites from rebuilding the same modules
_quotient_cache: dict = {}
_restrict_cache: dict = {}


def quotient(m: ModuleRep, sub: Submodule) -> tuple[ModuleRep, ModMap]:
    if sub.parent != m:
        raise DimensionMismatch("submodule does not belong to this module")
    ck = (m.key(), sub.key())
    hit = _quotient_cache.get(ck)
    if hit is not None:
        return hit
    proj, _, new_actions = _quotient_data(m.algebra.p, list(m.actions), sub.space)
    q = ModuleRep(m.algebra, proj.rows, new_actions)
    out = q, ModMap(m, q, proj)
    _quotient_cache[ck] = out
    return out


def restrict(sub: Submodule) -> tuple[ModuleRep, ModMap]:
    """The submodule as a module in its own right, with its inclusion map."""
    m = sub.parent
    ck = (m.key(), sub.key())
    hit = _restrict_cache.get(ck)
    if hit is not None:
        return hit
    basis = sub.space.basis
    pivots = list(sub.space.pivots)
    acts = []
    for a in m.actions:
        ab = a @ basis
        coords = ab.data[pivots, :] if pivots else np.zeros((0, 0), dtype=np.int64)
        acts.append(FpMatrix(m.algebra.p, coords))
    sm = ModuleRep(m.algebra, sub.dim, tuple(acts))
    out = sm, ModMap(sm, m, basis)
    _restrict_cache[ck] = out
    return out


# -- Hom and tensor ---------------------------------------------------------


@dataclass(frozen=True)
class HomSpace:
    """Hom_R(M, N) as a module, with extraction of individual maps.

    The underlying space is the solution space of the intertwining system,
    with the echelon kernel basis as coordinates; e_i acts by post-composition
    with the e_i-action on N.
    """

    source: ModuleRep
    target: ModuleRep
    module: ModuleRep
    basis_flat: FpMatrix = field(repr=False)  # (dim N * dim M) x h, echelon

    @property
    def hom_dim(self) -> int:
        return self.module.dim

    def extract(self, index: int) -> ModMap:
        flat = self.basis_flat.data[:, index]
        mat = flat.reshape(self.target.dim, self.source.dim)
        return ModMap(self.source, self.target, FpMatrix(self.source.algebra.p, mat))

    def from_coords(self, coords) -> ModMap:
        coords = np.asarray(coords, dtype=np.int64) % self.source.algebra.p
        flat = self.basis_flat.apply(coords)
        mat = flat.reshape(self.target.dim, self.source.dim)
        return ModMap(self.source, self.target, FpMatrix(self.source.algebra.p, mat))

    def maps(self) -> list[ModMap]:
        return [self.extract(i) for i in range(self.hom_dim)]


def hom(m: ModuleRep, n: ModuleRep) -> HomSpace:
    """Solve X A^M_i = A^N_i X; Hom as a module with the (r.f)(x) = r.f(x) action."""
    if m.algebra != n.algebra:
        raise ValueError("modules over different algebras")
    a = m.algebra
    p = a.p
    nm = n.dim * m.dim
    if nm == 0 or a.dim == 1:
        sol = Subspace.full(p, nm)
    else:
        blocks = []
        im = np.eye(m.dim, dtype=np.int64)
        inn = np.eye(n.dim, dtype=np.int64)
        for i in range(1, a.dim):
            # vec(X A - B X) = (A^T (x) I - I (x) B) vec(X), row-major vec
            op = np.kron(inn, m.actions[i].data.T) - np.kron(n.actions[i].data, im)
            blocks.append(FpMatrix(p, op))
        sol = kernel(vstack(blocks))
    basis_flat = sol.basis
    h = sol.dim
    pivots = list(sol.pivots)
    acts = []
    for i in range(a.dim):
        cols = []
        for j in range(h):
            mat = basis_flat.data[:, j].reshape(n.dim, m.dim)
            comp = (n.actions[i].data @ mat) % p
            flat = comp.reshape(-1)
            coords = flat[pivots] if pivots else np.zeros(0, dtype=np.int64)
            cols.append(coords)
        acts.append(
            FpMatrix(
                p,
                np.array(cols, dtype=np.int64).T
                if h
                else np.zeros((0, 0), dtype=np.int64),
            )
        )
    module = ModuleRep(a, h, tuple(acts))
    return HomSpace(m, n, module, basis_flat)


@dataclass(frozen=True)
class TensorSpace:
    """M (x)_R N: quotient of the vector-space tensor product by the
    balancing relations (e_i m) (x) n - m (x) (e_i n)."""

    left: ModuleRep
    right: ModuleRep
    module: ModuleRep
    proj: FpMatrix = field(repr=False)  # (dim T) x (dim M * dim N)

    def pure(self, mvec, nvec) -> np.ndarray:
        mvec = np.asarray(mvec, dtype=np.int64)
        nvec = np.asarray(nvec, dtype=np.int64)
        return self.proj.apply(np.outer(mvec, nvec).reshape(-1))

    def pure_map(self, mvec) -> FpMatrix:
        """Matrix of the linear map z -> class(mvec (x) z)."""
        mvec = np.asarray(mvec, dtype=np.int64).reshape(-1)
        n = self.right.dim
        emb = np.zeros((self.left.dim * n, n), dtype=np.int64)
        for i in range(self.left.dim):
            emb[i * n : (i + 1) * n, :] = mvec[i] * np.eye(n, dtype=np.int64)
        return self.proj @ FpMatrix(self.proj.p, emb)


def tensor(m: ModuleRep, n: ModuleRep) -> TensorSpace:
    if m.algebra != n.algebra:
        raise ValueError("modules over different algebras")
    a = m.algebra
    p = a.p
    mn = m.dim * n.dim
    im = np.eye(m.dim, dtype=np.int64)
    inn = np.eye(n.dim, dtype=np.int64)
    rel_vecs = []
    for i in range(1, a.dim):
        diff = np.kron(m.actions[i].data, inn) - np.kron(im, n.actions[i].data)
        rel_vecs.extend(diff.T % p)
    rel = Subspace.span(p, mn, rel_vecs)
    big_actions = [FpMatrix(p, np.kron(act.data, inn)) for act in m.actions]
    proj, sec, new_actions = _quotient_data(p, big_actions, rel)
    t = ModuleRep(a, proj.rows, new_actions)
    # the action inherited through the right factor must agree
    for i in range(a.dim):
        alt = proj @ FpMatrix(p, np.kron(im, n.actions[i].data)) @ sec
        if alt != t.actions[i]:
            raise AssertionError("tensor actions disagree between factors")
    return TensorSpace(m, n, t, proj)


# -- annihilators -----------------------------------------------------------


def ann_module(m: ModuleRep) -> Ideal:
    """ann_R(M) as an ideal of R."""
    a = m.algebra
    if m.dim == 0:
        return Ideal(a, Subspace.full(a.p, a.dim))
    cols = np.zeros((m.dim * m.dim, a.dim), dtype=np.int64)
    for i in range(a.dim):
        cols[:, i] = m.actions[i].data.reshape(-1)
    return Ideal(a, kernel(FpMatrix(a.p, cols)))


def ann_element(m: ModuleRep, z) -> Ideal:
    """ann_R(z) for z in M."""
    a = m.algebra
    z = np.asarray(z, dtype=np.int64)
    cols = np.zeros((m.dim, a.dim), dtype=np.int64)
    for i in range(a.dim):
        cols[:, i] = m.actions[i].apply(z)
    return Ideal(a, kernel(FpMatrix(a.p, cols)))


def ann_in_module(m: ModuleRep, i: Ideal) -> Submodule:
    """(0 :_M I) = {z in M : I z = 0}."""
    space = Subspace.full(m.algebra.p, m.dim)
    for g in i.generators():
        space = subspace_intersection(space, kernel(m.action_of(g)))
    return Submodule(m, space)


def socle(m: ModuleRep) -> Submodule:
    return ann_in_module(m, maximal_ideal(m.algebra))


def ideal_times_module(m: ModuleRep, i: Ideal) -> Submodule:
    """IM as a submodule of M."""
    space = Subspace.zero(m.algebra.p, m.dim)
    for g in i.generators():
        space = subspace_sum(space, image(m.action_of(g), Subspace.full(m.algebra.p, m.dim)))
    return Submodule(m, space)


# -- direct sums ------------------------------------------------------------


@dataclass(frozen=True)
class SumSpace:
    module: ModuleRep
    injections: tuple[ModMap, ...]
    projections: tuple[ModMap, ...]


def direct_sum(*mods: ModuleRep) -> SumSpace:
    a = mods[0].algebra
    p = a.p
    dims = [m.dim for m in mods]
    total = sum(dims)
    acts = []
    for i in range(a.dim):
        block = np.zeros((total, total), dtype=np.int64)
        off = 0
        for m in mods:
            block[off : off + m.dim, off : off + m.dim] = m.actions[i].data
            off += m.dim
        acts.append(FpMatrix(p, block))
    s = ModuleRep(a, total, tuple(acts))
    injections, projections = [], []
    off = 0
    for m in mods:
        inj = np.zeros((total, m.dim), dtype=np.int64)
        inj[off : off + m.dim] = np.eye(m.dim, dtype=np.int64)
        injections.append(ModMap(m, s, FpMatrix(p, inj)))
        projections.append(ModMap(s, m, FpMatrix(p, inj.T)))
        off += m.dim
    return SumSpace(s, tuple(injections), tuple(projections))


# -- presentations and Frobenius substrate ----------------------------------


@dataclass(frozen=True)
class Presentation:
    """M presented as coker(R^a -> R^b) with minimal generators.

    gens are lifts of a basis of M/mM; rel_columns are elements of R^b (each a
    b x d array of ring-element rows) spanning the kernel of R^b -> M.
    cover is the surjection R^b -> M as a plain matrix of size dim M x (b*d).
    """

    module: ModuleRep
    gens: tuple[bytes, ...]
    rel_columns: tuple[bytes, ...]
    cover: FpMatrix = field(repr=False)

    @property
    def num_gens(self) -> int:
        return len(self.gens)

    def gen_vectors(self) -> list[np.ndarray]:
        return [np.frombuffer(g, dtype=np.int64).copy() for g in self.gens]

    def rel_vectors(self) -> list[np.ndarray]:
        """Relations as flat vectors in F_p^(b*d)."""
        return [np.frombuffer(r, dtype=np.int64).copy() for r in self.rel_columns]

    def lift(self, v) -> np.ndarray:
        """One preimage of v in R^b, as a flat vector."""
        x = solve(self.cover, np.asarray(v, dtype=np.int64))
        if x is None:
            raise ValueError("vector is not in the module (cover not surjective?)")
        return x


def free_module(a: Algebra, b: int) -> ModuleRep:
    mods = [regular_module(a)] * b
    if b == 0:
        return zero_module(a)
    if b == 1:
        return regular_module(a)
    return direct_sum(*mods).module


def presentation(m: ModuleRep) -> Presentation:
    a = m.algebra
    p = a.p
    mm = ideal_times_module(m, maximal_ideal(a))
    comp = [i for i in range(m.dim) if i not in mm.space.pivots]
    gens = []
    for c in comp:
        v = np.zeros(m.dim, dtype=np.int64)
        v[c] = 1
        gens.append(v)
    b = len(gens)
    cover_cols = np.zeros((m.dim, b * a.dim), dtype=np.int64)
    for j, g in enumerate(gens):
        for i in range(a.dim):
            cover_cols[:, j * a.dim + i] = m.actions[i].apply(g)
    cover = FpMatrix(p, cover_cols)
    ker = kernel(cover)
    return Presentation(
        m,
        tuple(g.tobytes() for g in gens),
        tuple(np.ascontiguousarray(v).tobytes() for v in ker.basis_vectors()),
        cover,
    )


def all_submodules(
    m: ModuleRep, max_dim: int | None = None, budget: int = 4096
) -> list[Submodule]:
    spaces = invariant_subspaces(
        m.algebra.p, m.dim, list(m.actions), max_dim=max_dim, budget=budget
    )
    return [Submodule(m, s) for s in spaces]


# -- free base change along S = R[y]/(y^2) ----------------------------------


@dataclass(frozen=True)
class FreeExtension:
    """S = R[y]/(y^2), free of rank 2 over R with basis (1, y).

    S-basis order is the R-basis followed by y times the R-basis, so an
    S-vector splits as (u, v) with s = u + y*v, u and v in R.
    """

    base: Algebra
    ext: Algebra

    @property
    def rank(self) -> int:
        return 2

    def include_element(self, v: np.ndarray) -> np.ndarray:
        """R -> S along the structure map."""
        out = np.zeros(self.ext.dim, dtype=np.int64)
        out[: self.base.dim] = np.asarray(v, dtype=np.int64) % self.base.p
        return out


def nilpotent_extension(a: Algebra) -> FreeExtension:
    d = a.dim
    mult = np.zeros((2 * d, 2 * d, 2 * d), dtype=np.int64)
    # (e_i)(e_j) = e_i e_j, (e_i)(y e_j) = y(e_i e_j), (y e_i)(y e_j) = 0
    mult[:d, :d, :d] = a.mult
    mult[:d, d:, d:] = a.mult
    mult[d:, :d, d:] = a.mult
    labels = a.labels + tuple(f"y*{lab}" for lab in a.labels)
    ext = Algebra(a.p, 2 * d, labels, mult)
    return FreeExtension(a, ext)


def base_change(m: ModuleRep, ext: FreeExtension) -> ModuleRep:
    """M (x)_R S as an S-module; index t is m_t (x) 1, index n+t is m_t (x) y."""
    if m.algebra != ext.base:
        raise DimensionMismatch("module is not over the base of the extension")
    a, d, n = ext.base, ext.base.dim, m.dim
    p = a.p
    actions = []
    for i in range(d):
        blk = m.actions[i].data
        top = np.hstack([blk, np.zeros((n, n), dtype=np.int64)])
        bot = np.hstack([np.zeros((n, n), dtype=np.int64), blk])
        actions.append(FpMatrix(p, np.vstack([top, bot])))
    for i in range(d):
        blk = m.actions[i].data
        top = np.zeros((n, 2 * n), dtype=np.int64)
        bot = np.hstack([blk, np.zeros((n, n), dtype=np.int64)])
        actions.append(FpMatrix(p, np.vstack([top, bot])))
    return ModuleRep(ext.ext, 2 * n, tuple(actions))


def base_change_vector(v: np.ndarray, m: ModuleRep) -> np.ndarray:
    """v (x) 1 in the base-changed module coordinates."""
    out = np.zeros(2 * m.dim, dtype=np.int64)
    out[: m.dim] = np.asarray(v, dtype=np.int64) % m.algebra.p
    return out
