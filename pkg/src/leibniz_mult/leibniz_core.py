"""Leibniz algebras given by structure constants.

The table stores ``e_i * e_j`` as a coordinate vector for every basis pair;
the identity checked everywhere is ``x(yz) = (xy)z + y(xz)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .exactlin import QQ, FieldSpec, LinearMap, Matrix, Subspace, kernel, quotient

__all__ = [
    "LeibnizAlgebra",
    "AlgebraHom",
    "TrivialModule",
    "NotAnIdealError",
    "verify_leibniz",
    "product_space",
    "derived",
    "center",
    "is_central_ideal",
    "is_ideal",
    "quotient_algebra",
    "hom_space",
    "catalog",
    "CATALOG_NAMES",
    "random_nilpotent",
]


class NotAnIdealError(ValueError):
    pass


@dataclass(frozen=True)
class LeibnizAlgebra:
    field: FieldSpec
    dim: int
    table: tuple  # table[i][j] is the coordinate tuple of e_i e_j
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        n = self.dim
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError("structure table must be dim x dim")
        if any(len(v) != n for row in self.table for v in row):
            raise ValueError("every product must be a vector of length dim")

    @classmethod
    def from_products(cls, F: FieldSpec, n: int, products: dict, name: str | None = None) -> "LeibnizAlgebra":
        """Build from a sparse ``{(i, j): vector}`` dict; missing products are zero."""
        zero = (F.zero,) * n
        table = tuple(
            tuple(F.vector(products[(i, j)]) if (i, j) in products else zero for j in range(n))
            for i in range(n))
        return cls(F, n, table, name)

    @classmethod
    def abelian(cls, F: FieldSpec, n: int) -> "LeibnizAlgebra":
        return cls.from_products(F, n, {}, name=f"abelian:{n}")

    @cached_property
    def _nonzero(self) -> list:
        return [(i, j, v) for i, row in enumerate(self.table) for j, v in enumerate(row) if any(v)]

    def mul(self, x: Sequence, y: Sequence) -> tuple:
        F = self.field
        out = [F.zero] * self.dim
        for i, j, v in self._nonzero:
            c = x[i] * y[j]
            if c:
                for k, a in enumerate(v):
                    if a:
                        out[k] += c * a
        return F.vector(out) if F.p is not None else tuple(out)

    def basis_vector(self, i: int) -> tuple:
        F = self.field
        return tuple(F.one if k == i else F.zero for k in range(self.dim))

    def left_mult(self, x: Sequence) -> Matrix:
        """Matrix of y -> xy."""
        cols = [self.mul(x, self.basis_vector(j)) for j in range(self.dim)]
        return Matrix.from_columns(self.field, cols, self.dim)

    def right_mult(self, x: Sequence) -> Matrix:
        """Matrix of y -> yx."""
        cols = [self.mul(self.basis_vector(j), x) for j in range(self.dim)]
        return Matrix.from_columns(self.field, cols, self.dim)

    def is_abelian(self) -> bool:
        return not self._nonzero

    def full(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def zero(self) -> Subspace:
        return Subspace.zero(self.field, self.dim)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"LeibnizAlgebra<{label} dim {self.dim} over {self.field}, {len(self._nonzero)} nonzero products>"


@dataclass(frozen=True)
class AlgebraHom:
    domain: LeibnizAlgebra
    codomain: LeibnizAlgebra
    map: LinearMap

    def __call__(self, v):
        return self.map(v)

    def violations(self) -> list[tuple[int, int]]:
        """Basis pairs where map(xy) != map(x)map(y)."""
        D, C = self.domain, self.codomain
        bad = []
        for i in range(D.dim):
            for j in range(D.dim):
                x, y = D.basis_vector(i), D.basis_vector(j)
                if self.map(D.mul(x, y)) != C.mul(self.map(x), self.map(y)):
                    bad.append((i, j))
        return bad

    def is_homomorphism(self) -> bool:
        return not self.violations()


@dataclass(frozen=True)
class TrivialModule:
    dim: int

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("module dimension must be non-negative")


def verify_leibniz(L: LeibnizAlgebra) -> list[tuple[int, int, int]]:
    """All 0-based basis triples (i, j, k) where e_i(e_j e_k) != (e_i e_j)e_k + e_j(e_i e_k)."""
    F = L.field
    n = L.dim
    e = [L.basis_vector(i) for i in range(n)]
    t = L.table
    bad = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = L.mul(e[i], t[j][k])
                rhs = L.mul(t[i][j], e[k])
                rhs2 = L.mul(e[j], t[i][k])
                if any(F(a - b - c) for a, b, c in zip(lhs, rhs, rhs2)):
                    bad.append((i, j, k))
    return bad


def _check(L: LeibnizAlgebra, *spaces: Subspace):
    for s in spaces:
        if s.ambient_dim != L.dim or s.field != L.field:
            raise ValueError("subspace does not live in the algebra")


def product_space(L: LeibnizAlgebra, U: Subspace, V: Subspace) -> Subspace:
    _check(L, U, V)
    return Subspace.span(L.field, L.dim, [L.mul(u, v) for u in U.rows for v in V.rows])


def derived(L: LeibnizAlgebra) -> Subspace:
    return Subspace.span(L.field, L.dim, [v for row in L.table for v in row])


def center(L: LeibnizAlgebra) -> Subspace:
    """Two-sided annihilator {z : z e_i = e_i z = 0 for all i}."""
    rows = []
    for i in range(L.dim):
        e = L.basis_vector(i)
        rows.extend(L.right_mult(e).rows)  # z -> z e_i
        rows.extend(L.left_mult(e).rows)   # z -> e_i z
    if not rows:
        return L.full()
    return kernel(LinearMap.of(Matrix.from_rows(L.field, rows, L.dim)))


def is_central_ideal(L: LeibnizAlgebra, Z: Subspace) -> bool:
    _check(L, Z)
    return Z.is_subspace_of(center(L))


def is_ideal(L: LeibnizAlgebra, I: Subspace) -> bool:
    full = L.full()
    return product_space(L, full, I) <= I and product_space(L, I, full) <= I


def quotient_algebra(L: LeibnizAlgebra, I: Subspace) -> tuple[LeibnizAlgebra, AlgebraHom, LinearMap]:
    """L/I in the transversal coordinates of ``exactlin.quotient``."""
    _check(L, I)
    if not (is_central_ideal(L, I) or is_ideal(L, I)):
        raise NotAnIdealError("quotient requires a two-sided ideal")
    q = quotient(L.dim, I)
    P, S = q.projection, q.section
    cols = S.matrix.columns
    table = tuple(tuple(P(L.mul(a, b)) for b in cols) for a in cols)
    name = f"{L.name}/I" if L.name else None
    Q = LeibnizAlgebra(L.field, q.dim, table, name)
    return Q, AlgebraHom(L, Q, P), S


def hom_space(L: LeibnizAlgebra, A: TrivialModule) -> Subspace:
    """Linear maps L -> A killing L', flattened row-major as m x n matrices."""
    F, n, m = L.field, L.dim, A.dim
    D = derived(L)
    # chi -> chi . d for each basis vector d of L'
    rows = []
    for d in D.rows:
        for a in range(m):
            row = [F.zero] * (m * n)
            for i in range(n):
                row[a * n + i] = d[i]
            rows.append(row)
    if not rows:
        return Subspace.full(F, m * n)
    return kernel(LinearMap.of(Matrix.from_rows(F, rows, m * n)))


def _cyclic(F: FieldSpec, n: int) -> LeibnizAlgebra:
    """e_1 e_k = e_{k+1}."""
    prods = {}
    for k in range(n - 1):
        v = [0] * n
        v[k + 1] = 1
        prods[(0, k)] = v
    return LeibnizAlgebra.from_products(F, n, prods, name=f"cyclic:{n}")


_FIXED = {
    # Lie Heisenberg algebra, bracket antisymmetric
    "heisenberg": (3, {(0, 1): [0, 0, 1], (1, 0): [0, 0, -1]}),
    # symmetric counterpart: e1e2 = e2e1 = e3
    "heisenberg_sym": (3, {(0, 1): [0, 0, 1], (1, 0): [0, 0, 1]}),
    # e1e1 = e2e2 = e3
    "squares3": (3, {(0, 0): [0, 0, 1], (1, 1): [0, 0, 1]}),
    # two-dimensional non-abelian Lie algebra, trivial center
    "aff2": (2, {(0, 1): [0, 1], (1, 0): [0, -1]}),
    # non-Lie, trivial center: e1e2 = e2, e2e1 = 0
    "solv2": (2, {(0, 1): [0, 1]}),
    # sl2 with basis h, e, f
    "sl2": (3, {(0, 1): [0, 2, 0], (1, 0): [0, -2, 0],
                (0, 2): [0, 0, -2], (2, 0): [0, 0, 2],
                (1, 2): [1, 0, 0], (2, 1): [-1, 0, 0]}),
    # direct sum of cyclic:2 and abelian:1
    "cyclic2+abelian1": (3, {(0, 0): [0, 1, 0]}),
}

CATALOG_NAMES = (
    "abelian:1", "abelian:2", "abelian:3", "cyclic:2", "cyclic:3", "cyclic:4",
    *_FIXED,
)


def catalog(name: str, F: FieldSpec = QQ) -> LeibnizAlgebra:
    """Named algebra. ``abelian:n`` and ``cyclic:n`` take any n >= 0 / 1."""
    kind, _, arg = name.partition(":")
    if kind in ("abelian", "cyclic") and arg:
        try:
            n = int(arg)
        except ValueError:
            raise KeyError(name) from None
        if n < 0 or (kind == "cyclic" and n < 1):
            raise KeyError(name)
        return LeibnizAlgebra.abelian(F, n) if kind == "abelian" else _cyclic(F, n)
    if name not in _FIXED:
        raise KeyError(f"unknown catalog algebra {name!r}")
    n, prods = _FIXED[name]
    return LeibnizAlgebra.from_products(F, n, prods, name=name)


def random_nilpotent(seed, dim_base: int, steps: int, field: FieldSpec = QQ) -> LeibnizAlgebra:
    """Iterated one-dimensional central extensions of abelian:dim_base by
    random 2-cocycles drawn from the full cocycle space."""
    from .cohomology2 import cocycle_space
    from .extensions import from_cocycle

    rng = random.Random(f"random_nilpotent:{seed}")
    L = LeibnizAlgebra.abelian(field, dim_base)
    for _ in range(steps):
        Zc = cocycle_space(L, TrivialModule(1))
        coeffs = [field.random(rng) for _ in range(Zc.dim)]
        f = Zc.vector(coeffs) if Zc.dim else ()
        L = from_cocycle(L, f, 1).total
    return LeibnizAlgebra(field, L.dim, L.table, f"random:{seed}:{dim_base}+{steps}@{field}")
