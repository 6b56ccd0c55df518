"""Exact dense linear algebra over Q and GF(p).

Vectors are tuples of field elements (``gmpy2.mpq`` for Q, ``int`` in
``range(p)`` for GF(p)).  Subspaces are stored in a canonical form: the
reduced row-echelon form of a spanning set, so two equal subspaces carry
identical bases and the coordinates of a member are its entries at the
pivot columns.
"""

from __future__ import annotations

from random import Random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

__all__ = [
    "FieldSpec",
    "QQ",
    "GF",
    "Matrix",
    "Subspace",
    "LinearMap",
    "QuotientSpace",
    "TensorSpace",
    "rref",
    "kernel",
    "image",
    "sum_spaces",
    "intersect",
    "complement",
    "quotient",
    "transpose",
    "tensor_space",
]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "Q" or "GF"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise ValueError("the rationals take no modulus")
        elif self.kind == "GF":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"GF needs a prime modulus, got {self.p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "GF"

    def __str__(self):
        return "Q" if self.kind == "Q" else f"GF({self.p})"

    @property
    def zero(self):
        return _Q0 if self.p is None else 0

    @property
    def one(self):
        return _Q1 if self.p is None else 1

    def __call__(self, x):
        """Coerce an int, rational or ``"p/q"`` string into the field."""
        if self.p is None:
            return x if type(x) is _MPQ else mpq(x)
        if type(x) is int:
            return x % self.p
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, (Fraction, _MPQ)):
            return int(x.numerator) * pow(int(x.denominator), -1, self.p) % self.p
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError(f"cannot coerce {x!r} into {self}")
        return int(x) % self.p

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / x
        return pow(x, -1, self.p)

    def vector(self, xs: Iterable) -> tuple:
        return tuple(self(x) for x in xs)

    def random(self, rng: Random, bound: int = 2):
        """Small random element; over Q an integer in [-bound, bound]."""
        if self.p is None:
            return mpq(rng.randint(-bound, bound))
        return rng.randrange(self.p)

    def format(self, x) -> str | int:
        if self.p is not None:
            return int(x)
        x = self(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


_MPQ = type(mpq(0))
_Q0, _Q1 = mpq(0), mpq(1)
QQ = FieldSpec("Q")


def GF(p: int) -> FieldSpec:
    return FieldSpec("GF", p)


def _reduce(F: FieldSpec, x):
    return x if F.p is None else x % F.p


@dataclass(frozen=True)
class Matrix:
    """Dense immutable matrix; ``rows`` is a tuple of row tuples."""

    field: FieldSpec
    nrows: int
    ncols: int
    rows: tuple

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise ValueError("matrix shape does not match its rows")

    @classmethod
    def from_rows(cls, F: FieldSpec, rows: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        rows = tuple(F.vector(r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols needed for a matrix with no rows")
            ncols = len(rows[0])
        return cls(F, len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, F: FieldSpec, cols: Sequence[Sequence], nrows: int) -> "Matrix":
        cols = [F.vector(c) for c in cols]
        rows = tuple(tuple(c[i] for c in cols) for i in range(nrows))
        return cls(F, nrows, len(cols), rows)

    @classmethod
    def zeros(cls, F: FieldSpec, nrows: int, ncols: int) -> "Matrix":
        return cls(F, nrows, ncols, tuple((F.zero,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, F: FieldSpec, n: int) -> "Matrix":
        z, o = F.zero, F.one
        return cls(F, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @property
    def columns(self) -> list[tuple]:
        return [tuple(r[j] for r in self.rows) for j in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.ncols, self.nrows, tuple(self.columns))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        F = self.field
        cols = other.columns
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append(tuple(_reduce(F, sum((a * c[k] for k, a in nz), F.zero)) for c in cols))
        return Matrix(F, self.nrows, other.ncols, tuple(out))

    def apply(self, v: Sequence) -> tuple:
        F = self.field
        nz = [(k, a) for k, a in enumerate(v) if a]
        return tuple(_reduce(F, sum((r[k] * a for k, a in nz), F.zero)) for r in self.rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        F = self.field
        return Matrix(F, self.nrows, self.ncols, tuple(
            tuple(_reduce(F, a + b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self) -> "Matrix":
        F = self.field
        return Matrix(F, self.nrows, self.ncols, tuple(tuple(_reduce(F, -a) for a in r) for r in self.rows))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def rank(self) -> int:
        return rref(self)[2]

    def __repr__(self):
        body = "; ".join(" ".join(str(self.field.format(a)) for a in r) for r in self.rows)
        return f"Matrix<{self.nrows}x{self.ncols} over {self.field}>[{body}]"


def _rref_rows(F: FieldSpec, rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """In-place Gauss-Jordan on a list of mutable rows; returns nonzero rows and pivots."""
    p = F.p
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        if p is None:
            rows[r] = [a * inv for a in rows[r]]
        else:
            rows[r] = [a * inv % p for a in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    if p is None:
                        rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
                    else:
                        rows[i] = [(a - f * b) % p for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(m: Matrix) -> tuple[Matrix, list[int], int]:
    """Reduced row-echelon form, pivot columns and rank."""
    F = m.field
    rows, pivots = _rref_rows(F, [list(r) for r in m.rows], m.ncols)
    full = [tuple(r) for r in rows] + [(F.zero,) * m.ncols] * (m.nrows - len(rows))
    return Matrix(F, m.nrows, m.ncols, tuple(full)), pivots, len(pivots)


@dataclass(frozen=True)
class Subspace:
    """Subspace of F^ambient_dim held as canonical RREF basis rows."""

    field: FieldSpec
    ambient_dim: int
    rows: tuple
    pivots: tuple = field(compare=False)

    @classmethod
    def span(cls, F: FieldSpec, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        vecs = [list(F.vector(v)) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        rows, pivots = _rref_rows(F, vecs, ambient_dim)
        return cls(F, ambient_dim, tuple(tuple(r) for r in rows), tuple(pivots))

    @classmethod
    def zero(cls, F: FieldSpec, ambient_dim: int) -> "Subspace":
        return cls(F, ambient_dim, (), ())

    @classmethod
    def full(cls, F: FieldSpec, ambient_dim: int) -> "Subspace":
        return cls.span(F, ambient_dim, Matrix.identity(F, ambient_dim).rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> Matrix:
        """Basis vectors as the columns of an ambient_dim x dim matrix."""
        return Matrix.from_columns(self.field, self.rows, self.ambient_dim)

    def _residual(self, v: Sequence) -> list:
        F = self.field
        v = list(F.vector(v))
        if len(v) != self.ambient_dim:
            raise ValueError("vector does not live in the ambient space")
        p = F.p
        for row, c in zip(self.rows, self.pivots):
            f = v[c]
            if f:
                if p is None:
                    v = [a - f * b if b else a for a, b in zip(v, row)]
                else:
                    v = [(a - f * b) % p if b else a for a, b in zip(v, row)]
        return v

    def __contains__(self, v) -> bool:
        return not any(self._residual(v))

    def coords(self, v: Sequence) -> tuple:
        """Coordinates of a member with respect to the canonical basis."""
        if any(self._residual(v)):
            raise ValueError("vector is not in the subspace")
        return tuple(self.field(v[c]) for c in self.pivots)

    def vector(self, coords: Sequence) -> tuple:
        return self.basis.apply(self.field.vector(coords))

    def is_subspace_of(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(r in other for r in self.rows)

    def __le__(self, other: "Subspace") -> bool:
        return self.is_subspace_of(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return sum_spaces(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __repr__(self):
        vecs = ", ".join("(" + ",".join(str(self.field.format(a)) for a in r) + ")" for r in self.rows)
        return f"Subspace<{self.dim} in {self.ambient_dim} over {self.field}>[{vecs}]"


def _check_ambient(s: Subspace, t: Subspace):
    if s.ambient_dim != t.ambient_dim or s.field != t.field:
        raise ValueError(f"ambient mismatch: {s.ambient_dim} over {s.field} vs {t.ambient_dim} over {t.field}")


@dataclass(frozen=True)
class LinearMap:
    domain_dim: int
    codomain_dim: int
    matrix: Matrix

    def __post_init__(self):
        if (self.matrix.nrows, self.matrix.ncols) != (self.codomain_dim, self.domain_dim):
            raise ValueError("matrix shape does not match the map's dimensions")

    @classmethod
    def of(cls, m: Matrix) -> "LinearMap":
        return cls(m.ncols, m.nrows, m)

    @property
    def field(self) -> FieldSpec:
        return self.matrix.field

    def __call__(self, v: Sequence) -> tuple:
        return self.matrix.apply(v)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap.of(self.matrix @ other.matrix)

    @property
    def rank(self) -> int:
        return self.matrix.rank()

    def is_injective(self) -> bool:
        return self.rank == self.domain_dim

    def is_surjective(self) -> bool:
        return self.rank == self.codomain_dim

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def image_of(self, s: Subspace) -> Subspace:
        return Subspace.span(self.field, self.codomain_dim, [self(v) for v in s.rows])


def kernel(f: LinearMap) -> Subspace:
    F = f.field
    n = f.domain_dim
    rows, pivots = _rref_rows(F, [list(r) for r in f.matrix.rows], n)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = []
    for j in free:
        v = [F.zero] * n
        v[j] = F.one
        for row, c in zip(rows, pivots):
            v[c] = _reduce(F, -row[j])
        basis.append(v)
    return Subspace.span(F, n, basis)


def image(f: LinearMap) -> Subspace:
    return Subspace.span(f.field, f.codomain_dim, f.matrix.columns)


def sum_spaces(s: Subspace, t: Subspace) -> Subspace:
    _check_ambient(s, t)
    return Subspace.span(s.field, s.ambient_dim, list(s.rows) + list(t.rows))


def intersect(s: Subspace, t: Subspace) -> Subspace:
    """Intersection via the kernel of [basis_s | -basis_t]."""
    _check_ambient(s, t)
    F = s.field
    if s.dim == 0 or t.dim == 0:
        return Subspace.zero(F, s.ambient_dim)
    cols = list(s.rows) + [tuple(_reduce(F, -a) for a in r) for r in t.rows]
    stacked = Matrix.from_columns(F, cols, s.ambient_dim)
    null = kernel(LinearMap.of(stacked))
    bs = s.basis
    return Subspace.span(F, s.ambient_dim, [bs.apply(v[: s.dim]) for v in null.rows])


def complement(s: Subspace, inside: Subspace) -> Subspace:
    """Greedy complement: walk the canonical basis of ``inside`` and keep the
    vectors that enlarge the running span."""
    if not s.is_subspace_of(inside):
        raise ValueError("complement requires s to lie inside the enclosing subspace")
    F = s.field
    running = s
    chosen = []
    for v in inside.rows:
        if running.dim == inside.dim:
            break
        if v not in running:
            chosen.append(v)
            running = Subspace.span(F, s.ambient_dim, list(running.rows) + [v])
    return Subspace.span(F, s.ambient_dim, chosen)


@dataclass(frozen=True)
class QuotientSpace:
    """F^ambient_dim / modded, with transversal spanned by the non-pivot
    coordinate vectors of ``modded``."""

    ambient_dim: int
    modded: Subspace
    transversal: Subspace
    projection: LinearMap
    section: LinearMap

    @property
    def dim(self) -> int:
        return self.transversal.dim

    @property
    def free_coords(self) -> tuple:
        return self.transversal.pivots


def quotient(ambient_dim: int, s: Subspace) -> QuotientSpace:
    if s.ambient_dim != ambient_dim:
        raise ValueError("subspace does not live in the stated ambient space")
    F = s.field
    piv = set(s.pivots)
    free = [j for j in range(ambient_dim) if j not in piv]
    q = len(free)
    # column j of the projection: reduce e_j by s, then read the free coordinates
    proj_cols = []
    for j in range(ambient_dim):
        e = [F.zero] * ambient_dim
        e[j] = F.one
        res = s._residual(e)
        proj_cols.append([res[c] for c in free])
    projection = LinearMap.of(Matrix.from_columns(F, proj_cols, q))
    sec_cols = []
    for c in free:
        e = [F.zero] * ambient_dim
        e[c] = F.one
        sec_cols.append(e)
    section = LinearMap.of(Matrix.from_columns(F, sec_cols, ambient_dim))
    transversal = Subspace.span(F, ambient_dim, sec_cols)
    return QuotientSpace(ambient_dim, s, transversal, projection, section)


def transpose(f: LinearMap) -> LinearMap:
    return LinearMap.of(f.matrix.T)


@dataclass(frozen=True)
class TensorSpace:
    dim_u: int
    dim_v: int

    @property
    def dim(self) -> int:
        return self.dim_u * self.dim_v

    def index(self, i: int, j: int) -> int:
        if not (0 <= i < self.dim_u and 0 <= j < self.dim_v):
            raise IndexError((i, j))
        return i * self.dim_v + j

    def pair(self, k: int) -> tuple[int, int]:
        if not 0 <= k < self.dim:
            raise IndexError(k)
        return divmod(k, self.dim_v)


def tensor_space(dim_u: int, dim_v: int) -> TensorSpace:
    return TensorSpace(dim_u, dim_v)
