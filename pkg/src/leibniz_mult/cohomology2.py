"""Second cohomology with trivial coefficients and the low-degree sequences.

A 2-cochain on an n-dimensional algebra with values in A = F^m is a vector
of length n*n*m; entry ``(i*n + j)*m + a`` is the a-th coordinate of
f(e_i, e_j).  Cocycles satisfy f(x, yz) = f(xy, z) + f(y, xz); coboundaries
are f(x, y) = -eps(xy).

Every map below is returned as a LinearMap between *intrinsic* coordinate
spaces: Hom spaces in the canonical basis of ``hom_space``, Hom(H, A) as
flattened m x dim(H) matrices in H's canonical basis, and H^2 in the
quotient coordinates of ``h2``.  Dual spaces M(.) ~ H^2(., F)* use the dual
basis, so the Ganea/Stallings maps are plain transposes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .exactlin import (
    FieldSpec,
    LinearMap,
    Matrix,
    QuotientSpace,
    Subspace,
    image,
    intersect,
    kernel,
    quotient,
    sum_spaces,
    tensor_space,
    transpose,
)
from .leibniz_core import (
    LeibnizAlgebra,
    TrivialModule,
    derived,
    hom_space,
    is_central_ideal,
    quotient_algebra,
)

__all__ = [
    "TwoCochain",
    "CohomologyGroup",
    "SequenceReport",
    "NotCentralError",
    "NotLeibnizError",
    "clear_caches",
    "cochain_index",
    "cocycle_space",
    "coboundary_space",
    "coboundary_of",
    "h2",
    "transgression_cocycle",
    "pullback",
    "inf1",
    "res",
    "tra",
    "inf2",
    "delta",
    "check_five_term",
    "check_extended",
    "check_ganea",
    "check_stallings",
]


class NotCentralError(ValueError):
    pass


class NotLeibnizError(ValueError):
    """Raised when a computation exposes that the input violates the identity."""


def _mdim(A) -> int:
    return A.dim if isinstance(A, TrivialModule) else int(A)


def cochain_index(n: int, m: int, i: int, j: int, a: int) -> int:
    return (i * n + j) * m + a


@dataclass(frozen=True)
class TwoCochain:
    algebra_dim: int
    coeff_dim: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.algebra_dim ** 2 * self.coeff_dim:
            raise ValueError("cochain length must be n*n*m")

    def __call__(self, i: int, j: int) -> tuple:
        m = self.coeff_dim
        k = (i * self.algebra_dim + j) * m
        return self.values[k:k + m]

    def evaluate(self, x: Sequence, y: Sequence) -> list:
        """f(x, y) for coordinate vectors x, y."""
        n, m = self.algebra_dim, self.coeff_dim
        out = [0] * m
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                k = (i * n + j) * m
                for a in range(m):
                    out[a] += c * self.values[k + a]
        return out


def _values(f) -> tuple:
    return f.values if isinstance(f, TwoCochain) else tuple(f)


def _cocycle_rows(B: LeibnizAlgebra) -> list[list]:
    """Constraint rows over the n*n scalar cochain coordinates."""
    F, n = B.field, B.dim
    t = B.table
    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                jk, ij, ik = t[j][k], t[i][j], t[i][k]
                if not (any(jk) or any(ij) or any(ik)):
                    continue
                row = [F.zero] * (n * n)
                for s in range(n):
                    if jk[s]:
                        row[i * n + s] += jk[s]
                    if ij[s]:
                        row[s * n + k] -= ij[s]
                    if ik[s]:
                        row[j * n + s] -= ik[s]
                rows.append(F.vector(row) if F.p is not None else row)
    return rows


def _tensor_coeffs(F: FieldSpec, scalar: Subspace, n2: int, m: int) -> Subspace:
    """Z (x) F^m inside the n*n*m cochain space."""
    vecs = []
    for v in scalar.rows:
        for a in range(m):
            w = [F.zero] * (n2 * m)
            for idx, x in enumerate(v):
                w[idx * m + a] = x
            vecs.append(w)
    return Subspace.span(F, n2 * m, vecs)


@lru_cache(maxsize=512)
def _scalar_cocycles(B: LeibnizAlgebra) -> Subspace:
    rows = _cocycle_rows(B)
    n2 = B.dim ** 2
    if not rows:
        return Subspace.full(B.field, n2)
    return kernel(LinearMap.of(Matrix.from_rows(B.field, rows, n2)))


def cocycle_space(B: LeibnizAlgebra, A) -> Subspace:
    return _cocycle_space(B, _mdim(A))


@lru_cache(maxsize=512)
def _cocycle_space(B: LeibnizAlgebra, m: int) -> Subspace:
    return _tensor_coeffs(B.field, _scalar_cocycles(B), B.dim ** 2, m)


def coboundary_of(B: LeibnizAlgebra, eps: Matrix) -> tuple:
    """Cochain (x, y) -> -eps(xy) for eps given as an m x n matrix."""
    F, n, m = B.field, B.dim, eps.nrows
    out = [F.zero] * (n * n * m)
    for i in range(n):
        for j in range(n):
            v = eps.apply(B.table[i][j])
            for a in range(m):
                out[(i * n + j) * m + a] = -v[a]
    return F.vector(out)


def coboundary_space(B: LeibnizAlgebra, A) -> Subspace:
    F, n, m = B.field, B.dim, _mdim(A)
    vecs = []
    for t in range(n):
        for a in range(m):
            eps = Matrix.from_rows(F, [[1 if (b, s) == (a, t) else 0 for s in range(n)] for b in range(m)], n)
            vecs.append(coboundary_of(B, eps))
    return Subspace.span(F, n * n * m, vecs)


@dataclass(frozen=True)
class CohomologyGroup:
    """H^2(B, A) = Z^2 / B^2 with quotient coordinates taken inside Z^2."""

    algebra: LeibnizAlgebra
    coeff_dim: int
    cocycles: Subspace
    coboundaries: Subspace
    quotient: QuotientSpace = field(repr=False)
    transversal_reps: tuple = field(repr=False)

    @property
    def dim(self) -> int:
        return self.quotient.dim

    def class_of(self, f) -> tuple:
        """Quotient coordinates of the class of a cocycle."""
        z = self.cocycles.coords(_values(f))
        return self.quotient.projection(z)

    def representative(self, coords: Sequence) -> tuple:
        return self.cocycles.vector(self.quotient.section(coords))

    def is_coboundary(self, f) -> bool:
        return _values(f) in self.coboundaries

    def cohomologous(self, f, g) -> bool:
        F = self.algebra.field
        return tuple(F(a - b) for a, b in zip(_values(f), _values(g))) in self.coboundaries


@lru_cache(maxsize=512)
def _h2(B: LeibnizAlgebra, m: int) -> CohomologyGroup:
    Zc = cocycle_space(B, m)
    Bc = coboundary_space(B, m)
    if not Bc.is_subspace_of(Zc):
        raise NotLeibnizError("coboundaries are not cocycles, so the algebra is not Leibniz")
    q = quotient(Zc.dim, Subspace.span(B.field, Zc.dim, [Zc.coords(v) for v in Bc.rows]))
    reps = tuple(Zc.vector(col) for col in q.section.matrix.columns)
    return CohomologyGroup(B, m, Zc, Bc, q, reps)


def h2(B: LeibnizAlgebra, A) -> CohomologyGroup:
    return _h2(B, _mdim(A))


# ---------------------------------------------------------------- extensions


@dataclass(frozen=True)
class _Natural:
    """The natural central extension 0 -> H -> L -> L/H -> 0."""

    L: LeibnizAlgebra
    H: Subspace
    Q: LeibnizAlgebra
    P: LinearMap  # L -> L/H
    S: LinearMap  # L/H -> L, pivot-transversal section


@lru_cache(maxsize=1024)
def _natural(L: LeibnizAlgebra, H: Subspace) -> _Natural:
    if not is_central_ideal(L, H):
        raise NotCentralError("the ideal must be central")
    Q, proj, S = quotient_algebra(L, H)
    return _Natural(L, H, Q, proj.map, S)


def _check_section(nat: _Natural, section: LinearMap | Matrix | None) -> LinearMap:
    if section is None:
        return nat.S
    if isinstance(section, Matrix):
        section = LinearMap.of(section)
    q = nat.Q.dim
    if (section.domain_dim, section.codomain_dim) != (q, nat.L.dim):
        raise ValueError("section has the wrong shape")
    if (nat.P @ section).matrix != Matrix.identity(nat.L.field, q):
        raise ValueError("map is not a section of the quotient projection")
    return section


def transgression_cocycle(L: LeibnizAlgebra, H: Subspace, section=None) -> tuple:
    """f(x, y) = mu(x)mu(y) - mu(xy) on L/H, valued in H's canonical coordinates."""
    nat = _natural(L, H)
    mu = _check_section(nat, section)
    F, q, h = L.field, nat.Q.dim, H.dim
    cols = mu.matrix.columns
    out = [F.zero] * (q * q * h)
    for a in range(q):
        for b in range(q):
            v = L.mul(cols[a], cols[b])
            w = mu(nat.Q.table[a][b])
            hv = H.coords(tuple(F(x - y) for x, y in zip(v, w)))
            for k in range(h):
                out[(a * q + b) * h + k] = hv[k]
    return tuple(out)


def pullback(f: Sequence, P: Matrix, src_dim: int, m: int) -> tuple:
    """f'(x, y) = f(Px, Py) for a cochain f on the target of P."""
    F = P.field
    n = P.ncols
    q = src_dim
    cols = P.columns
    out = [F.zero] * (n * n * m)
    for i in range(n):
        pi = [(a, c) for a, c in enumerate(cols[i]) if c]
        for j in range(n):
            pj = [(b, c) for b, c in enumerate(cols[j]) if c]
            base = (i * n + j) * m
            for a, ca in pi:
                for b, cb in pj:
                    c = ca * cb
                    k = (a * q + b) * m
                    for t in range(m):
                        out[base + t] += c * f[k + t]
    return F.vector(out)


def _maps_matrix(F: FieldSpec, cols: list, nrows: int) -> LinearMap:
    return LinearMap.of(Matrix.from_columns(F, cols, nrows))


def inf1(L: LeibnizAlgebra, H: Subspace, A) -> LinearMap:
    """Hom(L/H, A) -> Hom(L, A), chi -> chi o projection."""
    nat = _natural(L, H)
    m = _mdim(A)
    F, q = L.field, nat.Q.dim
    src = hom_space(nat.Q, TrivialModule(m))
    dst = hom_space(L, TrivialModule(m))
    cols = []
    for v in src.rows:
        chi = Matrix.from_rows(F, [v[a * q:(a + 1) * q] for a in range(m)], q)
        comp = chi @ nat.P.matrix
        cols.append(dst.coords([x for r in comp.rows for x in r]))
    return _maps_matrix(F, cols, dst.dim)


def res(L: LeibnizAlgebra, H: Subspace, A) -> LinearMap:
    """Hom(L, A) -> Hom(H, A), restriction along the inclusion."""
    _natural(L, H)
    m = _mdim(A)
    F, n = L.field, L.dim
    src = hom_space(L, TrivialModule(m))
    Hb = H.basis
    cols = []
    for v in src.rows:
        chi = Matrix.from_rows(F, [v[a * n:(a + 1) * n] for a in range(m)], n)
        cols.append([x for r in (chi @ Hb).rows for x in r])
    return _maps_matrix(F, cols, m * H.dim)


def tra(L: LeibnizAlgebra, H: Subspace, A, section=None) -> LinearMap:
    """Hom(H, A) -> H^2(L/H, A), chi -> class of chi o f."""
    nat = _natural(L, H)
    m = _mdim(A)
    F, q, h = L.field, nat.Q.dim, H.dim
    f = transgression_cocycle(L, H, section)
    target = h2(nat.Q, m)
    cols = []
    for a in range(m):
        for k in range(h):
            # chi = E_{a,k}: picks coordinate k of f into slot a
            g = [F.zero] * (q * q * m)
            for idx in range(q * q):
                g[idx * m + a] = f[idx * h + k]
            cols.append(target.class_of(g))
    return _maps_matrix(F, cols, target.dim)


def inf2(L: LeibnizAlgebra, H: Subspace, A) -> LinearMap:
    """H^2(L/H, A) -> H^2(L, A), pullback along the projection."""
    nat = _natural(L, H)
    m = _mdim(A)
    src = h2(nat.Q, m)
    dst = h2(L, m)
    cols = [dst.class_of(pullback(r, nat.P.matrix, nat.Q.dim, m)) for r in src.transversal_reps]
    return _maps_matrix(L.field, cols, dst.dim)


def _delta_on_cochain(L: LeibnizAlgebra, Z: Subspace, abel: QuotientSpace, f: Sequence) -> list:
    """(f(x, z), f(z, x)) for x over the L/L' transversal and z over Z's basis."""
    F = L.field
    g = TwoCochain(L.dim, 1, tuple(f))
    xs = abel.section.matrix.columns
    T1 = tensor_space(len(xs), Z.dim)
    T2 = tensor_space(Z.dim, len(xs))
    out = [F.zero] * (T1.dim + T2.dim)
    for a, x in enumerate(xs):
        for k, z in enumerate(Z.rows):
            out[T1.index(a, k)] = F(g.evaluate(x, z)[0])
            out[T1.dim + T2.index(k, a)] = F(g.evaluate(z, x)[0])
    return out


def delta(L: LeibnizAlgebra, Z: Subspace) -> LinearMap:
    """H^2(L, F) -> (L/L' (x) Z) + (Z (x) L/L')."""
    if not is_central_ideal(L, Z):
        raise NotCentralError("the ideal must be central")
    abel = quotient(L.dim, derived(L))
    H = h2(L, 1)
    cols = [_delta_on_cochain(L, Z, abel, r) for r in H.transversal_reps]
    dim = 2 * abel.dim * Z.dim
    return LinearMap(H.dim, dim, Matrix.from_columns(L.field, cols, dim))


def delta_on_cochain(L: LeibnizAlgebra, Z: Subspace, f: Sequence) -> list:
    """Cochain-level delta, used to check that coboundaries are killed."""
    return _delta_on_cochain(L, Z, quotient(L.dim, derived(L)), f)


# ------------------------------------------------------------------ reports


@dataclass
class SequenceReport:
    name: str
    nodes: list = field(default_factory=list)   # (label, dim)
    maps: list = field(default_factory=list)    # (label, rank)
    joints: list = field(default_factory=list)  # (label, exact?)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.joints)

    @property
    def dims(self) -> tuple:
        return tuple(d for _, d in self.nodes)

    @property
    def ranks(self) -> tuple:
        return tuple(r for _, r in self.maps)

    def to_dict(self) -> dict:
        return {
            "sequence": self.name,
            "nodes": [{"node": k, "dim": d} for k, d in self.nodes],
            "maps": [{"map": k, "rank": r} for k, r in self.maps],
            "joints": [{"at": k, "exact": ok} for k, ok in self.joints],
            "pass": self.passed,
        }


def _exact(into: LinearMap, out_of: LinearMap) -> bool:
    return image(into) == kernel(out_of)


def check_five_term(L: LeibnizAlgebra, H: Subspace, A) -> SequenceReport:
    m = _mdim(A)
    i1, r, t, i2 = inf1(L, H, m), res(L, H, m), tra(L, H, m), inf2(L, H, m)
    rep = SequenceReport("five_term")
    rep.nodes = [("Hom(L/H,A)", i1.domain_dim), ("Hom(L,A)", r.domain_dim),
                 ("Hom(H,A)", t.domain_dim), ("H2(L/H,A)", i2.domain_dim),
                 ("H2(L,A)", i2.codomain_dim)]
    rep.maps = [("Inf1", i1.rank), ("Res", r.rank), ("Tra", t.rank), ("Inf2", i2.rank)]
    rep.joints = [
        ("Hom(L/H,A)", i1.is_injective()),
        ("Hom(L,A)", _exact(i1, r)),
        ("Hom(H,A)", _exact(r, t)),
        ("H2(L/H,A)", _exact(t, i2)),
    ]
    return rep


def check_extended(L: LeibnizAlgebra, Z: Subspace) -> SequenceReport:
    i2, d = inf2(L, Z, 1), delta(L, Z)
    rep = SequenceReport("extended")
    rep.nodes = [("H2(L/Z,F)", i2.domain_dim), ("H2(L,F)", i2.codomain_dim),
                 ("L/L'(x)Z+Z(x)L/L'", d.codomain_dim)]
    rep.maps = [("Inf2", i2.rank), ("delta", d.rank)]
    rep.joints = [("H2(L,F)", _exact(i2, d))]
    return rep


def check_ganea(L: LeibnizAlgebra, Z: Subspace) -> SequenceReport:
    """(L/L'(x)Z + Z(x)L/L')* -> M(L) -> M(L/Z) -> L' n Z -> 0 with the
    multipliers realized as duals of H^2(., F)."""
    d = delta(L, Z)
    beta = transpose(inf2(L, Z, 1))
    gamma = transpose(tra(L, Z, 1))  # into Z's canonical coordinates
    F = L.field
    LZ = intersect(derived(L), Z)
    gamma_img = Subspace.span(F, L.dim, [Z.vector(c) for c in gamma.matrix.columns])
    dT = transpose(d)
    rep = SequenceReport("ganea")
    rep.nodes = [("L/L'(x)Z+Z(x)L/L'", dT.domain_dim), ("M(L)", beta.domain_dim),
                 ("M(L/Z)", beta.codomain_dim), ("L'nZ", LZ.dim)]
    rep.maps = [("delta*", dT.rank), ("beta", beta.rank), ("gamma", gamma.rank)]
    rep.joints = [
        ("M(L)", _exact(dT, beta)),
        ("M(L/Z)", _exact(beta, gamma)),
        ("L'nZ", gamma_img == LZ),
    ]
    return rep


def check_stallings(L: LeibnizAlgebra, Z: Subspace) -> SequenceReport:
    """M(L) -> M(L/Z) -> Z -> L/L' -> L/(Z+L') -> 0."""
    beta = transpose(inf2(L, Z, 1))
    theta = transpose(tra(L, Z, 1))  # M(L/Z) -> Z coordinates
    D = derived(L)
    abel = quotient(L.dim, D)
    top = quotient(L.dim, sum_spaces(Z, D))
    alpha = LinearMap.of(abel.projection.matrix @ Z.basis)
    nu = LinearMap.of(top.projection.matrix @ abel.section.matrix)
    rep = SequenceReport("stallings")
    rep.nodes = [("M(L)", beta.domain_dim), ("M(L/Z)", beta.codomain_dim), ("Z", Z.dim),
                 ("L/L'", abel.dim), ("L/(Z+L')", top.dim)]
    rep.maps = [("beta", beta.rank), ("theta", theta.rank), ("alpha", alpha.rank), ("nu", nu.rank)]
    rep.joints = [
        ("M(L/Z)", _exact(beta, theta)),
        ("Z", _exact(theta, alpha)),
        ("L/L'", _exact(alpha, nu)),
        ("L/(Z+L')", nu.is_surjective()),
    ]
    return rep


def clear_caches():
    """Drop memoized cocycle spaces, cohomology groups and quotient data."""
    for fn in (_scalar_cocycles, _cocycle_space, _h2, _natural):
        fn.cache_clear()
