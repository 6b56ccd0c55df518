"""Central and stem extensions, covers, Z*(L) and unicentrality."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .cohomology2 import (
    NotCentralError,
    TwoCochain,
    coboundary_of,
    cocycle_space,
    delta,
    h2,
    inf2,
    tra,
)
from .exactlin import (
    LinearMap,
    Matrix,
    Subspace,
    complement,
    intersect,
    kernel,
    transpose,
)
from .leibniz_core import (
    AlgebraHom,
    LeibnizAlgebra,
    TrivialModule,
    center,
    derived,
    is_central_ideal,
    quotient_algebra,
)

__all__ = [
    "Finding",
    "CentralExtension",
    "CoverData",
    "CriteriaReport",
    "StemCenterReport",
    "from_cocycle",
    "cocycle_of",
    "equivalent",
    "is_stem",
    "with_section",
    "random_section",
    "cover",
    "multiplier_dim",
    "z_star_routes",
    "z_star",
    "is_unicentral",
    "criteria_report",
    "stem_center_image",
    "tra_bijective_on_cover",
]


class Finding(Exception):
    """A computed result that contradicts a theorem the construction relies on."""


@dataclass(frozen=True)
class CentralExtension:
    total: LeibnizAlgebra
    kernel: Subspace
    projection: AlgebraHom
    section: LinearMap

    @property
    def base(self) -> LeibnizAlgebra:
        return self.projection.codomain

    def problems(self) -> list[str]:
        """Violated structural invariants (empty when the extension is sound)."""
        out = []
        nu = self.projection.map
        if not nu.is_surjective():
            out.append("projection is not surjective")
        if kernel(nu) != self.kernel:
            out.append("kernel of the projection differs from the stated kernel")
        if not self.kernel.is_subspace_of(center(self.total)):
            out.append("kernel is not central")
        if (nu @ self.section).matrix != Matrix.identity(self.total.field, self.base.dim):
            out.append("section is not a right inverse of the projection")
        if not self.projection.is_homomorphism():
            out.append("projection is not multiplicative")
        return out


@dataclass(frozen=True)
class CoverData:
    extension: CentralExtension
    multiplier: Subspace


def _as_values(L: LeibnizAlgebra, f, m: int | None) -> tuple[tuple, int]:
    if isinstance(f, TwoCochain):
        return tuple(L.field.vector(f.values)), f.coeff_dim
    f = L.field.vector(f)
    n2 = L.dim ** 2
    if m is None:
        if n2 == 0:
            raise ValueError("coefficient dimension needed for a zero-dimensional base")
        m = len(f) // n2
    if len(f) != n2 * m:
        raise ValueError("cochain length does not match n*n*m")
    return f, m


def from_cocycle(L: LeibnizAlgebra, f, m: int | None = None) -> CentralExtension:
    """E = L + F^m with (x, a)(y, b) = (xy, f(x, y))."""
    vals, m = _as_values(L, f, m)
    if vals not in cocycle_space(L, m):
        raise ValueError("cochain is not a 2-cocycle")
    F, n = L.field, L.dim
    N = n + m
    zero = (F.zero,) * N
    table = []
    for i in range(N):
        row = []
        for j in range(N):
            if i < n and j < n:
                k = (i * n + j) * m
                row.append(tuple(L.table[i][j]) + vals[k:k + m])
            else:
                row.append(zero)
        table.append(tuple(row))
    E = LeibnizAlgebra(F, N, tuple(table), None)
    K = Subspace.span(F, N, [E.basis_vector(n + a) for a in range(m)])
    proj = Matrix.from_rows(F, [[1 if c == r else 0 for c in range(N)] for r in range(n)], N)
    sec = Matrix.from_columns(F, [E.basis_vector(i) for i in range(n)], N)
    return CentralExtension(E, K, AlgebraHom(E, L, LinearMap.of(proj)), LinearMap.of(sec))


def cocycle_of(ext: CentralExtension) -> TwoCochain:
    """f(x, y) = mu(x)mu(y) - mu(xy) in the kernel's canonical coordinates."""
    L, E, K, mu = ext.base, ext.total, ext.kernel, ext.section
    F, n, m = L.field, L.dim, K.dim
    cols = mu.matrix.columns
    vals = []
    for i in range(n):
        for j in range(n):
            v = E.mul(cols[i], cols[j])
            w = mu(L.table[i][j])
            vals.extend(K.coords(tuple(F(a - b) for a, b in zip(v, w))))
    return TwoCochain(n, m, tuple(vals))


def equivalent(e1: CentralExtension, e2: CentralExtension) -> bool:
    if e1.base != e2.base:
        raise ValueError("extensions of different algebras")
    if e1.kernel.dim != e2.kernel.dim:
        raise ValueError("kernels of different dimension")
    H = h2(e1.base, e1.kernel.dim)
    return H.cohomologous(cocycle_of(e1), cocycle_of(e2))


def is_stem(ext: CentralExtension) -> bool:
    return ext.kernel.is_subspace_of(derived(ext.total))


def with_section(ext: CentralExtension, section: LinearMap) -> CentralExtension:
    out = CentralExtension(ext.total, ext.kernel, ext.projection, section)
    if (ext.projection.map @ section).matrix != Matrix.identity(ext.total.field, ext.base.dim):
        raise ValueError("not a section of the projection")
    return out


def random_section(ext: CentralExtension, rng: random.Random) -> LinearMap:
    """The stored section shifted by a random linear map into the kernel."""
    F = ext.total.field
    n, m = ext.base.dim, ext.kernel.dim
    shift = Matrix.from_rows(F, [[F.random(rng) for _ in range(n)] for _ in range(m)], n) if m else None
    if shift is None:
        return ext.section
    return LinearMap.of(ext.section.matrix + ext.kernel.basis @ shift)


def _stack(reps: Sequence[Sequence], n: int, F) -> tuple:
    """Scalar cocycles f_1..f_h -> one cochain valued in F^h."""
    h = len(reps)
    out = [F.zero] * (n * n * h)
    for k, r in enumerate(reps):
        for idx in range(n * n):
            out[idx * h + k] = r[idx]
    return tuple(out)


def cover(L: LeibnizAlgebra) -> CoverData:
    """Extension of L by the full H^2(L, F) transversal basis, checked to be a cover."""
    H = h2(L, 1)
    ext = from_cocycle(L, _stack(H.transversal_reps, L.dim, L.field), H.dim)
    E, K = ext.total, ext.kernel
    if not K.is_subspace_of(intersect(center(E), derived(E))):
        raise Finding(f"cover kernel not inside Z(E) n E' for {L!r}")
    if K.dim != H.dim:
        raise Finding("cover kernel dimension differs from dim H^2(L, F)")
    return CoverData(ext, K)


def multiplier_dim(L: LeibnizAlgebra) -> int:
    return h2(L, 1).dim


def _center_image(ext: CentralExtension) -> Subspace:
    return ext.projection.map.image_of(center(ext.total))


def _annihilator_zstar(L: LeibnizAlgebra) -> Subspace:
    """{z in Z(L) : f(x, z) = f(z, x) = 0 for every cocycle f and every x}."""
    F, n = L.field, L.dim
    Zc = cocycle_space(L, 1)
    rows = []
    for f in Zc.rows:
        for x in range(n):
            rows.append([f[x * n + k] for k in range(n)])
            rows.append([f[k * n + x] for k in range(n)])
    C = center(L)
    if not rows:
        return C
    ann = kernel(LinearMap.of(Matrix.from_rows(F, rows, n)))
    return intersect(C, ann)


def z_star_routes(L: LeibnizAlgebra) -> tuple[Subspace, Subspace]:
    """(cover route, annihilator route)."""
    return _center_image(cover(L).extension), _annihilator_zstar(L)


def z_star(L: LeibnizAlgebra) -> Subspace:
    via_cover, via_ann = z_star_routes(L)
    if via_cover != via_ann:
        raise Finding(f"Z*(L) routes disagree: {via_cover!r} vs {via_ann!r}")
    return via_cover


def is_unicentral(L: LeibnizAlgebra) -> bool:
    return z_star(L) == center(L)


@dataclass(frozen=True)
class CriteriaReport:
    delta_trivial: bool
    beta_injective: bool
    dim_identity_holds: bool
    z_in_zstar: bool

    @property
    def consistent(self) -> bool:
        return len({self.delta_trivial, self.beta_injective, self.dim_identity_holds, self.z_in_zstar}) == 1

    def flags(self) -> str:
        return "".join("T" if b else "F" for b in
                       (self.delta_trivial, self.beta_injective, self.dim_identity_holds, self.z_in_zstar))

    def to_dict(self) -> dict:
        return {
            "delta_trivial": self.delta_trivial,
            "beta_injective": self.beta_injective,
            "dim_identity_holds": self.dim_identity_holds,
            "z_in_zstar": self.z_in_zstar,
            "consistent": self.consistent,
        }


def criteria_report(L: LeibnizAlgebra, Z: Subspace) -> CriteriaReport:
    if not is_central_ideal(L, Z):
        raise NotCentralError("the ideal must be central")
    Q, _, _ = quotient_algebra(L, Z)
    LZ = intersect(derived(L), Z)
    return CriteriaReport(
        delta_trivial=delta(L, Z).is_zero(),
        beta_injective=transpose(inf2(L, Z, 1)).is_injective(),
        dim_identity_holds=multiplier_dim(L) == multiplier_dim(Q) - LZ.dim,
        z_in_zstar=Z.is_subspace_of(z_star(L)),
    )


@dataclass
class StemImage:
    label: str
    kernel_dim: int
    stem: bool
    cover: bool
    image: Subspace


@dataclass
class StemCenterReport:
    z_star: Subspace
    center: Subspace
    images: list = field(default_factory=list)

    @property
    def unicentral(self) -> bool:
        return self.z_star == self.center

    @property
    def all_match(self) -> bool:
        """Every stem cover hits Z*(L); every stem extension contains it."""
        for s in self.images:
            if not s.stem:
                return False
            if s.cover and s.image != self.z_star:
                return False
            if not (self.z_star.is_subspace_of(s.image) and s.image.is_subspace_of(self.center)):
                return False
        return True

    @property
    def unicentral_consequence(self) -> bool:
        return not self.unicentral or all(s.image == self.center for s in self.images if s.cover)

    def to_dict(self) -> dict:
        return {
            "z_star_dim": self.z_star.dim,
            "center_dim": self.center.dim,
            "unicentral": self.unicentral,
            "all_match": self.all_match,
            "variants": [{"label": s.label, "kernel_dim": s.kernel_dim, "stem": s.stem,
                          "cover": s.cover, "image_dim": s.image.dim} for s in self.images],
        }


def _random_invertible(F, h: int, rng: random.Random) -> Matrix:
    while True:
        M = Matrix.from_rows(F, [[F.random(rng) for _ in range(h)] for _ in range(h)], h)
        if M.rank() == h:
            return M


def _stem_quotient(ext: CentralExtension) -> CentralExtension:
    """Quotient of a central extension by a complement of K n E' inside K."""
    E, K = ext.total, ext.kernel
    D = intersect(K, derived(E))
    C = complement(D, K)
    Q, proj, sec = quotient_algebra(E, C)
    P = proj.map
    nu = LinearMap.of(ext.projection.map.matrix @ sec.matrix)
    kern = P.image_of(K)
    return CentralExtension(Q, kern, AlgebraHom(Q, ext.base, nu), P @ ext.section)


def stem_center_image(L: LeibnizAlgebra, seed=0, variants: int = 8) -> StemCenterReport:
    """nu(Z(E)) over the cover and up to ``variants - 1`` further stem covers.

    The extra ones extend L by a randomly recombined basis of H^2 plus random
    coboundaries and extra cocycles, then divide out a complement of K n E'
    in the kernel, which leaves a stem extension with kernel of dim H^2.
    """
    F, n = L.field, L.dim
    rng = random.Random(f"stem_center_image:{seed}")
    H = h2(L, 1)
    h = H.dim
    rep = StemCenterReport(z_star(L), center(L))
    cov = cover(L).extension
    rep.images.append(StemImage("cover", cov.kernel.dim, is_stem(cov), cov.kernel.dim == h, _center_image(cov)))
    Zc = cocycle_space(L, 1)
    for v in range(1, variants):
        R = _random_invertible(F, h, rng) if h else None
        fam = []
        for k in range(h):
            r = [F.zero] * (n * n)
            for t in range(h):
                c = R[k, t]
                if c:
                    r = [F(a + c * b) for a, b in zip(r, H.transversal_reps[t])]
            fam.append(r)
        for k in range(len(fam)):
            eps = Matrix.from_rows(F, [[F.random(rng) for _ in range(n)]], n)
            fam[k] = [F(a + b) for a, b in zip(fam[k], coboundary_of(L, eps))]
        for _ in range(rng.randint(0, 2)):
            fam.append(list(Zc.vector([F.random(rng) for _ in range(Zc.dim)])) if Zc.dim else [F.zero] * (n * n))
        if not fam:
            continue
        big = from_cocycle(L, _stack(fam, n, F), len(fam))
        ext = _stem_quotient(big)
        rep.images.append(StemImage(f"variant{v}", ext.kernel.dim, is_stem(ext),
                                    ext.kernel.dim == h, _center_image(ext)))
    return rep


def tra_bijective_on_cover(L: LeibnizAlgebra) -> bool:
    """Transgression Hom(A, F) -> H^2(L, F) for the cover 0 -> A -> E -> L -> 0."""
    ext = cover(L).extension
    Q, _, _ = quotient_algebra(ext.total, ext.kernel)
    if Q != L:
        raise Finding("cover modulo its kernel is not the base algebra in transversal coordinates")
    t = tra(ext.total, ext.kernel, TrivialModule(1))
    return t.domain_dim == t.codomain_dim and t.rank == t.domain_dim
