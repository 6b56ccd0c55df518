"""Seeded property runs over the catalog and random nilpotent algebras.

Each check returns a list of failure strings; an empty list means the
instance satisfied every invariant the check covers.  ``run_suite`` drives
all of them and tallies per-check instance counts.
"""

from __future__ import annotations

import itertools
import logging
import random
from collections import Counter
from dataclasses import dataclass, field

from . import algebra_file
from .cohomology2 import (
    check_extended,
    check_five_term,
    check_ganea,
    check_stallings,
    cocycle_space,
    coboundary_of,
    delta_on_cochain,
    h2,
    tra,
    transgression_cocycle,
)
from .exactlin import FieldSpec, LinearMap, Matrix, Subspace, intersect
from .extensions import (
    Finding,
    cocycle_of,
    cover,
    criteria_report,
    equivalent,
    from_cocycle,
    multiplier_dim,
    random_section,
    stem_center_image,
    tra_bijective_on_cover,
    with_section,
    z_star_routes,
)
from .leibniz_core import (
    CATALOG_NAMES,
    LeibnizAlgebra,
    catalog,
    center,
    derived,
    quotient_algebra,
    random_nilpotent,
    verify_leibniz,
)

log = logging.getLogger(__name__)

CHECKS = ("sequences", "criteria", "cover", "zstar", "roundtrip", "sections")


def corpus(field: FieldSpec, seeds: int, max_dim: int = 5, catalog_names=CATALOG_NAMES) -> list[LeibnizAlgebra]:
    """Catalog algebras plus ``seeds`` random nilpotent ones of dim <= max_dim."""
    algs = [catalog(name, field) for name in catalog_names]
    for s in range(seeds):
        rng = random.Random(f"corpus:{s}:{max_dim}")
        base = rng.randint(1, min(3, max_dim))
        steps = rng.randint(0, max_dim - base)
        algs.append(random_nilpotent(s, base, steps, field))
    return algs


def central_ideals(L: LeibnizAlgebra, cap: int = 10) -> list[Subspace]:
    """Z(L) first, then 1- and 2-dimensional subspaces of Z(L) spanned by
    basis vectors and pairwise sums, deduplicated, at most ``cap``."""
    C = center(L)
    F = L.field
    zs = list(C.rows)
    cand = [C]
    cand += [Subspace.span(F, L.dim, [z]) for z in zs]
    cand += [Subspace.span(F, L.dim, [tuple(F(a + b) for a, b in zip(x, y))]) for x, y in itertools.combinations(zs, 2)]
    cand += [Subspace.span(F, L.dim, [x, y]) for x, y in itertools.combinations(zs, 2)]
    out = []
    for s in cand:
        if s.dim and s not in out:
            out.append(s)
    return out[:cap]


def check_sequences(L: LeibnizAlgebra, Z: Subspace, A: int = 1) -> list[str]:
    bad = []
    for rep in (check_five_term(L, Z, A), check_extended(L, Z), check_ganea(L, Z), check_stallings(L, Z)):
        for at, ok in rep.joints:
            if not ok:
                bad.append(f"{rep.name} not exact at {at}")
    LZ = intersect(derived(L), Z)
    Q, _, _ = quotient_algebra(L, Z)
    rank_beta = check_ganea(L, Z).ranks[1]
    if rank_beta != multiplier_dim(Q) - LZ.dim:
        bad.append("dim im beta != dim M(L/Z) - dim(L' n Z)")
    if tra(L, Z, 1).rank != LZ.dim:
        bad.append("rank Tra != dim(L' n Z)")
    H = h2(L, 1)
    for b in H.coboundaries.rows:
        if any(delta_on_cochain(L, Z, b)):
            bad.append("delta does not kill a coboundary")
            break
    return bad


def check_criteria(L: LeibnizAlgebra, Z: Subspace) -> list[str]:
    cr = criteria_report(L, Z)
    return [] if cr.consistent else [f"criteria inconsistent: {cr.flags()}"]


def check_cover(L: LeibnizAlgebra) -> list[str]:
    try:
        cov = cover(L)
    except Finding as e:
        return [f"cover: {e}"]
    E, K = cov.extension.total, cov.multiplier
    bad = []
    if verify_leibniz(E):
        bad.append("cover violates the Leibniz identity")
    if not K.is_subspace_of(intersect(center(E), derived(E))):
        bad.append("cover kernel not in Z(E) n E'")
    if K.dim != h2(L, 1).dim:
        bad.append("cover kernel dim != dim H^2")
    if cov.extension.problems():
        bad.extend(cov.extension.problems())
    if not tra_bijective_on_cover(L):
        bad.append("Tra on the cover is not bijective")
    return bad


def check_zstar(L: LeibnizAlgebra, seed=0) -> list[str]:
    via_cover, via_ann = z_star_routes(L)
    bad = []
    if via_cover != via_ann:
        bad.append("Z* routes disagree")
    if not via_cover.is_subspace_of(center(L)):
        bad.append("Z* not inside Z(L)")
    if bad:
        return bad
    rep = stem_center_image(L, seed=seed)
    if not rep.all_match:
        bad.append("nu(Z(E)) differs from Z*(L) on a stem cover")
    if not rep.unicentral_consequence:
        bad.append("unicentral algebra with a stem cover missing Z(L)")
    return bad


def _random_cocycle(L: LeibnizAlgebra, m: int, rng: random.Random) -> tuple:
    Zc = cocycle_space(L, m)
    return Zc.vector([L.field.random(rng) for _ in range(Zc.dim)]) if Zc.dim else (L.field.zero,) * (L.dim ** 2 * m)


def _random_coboundary(L: LeibnizAlgebra, m: int, rng: random.Random) -> tuple:
    F = L.field
    eps = Matrix.from_rows(F, [[F.random(rng) for _ in range(L.dim)] for _ in range(m)], L.dim)
    return coboundary_of(L, eps)


def check_roundtrip(L: LeibnizAlgebra, trials: int, rng: random.Random) -> list[str]:
    """from_cocycle / cocycle_of / equivalent, in both directions."""
    F = L.field
    bad = []
    if L.dim == 0:
        return bad
    for t in range(trials):
        m = 1 + t % 2
        H = h2(L, m)
        f = _random_cocycle(L, m, rng)
        e = from_cocycle(L, f, m)
        e = with_section(e, random_section(e, rng))
        back = from_cocycle(L, cocycle_of(e))
        if t == 0 and verify_leibniz(e.total):
            bad.append("extension total space is not Leibniz")
        if not equivalent(back, e):
            bad.append(f"round trip lost the class (trial {t})")
        # cohomologous partner must be equivalent
        g = tuple(F(a + b) for a, b in zip(f, _random_coboundary(L, m, rng)))
        if not equivalent(from_cocycle(L, f, m), from_cocycle(L, g, m)):
            bad.append(f"cohomologous cocycles gave inequivalent extensions (trial {t})")
        # an arbitrary partner is equivalent exactly when cohomologous
        k = _random_cocycle(L, m, rng)
        if equivalent(from_cocycle(L, f, m), from_cocycle(L, k, m)) != H.cohomologous(f, k):
            bad.append(f"equivalence disagrees with cohomology class (trial {t})")
    return bad


def _random_quotient_section(L: LeibnizAlgebra, Z: Subspace, rng: random.Random) -> Matrix:
    from .exactlin import quotient
    F = L.field
    q = quotient(L.dim, Z)
    shift = Matrix.from_rows(F, [[F.random(rng) for _ in range(q.dim)] for _ in range(Z.dim)], q.dim)
    return q.section.matrix + Z.basis @ shift


def check_sections(L: LeibnizAlgebra, Z: Subspace, pairs: int, rng: random.Random) -> list[str]:
    Q, _, _ = quotient_algebra(L, Z)
    HZ = h2(Q, Z.dim)
    bad = []
    for t in range(pairs):
        mu, nu = _random_quotient_section(L, Z, rng), _random_quotient_section(L, Z, rng)
        if tra(L, Z, 1, LinearMap.of(mu)).matrix != tra(L, Z, 1, LinearMap.of(nu)).matrix:
            bad.append(f"Tra depends on the section (pair {t})")
        f = transgression_cocycle(L, Z, LinearMap.of(mu))
        g = transgression_cocycle(L, Z, LinearMap.of(nu))
        if not HZ.cohomologous(f, g):
            bad.append(f"section cocycles not cohomologous (pair {t})")
    return bad


@dataclass
class SuiteReport:
    instances: Counter = field(default_factory=Counter)
    failures: list = field(default_factory=list)  # (check, algebra, ideal, message)
    algebras: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def failed(self, check: str) -> list:
        return [f for f in self.failures if f[0] == check]

    def merge(self, other: "SuiteReport"):
        self.instances.update(other.instances)
        self.failures.extend(other.failures)
        self.algebras += other.algebras

    def to_dict(self) -> dict:
        return {
            "algebras": self.algebras,
            "instances": dict(sorted(self.instances.items())),
            "failures": [{"check": c, "algebra": a, "ideal": i, "message": m} for c, a, i, m in self.failures],
            "pass": self.passed,
        }


def run_algebra(L: LeibnizAlgebra, checks=CHECKS, roundtrips: int = 100, section_pairs: int = 20,
                ideal_cap: int = 10, seed=0) -> SuiteReport:
    rep = SuiteReport(algebras=1)
    label = algebra_file.digest(L)
    rng = random.Random(f"run_algebra:{seed}:{label}")
    ideals = central_ideals(L, ideal_cap)

    def record(check, ideal, msgs):
        rep.instances[check] += 1
        for msg in msgs:
            rep.failures.append((check, label, ideal, msg))

    def guarded(fn, *args):
        try:
            return fn(*args)
        except Finding as e:
            return [f"finding: {e}"]

    for Z in ideals:
        zlabel = [list(map(L.field.format, r)) for r in Z.rows]
        if "sequences" in checks:
            record("sequences", zlabel, guarded(check_sequences, L, Z))
        if "criteria" in checks:
            record("criteria", zlabel, guarded(check_criteria, L, Z))
        if "sections" in checks:
            record("sections", zlabel, check_sections(L, Z, section_pairs, rng))
    if "cover" in checks:
        record("cover", None, check_cover(L))
    if "zstar" in checks:
        record("zstar", None, guarded(check_zstar, L, seed))
    if "roundtrip" in checks:
        record("roundtrip", None, check_roundtrip(L, roundtrips, rng))
    return rep


def run_suite(algebras, **kw) -> SuiteReport:
    total = SuiteReport()
    for L in algebras:
        log.debug("suite: %r", L)
        total.merge(run_algebra(L, **kw))
    return total
