import random

import pytest

from leibniz_mult.exactlin import GF, QQ, LinearMap, Matrix, Subspace
from leibniz_mult.cohomology2 import NotCentralError, coboundary_of, h2
from leibniz_mult.extensions import (
    CentralExtension,
    cocycle_of,
    cover,
    criteria_report,
    equivalent,
    from_cocycle,
    is_stem,
    is_unicentral,
    multiplier_dim,
    random_section,
    stem_center_image,
    tra_bijective_on_cover,
    with_section,
    z_star,
    z_star_routes,
)
from leibniz_mult.leibniz_core import (
    AlgebraHom,
    LeibnizAlgebra,
    catalog,
    center,
    derived,
    random_nilpotent,
    verify_leibniz,
)
from oracle import h2_dims, table_of

FIELDS = [QQ, GF(5)]


def cochain(n, entries, F=QQ):
    v = [F.zero] * (n * n)
    for (i, j), c in entries.items():
        v[i * n + j] = F(c)
    return tuple(v)


def no_center():
    # solv2: e1e2 = e2 has trivial center
    L = catalog("solv2")
    assert center(L).dim == 0
    return L


# --------------------------------------------------------------- from_cocycle / cocycle_of


def test_from_cocycle_examples():
    L = catalog("cyclic:2")
    split = from_cocycle(L, cochain(2, {}), 1)
    assert split.total == LeibnizAlgebra.from_products(QQ, 3, {(0, 0): [0, 1, 0]})
    assert from_cocycle(catalog("abelian:1"), cochain(1, {(0, 0): 1})).total == catalog("cyclic:2")
    assert from_cocycle(L, cochain(2, {(0, 1): 1})).total == catalog("cyclic:3")
    with pytest.raises(ValueError):
        from_cocycle(L, cochain(2, {(1, 0): 1}))


def test_cocycle_of_examples():
    L = catalog("cyclic:2")
    split = from_cocycle(L, cochain(2, {}), 1)
    assert not any(cocycle_of(split).values)
    e = from_cocycle(L, cochain(2, {(0, 1): 1}))
    assert cocycle_of(e).values == cochain(2, {(0, 1): 1})


def test_cocycle_of_on_a_non_pivot_presentation():
    # cyclic:3 viewed as an extension of cyclic:2 by its center span{e3}
    E = catalog("cyclic:3")
    L = catalog("cyclic:2")
    K = center(E)
    proj = LinearMap.of(Matrix.from_rows(QQ, [[1, 0, 0], [0, 1, 0]], 3))
    sec = LinearMap.of(Matrix.from_columns(QQ, [(1, 0, 0), (0, 1, 0)], 3))
    ext = CentralExtension(E, K, AlgebraHom(E, L, proj), sec)
    assert ext.problems() == []
    assert cocycle_of(ext).values == cochain(2, {(0, 1): 1})


def test_equivalent_examples():
    L = catalog("cyclic:2")
    e = from_cocycle(L, cochain(2, {(0, 1): 1}))
    assert equivalent(e, e)
    eps = Matrix.from_rows(QQ, [[3, -2]], 2)
    g = tuple(a + b for a, b in zip(cochain(2, {(0, 1): 1}), coboundary_of(L, eps)))
    assert equivalent(e, from_cocycle(L, g))
    assert not equivalent(from_cocycle(L, cochain(2, {}), 1), e)


def test_is_stem_examples():
    L = catalog("cyclic:2")
    zero_kernel = CentralExtension(L, L.zero(), AlgebraHom(L, L, LinearMap.of(Matrix.identity(QQ, 2))),
                                   LinearMap.of(Matrix.identity(QQ, 2)))
    assert is_stem(zero_kernel)
    assert not is_stem(from_cocycle(L, cochain(2, {}), 1))
    assert is_stem(cover(L).extension)


@pytest.mark.parametrize("F", FIELDS)
def test_roundtrip_with_random_sections(F):
    rng = random.Random(2)
    L = catalog("heisenberg", F)
    H = h2(L, 2)
    for _ in range(10):
        f = H.cocycles.vector([F.random(rng) for _ in range(H.cocycles.dim)])
        e = from_cocycle(L, f, 2)
        e2 = with_section(e, random_section(e, rng))
        assert e2.problems() == []
        assert H.cohomologous(cocycle_of(e2), f)
        assert equivalent(from_cocycle(L, cocycle_of(e2)), e)
    with pytest.raises(ValueError):
        with_section(e, LinearMap.of(Matrix.zeros(F, L.dim + 2, L.dim)))


# --------------------------------------------------------------- covers


def test_cover_examples():
    assert cover(catalog("abelian:1")).extension.total == catalog("cyclic:2")
    c = cover(catalog("cyclic:2"))
    assert c.extension.total == catalog("cyclic:3") and c.multiplier.dim == 1
    c = cover(catalog("abelian:2"))
    assert c.extension.total.dim == 6 and c.multiplier.dim == 4


@pytest.mark.parametrize("F", FIELDS)
@pytest.mark.parametrize("name", ["heisenberg", "heisenberg_sym", "squares3", "aff2", "solv2", "sl2", "cyclic:4"])
def test_cover_contract(name, F):
    L = catalog(name, F)
    c = cover(L)
    E, K = c.extension.total, c.multiplier
    assert verify_leibniz(E) == []
    assert K.dim == multiplier_dim(L)
    assert K.is_subspace_of(center(E)) and K.is_subspace_of(derived(E))
    assert c.extension.problems() == []
    assert tra_bijective_on_cover(L)


def test_multiplier_dim_examples():
    assert multiplier_dim(catalog("abelian:3")) == 9
    assert multiplier_dim(catalog("cyclic:2")) == 1
    L = catalog("heisenberg")
    assert multiplier_dim(L) == h2_dims(table_of(L), 3)[2] == 5


def test_tra_bijective_examples():
    assert tra_bijective_on_cover(catalog("abelian:1"))
    assert tra_bijective_on_cover(catalog("cyclic:2"))


# --------------------------------------------------------------- Z* and criteria


def test_z_star_examples():
    for name in ("abelian:1", "cyclic:2"):
        L = catalog(name)
        assert z_star(L).dim == 0
        assert not is_unicentral(L)
    L = no_center()
    assert z_star(L).dim == 0 and is_unicentral(L)


@pytest.mark.parametrize("F", FIELDS)
def test_z_star_routes_agree(F):
    for s in range(20):
        L = random_nilpotent(s, 1 + s % 3, s % 3, F)
        a, b = z_star_routes(L)
        assert a == b and a.is_subspace_of(center(L))


def test_criteria_examples():
    L = catalog("cyclic:2")
    cr = criteria_report(L, center(L))
    assert cr.flags() == "FFFF" and cr.consistent
    for name in ("cyclic:3", "heisenberg", "abelian:2"):
        L = catalog(name)
        cr = criteria_report(L, L.zero())
        assert cr.flags() == "TTTT" and cr.consistent
    L = catalog("cyclic:2")
    with pytest.raises(NotCentralError):
        criteria_report(L, Subspace.full(QQ, L.dim))


def test_stem_center_image_examples():
    rep = stem_center_image(catalog("cyclic:2"))
    assert rep.all_match
    assert all(s.image.dim == 0 for s in rep.images)
    L = no_center()
    rep = stem_center_image(L)
    assert rep.unicentral and rep.all_match and rep.unicentral_consequence
    assert all(s.image == center(L) for s in rep.images)


@pytest.mark.parametrize("F", FIELDS)
def test_stem_center_image_random(F):
    for s in range(10):
        rep = stem_center_image(random_nilpotent(s, 2, 1 + s % 3, F), seed=s)
        assert rep.all_match and rep.unicentral_consequence
        assert any(v.cover for v in rep.images)
