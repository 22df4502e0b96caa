import random

import pytest

from conftest import build_sl2_dual

from uce3 import (
    QQ,
    BinaryAlgebra,
    CentralExtension,
    DimensionGuard,
    Matrix,
    NotCentral,
    NotLeibniz,
    NotLie,
    NotOverSameBase,
    NotPerfect,
    WrongCategory,
    catalog,
    check_binary,
    derived_lts,
    field_of,
    homology,
    leibniz_uce,
    lie_uce,
    lts_tensor_cube,
    universal_map,
)

# carrier and H2 dimensions confirmed against the relation-rank oracle in
# tests/naive_checks.py (see test_acceptance for the live cross-checks)
FROZEN = {
    ("sl2", "Q"): {"lie": (3, 0), "leibniz": (3, 0), "lts": (3, 0)},
    ("sl2", "GF(3)"): {"lie": (3, 0), "leibniz": (3, 0), "lts": (3, 0)},
    ("sl2", "GF(5)"): {"lie": (3, 0), "leibniz": (3, 0), "lts": (3, 0)},
    ("sl3", "Q"): {"lie": (8, 0), "leibniz": (8, 0), "lts": (8, 0)},
    ("sl3", "GF(2)"): {"lie": (8, 0), "leibniz": (8, 0), "lts": (8, 0)},
    ("sl3", "GF(3)"): {"lie": (14, 6), "leibniz": (14, 6), "lts": (14, 6)},
    ("sl3", "GF(5)"): {"lie": (8, 0), "leibniz": (8, 0), "lts": (8, 0)},
}


def build(category, g, **kw):
    if category == "lie":
        return lie_uce(g, **kw)
    if category == "leibniz":
        return leibniz_uce(g, **kw)
    return lts_tensor_cube(derived_lts(g), **kw)


@pytest.mark.parametrize("name,spec", sorted(FROZEN))
def test_frozen_dimensions(name, spec):
    g = catalog(name, field_of(spec))
    for category, (carrier, h2) in FROZEN[(name, spec)].items():
        u = build(category, g)
        assert u.carrier_dim == carrier, (name, spec, category)
        assert u.h2.dim == h2, (name, spec, category)


def test_relation_space_dims_sl3_gf2():
    g = catalog("sl3", field_of("GF(2)"))
    assert leibniz_uce(g).relations.dim == 56
    assert lie_uce(g).relations.dim == 20
    assert lts_tensor_cube(derived_lts(g)).relations.dim == 504


def test_extension_verifies_and_is_perfect():
    for name, spec in (("sl2", "Q"), ("sl3", "GF(2)"), ("sl3", "GF(3)")):
        g = catalog(name, field_of(spec))
        for category in ("lie", "leibniz", "lts"):
            u = build(category, g)
            ext = u.as_extension()
            assert ext.verify() is ext
            # projection splits the section on the nose
            assert u.projection_b @ u.section_s == Matrix.identity(
                g.field, g.dim
            )


def test_nondegenerate_case_sl2_dual():
    g = build_sl2_dual()
    u_lie, u_leib = lie_uce(g), leibniz_uce(g)
    u_lts = lts_tensor_cube(derived_lts(g))
    assert (u_lie.carrier_dim, u_lie.h2.dim) == (6, 0)
    assert (u_leib.carrier_dim, u_leib.h2.dim) == (7, 1)
    assert (u_lts.carrier_dim, u_lts.h2.dim) == (6, 0)
    # the Leibniz cover is perfect, genuinely non-Lie, and self-covering
    e = u_leib.extension_algebra
    flags = check_binary(e)
    assert flags.is_leibniz and flags.is_perfect and not flags.is_lie
    again = leibniz_uce(e)
    assert again.carrier_dim == 7 and again.h2.dim == 0


def test_homology_report():
    g = catalog("sl3", field_of("GF(3)"))
    u = leibniz_uce(g)
    rep = homology(u)
    assert rep.h1_dim == 0
    assert rep.h2_dim == 6
    assert len(rep.h2_basis) == 6
    assert all(any(x != 0 for x in v) for v in rep.h2_basis)
    h = catalog("heisenberg", QQ)
    with pytest.raises(NotPerfect):
        leibniz_uce(h)


def test_constructor_preconditions():
    with pytest.raises(NotPerfect):
        lie_uce(catalog("abelian(3)", QQ))
    with pytest.raises(NotPerfect):
        lie_uce(catalog("sl2", field_of("GF(2)")))
    bad = BinaryAlgebra(QQ, 2, [[[0, 1], [0, 0]], [[1, 0], [0, 0]]])
    with pytest.raises(NotLeibniz):
        leibniz_uce(bad)
    # lie_uce wants an honest Lie bracket
    u = leibniz_uce(build_sl2_dual())
    with pytest.raises(NotLie):
        lie_uce(u.extension_algebra)
    with pytest.raises(NotPerfect):
        lts_tensor_cube(derived_lts(catalog("sl2", field_of("GF(2)"))))


def test_cube_dimension_guard():
    dl = derived_lts(catalog("sl4", QQ))  # dim 15 > the guard threshold
    with pytest.raises(DimensionGuard):
        lts_tensor_cube(dl)


def test_to_dict_shape():
    u = lie_uce(catalog("sl2", QQ))
    d = u.to_dict()
    assert d["category"] == "lie"
    assert d["carrier_dim"] == 3
    assert d["h2_dim"] == 0
    assert d["algebra"]["dim"] == 3
    assert d["base"] == "sl2"


def test_universal_map_identity():
    for category in ("lie", "leibniz", "lts"):
        g = catalog("sl2", field_of("GF(5)"))
        u = build(category, g)
        m = universal_map(u, u.as_extension())
        assert m == Matrix.identity(g.field, u.carrier_dim)


def test_universal_map_into_padded_extension():
    g = catalog("sl2", QQ)
    u = lie_uce(g)
    n = 4
    table = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i in range(3):
        for j in range(3):
            for k in range(3):
                table[i][j][k] = g.c[i][j][k]
    padded = BinaryAlgebra(QQ, n, table, name="sl2+center")
    proj = Matrix(QQ, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
    sect = Matrix(QQ, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]])
    ext = CentralExtension("lie", g, padded, proj, sect)
    m = universal_map(u, ext)
    assert m.shape == (4, 3)
    # the image avoids the padding coordinate
    assert all(QQ.is_zero(x) for x in m.rows[3])


def test_universal_map_error_paths():
    g = catalog("sl2", QQ)
    u_lie, u_leib = lie_uce(g), leibniz_uce(g)
    with pytest.raises(WrongCategory):
        universal_map(u_lie, u_leib.as_extension())
    with pytest.raises(NotOverSameBase):
        universal_map(u_lie, lie_uce(catalog("sl3", QQ)).as_extension())


def test_extension_verify_catches_noncentral_kernel():
    # 2-dim solvable algebra over a 1-dim base: the kernel acts, so it is
    # an extension but not a central one
    base = catalog("abelian(1)", QQ)
    e = BinaryAlgebra(QQ, 2, [[[0, 0], [0, 1]], [[0, -1], [0, 0]]])
    proj = Matrix(QQ, [[1, 0]])
    sect = Matrix(QQ, [[1], [0]])
    ext = CentralExtension("lie", base, e, proj, sect)
    with pytest.raises(NotCentral):
        ext.verify()


def test_extension_verify_catches_unsplit_section():
    g = catalog("sl2", QQ)
    ident = Matrix.identity(QQ, 3)
    bad_sect = Matrix(QQ, [[0, 0, 0], [0, 0, 0], [0, 0, 0]])
    ext = CentralExtension("lie", g, g, ident, bad_sect)
    with pytest.raises(NotCentral):
        ext.verify()


def test_extension_wrong_arity():
    g = catalog("sl2", QQ)
    dl = derived_lts(g)
    ident = Matrix.identity(QQ, 3)
    ext = CentralExtension("lts", g, dl, ident, ident)
    with pytest.raises(WrongCategory):
        ext.verify()


def test_shuffled_generators_same_result():
    g = catalog("sl2", field_of("GF(3)"))
    base = {
        cat: build(cat, g) for cat in ("lie", "leibniz", "lts")
    }
    for seed in (1, 2, 3):
        rng = random.Random(seed)
        for cat, u0 in base.items():
            u = build(cat, g, rng=rng)
            assert u.carrier_dim == u0.carrier_dim
            assert u.relations.equals(u0.relations)
            if cat == "lts":
                assert u.extension_algebra.t == u0.extension_algebra.t
            else:
                assert u.extension_algebra.c == u0.extension_algebra.c


def test_universal_map_to_trivial_extension_is_projection():
    # mapping into the base itself (identity projection) recovers b
    g = catalog("sl2", QQ)
    for category in ("lie", "leibniz", "lts"):
        u = build(category, g)
        base = u.base
        ident = Matrix.identity(QQ, base.dim)
        triv = CentralExtension(category, base, base, ident, ident)
        assert universal_map(u, triv) == u.projection_b


def test_universal_map_independent_of_section_choice():
    g = catalog("sl2", QQ)
    u = lie_uce(g)
    n = 4
    table = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i in range(3):
        for j in range(3):
            for k in range(3):
                table[i][j][k] = g.c[i][j][k]
    padded = BinaryAlgebra(QQ, n, table, name="sl2+center")
    proj = Matrix(QQ, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
    sect1 = Matrix(QQ, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]])
    # a second splitting shifted by the central coordinate
    sect2 = Matrix(QQ, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -2, 7]])
    m1 = universal_map(u, CentralExtension("lie", g, padded, proj, sect1))
    m2 = universal_map(u, CentralExtension("lie", g, padded, proj, sect2))
    assert m1 == m2
