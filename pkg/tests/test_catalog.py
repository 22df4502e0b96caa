import pytest

from uce3 import (
    QQ,
    UnknownAlgebra,
    catalog,
    catalog_names,
    check_binary,
    field_of,
)


def test_sl2_structure_constants():
    g = catalog("sl2", QQ)
    assert g.dim == 3
    e, f, h = 0, 1, 2
    one = QQ.one

    def bk(i, j):
        return list(g.c[i][j])

    assert bk(e, f) == [0, 0, one]        # [e,f] = h
    assert bk(h, e) == [2 * one, 0, 0]    # [h,e] = 2e
    assert bk(h, f) == [0, -2 * one, 0]   # [h,f] = -2f
    assert bk(e, e) == [0, 0, 0]


@pytest.mark.parametrize("name,dim", [("sl2", 3), ("sl3", 8), ("sl4", 15)])
def test_sl_n_dims(name, dim):
    for spec in ("Q", "GF(7)"):
        g = catalog(name, field_of(spec))
        assert g.dim == dim
        assert check_binary(g).is_lie


def test_name_variants():
    assert catalog("sl(3)", QQ).c == catalog("sl3", QQ).c
    assert catalog(" sl2 ", QQ).dim == 3


def test_heisenberg():
    g = catalog("heisenberg", QQ)
    flags = check_binary(g)
    assert g.dim == 3
    assert flags.is_lie and not flags.is_perfect
    # [x,y] = z, z central
    assert list(g.c[0][1]) == [0, 0, QQ.one]
    assert all(x == 0 for x in g.c[2][0])
    assert all(x == 0 for x in g.c[2][1])


def test_abelian():
    g = catalog("abelian(5)", QQ)
    assert g.dim == 5
    assert all(
        all(x == 0 for x in g.c[i][j]) for i in range(5) for j in range(5)
    )


def test_unknown_names():
    for bad in ("so3", "sl5", "sl1", "abelian(0)", "abelian(x)", ""):
        with pytest.raises(UnknownAlgebra):
            catalog(bad, QQ)


def test_catalog_names_listing():
    names = catalog_names()
    assert "sl2" in names and "heisenberg" in names


def test_default_field_is_rationals():
    assert catalog("sl2").field == QQ
