import pytest

from uce3 import BinaryAlgebra, QQ, catalog, field_of, verify_main_theorem


def char_of(field):
    return getattr(field, "p", 0) or 0


def tolists2(g):
    return [[list(g.c[i][j]) for j in range(g.dim)] for i in range(g.dim)]


def tolists3(a):
    n = a.dim
    return [[[list(a.t[i][j][k]) for k in range(n)] for j in range(n)]
            for i in range(n)]


def build_sl2_dual(field=QQ):
    """sl2 tensored with the dual numbers F[t]/(t^2): basis e,f,h,et,ft,ht.

    Perfect, and the smallest case where the Leibniz and Lie extensions
    genuinely differ in characteristic 0.
    """
    n = 6
    table = [[[0] * n for _ in range(n)] for _ in range(n)]
    sl2 = {
        (0, 1): {2: 1}, (1, 0): {2: -1},
        (2, 0): {0: 2}, (0, 2): {0: -2},
        (2, 1): {1: -2}, (1, 2): {1: 2},
    }
    for (i, j), d in sl2.items():
        for k, c in d.items():
            table[i][j][k] += c
            table[i + 3][j][k + 3] += c
            table[i][j + 3][k + 3] += c
    return BinaryAlgebra(field, n, table, name="sl2[t]/(t^2)")


# the seven perfect Lie inputs the broad checks run over
THEOREM_CASES = (
    ("sl2", "Q"), ("sl2", "GF(3)"), ("sl2", "GF(5)"),
    ("sl3", "Q"), ("sl3", "GF(2)"), ("sl3", "GF(3)"), ("sl3", "GF(5)"),
)


@pytest.fixture(scope="session")
def theorem_report():
    """Lazy session cache of full pipeline runs, keyed by (name, field)."""
    cache = {}

    def get(name, fld):
        key = (name, fld)
        if key not in cache:
            if name == "sl2-dual":
                g = build_sl2_dual(field_of(fld))
            else:
                g = catalog(name, field_of(fld))
            cache[key] = verify_main_theorem(g)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def sl2_dual():
    return build_sl2_dual()
