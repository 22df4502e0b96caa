import pytest

from conftest import char_of, tolists2, tolists3
from naive_checks import naive_binary_flags, naive_derived_table, naive_ternary_flags

from uce3 import (
    QQ,
    AxiomPrecondition,
    BinaryAlgebra,
    DimensionMismatch,
    JacobiFails,
    Matrix,
    NotEquivariant,
    NotLeibniz,
    NotLie,
    TernaryAlgebra,
    canonical_wedge_action,
    catalog,
    check_binary,
    check_ternary,
    derived_lts,
    equivariant_leibniz,
    field_of,
    leibniz_uce,
    tensor_leibniz,
    verify_action,
)

FIELDS = ["Q", "GF(2)", "GF(3)", "GF(5)"]


@pytest.mark.parametrize("spec", FIELDS)
@pytest.mark.parametrize("name", ["sl2", "sl3", "abelian(3)", "heisenberg"])
def test_flags_match_naive(spec, name):
    f = field_of(spec)
    g = catalog(name, f)
    flags = check_binary(g)
    ref = naive_binary_flags(char_of(f), tolists2(g))
    assert flags.is_alternating == ref["alternating"]
    assert flags.is_leibniz == ref["leibniz"]
    assert flags.satisfies_jacobi == ref["jacobi"]
    assert flags.is_lie == ref["lie"]
    assert flags.is_perfect == ref["perfect"]


def test_expected_catalog_flags():
    g = catalog("sl2", QQ)
    flags = check_binary(g)
    assert flags.is_lie and flags.is_perfect
    h = catalog("heisenberg", QQ)
    hf = check_binary(h)
    assert hf.is_lie and not hf.is_perfect
    a = catalog("abelian(4)", QQ)
    af = check_binary(a)
    assert af.is_lie and not af.is_perfect
    # sl2 in characteristic 2 keeps the bracket axioms but loses perfection
    g2 = catalog("sl2", field_of("GF(2)"))
    f2 = check_binary(g2)
    assert f2.is_lie and not f2.is_perfect


def test_witnesses_point_at_failures():
    # [x,y] = x in dim 1: not alternating, not Leibniz
    bad = BinaryAlgebra(QQ, 1, [[[1]]])
    flags = check_binary(bad)
    assert not flags.is_alternating
    assert flags.witnesses["alternating"] == (0, 0)
    t = TernaryAlgebra(QQ, 1, [[[[1]]]])
    tf = check_ternary(t)
    assert not tf.is_lts and tf.witnesses


@pytest.mark.parametrize("spec", FIELDS)
@pytest.mark.parametrize("name", ["sl2", "sl3"])
def test_derived_lts_matches_naive(spec, name):
    f = field_of(spec)
    g = catalog(name, f)
    dl = derived_lts(g)
    p = char_of(f)
    assert tolists3(dl) == naive_derived_table(p, tolists2(g))
    ref = naive_ternary_flags(p, tolists3(dl))
    flags = check_ternary(dl)
    assert flags.is_lts == ref["lts"] is True
    assert flags.is_perfect == ref["perfect"]


def test_derived_lts_rejects_non_jacobi(sl2_dual):
    # this Leibniz cover is perfect but its jacobiator is nonzero
    u = leibniz_uce(sl2_dual)
    e = u.extension_algebra
    flags = check_binary(e)
    assert flags.is_leibniz and not flags.satisfies_jacobi
    with pytest.raises(JacobiFails):
        derived_lts(e)


def test_derived_lts_rejects_non_leibniz():
    # [e0,e0] = e1, [e1,e0] = e0 breaks the Leibniz identity at (0,1,0)
    bad = BinaryAlgebra(QQ, 2, [[[0, 1], [0, 0]], [[1, 0], [0, 0]]])
    flags = check_binary(bad)
    assert not flags.is_leibniz
    with pytest.raises((NotLeibniz, JacobiFails)):
        derived_lts(bad)


@pytest.mark.parametrize("variant", ["tensor", "wedge"])
def test_tensor_leibniz_binary_input(variant):
    g = catalog("sl2", QQ)
    tb = tensor_leibniz(g, variant=variant)
    flags = check_binary(tb)
    assert flags.is_leibniz
    expected = g.dim * g.dim if variant == "tensor" else g.dim * (g.dim - 1) // 2
    assert tb.dim == expected


@pytest.mark.parametrize("variant", ["tensor", "wedge"])
def test_tensor_leibniz_ternary_input(variant):
    dl = derived_lts(catalog("sl2", field_of("GF(5)")))
    tb = tensor_leibniz(dl, variant=variant)
    assert check_binary(tb).is_leibniz


def test_tensor_leibniz_rejects_bad_input():
    bad = BinaryAlgebra(QQ, 2, [[[0, 1], [0, 0]], [[1, 0], [0, 0]]])
    with pytest.raises(NotLeibniz):
        tensor_leibniz(bad)
    with pytest.raises(ValueError):
        tensor_leibniz(catalog("sl2", QQ), variant="sym")


@pytest.mark.parametrize("name", ["sl2", "sl3"])
def test_wedge_action(name):
    dl = derived_lts(catalog(name, QQ))
    act = canonical_wedge_action(dl)
    assert verify_action(act)
    assert verify_action(act, target=dl)
    other = derived_lts(catalog(name, field_of("GF(3)")))
    with pytest.raises(Exception):
        verify_action(act, target=other)


def test_wedge_action_apply_matches_table():
    dl = derived_lts(catalog("sl2", QQ))
    act = canonical_wedge_action(dl)
    # x * (e0 ^ e1) = {x, e0, e1}
    m = [QQ.one, QQ.zero, QQ.zero]
    gvec = [QQ.zero] * act.algebra.dim
    gvec[0] = QQ.one  # first wedge basis vector is e0 ^ e1
    assert act.act(m, gvec) == list(dl.t[0][0][1])


def test_equivariant_leibniz_adjoint_recovers_bracket():
    g = catalog("sl2", QQ)
    # right adjoint action m * x = [m, x] with f = identity gives back g
    act_table = [[list(g.c[u][x]) for x in range(g.dim)] for u in range(g.dim)]
    from uce3 import ModuleAction

    act = ModuleAction(g.dim, g, act_table)
    br = equivariant_leibniz(act, Matrix.identity(QQ, g.dim))
    assert br.c == g.c


def test_equivariant_leibniz_error_paths():
    g = catalog("sl2", QQ)
    from uce3 import ModuleAction

    act_table = [[list(g.c[u][x]) for x in range(g.dim)] for u in range(g.dim)]
    act = ModuleAction(g.dim, g, act_table)
    with pytest.raises(DimensionMismatch):
        equivariant_leibniz(act, Matrix.identity(QQ, g.dim + 1))
    # a permutation of sl2 that is not an automorphism breaks equivariance
    perm = Matrix(QQ, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    with pytest.raises(NotEquivariant):
        equivariant_leibniz(act, perm)
    # non-Lie acting algebra is rejected up front
    bad = BinaryAlgebra(QQ, 1, [[[1]]])
    bad_act = ModuleAction(1, bad, [[[1]]])
    with pytest.raises(AxiomPrecondition):
        equivariant_leibniz(bad_act, Matrix.identity(QQ, 1))


def test_equivariant_leibniz_zero_map_gives_zero_bracket():
    g = catalog("sl2", QQ)
    act_table = [[list(g.c[u][x]) for x in range(g.dim)] for u in range(g.dim)]
    from uce3 import ModuleAction

    act = ModuleAction(g.dim, g, act_table)
    zero = Matrix(QQ, [[0] * g.dim for _ in range(g.dim)], g.dim)
    br = equivariant_leibniz(act, zero)
    z = QQ.zero
    assert all(c == z for row in br.c for vec in row for c in vec)


def _bracket_vv(p, c, u, v):
    from naive_checks import bracket_iv, vadd, vscale

    out = [0] * len(c)
    for i, ci in enumerate(u):
        if ci:
            out = vadd(p, out, vscale(p, ci, bracket_iv(p, c, i, v)))
    return out


@pytest.mark.parametrize(
    "case",
    ["sl2/Q", "sl3/GF(3)", "heisenberg/GF(2)", "bad/Q"],
)
def test_random_multilinear_tuples_agree_with_basis_verdict(case):
    # axioms are multilinear, so the basis-tuple verdict must match the
    # verdict on arbitrary vectors; 200 random tuples per algebra
    import random

    from naive_checks import is_zero_vec, vadd, vsub

    name, spec = case.split("/")
    f = field_of(spec)
    if name == "bad":
        g = BinaryAlgebra(f, 2, [[[0, 1], [0, 0]], [[1, 0], [0, 0]]])
    else:
        g = catalog(name, f)
    flags = check_binary(g)
    p = char_of(f)
    c = tolists2(g)
    rng = random.Random(811)
    n = g.dim
    alt_bad, lei_bad, jac_bad = [], [], []
    for _ in range(200):
        u, v, w = (
            [f.random_scalar(rng) for _ in range(n)] for _ in range(3)
        )
        alt_bad.append(not is_zero_vec(_bracket_vv(p, c, u, u)))
        lhs = _bracket_vv(p, c, u, _bracket_vv(p, c, v, w))
        r1 = _bracket_vv(p, c, _bracket_vv(p, c, u, v), w)
        r2 = _bracket_vv(p, c, _bracket_vv(p, c, u, w), v)
        lei_bad.append(not is_zero_vec(vsub(p, lhs, vsub(p, r1, r2))))
        s = vadd(
            p,
            _bracket_vv(p, c, u, _bracket_vv(p, c, v, w)),
            vadd(
                p,
                _bracket_vv(p, c, v, _bracket_vv(p, c, w, u)),
                _bracket_vv(p, c, w, _bracket_vv(p, c, u, v)),
            ),
        )
        jac_bad.append(not is_zero_vec(s))
    assert flags.is_alternating == (not any(alt_bad))
    assert flags.is_leibniz == (not any(lei_bad))
    assert flags.satisfies_jacobi == (not any(jac_bad))
