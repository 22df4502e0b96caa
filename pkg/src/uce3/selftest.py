"""Seeded randomized self-checks, run via the hidden CLI subcommand.

Each check draws from one shared random.Random so a failing seed
reproduces exactly. These overlap the unit tests on purpose: the point is
a quick in-situ sanity pass on an installed copy, not coverage.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import (
    check_binary,
    check_ternary,
    canonical_wedge_action,
    derived_lts,
    tensor_leibniz,
    verify_action,
)
from .catalog import catalog
from .errors import Uce3Error
from .fields import QQ, field_of
from .linalg import Matrix, Subspace, kernel, set_gf2_packed_default
from .serialize import algebra_from_dict, algebra_to_dict, dumps_algebra
from .uce import CentralExtension, leibniz_uce, lie_uce, lts_tensor_cube, universal_map
from .theorem import verify_main_theorem

_PRIMES = [3, 5, 7, 11, 13]


def _random_field(rng, allow_q=True, allow_two=True):
    pool = list(_PRIMES)
    if allow_two:
        pool.append(2)
    if allow_q and rng.random() < 0.3:
        return QQ
    return field_of(f"GF({rng.choice(pool)})")


def _random_scalar(rng, f):
    if f.characteristic:
        return rng.randrange(f.characteristic)
    return Fraction(rng.randrange(-6, 7), rng.randrange(1, 5))


def _check_fields(rng):
    for _ in range(60):
        f = _random_field(rng)
        a, b, c = (_random_scalar(rng, f) for _ in range(3))
        assert f.mul(f.add(a, b), c) == f.add(f.mul(a, c), f.mul(b, c))
        assert f.add(a, f.neg(a)) == f.zero
        if not f.is_zero(b):
            assert f.mul(b, f.inv(b)) == f.one
        assert f.coerce(f.parse_scalar(f.scalar_str(a))) == a


def _check_linalg(rng):
    for _ in range(25):
        f = _random_field(rng)
        n, m = rng.randrange(1, 7), rng.randrange(1, 7)
        mat = Matrix(
            f, [[_random_scalar(rng, f) for _ in range(m)] for _ in range(n)], m
        )
        k = kernel(mat)
        assert mat.rank() + k.dim == m, "rank-nullity"
        for v in k.basis_vectors():
            assert all(f.is_zero(x) for x in mat.apply(v))
        vs = [[_random_scalar(rng, f) for _ in range(m)] for _ in range(4)]
        ws = [[_random_scalar(rng, f) for _ in range(m)] for _ in range(4)]
        u = Subspace.from_vectors(f, m, vs)
        w = Subspace.from_vectors(f, m, ws)
        assert u.dim + w.dim == u.sum_with(w).dim + u.intersect(w).dim


def _check_serialize(rng):
    for _ in range(15):
        f = _random_field(rng)
        n = rng.randrange(1, 5)
        arity = rng.choice([2, 3])
        rows = []
        for _ in range(rng.randrange(0, 2 * n)):
            idx = [rng.randrange(n) for _ in range(arity)]
            pairs = [[rng.randrange(n), f.scalar_str(_random_scalar(rng, f))]]
            rows.append(idx + [pairs])
        d = {"field": f.spec_str(), "dim": n}
        d["binary" if arity == 2 else "ternary"] = rows
        alg = algebra_from_dict(d)
        again = algebra_from_dict(algebra_to_dict(alg))
        if arity == 2:
            assert alg.c == again.c
        else:
            assert alg.t == again.t
        assert dumps_algebra(alg) == dumps_algebra(again)


def _check_catalog_axioms(rng):
    for name in ("sl2", "sl3"):
        f = _random_field(rng, allow_two=(name == "sl3"))
        g = catalog(name, f)
        fl = check_binary(g)
        assert fl.is_lie and fl.is_perfect, (name, f.spec_str())
        dl = derived_lts(g)
        assert check_ternary(dl).is_lts
        for variant in ("tensor", "wedge"):
            assert check_binary(tensor_leibniz(g, variant)).is_leibniz
            assert check_binary(tensor_leibniz(dl, variant)).is_leibniz
        assert verify_action(canonical_wedge_action(dl), target=dl)


def _check_shuffles(rng):
    f = _random_field(rng, allow_q=True, allow_two=False)
    g = catalog("sl2", f)
    base = (leibniz_uce(g), lie_uce(g), lts_tensor_cube(derived_lts(g)))
    for _ in range(3):
        shuffled = (
            leibniz_uce(g, rng=rng),
            lie_uce(g, rng=rng),
            lts_tensor_cube(derived_lts(g), rng=rng),
        )
        for a, b in zip(base, shuffled):
            assert a.carrier_dim == b.carrier_dim
            assert a.h2.dim == b.h2.dim
            assert a.relations.equals(b.relations)
            if a.category == "lts":
                assert a.extension_algebra.t == b.extension_algebra.t
            else:
                assert a.extension_algebra.c == b.extension_algebra.c


def _permuted(g, perm):
    from .algebra import BinaryAlgebra

    n = g.dim
    table = [
        [
            [g.c[perm[i]][perm[j]][perm[k]] for k in range(n)]
            for j in range(n)
        ]
        for i in range(n)
    ]
    return BinaryAlgebra(g.field, n, table, name=f"{g.name}-permuted")


def _check_basis_permutation(rng):
    g = catalog("sl3", field_of("GF(2)"))
    ref = verify_main_theorem(g)
    perm = list(range(g.dim))
    rng.shuffle(perm)
    rep = verify_main_theorem(_permuted(g, perm))
    assert rep.ok and ref.ok
    assert rep.dims == ref.dims


def _check_packed_vs_generic(rng):
    g = catalog("sl3", field_of("GF(2)"))
    ref = verify_main_theorem(g).to_dict()
    prev = set_gf2_packed_default(False)
    try:
        alt = verify_main_theorem(g).to_dict()
    finally:
        set_gf2_packed_default(prev)
    ref["base"] = alt["base"] = ""
    assert ref == alt


def _check_universal_map_identity(rng):
    f = _random_field(rng, allow_two=False)
    g = catalog("sl2", f)
    for u in (leibniz_uce(g), lie_uce(g), lts_tensor_cube(derived_lts(g))):
        m = universal_map(u, u.as_extension())
        assert m == Matrix.identity(u.base.field, u.carrier_dim)


def _check_map_into_padded_extension(rng):
    g = catalog("sl2", QQ)
    u = leibniz_uce(g)
    n = g.dim
    f = g.field
    from .algebra import BinaryAlgebra

    table = [
        [list(g.c[i][j]) + [f.zero] if i < n and j < n else [f.zero] * (n + 1)
         for j in range(n + 1)]
        for i in range(n + 1)
    ]
    padded = BinaryAlgebra(f, n + 1, table, name="sl2+center")
    proj = Matrix(f, [[f.one if i == j else f.zero for j in range(n + 1)]
                      for i in range(n)], n + 1)
    sect = Matrix(f, [[f.one if i == j else f.zero for j in range(n)]
                      for i in range(n + 1)], n)
    ext = CentralExtension("leibniz", g, padded, proj, sect)
    m = universal_map(u, ext)
    assert m.shape == (n + 1, u.carrier_dim)


_CHECKS = [
    ("field arithmetic", _check_fields),
    ("linear algebra", _check_linalg),
    ("serialization round trip", _check_serialize),
    ("catalog axioms", _check_catalog_axioms),
    ("generator shuffles", _check_shuffles),
    ("basis permutation", _check_basis_permutation),
    ("packed vs generic GF(2)", _check_packed_vs_generic),
    ("universal map identity", _check_universal_map_identity),
    ("map into padded extension", _check_map_into_padded_extension),
]


def run_selftest(seed=8128, verbose=False):
    rng = random.Random(seed)
    failures = 0
    for name, fn in _CHECKS:
        try:
            fn(rng)
        except (AssertionError, Uce3Error) as e:
            failures += 1
            print(f"selftest FAIL: {name}: {e}")
        else:
            if verbose:
                print(f"selftest ok: {name}")
    if failures:
        print(f"selftest: {failures} of {len(_CHECKS)} checks failed "
              f"(seed {seed})")
        return False
    print(f"selftest: {len(_CHECKS)} checks passed (seed {seed})")
    return True
