"""Universal central extensions in three categories, built as explicit
quotients of tensor powers.

All three constructions follow one recipe. Pick the ambient space (g (x) g,
the wedge square, or the triple tensor power), stream in the relation
generators, and quotient:

  * Leibniz:  relations [x,y] (x) z - [x,z] (x) y - x (x) [y,z];
  * Lie:      relations [x,y] ^ z + [y,z] ^ x + [z,x] ^ y on the wedge;
  * LTS:      the three relation families on L (x) L (x) L: the polarized
              squares, the cyclic sums, and the five-variable family
              {x,a,b} (x) y (x) z + x (x) {y,a,b} (x) z + x (x) y (x) {z,a,b}
              - {x,y,z} (x) a (x) b.

The bracket on the quotient is project(images under the evaluation map,
re-tensored), the projection to the base is the evaluation map itself, and
the kernel of that projection is the second homology of the base.

Everything a proof would normally guarantee is instead asserted on the
constructed objects: the evaluation map kills the relation span (which also
gives the ideal property, since the bracket factors slotwise through the
evaluation map), the quotient satisfies its category's axioms, the kernel
is central, the carrier is perfect, and the projection is a surjective
morphism split by the stored section.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    BinaryAlgebra,
    TernaryAlgebra,
    check_binary,
    check_ternary,
    wedge_index_pairs,
)
from .errors import (
    DimensionGuard,
    DimensionMismatch,
    InternalAssertionFailed,
    NotCentral,
    NotLeibniz,
    NotLie,
    NotLts,
    NotOverSameBase,
    NotPerfect,
    WellDefinednessFailed,
    WrongCategory,
)
from .fields import ensure_same_field
from .linalg import (
    Matrix,
    SpanAccumulator,
    kernel,
    quotient,
    right_inverse,
)
from . import tensorops as tops

__all__ = [
    "UceResult",
    "HomologyReport",
    "CentralExtension",
    "leibniz_uce",
    "lie_uce",
    "lts_tensor_cube",
    "homology",
    "universal_map",
    "LTS_DIM_GUARD",
]

LTS_DIM_GUARD = 12

_CATEGORIES = ("lie", "leibniz", "lts")


def _nonzero(field, vec):
    return [(i, x) for i, x in enumerate(vec) if not field.is_zero(x)]


def _same_base(a, b):
    if type(a) is not type(b):
        raise NotOverSameBase("extensions live over algebras of different arity")
    ensure_same_field(a.field, b.field)
    if a.dim != b.dim:
        raise NotOverSameBase(f"base dimensions differ: {a.dim} vs {b.dim}")
    ta = a.c if isinstance(a, BinaryAlgebra) else a.t
    tb = b.c if isinstance(b, BinaryAlgebra) else b.t
    if ta != tb:
        raise NotOverSameBase("base structure constants differ")


def _matrix_tensor(m):
    return tops.exact_tensor(m.field, m.rows)


def _subspace_tensor(sub):
    rows = sub.basis_vectors()
    if not rows:
        return None
    return tops.exact_tensor(sub.field, rows)


def _category_axiom_defect(category, algebra):
    """Name of the first failed axiom of the category, or None."""
    t = algebra.tensor()
    if category == "lts":
        for name, fn in (
            ("last-two-slots", tops.lts_pair_witness),
            ("cyclic-sum", tops.lts_cyclic_witness),
            ("derivation-identity", tops.lts_derivation_witness),
        ):
            w = fn(t)
            if w is not None:
                return f"{name} at {w}"
        return None
    if category == "lie":
        w = tops.alternating_witness(t)
        if w is not None:
            return f"alternating at {w}"
        w = tops.jacobi_witness(t)
        if w is not None:
            return f"jacobi at {w}"
        return None
    w = tops.leibniz_witness(t)
    if w is not None:
        return f"leibniz at {w}"
    return None


class CentralExtension:
    """A surjection of algebras with split section and central kernel.

    This is the input shape universal_map accepts; UceResult.as_extension()
    produces one, and tests can hand-build them. Nothing about the data is
    trusted: verify() recomputes the kernel and checks every defining
    property, raising NotCentral on the first violation.
    """

    def __init__(self, category, base, algebra, projection, section):
        if category not in _CATEGORIES:
            raise WrongCategory(f"category must be one of {_CATEGORIES}")
        self.category = category
        self.base = base
        self.algebra = algebra
        self.projection = projection
        self.section = section
        self.kernel = None
        self._verified = False

    @property
    def carrier_dim(self):
        return self.algebra.dim

    def verify(self):
        if self._verified:
            return self
        want_ternary = self.category == "lts"
        if isinstance(self.algebra, TernaryAlgebra) != want_ternary:
            raise WrongCategory(
                f"category {self.category} does not match the carrier's arity"
            )
        if isinstance(self.base, TernaryAlgebra) != want_ternary:
            raise WrongCategory(
                f"category {self.category} does not match the base's arity"
            )
        ensure_same_field(self.base.field, self.algebra.field)
        ensure_same_field(self.base.field, self.projection.field)
        m, n = self.algebra.dim, self.base.dim
        if self.projection.shape != (n, m):
            raise DimensionMismatch(
                f"projection must be {n} x {m}, got {self.projection.shape}"
            )
        if self.section.shape != (m, n):
            raise DimensionMismatch(
                f"section must be {m} x {n}, got {self.section.shape}"
            )
        if self.projection @ self.section != Matrix.identity(self.base.field, n):
            raise NotCentral("section is not split by the projection")
        defect = _category_axiom_defect(self.category, self.algebra)
        if defect is not None:
            raise NotCentral(f"carrier fails its category's axioms: {defect}")
        et = self.algebra.tensor()
        bt = self.base.tensor()
        pt = _matrix_tensor(self.projection)
        wit = (
            tops.ternary_morphism_witness(et, bt, pt)
            if want_ternary
            else tops.binary_morphism_witness(et, bt, pt)
        )
        if wit is not None:
            raise NotCentral(f"projection is not a bracket morphism at {wit}")
        self.kernel = kernel(self.projection)
        zt = _subspace_tensor(self.kernel)
        if zt is not None:
            arity = 3 if want_ternary else 2
            for slot in range(arity):
                w = tops.central_slot_witness(et, zt, slot)
                if w is not None:
                    raise NotCentral(
                        f"kernel is not central: slot {slot} witness {w}"
                    )
        self._verified = True
        return self


@dataclass(frozen=True)
class HomologyReport:
    h1_dim: int
    h2_dim: int
    h2_basis: tuple


class UceResult:
    """A constructed universal central extension.

    carrier: the quotient presentation (coset coordinates over the tensor
    ambient); extension_algebra: the induced bracket on those coordinates;
    projection_b: evaluation onto the base; h2: kernel of projection_b;
    section_s: a linear splitting of projection_b.
    """

    def __init__(
        self,
        category,
        base,
        carrier,
        extension_algebra,
        projection_b,
        relations,
        h2,
        section_s,
    ):
        self.category = category
        self.base = base
        self.carrier = carrier
        self.extension_algebra = extension_algebra
        self.projection_b = projection_b
        self.relations = relations
        self.h2 = h2
        self.section_s = section_s

    @property
    def carrier_dim(self):
        return self.carrier.dim

    def as_extension(self):
        ext = CentralExtension(
            self.category,
            self.base,
            self.extension_algebra,
            self.projection_b,
            self.section_s,
        )
        ext.kernel = self.h2
        return ext

    def to_dict(self):
        from .serialize import algebra_to_dict

        return {
            "category": self.category,
            "base": self.base.name,
            "carrier_dim": self.carrier.dim,
            "h2_dim": self.h2.dim,
            "relation_dim": self.relations.dim,
            "algebra": algebra_to_dict(self.extension_algebra),
        }

    def __repr__(self):
        return (
            f"<UceResult {self.category} over {self.base.name or 'base'}: "
            f"carrier {self.carrier.dim}, h2 {self.h2.dim}>"
        )


def homology(u):
    """H1 = coker of the bracket span, H2 = kernel of the projection."""
    base = u.base
    acc = SpanAccumulator(base.field, base.dim)
    if isinstance(base, BinaryAlgebra):
        for i in range(base.dim):
            for j in range(base.dim):
                acc.add_dense(base.c[i][j])
    else:
        for i in range(base.dim):
            for j in range(base.dim):
                for k in range(base.dim):
                    acc.add_dense(base.t[i][j][k])
    lifts = tuple(tuple(u.carrier.section(v)) for v in u.h2.basis_vectors())
    return HomologyReport(
        h1_dim=base.dim - acc.dim, h2_dim=u.h2.dim, h2_basis=lifts
    )


def _fold_relations(field, ambient, streams, stop_dim, rng=None):
    """Echelonize the relation generators.

    stop_dim is the dimension of the kernel of the evaluation map; the
    relation span is contained in that kernel (asserted afterwards on the
    echelon basis), so the fold can stop the moment it reaches stop_dim.

    rng, when given, shuffles the generator order before folding; the
    resulting subspace is order-independent by construction, and the
    determinism tests exercise exactly that.
    """
    acc = SpanAccumulator(field, ambient)
    if rng is not None:
        gens = [pairs for stream in streams for pairs in stream]
        rng.shuffle(gens)
        streams = [gens]
    for stream in streams:
        for pairs in stream:
            if pairs:
                acc.add_pairs(pairs)
                if acc.dim >= stop_dim:
                    return acc.to_subspace()
    return acc.to_subspace()


def _assert_relations_killed(relations, ev_of_index, field, base_dim):
    """Every relation-basis row must evaluate to zero in the base.

    The quotient bracket factors through the evaluation map in each slot
    separately, so this single check is also the ideal property: a bracket
    with a relation in any slot is the zero tensor, which lies in the span.
    """
    for row in relations.basis_vectors():
        out = [field.zero] * base_dim
        for idx, coeff in _nonzero(field, row):
            for a, c in enumerate(ev_of_index(idx)):
                if not field.is_zero(c):
                    out[a] = field.add(out[a], field.mul(coeff, c))
        if any(not field.is_zero(x) for x in out):
            raise InternalAssertionFailed(
                "relations-escape-evaluation-kernel",
                f"row with pivots {relations.pivots} evaluates to {out}",
            )


def _pure2_pairs(field, u, v, n):
    out = []
    for i, ui in _nonzero(field, u):
        base = i * n
        for j, vj in _nonzero(field, v):
            out.append((base + j, field.mul(ui, vj)))
    return out


def _pure2_wedge_pairs(field, u, v, index):
    acc = {}
    nzu = _nonzero(field, u)
    nzv = _nonzero(field, v)
    for i, ui in nzu:
        for j, vj in nzv:
            if i == j:
                continue
            val = field.mul(ui, vj)
            if i < j:
                key = index[(i, j)]
            else:
                key = index[(j, i)]
                val = field.neg(val)
            acc[key] = field.add(acc.get(key, field.zero), val)
    return [(k, v) for k, v in acc.items() if not field.is_zero(v)]


def _pure3_pairs(field, u, v, w, n):
    out = []
    for i, ui in _nonzero(field, u):
        for j, vj in _nonzero(field, v):
            uv = field.mul(ui, vj)
            base = (i * n + j) * n
            for k, wk in _nonzero(field, w):
                out.append((base + k, field.mul(uv, wk)))
    return out


def _finish_extension(category, base, ambient, relations, ev_vectors, pure_pairs):
    """Common tail of all three constructions; runs the assertion battery."""
    f = base.field
    _assert_relations_killed(relations, lambda i: ev_vectors[i], f, base.dim)
    q = quotient(ambient, relations)
    if q.dim == 0:
        raise InternalAssertionFailed(
            "quotient-collapsed", "carrier of a perfect base cannot be zero"
        )
    coords = q.coset_coords
    images = [ev_vectors[c] for c in coords]
    proj = Matrix.from_columns(f, images, base.dim)

    label = f"uce-{category}({base.name})"
    if category == "lts":
        table = [
            [
                [q.project_pairs(pure_pairs(mr, ms, mu)) for mu in images]
                for ms in images
            ]
            for mr in images
        ]
        ext = TernaryAlgebra(f, q.dim, table, name=label)
    else:
        table = [
            [q.project_pairs(pure_pairs(mr, ms)) for ms in images]
            for mr in images
        ]
        ext = BinaryAlgebra(f, q.dim, table, name=label)

    defect = _category_axiom_defect(category, ext)
    if defect is not None:
        raise InternalAssertionFailed("quotient-fails-axioms", defect)

    h2 = kernel(proj)
    zt = _subspace_tensor(h2)
    if zt is not None:
        et = ext.tensor()
        for slot in range(3 if category == "lts" else 2):
            w = tops.central_slot_witness(et, zt, slot)
            if w is not None:
                raise InternalAssertionFailed(
                    "kernel-not-central", f"slot {slot} witness {w}"
                )

    flags = check_ternary(ext) if category == "lts" else check_binary(ext)
    if not flags.is_perfect:
        raise InternalAssertionFailed("carrier-not-perfect")

    try:
        section = right_inverse(proj)
    except DimensionMismatch as e:
        raise InternalAssertionFailed("projection-not-surjective", str(e))

    wit = (
        tops.ternary_morphism_witness(ext.tensor(), base.tensor(), _matrix_tensor(proj))
        if category == "lts"
        else tops.binary_morphism_witness(ext.tensor(), base.tensor(), _matrix_tensor(proj))
    )
    if wit is not None:
        raise InternalAssertionFailed(
            "projection-not-a-morphism", f"basis tuple {wit}"
        )

    return UceResult(
        category=category,
        base=base,
        carrier=q,
        extension_algebra=ext,
        projection_b=proj,
        relations=relations,
        h2=h2,
        section_s=section,
    )


def leibniz_uce(g, rng=None):
    """The Leibniz universal central extension: g (x) g modulo the lifted
    Leibniz identity, with bracket [A,B] = class of ev(A) (x) ev(B)."""
    flags = check_binary(g)
    if not flags.is_leibniz:
        raise NotLeibniz(
            f"Leibniz identity fails at {flags.witnesses.get('leibniz')}"
        )
    if not flags.is_perfect:
        raise NotPerfect(f"{g.name or 'input'} is not perfect")
    f = g.field
    n = g.dim
    ambient = n * n
    ev = [g.c[i][j] for i in range(n) for j in range(n)]

    def gens():
        for x in range(n):
            for y in range(n):
                cxy = _nonzero(f, g.c[x][y])
                for z in range(n):
                    acc = {}
                    for k, c in cxy:
                        key = k * n + z
                        acc[key] = f.add(acc.get(key, f.zero), c)
                    for k, c in _nonzero(f, g.c[x][z]):
                        key = k * n + y
                        acc[key] = f.sub(acc.get(key, f.zero), c)
                    for k, c in _nonzero(f, g.c[y][z]):
                        key = x * n + k
                        acc[key] = f.sub(acc.get(key, f.zero), c)
                    yield [(k, v) for k, v in acc.items() if not f.is_zero(v)]

    relations = _fold_relations(f, ambient, [gens()], ambient - n, rng)
    return _finish_extension(
        "leibniz",
        g,
        ambient,
        relations,
        ev,
        lambda u, v: _pure2_pairs(f, u, v, n),
    )


def lie_uce(g, rng=None):
    """The Lie universal central extension: the wedge square modulo the
    lifted Jacobi identity."""
    flags = check_binary(g)
    if not flags.is_lie:
        raise NotLie(f"input is not a Lie algebra: {flags.witnesses}")
    if not flags.is_perfect:
        raise NotPerfect(f"{g.name or 'input'} is not perfect")
    f = g.field
    n = g.dim
    pairs, index = wedge_index_pairs(n)
    ambient = len(pairs)
    ev = [g.c[i][j] for (i, j) in pairs]

    def wedge_into(acc, vec, other, sign):
        # fold sign * (vec ^ e_other) into the accumulator dict
        for k, c in _nonzero(f, vec):
            if k == other:
                continue
            if k < other:
                key, val = index[(k, other)], c
            else:
                key, val = index[(other, k)], f.neg(c)
            if sign < 0:
                val = f.neg(val)
            acc[key] = f.add(acc.get(key, f.zero), val)

    def gens():
        # the generator is trilinear and alternating, but enumerating all
        # triples is cheap at these sizes and needs no polarization argument
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    acc = {}
                    wedge_into(acc, g.c[x][y], z, +1)
                    wedge_into(acc, g.c[y][z], x, +1)
                    wedge_into(acc, g.c[z][x], y, +1)
                    yield [(k, v) for k, v in acc.items() if not f.is_zero(v)]

    relations = _fold_relations(f, ambient, [gens()], ambient - n, rng)
    return _finish_extension(
        "lie",
        g,
        ambient,
        relations,
        ev,
        lambda u, v: _pure2_wedge_pairs(f, u, v, index),
    )


def lts_tensor_cube(lts, force=False, rng=None):
    """The non-abelian tensor cube of a perfect Lie triple system: the
    triple tensor power modulo the three relation families, realizing the
    universal central extension in the LTS category."""
    flags = check_ternary(lts)
    if not flags.is_lts:
        raise NotLts(f"input fails LTS axioms: {flags.witnesses}")
    if not flags.is_perfect:
        raise NotPerfect(f"{lts.name or 'input'} is not perfect")
    n = lts.dim
    if n > LTS_DIM_GUARD and not force:
        raise DimensionGuard(
            f"carrier dim {n} exceeds the guard {LTS_DIM_GUARD}: the relation "
            f"stream has {n}**5 = {n**5} generators over an ambient of "
            f"{n}**3 = {n**3}; pass force to proceed anyway"
        )
    f = lts.field
    ambient = n**3
    t = lts.t
    ev = [
        t[i][j][k] for i in range(n) for j in range(n) for k in range(n)
    ]
    one = f.one
    neg_one = f.neg(one)

    def idx(i, j, k):
        return (i * n + j) * n + k

    def squares():
        # e_i (x) e_j (x) e_j plus its polarization, sound in char 2
        for i in range(n):
            for j in range(n):
                yield [(idx(i, j, j), one)]
                for k in range(j + 1, n):
                    yield [(idx(i, j, k), one), (idx(i, k, j), one)]

    def cycles():
        # the cyclic sum is rotation-invariant, so lex-minimal rotations
        # already produce every distinct generator
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if (i, j, k) <= (j, k, i) and (i, j, k) <= (k, i, j):
                        acc = {}
                        for key in (idx(i, j, k), idx(j, k, i), idx(k, i, j)):
                            acc[key] = f.add(acc.get(key, f.zero), one)
                        yield [
                            (k2, v) for k2, v in acc.items() if not f.is_zero(v)
                        ]

    def fundamentals():
        rng = range(n)
        for a in rng:
            ta = t
            for b in rng:
                # cache the n x n slice {*, a, b} for this (a, b)
                slab = [
                    _nonzero(f, ta[x][a][b]) for x in rng
                ]
                for x in rng:
                    sx = slab[x]
                    for y in rng:
                        sy = slab[y]
                        for z in rng:
                            acc = {}
                            for k, c in sx:
                                key = idx(k, y, z)
                                acc[key] = f.add(acc.get(key, f.zero), c)
                            for k, c in sy:
                                key = idx(x, k, z)
                                acc[key] = f.add(acc.get(key, f.zero), c)
                            for k, c in slab[z]:
                                key = idx(x, y, k)
                                acc[key] = f.add(acc.get(key, f.zero), c)
                            for k, c in _nonzero(f, t[x][y][z]):
                                key = idx(k, a, b)
                                acc[key] = f.sub(acc.get(key, f.zero), c)
                            yield [
                                (k2, v)
                                for k2, v in acc.items()
                                if not f.is_zero(v)
                            ]

    relations = _fold_relations(
        f, ambient, [squares(), cycles(), fundamentals()], ambient - n, rng
    )
    return _finish_extension(
        "lts",
        lts,
        ambient,
        relations,
        ev,
        lambda u, v, w: _pure3_pairs(f, u, v, w, n),
    )


def _section_bracket_grid(e):
    """Brackets in e's carrier of the section images of base basis vectors,
    as exact field scalars: G[i][j](...) is a carrier vector."""
    f = e.base.field
    et = e.algebra.tensor()
    st = _matrix_tensor(e.section)
    n = e.base.dim
    m = e.carrier_dim
    if e.category == "lts":
        s1 = tops.exact_tensordot(st.arr, et.arr, ([0], [0]), et.p)
        s2 = tops.exact_tensordot(st.arr, s1, ([0], [1]), et.p)
        s3 = tops.exact_tensordot(st.arr, s2, ([0], [2]), et.p)
        raw = s3.transpose(2, 1, 0, 3)
        den = st.scale**3 * et.scale
        return [
            [
                [
                    [_unscale(f, raw[i, j, k, w], den) for w in range(m)]
                    for k in range(n)
                ]
                for j in range(n)
            ]
            for i in range(n)
        ]
    s1 = tops.exact_tensordot(st.arr, et.arr, ([0], [0]), et.p)
    s2 = tops.exact_tensordot(st.arr, s1, ([0], [1]), et.p)
    raw = s2.transpose(1, 0, 2)
    den = st.scale**2 * et.scale
    return [
        [[_unscale(f, raw[i, j, w], den) for w in range(m)] for j in range(n)]
        for i in range(n)
    ]


def _unscale(f, raw, den):
    if f.characteristic:
        return int(raw) % f.characteristic
    return Fraction(int(raw), den)


def universal_map(u, e):
    """The canonical map from the UCE u to any central extension e of the
    same base in the same category: a generator class goes to the bracket
    of section lifts in e. Returns the matrix carrier(u) -> carrier(e)."""
    if not isinstance(e, CentralExtension):
        e = e.as_extension()
    if u.category != e.category:
        raise WrongCategory(
            f"cannot map a {u.category} extension into a {e.category} one"
        )
    _same_base(u.base, e.base)
    e.verify()
    f = u.base.field
    n = u.base.dim
    grid = _section_bracket_grid(e)
    ternary = u.category == "lts"

    if ternary:
        def phi(aidx):
            k = aidx % n
            j = (aidx // n) % n
            return grid[aidx // (n * n)][j][k]
    elif u.category == "leibniz":
        def phi(aidx):
            return grid[aidx // n][aidx % n]
    else:
        pairs, _ = wedge_index_pairs(n)

        def phi(aidx):
            i, j = pairs[aidx]
            return grid[i][j]

    m = e.carrier_dim
    for row in u.relations.basis_vectors():
        out = [f.zero] * m
        for aidx, coeff in _nonzero(f, row):
            for w, c in enumerate(phi(aidx)):
                if not f.is_zero(c):
                    out[w] = f.add(out[w], f.mul(coeff, c))
        if any(not f.is_zero(x) for x in out):
            raise WellDefinednessFailed(
                "a relation generator does not map to zero; the target is "
                "not a central extension or the source is not universal"
            )

    cols = [phi(c) for c in u.carrier.coset_coords]
    mat = Matrix.from_columns(f, cols, m)

    mt = _matrix_tensor(mat)
    wit = (
        tops.ternary_morphism_witness(u.extension_algebra.tensor(), e.algebra.tensor(), mt)
        if ternary
        else tops.binary_morphism_witness(u.extension_algebra.tensor(), e.algebra.tensor(), mt)
    )
    if wit is not None:
        raise InternalAssertionFailed(
            "universal-map-not-a-morphism", f"basis tuple {wit}"
        )
    if e.projection @ mat != u.projection_b:
        raise InternalAssertionFailed("universal-map-breaks-projections")
    return mat
