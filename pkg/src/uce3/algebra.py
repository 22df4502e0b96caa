"""Binary and ternary algebras given by structure constants, their axiom
checkers, and the constructions that move between them: the derived ternary
bracket, Leibniz brackets on tensor and wedge squares, the canonical action
of the wedge square, and the Leibniz bracket induced by an equivariant map.

Conventions fixed here and relied on everywhere downstream:

  * tensor square basis e_i (x) e_j at index i*n + j (lex order);
  * wedge square basis e_i ^ e_j for i < j, lex order;
  * derived ternary bracket {x,y,z} = [x,[y,z]];
  * actions are right actions m * g, tensor a[m][g] = coordinates of m * g.

Every alternating-type axiom is checked in polarized form (diagonal zero AND
symmetric sums zero) so the verdicts are sound in characteristic 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import (
    AxiomPrecondition,
    DimensionMismatch,
    InternalAssertionFailed,
    JacobiFails,
    NotEquivariant,
    NotLeibniz,
    NotLie,
    NotLts,
)
from .fields import ensure_same_field
from .linalg import Matrix, SpanAccumulator
from . import tensorops as tops

__all__ = [
    "BinaryAlgebra",
    "TernaryAlgebra",
    "ModuleAction",
    "BinaryFlags",
    "TernaryFlags",
    "check_binary",
    "check_ternary",
    "derived_lts",
    "tensor_leibniz",
    "canonical_wedge_action",
    "verify_action",
    "equivariant_leibniz",
    "wedge_index_pairs",
]


def _coerce_table(f, table, shape):
    """Dense nested list with every scalar pushed through the field."""
    if len(shape) == 1:
        if len(table) != shape[0]:
            raise DimensionMismatch(f"expected {shape[0]} entries, got {len(table)}")
        return [f.coerce(x) for x in table]
    if len(table) != shape[0]:
        raise DimensionMismatch(f"expected {shape[0]} entries, got {len(table)}")
    return [_coerce_table(f, row, shape[1:]) for row in table]


class BinaryAlgebra:
    """An algebra with a bilinear bracket, presented by structure constants.

    c[i][j] is the coordinate vector of [e_i, e_j]. No axiom is assumed:
    flavor flags (Lie, Leibniz, perfect) are always computed by check_binary.
    """

    def __init__(self, field, dim, table, name=""):
        self.field = field
        self.dim = dim
        self.name = name
        self.c = _coerce_table(field, table, (dim, dim, dim))
        self._tensor_cache = None

    @classmethod
    def zero(cls, field, dim, name=""):
        z = field.zero
        return cls(field, dim, [[[z] * dim for _ in range(dim)] for _ in range(dim)], name)

    @classmethod
    def from_sparse(cls, field, dim, entries, name=""):
        """entries: iterable of (i, j, [(k, coeff), ...]) with absent pairs zero."""
        z = field.zero
        table = [[[z] * dim for _ in range(dim)] for _ in range(dim)]
        for i, j, pairs in entries:
            for k, coeff in pairs:
                table[i][j][k] = field.add(table[i][j][k], field.coerce(coeff))
        return cls(field, dim, table, name)

    def tensor(self):
        if self._tensor_cache is None:
            self._tensor_cache = tops.exact_tensor(self.field, self.c)
        return self._tensor_cache

    def bracket_basis(self, i, j):
        return self.c[i][j]

    def bracket(self, x, y):
        f = self.field
        out = [f.zero] * self.dim
        for i, xi in enumerate(x):
            if f.is_zero(xi):
                continue
            ci = self.c[i]
            for j, yj in enumerate(y):
                if f.is_zero(yj):
                    continue
                s = f.mul(xi, yj)
                for k, cij in enumerate(ci[j]):
                    if not f.is_zero(cij):
                        out[k] = f.add(out[k], f.mul(s, cij))
        return out

    def __repr__(self):
        label = self.name or "binary"
        return f"<BinaryAlgebra {label} dim {self.dim} over {self.field.spec_str()}>"


class TernaryAlgebra:
    """An algebra with a trilinear bracket; t[i][j][k] = {e_i, e_j, e_k}."""

    def __init__(self, field, dim, table, name=""):
        self.field = field
        self.dim = dim
        self.name = name
        self.t = _coerce_table(field, table, (dim, dim, dim, dim))
        self._tensor_cache = None

    @classmethod
    def zero(cls, field, dim, name=""):
        z = field.zero
        return cls(
            field,
            dim,
            [[[[z] * dim for _ in range(dim)] for _ in range(dim)] for _ in range(dim)],
            name,
        )

    @classmethod
    def from_sparse(cls, field, dim, entries, name=""):
        z = field.zero
        table = [
            [[[z] * dim for _ in range(dim)] for _ in range(dim)] for _ in range(dim)
        ]
        for i, j, k, pairs in entries:
            for l, coeff in pairs:
                table[i][j][k][l] = field.add(table[i][j][k][l], field.coerce(coeff))
        return cls(field, dim, table, name)

    def tensor(self):
        if self._tensor_cache is None:
            self._tensor_cache = tops.exact_tensor(self.field, self.t)
        return self._tensor_cache

    def bracket_basis(self, i, j, k):
        return self.t[i][j][k]

    def bracket(self, x, y, z):
        f = self.field
        out = [f.zero] * self.dim
        for i, xi in enumerate(x):
            if f.is_zero(xi):
                continue
            ti = self.t[i]
            for j, yj in enumerate(y):
                if f.is_zero(yj):
                    continue
                sij = f.mul(xi, yj)
                tij = ti[j]
                for k, zk in enumerate(z):
                    if f.is_zero(zk):
                        continue
                    s = f.mul(sij, zk)
                    for l, tl in enumerate(tij[k]):
                        if not f.is_zero(tl):
                            out[l] = f.add(out[l], f.mul(s, tl))
        return out

    def __repr__(self):
        label = self.name or "ternary"
        return f"<TernaryAlgebra {label} dim {self.dim} over {self.field.spec_str()}>"


@dataclass(frozen=True)
class BinaryFlags:
    is_alternating: bool
    is_lie: bool
    is_leibniz: bool
    satisfies_jacobi: bool
    is_perfect: bool
    witnesses: dict = dc_field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class TernaryFlags:
    is_lts: bool
    is_perfect: bool
    witnesses: dict = dc_field(default_factory=dict, compare=False)


def _binary_perfect(a):
    acc = SpanAccumulator(a.field, a.dim)
    for i in range(a.dim):
        for j in range(a.dim):
            if acc.dim == a.dim:
                return True
            acc.add_dense(a.c[i][j])
    return acc.dim == a.dim


def _ternary_perfect(a):
    acc = SpanAccumulator(a.field, a.dim)
    for i in range(a.dim):
        for j in range(a.dim):
            for k in range(a.dim):
                if acc.dim == a.dim:
                    return True
                acc.add_dense(a.t[i][j][k])
    return acc.dim == a.dim


def check_binary(a):
    t = a.tensor()
    w = {}
    alt = tops.alternating_witness(t)
    if alt is not None:
        w["alternating"] = alt
    leib = tops.leibniz_witness(t)
    if leib is not None:
        w["leibniz"] = leib
    jac = tops.jacobi_witness(t)
    if jac is not None:
        w["jacobi"] = jac
    return BinaryFlags(
        is_alternating=alt is None,
        is_lie=alt is None and jac is None,
        is_leibniz=leib is None,
        satisfies_jacobi=jac is None,
        is_perfect=_binary_perfect(a),
        witnesses=w,
    )


def check_ternary(a):
    t = a.tensor()
    w = {}
    pair = tops.lts_pair_witness(t)
    if pair is not None:
        w["last_two_slots"] = pair
    cyc = tops.lts_cyclic_witness(t)
    if cyc is not None:
        w["cyclic"] = cyc
    der = tops.lts_derivation_witness(t)
    if der is not None:
        w["derivation"] = der
    return TernaryFlags(
        is_lts=pair is None and cyc is None and der is None,
        is_perfect=_ternary_perfect(a),
        witnesses=w,
    )


def _left_compose(g):
    """d[i][a][b] = coordinate vector of [e_i, [e_a, e_b]]."""
    f = g.field
    n = g.dim
    c = g.c
    d = [[[None] * n for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            inner = [(m, cm) for m, cm in enumerate(c[a][b]) if not f.is_zero(cm)]
            for i in range(n):
                vec = [f.zero] * n
                ci = c[i]
                for m, cm in inner:
                    for k, v in enumerate(ci[m]):
                        if not f.is_zero(v):
                            vec[k] = f.add(vec[k], f.mul(cm, v))
                d[i][a][b] = vec
    return d


def derived_lts(g):
    """The ternary algebra {x,y,z} = [x,[y,z]].

    Needs the Jacobi identity (that is exactly what makes the cyclic axiom
    hold) and a Lie or Leibniz bracket for the remaining two axioms.
    """
    flags = check_binary(g)
    if not flags.satisfies_jacobi:
        raise JacobiFails(
            f"Jacobi identity fails at basis triple {flags.witnesses['jacobi']}"
        )
    if not (flags.is_lie or flags.is_leibniz):
        raise NotLeibniz(
            "derived ternary bracket needs a Lie or Leibniz input; "
            f"Leibniz identity fails at {flags.witnesses.get('leibniz')}"
        )
    out = TernaryAlgebra(g.field, g.dim, _left_compose(g), name=f"derived({g.name})")
    bad = check_ternary(out)
    if not bad.is_lts:
        raise InternalAssertionFailed(
            "derived-bracket-is-lts", f"witnesses {bad.witnesses}"
        )
    return out


def wedge_index_pairs(n):
    """Lex-ordered (i, j) with i < j, and the index map for both orders."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    index = {p: r for r, p in enumerate(pairs)}
    return pairs, index


def _slot_derivation(a):
    """D[x][u][v] = [e_x, [e_u, e_v]] or {e_x, e_u, e_v}, by input arity."""
    if isinstance(a, TernaryAlgebra):
        return a.t
    return _left_compose(a)


def tensor_leibniz(a, variant="tensor"):
    """Leibniz bracket on the tensor or wedge square of the carrier of a.

    For binary input:  [x (x) y, u (x) v] = [x,[u,v]] (x) y + x (x) [y,[u,v]].
    For ternary input: [x (x) y, u (x) v] = {x,u,v} (x) y + x (x) {y,u,v}.
    The wedge variant is the same formula on e_i ^ e_j representatives.
    """
    if variant not in ("tensor", "wedge"):
        raise ValueError(f"variant must be tensor or wedge, not {variant!r}")
    f = a.field
    n = a.dim
    if isinstance(a, TernaryAlgebra):
        flags = check_ternary(a)
        if not flags.is_lts:
            raise NotLts(f"input fails LTS axioms: {flags.witnesses}")
    else:
        flags = check_binary(a)
        if not flags.is_leibniz:
            raise NotLeibniz(
                f"input fails the Leibniz identity at {flags.witnesses.get('leibniz')}"
            )
    d = _slot_derivation(a)
    z = f.zero
    if variant == "tensor":
        big = n * n
        table = [[None] * big for _ in range(big)]
        for i in range(n):
            for j in range(n):
                r = i * n + j
                for u in range(n):
                    for v in range(n):
                        s = u * n + v
                        vec = [z] * big
                        for k, coeff in enumerate(d[i][u][v]):
                            if not f.is_zero(coeff):
                                vec[k * n + j] = f.add(vec[k * n + j], coeff)
                        for k, coeff in enumerate(d[j][u][v]):
                            if not f.is_zero(coeff):
                                vec[i * n + k] = f.add(vec[i * n + k], coeff)
                        table[r][s] = vec
        return BinaryAlgebra(f, big, table, name=f"tensor2({a.name})")
    pairs, index = wedge_index_pairs(n)
    big = len(pairs)
    table = [[None] * big for _ in range(big)]
    for r, (i, j) in enumerate(pairs):
        for s, (u, v) in enumerate(pairs):
            vec = [z] * big
            for k, coeff in enumerate(d[i][u][v]):
                # term coeff * (e_k ^ e_j), folded into the i<j basis
                if f.is_zero(coeff) or k == j:
                    continue
                if k < j:
                    t = index[(k, j)]
                    vec[t] = f.add(vec[t], coeff)
                else:
                    t = index[(j, k)]
                    vec[t] = f.sub(vec[t], coeff)
            for k, coeff in enumerate(d[j][u][v]):
                if f.is_zero(coeff) or k == i:
                    continue
                if i < k:
                    t = index[(i, k)]
                    vec[t] = f.add(vec[t], coeff)
                else:
                    t = index[(k, i)]
                    vec[t] = f.sub(vec[t], coeff)
            table[r][s] = vec
    return BinaryAlgebra(f, big, table, name=f"wedge2({a.name})")


class ModuleAction:
    """A right action of a binary algebra on F^carrier_dim.

    a[u][x] is the coordinate vector of e_u * e_x (u in the module, x in the
    algebra). Bilinear by construction; the action laws are what
    verify_action checks, never an input assumption.
    """

    def __init__(self, carrier_dim, algebra, table):
        self.field = algebra.field
        self.carrier_dim = carrier_dim
        self.algebra = algebra
        self.a = _coerce_table(
            self.field, table, (carrier_dim, algebra.dim, carrier_dim)
        )
        self._tensor_cache = None

    def tensor(self):
        if self._tensor_cache is None:
            self._tensor_cache = tops.exact_tensor(self.field, self.a)
        return self._tensor_cache

    def act_basis(self, u, x):
        return self.a[u][x]

    def act(self, mvec, gvec):
        f = self.field
        out = [f.zero] * self.carrier_dim
        for u, mu in enumerate(mvec):
            if f.is_zero(mu):
                continue
            au = self.a[u]
            for x, gx in enumerate(gvec):
                if f.is_zero(gx):
                    continue
                s = f.mul(mu, gx)
                for v, c in enumerate(au[x]):
                    if not f.is_zero(c):
                        out[v] = f.add(out[v], f.mul(s, c))
        return out

    def __repr__(self):
        return (
            f"<ModuleAction F^{self.carrier_dim} * {self.algebra.name or 'g'} "
            f"over {self.field.spec_str()}>"
        )


def canonical_wedge_action(lts):
    """The wedge square of an LTS acting on it by x * (y ^ z) = {x,y,z}."""
    flags = check_ternary(lts)
    if not flags.is_lts:
        raise NotLts(f"input fails LTS axioms: {flags.witnesses}")
    acting = tensor_leibniz(lts, "wedge")
    pairs, _ = wedge_index_pairs(lts.dim)
    table = [
        [lts.t[x][i][j] for (i, j) in pairs] for x in range(lts.dim)
    ]
    return ModuleAction(lts.dim, acting, table)


def verify_action(act, target=None):
    """True iff (m*g)*h - (m*h)*g = m*[g,h] on all basis tuples, and, when a
    ternary algebra on the same carrier is supplied, the bracket is acted on
    by derivations: {x,y,z}*g = {x*g,y,z} + {x,y*g,z} + {x,y,z*g}."""
    at = act.tensor()
    gt = act.algebra.tensor()
    if tops.action_law_witness(at, gt) is not None:
        return False
    if target is not None:
        if target.dim != act.carrier_dim:
            raise DimensionMismatch(
                f"target dim {target.dim} != module dim {act.carrier_dim}"
            )
        ensure_same_field(target.field, act.field)
        if tops.action_derivation_witness(at, target.tensor()) is not None:
            return False
    return True


def equivariant_leibniz(act, fmap):
    """Leibniz bracket [m, n] = m * f(n) on the module of act, for a map f
    into the acting Lie algebra that intertwines the action with ad."""
    g = act.algebra
    if fmap.nrows != g.dim or fmap.ncols != act.carrier_dim:
        raise DimensionMismatch(
            f"map must be {g.dim} x {act.carrier_dim}, got {fmap.nrows} x {fmap.ncols}"
        )
    ensure_same_field(act.field, fmap.field)
    gflags = check_binary(g)
    if not gflags.is_lie:
        raise NotLie(f"acting algebra is not Lie: {gflags.witnesses}")
    at = act.tensor()
    gt = g.tensor()
    law = tops.action_law_witness(at, gt)
    if law is not None:
        raise AxiomPrecondition(f"module law fails at basis tuple {law}")
    ft = tops.exact_tensor(act.field, fmap.rows)
    eq = tops.equivariance_witness(at, ft, gt)
    if eq is not None:
        raise NotEquivariant(
            f"f(m * x) != [f(m), x] at basis pair {eq}", witness=eq
        )
    f = act.field
    m = act.carrier_dim
    table = [[None] * m for _ in range(m)]
    for u in range(m):
        au = act.a[u]
        for v in range(m):
            vec = [f.zero] * m
            for k in range(g.dim):
                coeff = fmap.rows[k][v]
                if f.is_zero(coeff):
                    continue
                for w, c in enumerate(au[k]):
                    if not f.is_zero(c):
                        vec[w] = f.add(vec[w], f.mul(coeff, c))
            table[u][v] = vec
    out = BinaryAlgebra(f, m, table, name=f"leibniz[{g.name or 'g'}-action]")
    lw = tops.leibniz_witness(out.tensor())
    if lw is not None:
        raise InternalAssertionFailed(
            "equivariant-bracket-not-leibniz", f"fails at basis triple {lw}"
        )
    return out
