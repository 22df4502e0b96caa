"""Exact multilinear identity checks on structure-constant tensors.

Axiom checks reduce to contracting a structure tensor with itself and
testing a signed combination for zero. Doing this entrywise in Fraction
arithmetic is exact but slow, so tensors are first put into integer form:

  * over GF(p) entries are canonical residues;
  * over Q the whole tensor is scaled by the lcm of its denominators.

Every identity checked here is homogeneous in each input tensor, so a
positive integer rescale never changes a zero/nonzero verdict; checks that
mix tensors with different scales cross-multiply before comparing.

Contractions pick the fastest exact route available: float64 BLAS while
k*max|A|*max|B| stays below 2**52 (integer-valued floats are exact below
2**53), int64 below 2**62, and object-dtype python integers beyond that.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm, prod

import numpy as np

from .fields import PrimeField, Rationals

__all__ = [
    "ExactTensor",
    "exact_tensor",
    "exact_tensordot",
    "left_nested",
    "alternating_witness",
    "leibniz_witness",
    "jacobi_witness",
    "lts_pair_witness",
    "lts_cyclic_witness",
    "lts_derivation_witness",
    "derived_mismatch_witness",
    "binary_morphism_witness",
    "ternary_morphism_witness",
    "central_slot_witness",
    "action_law_witness",
    "action_derivation_witness",
    "equivariance_witness",
]

_F64_LIMIT = 2**52
_I64_LIMIT = 2**62


class ExactTensor:
    """Integer tensor equal to scale * true entries (scale a positive int).

    Over GF(p) the scale is always 1 and entries are residues in [0, p).
    """

    __slots__ = ("arr", "scale", "p")

    def __init__(self, arr, scale, p):
        self.arr = arr
        self.scale = scale
        self.p = p

    @property
    def shape(self):
        return self.arr.shape


def exact_tensor(field, nested):
    """Build an ExactTensor from nested lists of canonical field scalars."""
    a = np.array(nested, dtype=object)
    if isinstance(field, PrimeField):
        arr = a.astype(np.int64) % field.p if a.size else a.astype(np.int64)
        return ExactTensor(arr, 1, field.p)
    if not isinstance(field, Rationals):
        raise TypeError(f"unsupported field {field!r}")
    den = 1
    for x in a.flat:
        if type(x) is Fraction:
            den = lcm(den, x.denominator)
    ints = []
    for x in a.flat:
        if type(x) is Fraction:
            ints.append(int(x.numerator) * (den // x.denominator))
        else:
            ints.append(int(x) * den)
    maxabs = max(map(abs, ints), default=0)
    dtype = np.int64 if maxabs < _I64_LIMIT else object
    arr = np.array(ints, dtype=dtype).reshape(a.shape)
    return ExactTensor(arr, den, None)


def _maxabs(a):
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(x)) for x in a.flat)
    return int(np.abs(a).max())


def exact_tensordot(a, b, axes, p=None):
    """np.tensordot with the result guaranteed exact (reduced mod p if given)."""
    k = prod(a.shape[ax] for ax in axes[0]) if axes[0] else 1
    ma, mb = _maxabs(a), _maxabs(b)
    bound = k * ma * mb
    plain = a.dtype != object and b.dtype != object
    if plain and bound < _F64_LIMIT:
        c = np.tensordot(a.astype(np.float64), b.astype(np.float64), axes)
        c = np.rint(c).astype(np.int64)
    elif plain and bound < _I64_LIMIT:
        c = np.tensordot(a, b, axes)
    else:
        c = np.tensordot(a.astype(object), b.astype(object), axes)
    if p is not None:
        c = c % p
        if c.dtype == object:
            c = c.astype(np.int64)
    return c


def _scaled(a, s):
    if s == 1:
        return a
    if a.dtype != object and _maxabs(a) * s < _I64_LIMIT:
        return a * np.int64(s)
    return a.astype(object) * int(s)


def _witness(res, p):
    """None when res vanishes (mod p), else the index tuple of a nonzero."""
    if p is not None:
        res = res % p
    if res.dtype == object:
        flat = res.ravel()
        for pos, x in enumerate(flat):
            if x:
                return tuple(int(i) for i in np.unravel_index(pos, res.shape))
        return None
    nz = np.nonzero(res)
    if len(nz[0]) == 0:
        return None
    return tuple(int(ax[0]) for ax in nz)


def alternating_witness(t):
    """First (i, j) with [e_i, e_j] + [e_j, e_i] != 0, or (i, i) with
    [e_i, e_i] != 0; None when the bracket is alternating."""
    c = t.arr
    w = _witness(c + c.transpose(1, 0, 2), t.p)
    if w is not None:
        return w[:2]
    d = c.shape[0]
    r = np.arange(d)
    w = _witness(c[r, r, :], t.p)
    if w is not None:
        return (w[0], w[0])
    return None


def left_nested(t):
    """L[x, y, z, w] = coefficient of e_w in [e_x, [e_y, e_z]], as raw
    integers carrying scale t.scale**2."""
    c = t.arr
    m = exact_tensordot(c, c, ([2], [1]), t.p)  # m[y, z, x, w]
    return m.transpose(2, 0, 1, 3)


_left_nested = left_nested


def leibniz_witness(t):
    """Defect of [x,[y,z]] = [[x,y],z] - [[x,z],y]; None when it holds."""
    c = t.arr
    u = exact_tensordot(c, c, ([2], [0]), t.p)  # u[x, y, z, w] = [[x,y],z]
    res = _left_nested(t) - u + u.transpose(0, 2, 1, 3)
    w = _witness(res, t.p)
    return None if w is None else w[:3]


def jacobi_witness(t):
    """Defect of [x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0; None when it holds."""
    lhs = _left_nested(t)
    res = lhs + lhs.transpose(1, 2, 0, 3) + lhs.transpose(2, 0, 1, 3)
    w = _witness(res, t.p)
    return None if w is None else w[:3]


def lts_pair_witness(t):
    """Vanishing in the last two slots, polarized so it is meaningful in
    characteristic 2: {x,y,z} + {x,z,y} = 0 and {x,y,y} = 0."""
    a = t.arr
    w = _witness(a + a.transpose(0, 2, 1, 3), t.p)
    if w is not None:
        return w[:3]
    d = a.shape[0]
    r = np.arange(d)
    w = _witness(a[:, r, r, :], t.p)
    if w is not None:
        return (w[0], w[1], w[1])
    return None


def lts_cyclic_witness(t):
    """Defect of {x,y,z} + {y,z,x} + {z,x,y} = 0; None when it holds."""
    a = t.arr
    res = a + a.transpose(1, 2, 0, 3) + a.transpose(2, 0, 1, 3)
    w = _witness(res, t.p)
    return None if w is None else w[:3]


def lts_derivation_witness(t):
    """Defect of the five-variable identity

        {{x,y,z},a,b} = {{x,a,b},y,z} + {x,{y,a,b},z} + {x,y,{z,a,b}}

    as (x, y, z, a, b); None when it holds. Runs blocked over (a, b) so
    memory stays at d^4 instead of d^6."""
    a4 = t.arr
    p = t.p
    d = a4.shape[0]
    for a in range(d):
        for b in range(d):
            m = a4[:, a, b, :]
            if not m.any():
                continue
            lhs = exact_tensordot(a4, m, ([3], [0]), p)
            r1 = exact_tensordot(m, a4, ([1], [0]), p)
            r2 = exact_tensordot(m, a4, ([1], [1]), p).transpose(1, 0, 2, 3)
            r3 = exact_tensordot(m, a4, ([1], [2]), p).transpose(1, 2, 0, 3)
            w = _witness(lhs - r1 - r2 - r3, p)
            if w is not None:
                return (w[0], w[1], w[2], a, b)
    return None


def derived_mismatch_witness(tern, bina):
    """First (x, y, z) where {x,y,z} != [x,[y,z]]; None when they agree."""
    lhs = _left_nested(bina)  # scale bina.scale**2
    if tern.p is not None:
        res = lhs - tern.arr
    else:
        res = _scaled(lhs, tern.scale) - _scaled(tern.arr, bina.scale**2)
    w = _witness(res, tern.p)
    return None if w is None else w[:3]


def binary_morphism_witness(ext, base, proj):
    """Defect of proj([x,y]_ext) = [proj x, proj y]_base on basis pairs,
    for proj given as a 2d tensor P[a, r] (coordinates of the image of the
    r-th basis vector); None when proj is a bracket morphism."""
    e = ext.arr
    c = base.arr
    m = proj.arr
    p = ext.p
    lhs = exact_tensordot(e, m, ([2], [1]), p)  # (r, s, a)
    s1 = exact_tensordot(m, c, ([0], [0]), p)  # (r, j, a)
    rhs = exact_tensordot(m, s1, ([0], [1]), p).transpose(1, 0, 2)
    if p is not None:
        res = lhs - rhs
    else:
        res = _scaled(lhs, proj.scale * base.scale) - _scaled(rhs, ext.scale)
    w = _witness(res, p)
    return None if w is None else w[:2]


def ternary_morphism_witness(ext, base, proj):
    """Ternary analogue of binary_morphism_witness."""
    e = ext.arr
    t = base.arr
    m = proj.arr
    p = ext.p
    lhs = exact_tensordot(e, m, ([3], [1]), p)  # (r, s, u, a)
    s1 = exact_tensordot(m, t, ([0], [0]), p)  # (r, j, k, a)
    s2 = exact_tensordot(m, s1, ([0], [1]), p)  # (s, r, k, a)
    rhs = exact_tensordot(m, s2, ([0], [2]), p).transpose(2, 1, 0, 3)
    if p is not None:
        res = lhs - rhs
    else:
        res = _scaled(lhs, proj.scale**2 * base.scale) - _scaled(rhs, ext.scale)
    w = _witness(res, p)
    return None if w is None else w[:3]


def central_slot_witness(ext, zmat, slot):
    """First nonzero of the ext bracket with the rows of zmat substituted
    into the given slot; None when every such bracket vanishes."""
    res = exact_tensordot(zmat.arr, ext.arr, ([1], [slot]), ext.p)
    w = _witness(res, ext.p)
    return None if w is None else w


def action_law_witness(act, bina):
    """Defect of (m*x)*y - (m*y)*x = m*[x,y] for an action tensor
    act[u, x, v] (coefficient of e_v in e_u * e_x); None when it holds."""
    a = act.arr
    c = bina.arr
    p = act.p
    lhs = exact_tensordot(a, a, ([2], [0]), p)  # (u, x, y, v)
    rhs = exact_tensordot(c, a, ([2], [1]), p).transpose(2, 0, 1, 3)
    left = lhs - lhs.transpose(0, 2, 1, 3)
    if p is not None:
        res = left - rhs
    else:
        res = _scaled(left, bina.scale) - _scaled(rhs, act.scale)
    w = _witness(res, p)
    return None if w is None else w[:3]


def action_derivation_witness(act, tern):
    """Defect of {x,y,z}*g = {x*g,y,z} + {x,y*g,z} + {x,y,z*g} for an action
    on the carrier of the ternary algebra tern; None when it holds."""
    a = act.arr
    t = tern.arr
    p = act.p
    lhs = exact_tensordot(t, a, ([3], [0]), p)  # (x, y, z, g, v)
    r1 = exact_tensordot(a, t, ([2], [0]), p).transpose(0, 2, 3, 1, 4)
    r2 = exact_tensordot(a, t, ([2], [1]), p).transpose(2, 0, 3, 1, 4)
    r3 = exact_tensordot(a, t, ([2], [2]), p).transpose(2, 3, 0, 1, 4)
    # both sides carry the same scale factor, so no cross-multiplication
    w = _witness(lhs - r1 - r2 - r3, p)
    return None if w is None else w[:4]


def equivariance_witness(act, fmat, bina):
    """Defect of f(m*x) = [f(m), x] for f given as a 2d tensor
    fmat[k, u] (coefficient of e_k in f(e_u)); None when it holds."""
    a = act.arr
    f = fmat.arr
    c = bina.arr
    p = act.p
    e1 = exact_tensordot(a, f, ([2], [1]), p)  # (u, x, k)
    e2 = exact_tensordot(f, c, ([0], [0]), p)  # (u, x, w)
    if p is not None:
        res = e1 - e2
    else:
        res = _scaled(e1, bina.scale) - _scaled(e2, act.scale)
    w = _witness(res, p)
    return None if w is None else w[:2]
