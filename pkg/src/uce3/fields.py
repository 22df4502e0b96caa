"""Exact ground fields: the rationals and prime fields GF(p).

Scalars are plain Python values. Over Q they are ``fractions.Fraction``
instances (always reduced, denominator positive); over GF(p) they are ints
in the canonical residue range [0, p). Field objects supply the arithmetic
on those raw values, so vectors and matrices stay lists of cheap scalars.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import (
    DivisionByZero,
    FieldMismatch,
    ModulusTooLarge,
    NonPrimeModulus,
    SemanticError,
)

__all__ = [
    "Field",
    "Rationals",
    "PrimeField",
    "QQ",
    "field_of",
    "ensure_same_field",
]

_MODULUS_LIMIT = 2**31


def _is_prime(p):
    # trial division; moduli are < 2**31 so this never exceeds ~46341 steps
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface for the two scalar domains."""

    characteristic: int

    def coerce(self, x):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        raise NotImplementedError

    def is_zero(self, a):
        return a == self.zero

    def parse_scalar(self, s):
        raise NotImplementedError

    def scalar_str(self, a):
        raise NotImplementedError

    def random_scalar(self, rng):
        raise NotImplementedError

    def spec_str(self):
        raise NotImplementedError

    def __repr__(self):
        return self.spec_str()


class Rationals(Field):
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse_scalar(x)
        raise FieldMismatch(f"cannot read {x!r} as a rational scalar")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0 in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by 0 in Q")
        return Fraction(a) / b

    def parse_scalar(self, s):
        m = re.fullmatch(r"(-?\d+)(?:/(\d+))?", s.strip())
        if not m:
            raise SemanticError(f"bad rational coefficient {s!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise SemanticError(f"zero denominator in coefficient {s!r}")
        return Fraction(num, den)

    def scalar_str(self, a):
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def random_scalar(self, rng):
        return Fraction(rng.randint(-30, 30), rng.randint(1, 12))

    def spec_str(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")


class PrimeField(Field):
    def __init__(self, p):
        if not isinstance(p, int):
            raise NonPrimeModulus(f"modulus must be an integer, got {p!r}")
        if p >= _MODULUS_LIMIT:
            raise ModulusTooLarge(f"modulus {p} >= 2^31")
        if not _is_prime(p):
            raise NonPrimeModulus(f"modulus {p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, str):
            return self.parse_scalar(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero(f"denominator of {x} vanishes mod {self.p}")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        raise FieldMismatch(f"cannot read {x!r} as a GF({self.p}) scalar")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero(f"inverse of 0 in GF({self.p})")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def parse_scalar(self, s):
        m = re.fullmatch(r"(-?\d+)(?:/(\d+))?", s.strip())
        if not m:
            raise SemanticError(f"bad coefficient {s!r} for GF({self.p})")
        num = int(m.group(1))
        if m.group(2):
            return self.div(num % self.p, int(m.group(2)) % self.p)
        return num % self.p

    def scalar_str(self, a):
        return str(a % self.p)

    def random_scalar(self, rng):
        return rng.randrange(self.p)

    def spec_str(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = Rationals()

_FIELD_RE = re.compile(r"GF\((\d+)\)")


def field_of(spec):
    """Parse a field description: the literal ``Q`` or ``GF(<p>)``."""
    if isinstance(spec, Field):
        return spec
    if not isinstance(spec, str):
        raise SemanticError(f"bad field description {spec!r}")
    s = spec.strip()
    if s == "Q":
        return QQ
    m = _FIELD_RE.fullmatch(s)
    if m:
        return PrimeField(int(m.group(1)))
    raise SemanticError(f"unrecognized field {spec!r} (expected Q or GF(p))")


def ensure_same_field(a, b):
    if a != b:
        raise FieldMismatch(f"fields differ: {a.spec_str()} vs {b.spec_str()}")
    return a
