"""Exact scalar arithmetic: prime fields GF(p) and the rationals.

Field elements are plain values (ints for GF(p), ``Fraction`` for the
rationals); the field object carries the operations.  This keeps the
exhaustive-enumeration inner loops cheap.
"""

from fractions import Fraction
from math import isqrt


class UnsupportedEnumeration(ValueError):
    """Raised when an infinite field is asked for its unit list."""


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class GF:
    """The prime field GF(p), elements canonical residues in [0, p)."""

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self.zero = 0
        self.one = 1

    @property
    def characteristic(self):
        return self.p

    @property
    def is_finite(self):
        return True

    def element(self, n):
        return n % self.p

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def neg(self, x):
        return (-x) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.p)
        return pow(x, self.p - 2, self.p)

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def sqrt(self, x):
        """Smallest r in [0, p) with r*r = x, or None if x is a non-square."""
        x %= self.p
        for r in range(self.p):
            if r * r % self.p == x:
                return r
        return None

    def units(self):
        return list(range(1, self.p))

    def elements(self):
        return list(range(self.p))

    def parse(self, s):
        if isinstance(s, int):
            return s % self.p
        text = str(s).strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return self.div(int(num) % self.p, int(den) % self.p)
        return int(text) % self.p

    def to_str(self, x):
        return str(x)

    def descriptor(self):
        return {"type": "gf", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, GF) and other.p == self.p

    def __hash__(self):
        return hash(("gf", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class Rationals:
    """The field of rational numbers; elements are ``Fraction`` values."""

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    @property
    def characteristic(self):
        return 0

    @property
    def is_finite(self):
        return False

    def element(self, n):
        return Fraction(n)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def div(self, x, y):
        return Fraction(x) / Fraction(y)

    def sqrt(self, x):
        x = Fraction(x)
        if x < 0:
            return None
        rn, rd = isqrt(x.numerator), isqrt(x.denominator)
        if rn * rn == x.numerator and rd * rd == x.denominator:
            return Fraction(rn, rd)
        return None

    def units(self):
        raise UnsupportedEnumeration("cannot enumerate the units of Q")

    def parse(self, s):
        return Fraction(str(s).strip())

    def to_str(self, x):
        return str(x)

    def descriptor(self):
        return {"type": "q"}

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("q")

    def __repr__(self):
        return "QQ"


QQ = Rationals()


def field_from_descriptor(d):
    """Build a field from its serialized form {"type":"gf","p":5} / {"type":"q"}."""
    kind = d.get("type")
    if kind == "gf":
        return GF(int(d["p"]))
    if kind == "q":
        return QQ
    raise ValueError(f"unknown field type {kind!r}")
