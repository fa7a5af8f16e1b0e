"""Exact scalar fields: the rationals and prime fields F_p.

Rationals are plain :class:`fractions.Fraction` values.  Prime-field elements
are :class:`Fp` instances carrying their modulus.  Code that is generic over
the field goes through a :class:`Field` object (``field(3)``, ``field.zero``,
``field.factorial(k)``, ...) and otherwise uses ordinary arithmetic operators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZero, FactorialNotInvertible, NotPrime, ParseError


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    return all(p % q for q in range(3, math.isqrt(p) + 1, 2))


class Fp:
    """Residue class modulo a prime, kept in canonical form 0..p-1."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"cannot mix F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise DivisionByZero(f"{other} has no image in F_{self.p}")
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise DivisionByZero(f"division by zero in F_{self.p}")
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o, self.p) / self

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            if self.v == 0:
                raise DivisionByZero(f"division by zero in F_{self.p}")
            return Fp(pow(self.v, k, self.p), self.p)
        return Fp(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (other - self.v) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class Field:
    """Common interface of :class:`Rationals` and :class:`PrimeField`."""

    is_finite = False
    p = None

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        return self.one / a

    def div(self, a, b):
        if not b:
            raise DivisionByZero("division by zero")
        return a / b

    def factorial(self, k: int):
        return self(math.factorial(k))

    def parse(self, text):
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)

    def to_json(self):
        raise NotImplementedError

    def nth_roots(self, c, k: int) -> list:
        """All field elements r with r**k == c, in ascending canonical order."""
        raise NotImplementedError


@dataclass(frozen=True)
class Rationals(Field):
    def __call__(self, x):
        if isinstance(x, Fp):
            raise ValueError("cannot lift a prime-field element into Q")
        return Fraction(x)

    def parse(self, text):
        if isinstance(text, int) and not isinstance(text, bool):
            return Fraction(text)
        if not isinstance(text, str):
            raise ParseError(f"expected rational text, got {text!r}")
        s = text.strip()
        num, sep, den = s.partition("/")
        try:
            n = int(num)
            d = int(den) if sep else 1
        except ValueError:
            raise ParseError(f"malformed rational {text!r}") from None
        if d == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return Fraction(n, d)

    def format(self, a) -> str:
        a = Fraction(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def to_json(self):
        return "Q"

    def nth_roots(self, c, k):
        c = Fraction(c)
        if k <= 0:
            raise ValueError("root order must be positive")
        if c == 0:
            return [Fraction(0)]
        if c < 0 and k % 2 == 0:
            return []
        num = _exact_root(abs(c.numerator), k)
        den = _exact_root(c.denominator, k)
        if num is None or den is None:
            return []
        r = Fraction(num, den)
        if c < 0:
            return [-r]
        return [-r, r] if k % 2 == 0 else [r]

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class PrimeField(Field):
    p: int

    is_finite = True

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    def __call__(self, x):
        if isinstance(x, Fp):
            if x.p != self.p:
                raise ValueError(f"cannot mix F_{self.p} and F_{x.p}")
            return x
        if isinstance(x, Fraction):
            return Fp(0, self.p) + x
        return Fp(int(x), self.p)

    def factorial(self, k):
        if k >= self.p:
            raise FactorialNotInvertible(self.p, k)
        return Fp(math.factorial(k), self.p)

    def parse(self, text):
        if isinstance(text, int) and not isinstance(text, bool):
            v = text
        elif isinstance(text, str):
            try:
                v = int(text.strip())
            except ValueError:
                raise ParseError(f"malformed residue {text!r}") from None
        else:
            raise ParseError(f"expected residue text, got {text!r}")
        if not 0 <= v < self.p:
            raise ParseError(f"residue {v} not canonical modulo {self.p}")
        return Fp(v, self.p)

    def to_json(self):
        return {"Fp": self.p}

    def elements(self):
        return [Fp(v, self.p) for v in range(self.p)]

    def nth_roots(self, c, k):
        c = self(c)
        return [r for r in self.elements() if r ** k == c]

    def __str__(self):
        return f"F_{self.p}"


QQ = Rationals()


def _exact_root(n: int, k: int):
    """Integer k-th root of n >= 0 if n is a perfect k-th power, else None."""
    if n < 2:
        return n
    # seed above the root so integer Newton descends monotonically
    r = 1 << -(-n.bit_length() // k)
    while True:
        nxt = ((k - 1) * r + n // r ** (k - 1)) // k
        if nxt >= r:
            break
        r = nxt
    return r if r ** k == n else None


def field_from_text(text: str) -> Field:
    """Parse the CLI field syntax: ``Q`` or ``fp:P``."""
    t = text.strip()
    if t.upper() == "Q":
        return QQ
    head, _, tail = t.partition(":")
    if head.lower() in ("fp", "f") and tail:
        try:
            return PrimeField(int(tail))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    raise ParseError(f"unknown field {text!r} (expected Q or fp:P)")


def field_from_json(obj) -> Field:
    if obj == "Q":
        return QQ
    if isinstance(obj, dict) and set(obj) == {"Fp"} and isinstance(obj["Fp"], int):
        return PrimeField(obj["Fp"])
    raise ParseError(f"unknown field descriptor {obj!r}", "field")
