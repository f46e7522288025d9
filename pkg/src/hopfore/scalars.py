"""Exact arithmetic in cyclotomic fields Q(zeta_m) and the q-integer calculus.

Rationals are :class:`fractions.Fraction` (always reduced, positive denominator).
A :class:`Scalar` is a coordinate vector in the power basis 1, z, ..., z^(phi-1)
of ``Q(z)``, ``z`` a primitive m-th root of unity.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .errors import (
    DivisionByZero,
    FieldMismatch,
    IndexOutOfRange,
    ParseError,
    ZeroElement,
)

INFINITE = math.inf

Poly = list  # ascending coefficient list of Fractions


# -- polynomial helpers over Q (ascending coefficients) ---------------------

def _trim(p: Poly) -> Poly:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_sub(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim([Fraction(c) for c in out])


def _poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    quot = [Fraction(0)] * (len(a) - len(b) + 1)
    rem = list(a)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1] / lead
        quot[k] = c
        if c:
            for j, bj in enumerate(b):
                rem[k + j] -= c * bj
    return _trim(quot), _trim(rem[: len(b) - 1])


def cyclotomic_poly(m: int) -> list[int]:
    """Coefficients (ascending, monic) of the m-th cyclotomic polynomial.

    Computed as (x^m - 1) divided by the product of Phi_d over proper divisors d | m.
    """
    if m < 1:
        raise ValueError("cyclotomic_poly needs m >= 1")
    return list(_cyclotomic(m))


@lru_cache(maxsize=None)
def _cyclotomic(m: int) -> tuple[int, ...]:
    num: Poly = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    den: Poly = [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            den = _poly_mul(den, [Fraction(c) for c in _cyclotomic(d)])
    quot, rem = _poly_divmod(num, den)
    assert not rem, "x^m - 1 must be divisible by the proper cyclotomic factors"
    assert all(c.denominator == 1 for c in quot)
    return tuple(int(c) for c in quot)


def euler_phi(m: int) -> int:
    return len(_cyclotomic(m)) - 1


# -- the field ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FieldSpec:
    """The cyclotomic field Q(zeta_m). Obtain instances through :func:`cyclotomic_field`."""

    conductor: int
    minimal_poly: tuple[Fraction, ...]
    # _reduce[j] = coordinates of z^j for 0 <= j <= 2*degree - 2
    _reduce: tuple[tuple[Fraction, ...], ...] = field(repr=False)

    @property
    def degree(self) -> int:
        return len(self.minimal_poly) - 1

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and other.conductor == self.conductor

    def __hash__(self):
        return hash(("FieldSpec", self.conductor))

    def __repr__(self):
        return f"FieldSpec(Q(zeta_{self.conductor}))"

    # constructors
    def zero(self) -> "Scalar":
        return Scalar(self, (Fraction(0),) * self.degree)

    def one(self) -> "Scalar":
        return self(1)

    def gen(self) -> "Scalar":
        """The chosen primitive m-th root of unity z."""
        return self.zeta_power(1)

    def __call__(self, value: Union[int, Fraction, "Scalar"]) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"{value.field!r} vs {self!r}")
            return value
        coeffs = [Fraction(0)] * self.degree
        coeffs[0] = Fraction(value)
        return Scalar(self, tuple(coeffs))

    def from_coeffs(self, coeffs: Sequence) -> "Scalar":
        """Reduce an arbitrary-length coefficient list (powers of z) into the field."""
        return Scalar(self, self._reduce_poly([Fraction(c) for c in coeffs]))

    def zeta_power(self, k: int) -> "Scalar":
        k %= self.conductor
        coeffs = [Fraction(0)] * (k + 1)
        coeffs[k] = Fraction(1)
        return self.from_coeffs(coeffs)

    @property
    def unit_order(self) -> int:
        """Order of the group of roots of unity in the field: lcm(2, m)."""
        return math.lcm(2, self.conductor)

    def root_of_unity(self, n: int) -> "Scalar":
        """A primitive n-th root of unity zeta_n, compatible with z.

        zeta_n = zeta_L^(L/n) where L = lcm(2, m) and zeta_L = z (m even) or
        -z^((m+1)/2) (m odd, the square root of z of order 2m).
        """
        big = self.unit_order
        if n < 1 or big % n:
            from .errors import FieldTooSmall

            raise FieldTooSmall(f"Q(zeta_{self.conductor}) has no primitive {n}-th root of unity")
        if self.conductor % 2 == 0:
            base = self.gen()
        else:
            base = -self.zeta_power((self.conductor + 1) // 2)
        return base ** (big // n)

    def _reduce_poly(self, coeffs: Poly) -> tuple[Fraction, ...]:
        deg = self.degree
        out = list(coeffs[:deg]) + [Fraction(0)] * max(0, deg - len(coeffs))
        extra = coeffs[deg:]
        if extra:
            if len(coeffs) <= len(self._reduce):
                for j, c in enumerate(extra, start=deg):
                    if c:
                        row = self._reduce[j]
                        for k in range(deg):
                            if row[k]:
                                out[k] += c * row[k]
            else:
                _, rem = _poly_divmod(coeffs, list(self.minimal_poly))
                out = rem + [Fraction(0)] * (deg - len(rem))
        return tuple(out)


@lru_cache(maxsize=None)
def cyclotomic_field(m: int) -> FieldSpec:
    if m < 1:
        raise ValueError("conductor must be >= 1")
    mp = tuple(Fraction(c) for c in _cyclotomic(m))
    deg = len(mp) - 1
    table = []
    for j in range(max(2 * deg - 1, 1)):
        mono = [Fraction(0)] * j + [Fraction(1)]
        _, rem = _poly_divmod(mono, list(mp))
        table.append(tuple(rem + [Fraction(0)] * (deg - len(rem))))
    return FieldSpec(m, mp, tuple(table))


# -- scalars -----------------------------------------------------------------

Coercible = Union[int, Fraction, "Scalar"]


class Scalar:
    """Immutable element of a cyclotomic field."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, fld: FieldSpec, coeffs: tuple[Fraction, ...]):
        self.field = fld
        self.coeffs = coeffs
        self._hash = None

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        deg = len(a)
        if deg == 1:
            return Scalar(self.field, (a[0] * b[0],))
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Scalar(self.field, self.field._reduce_poly(prod))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        """Multiplicative inverse by the extended Euclidean algorithm against Phi_m."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if len(self.coeffs) == 1:
            return Scalar(self.field, (1 / self.coeffs[0],))
        # invariant: s_i * self == r_i  (mod Phi_m)
        r0, r1 = list(self.field.minimal_poly), _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            quot, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quot, s1))
        # r1 is a nonzero constant since Phi_m is irreducible
        c = r1[0]
        return self.field.from_coeffs([x / c for x in s1])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self
        if n < 0:
            base, n = self.inverse(), -n
        result = self.field.one()
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not any(self.coeffs[1:]):
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash(self.coeffs)
        return self._hash

    def __lt__(self, other: "Scalar") -> bool:
        return self.sort_key() < self._coerce(other).sort_key()

    def sort_key(self) -> tuple[Fraction, ...]:
        """Lexicographic key on the coordinate tuple, larger coordinates first.

        Descending order makes 1 the least root of unity, so trivial characters
        come first and the powers of z in Q(zeta_3), Q(zeta_4) sort by exponent.
        """
        return tuple(-c for c in self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r}, m={self.field.conductor})"

    def __str__(self):
        return format_scalar(self)


def order_of_unit(u: Scalar) -> Union[int, float]:
    """Multiplicative order of ``u``, or ``INFINITE`` if it is not a root of unity."""
    if u.is_zero():
        raise ZeroElement("order of the zero element")
    big = u.field.unit_order
    if not (u ** big).is_one():
        return INFINITE
    for d in sorted(d for d in range(1, big + 1) if big % d == 0):
        if (u ** d).is_one():
            return d
    raise AssertionError("unreachable")


# -- q-calculus ------------------------------------------------------------------

def q_int(n: int, q: Scalar) -> Scalar:
    """(n)_q = 1 + q + ... + q^(n-1); (0)_q = 0."""
    if n < 0:
        raise IndexOutOfRange("q_int needs n >= 0")
    total = q.field.zero()
    power = q.field.one()
    for _ in range(n):
        total = total + power
        power = power * q
    return total


def q_factorial(n: int, q: Scalar) -> Scalar:
    result = q.field.one()
    for k in range(1, n + 1):
        result = result * q_int(k, q)
    return result


def q_binomial_row(n: int, q: Scalar) -> list[Scalar]:
    """Row n of the q-Pascal triangle, built with C(n,i) = q^i C(n-1,i) + C(n-1,i-1)."""
    if n < 0:
        raise IndexOutOfRange("q_binom needs n >= 0")
    one = q.field.one()
    q_pows = [one]
    for _ in range(n):
        q_pows.append(q_pows[-1] * q)
    row = [one]
    for k in range(1, n + 1):
        new = [one]
        for i in range(1, k):
            new.append(q_pows[i] * row[i] + row[i - 1])
        new.append(one)
        row = new
    return row


def q_binom(n: int, i: int, q: Scalar) -> Scalar:
    if not 0 <= i <= n:
        raise IndexOutOfRange(f"q_binom({n}, {i}) needs 0 <= i <= n")
    return q_binomial_row(n, q)[i]


def q_binom_by_factorials(n: int, i: int, q: Scalar) -> Scalar:
    """Factorial-quotient form; only valid when the denominator is nonzero."""
    if not 0 <= i <= n:
        raise IndexOutOfRange(f"q_binom({n}, {i}) needs 0 <= i <= n")
    den = q_factorial(i, q) * q_factorial(n - i, q)
    if den.is_zero():
        raise DivisionByZero("(i)!_q (n-i)!_q vanishes")
    return q_factorial(n, q) / den


# -- literal grammar ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(z)|([-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    stripped_end = len(text.rstrip())
    while pos < stripped_end:
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        if m.group(1):
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(("z", "z", m.start(2)))
        else:
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _ScalarParser:
    """expr := ['+'|'-'] term (('+'|'-') term)*;  term := [coef ['*']] ['z' ['^' ['-'] int]]"""

    def __init__(self, text: str, fld: FieldSpec):
        self.text = text
        self.fld = fld
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg):
        raise ParseError(msg, self.text, self.peek()[2])

    def parse(self) -> Scalar:
        if self.peek()[0] == "end":
            self.error("empty scalar literal")
        total = self.fld.zero()
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
        total = total + sign * self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
            total = total + sign * self.term()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return total

    def term(self) -> Scalar:
        coef = None
        kind, val, _ = self.peek()
        if kind == "int":
            self.take()
            coef = Fraction(int(val))
            if self.peek()[:2] == ("op", "/"):
                self.take()
                if self.peek()[0] != "int":
                    self.error("expected denominator")
                den = int(self.take()[1])
                if den == 0:
                    self.error("zero denominator")
                coef /= den
            if self.peek()[:2] == ("op", "*"):
                self.take()
                if self.peek()[0] != "z":
                    self.error("expected 'z' after '*'")
        if self.peek()[0] == "z":
            self.take()
            exp = 1
            if self.peek()[:2] == ("op", "^"):
                self.take()
                neg = False
                if self.peek()[:2] == ("op", "-"):
                    self.take()
                    neg = True
                if self.peek()[0] != "int":
                    self.error("expected exponent")
                exp = int(self.take()[1]) * (-1 if neg else 1)
            value = self.fld.zeta_power(exp)
            return value * coef if coef is not None else value
        if coef is None:
            self.error("expected a number or 'z'")
        return self.fld(coef)


def parse_scalar(text: str, fld: FieldSpec) -> Scalar:
    """Parse a literal such as ``-1/3``, ``z^2`` or ``1/2*z^3 + 2``; ``z`` is zeta_m."""
    return _ScalarParser(text, fld).parse()


def _fmt_frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_scalar(x: Scalar) -> str:
    parts: list[tuple[int, str]] = []
    for k, c in enumerate(x.coeffs):
        if not c:
            continue
        sign = -1 if c < 0 else 1
        mag = abs(c)
        if k == 0:
            body = _fmt_frac(mag)
        else:
            mono = "z" if k == 1 else f"z^{k}"
            body = mono if mag == 1 else f"{_fmt_frac(mag)}*{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] < 0 else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += (" - " if sign < 0 else " + ") + body
    return out
