"""Exact Laurent polynomials in ``q`` with rational coefficients.

This is the ground ring ``R = Q[q, q^-1]``.  Besides ring arithmetic it
provides the ``(q-1)``-adic valuation, exact division by powers of
``(q-1)`` and specialization at ``q = 1``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

__all__ = [
    "LaurentScalar",
    "NotDivisible",
    "INFINITY",
    "ZERO",
    "ONE",
    "Q",
    "T",
    "arith",
    "q1_valuation",
    "divide_by_q1",
    "evaluate_at_one",
    "parse_scalar",
]

INFINITY = math.inf

Number = Union[int, Fraction]


class NotDivisible(ArithmeticError):
    pass


def _binom(e: int, i: int) -> Fraction:
    # generalized binomial coefficient, valid for negative e
    num = 1
    for j in range(i):
        num *= e - j
    return Fraction(num, math.factorial(i))


class LaurentScalar:
    """Immutable element of Q[q, q^-1].

    Stored as a sorted tuple of ``(exponent, coefficient)`` pairs with no
    zero coefficients, so equality and hashing are structural.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping[int, Number], Iterable[Tuple[int, Number]], Number] = ()):
        if isinstance(terms, (int, Fraction)):
            terms = {0: terms}
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            acc: Dict[int, Fraction] = {}
            for e, c in terms:
                acc[e] = acc.get(e, 0) + c
            items = acc.items()
        self._terms = tuple(sorted((int(e), Fraction(c)) for e, c in items if c != 0))
        self._hash = None

    @classmethod
    def _raw(cls, terms: Tuple[Tuple[int, Fraction], ...]) -> "LaurentScalar":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exponent: int, coeff: Number = 1) -> "LaurentScalar":
        if coeff == 0:
            return ZERO
        return cls._raw(((int(exponent), Fraction(coeff)),))

    @property
    def terms(self) -> Dict[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return iter(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0] == 0)

    def is_unit(self) -> bool:
        """Units of R are the nonzero monomials c*q^k."""
        return len(self._terms) == 1

    def min_exponent(self) -> int:
        return self._terms[0][0]

    def max_exponent(self) -> int:
        return self._terms[-1][0]

    # -- ring operations -------------------------------------------------

    @staticmethod
    def _coerce(other) -> "LaurentScalar":
        if isinstance(other, LaurentScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentScalar.monomial(0, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for e, c in other._terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentScalar(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar._raw(tuple((e, -c) for e, c in self._terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return ZERO
        if len(other._terms) == 1:
            f, d = other._terms[0]
            return LaurentScalar._raw(tuple((e + f, c * d) for e, c in self._terms))
        if len(self._terms) == 1:
            return other * self
        acc: Dict[int, Fraction] = {}
        for e, c in self._terms:
            for f, d in other._terms:
                acc[e + f] = acc.get(e + f, 0) + c * d
        return LaurentScalar(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise ArithmeticError(f"{self} is not a unit of Q[q,q^-1]")
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "LaurentScalar":
        if not self.is_unit():
            raise ArithmeticError(f"{self} is not a unit of Q[q,q^-1]")
        e, c = self._terms[0]
        return LaurentScalar.monomial(-e, 1 / c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentScalar.monomial(0, other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- (q-1)-adic structure -------------------------------------------

    def at_one(self) -> Fraction:
        return sum((c for _, c in self._terms), Fraction(0))

    def taylor_at_one(self, order: int) -> list:
        """First ``order`` Taylor coefficients of f around q = 1."""
        return [sum((c * _binom(e, i) for e, c in self._terms), Fraction(0)) for i in range(order)]

    def q1_valuation(self):
        if not self._terms:
            return INFINITY
        v = 0
        f = self
        while True:
            quotient, remainder = f._divmod_q1()
            if remainder:
                return v
            f = quotient
            v += 1

    def _divmod_q1(self) -> Tuple["LaurentScalar", Fraction]:
        # f = q^m * p(q); synthetic division of p by (q - 1)
        m = self._terms[0][0]
        top = self._terms[-1][0]
        coeffs = dict(self._terms)
        acc = Fraction(0)
        quotient: Dict[int, Fraction] = {}
        for e in range(top, m - 1, -1):
            acc += coeffs.get(e, 0)
            if e > m:
                quotient[e - 1] = acc
        return LaurentScalar(quotient), acc

    def divide_by_q1(self, n: int = 1) -> "LaurentScalar":
        f = self
        for _ in range(n):
            if not f._terms:
                return f
            quotient, remainder = f._divmod_q1()
            if remainder:
                raise NotDivisible(f"(q-1)^{n} does not divide {self}")
            f = quotient
        return f

    def mod_q1_power(self, k: int) -> "LaurentScalar":
        """Canonical remainder of f modulo (q-1)^k: a polynomial of degree < k."""
        if k <= 0 or not self._terms:
            return ZERO
        taylor = self.taylor_at_one(k)
        r = ZERO
        for i, c in enumerate(taylor):
            if c:
                r = r + c * T ** i
        return r

    # -- printing --------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms:
            if e == 0:
                mono = ""
            elif e == 1:
                mono = "q"
            else:
                mono = f"q^{e}"
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentScalar({str(self)!r})"


ZERO = LaurentScalar._raw(())
ONE = LaurentScalar.monomial(0, 1)
Q = LaurentScalar.monomial(1, 1)
T = LaurentScalar({1: 1, 0: -1})  # q - 1


def arith(f: LaurentScalar, g: LaurentScalar, op: str) -> LaurentScalar:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def q1_valuation(f: LaurentScalar):
    return f.q1_valuation()


def divide_by_q1(f: LaurentScalar, n: int) -> LaurentScalar:
    return f.divide_by_q1(n)


def evaluate_at_one(f: LaurentScalar) -> Fraction:
    return f.at_one()


def exact_quotient(f: LaurentScalar, g: LaurentScalar):
    """Return f/g if g divides f in R, else None."""
    if not g:
        raise ZeroDivisionError
    if not f:
        return ZERO
    # normalize to polynomials with nonzero constant term
    fm, gm = f.min_exponent(), g.min_exponent()
    fp = {e - fm: c for e, c in f.items()}
    gp = {e - gm: c for e, c in g.items()}
    gdeg = max(gp)
    lead = gp[gdeg]
    quotient: Dict[int, Fraction] = {}
    rem = dict(fp)
    while rem:
        rdeg = max(rem)
        if rdeg < gdeg:
            return None
        c = rem[rdeg] / lead
        shift = rdeg - gdeg
        quotient[shift] = c
        for e, d in gp.items():
            k = e + shift
            v = rem.get(k, 0) - c * d
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return LaurentScalar({e + fm - gm: c for e, c in quotient.items()})


_SCALAR_TOKEN = re.compile(r"\s*(?:(\d+)(?:/(\d+))?|(q)(?:\^(-?\d+))?|(\*)|([+-]))")


def parse_scalar(text: str) -> LaurentScalar:
    """Parse the flat scalar syntax ``-1 + 2*q^-1 + q^2``.

    Parenthesized forms such as ``(q - 1)`` are handled by the expression
    parser; this one accepts sums of products of rationals and powers of q.
    """
    pos = 0
    total = ZERO
    term = None
    sign = 1
    text = text.strip()
    if not text:
        raise ValueError("empty scalar")
    expect_factor = True
    while pos < len(text):
        m = _SCALAR_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad scalar syntax at column {pos + 1}: {text[pos:]!r}")
        pos = m.end()
        num, den, qq, exp, star, pm = m.groups()
        if pm:
            if expect_factor and term is None:
                sign = -sign if pm == "-" else sign
                continue
            if expect_factor:
                raise ValueError(f"dangling operator at column {pos}")
            total = total + sign * term
            term, sign, expect_factor = None, (-1 if pm == "-" else 1), True
        elif star:
            if expect_factor:
                raise ValueError(f"dangling '*' at column {pos}")
            expect_factor = True
        else:
            if not expect_factor:
                raise ValueError(f"missing operator before column {m.start() + 1}")
            if num:
                factor = LaurentScalar.monomial(0, Fraction(int(num), int(den) if den else 1))
            else:
                factor = LaurentScalar.monomial(int(exp) if exp else 1, 1)
            term = factor if term is None else term * factor
            expect_factor = False
    if expect_factor:
        raise ValueError("scalar ends with an operator")
    return total + sign * term
