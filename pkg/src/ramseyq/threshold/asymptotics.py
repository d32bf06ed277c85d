"""Symbolic asymptotic expansions of threshold expressions.

An expansion is a finite sum of terms ``coef * n**a * log2(n)**b`` plus an
error bound ``O(n**a' * log2(n)**b')``.  Orders ``(a, b)`` compare
lexicographically, which is exactly the asymptotic order of the monomial.
Only patterns whose expansion can be derived soundly are supported; anything
else yields ``None`` and the caller falls back to sampling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .expr import (
    Add, Const, Expr, Log2, LogQuotient, Max, Min, Mul, Real, RealRound, RInt, RLog2, ROp, Scale, Sqrt, Sub, Var,
)

Order = tuple[Fraction, Fraction]

ZERO: Order = (Fraction(0), Fraction(0))
LOG: Order = (Fraction(0), Fraction(1))
LINEAR: Order = (Fraction(1), Fraction(0))


class Unsupported(Exception):
    pass


def _oadd(a: Order, b: Order) -> Order:
    return (a[0] + b[0], a[1] + b[1])


def _omax(*orders: Order | None) -> Order | None:
    present = [o for o in orders if o is not None]
    return max(present) if present else None


@dataclass(frozen=True)
class Expansion:
    terms: tuple[tuple[Order, Fraction], ...]  # sorted by decreasing order
    err: Order | None = None  # None means the expansion is exact

    @staticmethod
    def make(terms: dict[Order, Fraction], err: Order | None) -> Expansion:
        kept = {o: c for o, c in terms.items() if c != 0 and (err is None or o > err)}
        return Expansion(tuple(sorted(kept.items(), reverse=True)), err)

    @property
    def exact(self) -> bool:
        return self.err is None

    @property
    def lead(self) -> tuple[Order, Fraction] | None:
        return self.terms[0] if self.terms else None

    @property
    def top(self) -> Order | None:
        """Order of the whole expression (leading term or error)."""
        return self.terms[0][0] if self.terms else self.err

    def second(self) -> Order | None:
        """Order of everything below the leading term."""
        nxt = self.terms[1][0] if len(self.terms) > 1 else None
        return _omax(nxt, self.err)

    def constant(self) -> Fraction | None:
        """The exact constant value, if the expansion is one."""
        if not self.exact:
            return None
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and self.terms[0][0] == ZERO:
            return self.terms[0][1]
        return None

    def __neg__(self) -> Expansion:
        return Expansion(tuple((o, -c) for o, c in self.terms), self.err)

    def __add__(self, other: Expansion) -> Expansion:
        acc: dict[Order, Fraction] = {}
        for o, c in self.terms + other.terms:
            acc[o] = acc.get(o, Fraction(0)) + c
        return Expansion.make(acc, _omax(self.err, other.err))

    def __sub__(self, other: Expansion) -> Expansion:
        return self + (-other)

    def __mul__(self, other: Expansion) -> Expansion:
        acc: dict[Order, Fraction] = {}
        for oa, ca in self.terms:
            for ob, cb in other.terms:
                o = _oadd(oa, ob)
                acc[o] = acc.get(o, Fraction(0)) + ca * cb
        errs = []
        if other.err is not None and self.top is not None:
            errs.append(_oadd(self.top, other.err))
        if self.err is not None and other.top is not None:
            errs.append(_oadd(other.top, self.err))
        return Expansion.make(acc, _omax(*errs))

    def scale(self, r: Fraction) -> Expansion:
        if r == 0:
            return Expansion((), None)
        return Expansion(tuple((o, c * r) for o, c in self.terms), self.err)

    def rounded(self) -> Expansion:
        """Account for a ceil/floor: adds an O(1) error unless exact integer."""
        c = self.constant()
        if c is not None and c.denominator == 1:
            return self
        return Expansion.make(dict(self.terms), _omax(self.err, ZERO))


def _sign_of_difference(d: Expansion) -> int:
    """Eventual sign of an expansion, 0 if identically zero."""
    if d.lead is not None:
        return 1 if d.lead[1] > 0 else -1
    if d.exact:
        return 0
    raise Unsupported("sign undetermined")


def _frac_sqrt(c: Fraction) -> Fraction | None:
    a, b = c.numerator, c.denominator
    ra, rb = isqrt(a), isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


def expand(f: Expr) -> Expansion:
    """Expansion of f as n -> infinity; raises Unsupported."""
    if isinstance(f, Const):
        return Expansion.make({ZERO: Fraction(f.k)}, None)
    if isinstance(f, Var):
        return Expansion.make({LINEAR: Fraction(1)}, None)
    if isinstance(f, Add):
        return expand(f.left) + expand(f.right)
    if isinstance(f, Sub):
        return _clamped(expand(f.left) - expand(f.right))
    if isinstance(f, Mul):
        return expand(f.left) * expand(f.right)
    if isinstance(f, Scale):
        e = expand(f.arg).scale(Fraction(f.p, f.q))
        c = e.constant()
        if c is not None:
            v = -(-c.numerator // c.denominator) if f.ceil else c.numerator // c.denominator
            return Expansion.make({ZERO: Fraction(v)}, None)
        return e.rounded()
    if isinstance(f, (Min, Max)):
        a, b = expand(f.left), expand(f.right)
        s = _sign_of_difference(a - b)
        bigger, smaller = (a, b) if s >= 0 else (b, a)
        return bigger if isinstance(f, Max) else smaller
    if isinstance(f, Log2):
        e = expand(f.arg)
        c = e.constant()
        if c is not None:
            v = int(c)
            if v != c:
                raise Unsupported("log of a non-integer constant")
            return Expansion.make({ZERO: Fraction((v - 1).bit_length() if v > 1 else 0)}, None)
        (a, b), coef = _positive_lead(e)
        if a <= 0:
            raise Unsupported("iterated or constant logarithm")
        err = ZERO if b == 0 else (Fraction(0), Fraction(1, 2))
        return Expansion.make({LOG: a}, err)
    if isinstance(f, Sqrt):
        e = expand(f.arg)
        c = e.constant()
        if c is not None:
            if c.denominator != 1:
                raise Unsupported("sqrt of a non-integer constant")
            v = int(c)
            r = isqrt(v)
            return Expansion.make({ZERO: Fraction(r if r * r == v else r + 1)}, None)
        (a, b), coef = _positive_lead(e)
        root = _frac_sqrt(coef)
        if root is None:
            raise Unsupported("irrational coefficient under sqrt")
        half = (a / 2, b / 2)
        rest = e.second()
        err = ZERO if rest is None else max(ZERO, (rest[0] - half[0], rest[1] - half[1]))
        return Expansion.make({half: root}, err)
    if isinstance(f, LogQuotient):
        num = expand(f.num)
        arg = expand(f.arg)
        (a, b), _ = _positive_lead(arg)
        if a <= 0:
            raise Unsupported("quotient by an iterated logarithm")
        if num.lead is None or num.lead[1] <= 0:
            raise Unsupported("quotient with vanishing numerator")
        lo, lc = num.lead
        shifted = (lo[0], lo[1] - 1)
        rel = (Fraction(0), Fraction(-1)) if b == 0 else (Fraction(0), Fraction(-1, 2))
        errs = [ZERO, _oadd(shifted, rel)]
        if num.second() is not None:
            s = num.second()
            errs.append((s[0], s[1] - 1))
        return Expansion.make({shifted: lc / a}, _omax(*errs))
    if isinstance(f, RealRound):
        e = _clamped(expand_real(f.body))
        c = e.constant()
        if c is not None:
            v = -(-c.numerator // c.denominator) if f.ceil else c.numerator // c.denominator
            return Expansion.make({ZERO: Fraction(v)}, None)
        return e.rounded()
    raise Unsupported(f"no symbolic rule for {type(f).__name__}")


def _clamped(d: Expansion) -> Expansion:
    """Expansion of max(0, d)."""
    s = _sign_of_difference(d)
    if s <= 0:
        return Expansion((), None)
    if d.lead[0] <= ZERO and not d.exact:
        raise Unsupported("clamped value settles to an inexact constant")
    return d


def expand_real(r: Real) -> Expansion:
    if isinstance(r, RInt):
        return expand(r.expr)
    if isinstance(r, RLog2):
        e = expand(r.arg)
        if e.constant() is not None:
            raise Unsupported("real log of a constant")
        (a, b), coef = _positive_lead(e)
        if a <= 0:
            raise Unsupported("iterated logarithm")
        errs = []
        if coef != 1:
            errs.append(ZERO)
        if b != 0:
            errs.append((Fraction(0), Fraction(1, 2)))
        rest = e.second()
        if rest is not None:
            errs.append((rest[0] - a, rest[1] - b))
        return Expansion.make({LOG: a}, _omax(*errs))
    a, b = expand_real(r.left), expand_real(r.right)
    return a + b if r.op == "+" else a - b if r.op == "-" else a * b


def _positive_lead(e: Expansion) -> tuple[Order, Fraction]:
    if e.lead is None or e.lead[1] <= 0:
        raise Unsupported("argument does not grow")
    return e.lead
