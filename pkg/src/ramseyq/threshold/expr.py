"""Threshold expression tree and exact integer evaluation."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Callable, Union

# Results wider than this are refused rather than computed.
MAX_BITS = 1 << 16


class ArithmeticCapacityError(ArithmeticError):
    """An intermediate value outgrew MAX_BITS."""


def _show(n: int) -> str:
    return str(n) if n.bit_length() <= 64 else f"<{n.bit_length()}-bit integer>"


def ceil_log2(x: int) -> int:
    """Exact ceil(log2(x)); 0 for x <= 1."""
    if x <= 1:
        return 0
    return (x - 1).bit_length()


def ceil_sqrt(x: int) -> int:
    if x <= 0:
        return 0
    r = isqrt(x)
    return r if r * r == x else r + 1


def _log2_interval(x: int, prec: int) -> tuple[int, int, int]:
    """Rigorous bounds lo/2**s <= log2(x) <= hi/2**s for x >= 2.

    Bits of the fractional part come from repeated squaring of a fixed-point
    mantissa carried as a (floor, ceil) pair, so every rounding step keeps
    the true value bracketed. Stops early when the bracket straddles a bit.
    """
    e = x.bit_length() - 1
    guard = prec + 32
    one = 1 << guard
    two = one << 1
    lo = (x << guard) >> e
    hi = -((-(x << guard)) >> e)
    bits = 0
    steps = 0
    for _ in range(prec):
        lo = (lo * lo) >> guard
        hi = -((-(hi * hi)) >> guard)
        blo, bhi = lo >= two, hi >= two
        if blo != bhi:
            break
        bits = (bits << 1) | blo
        steps += 1
        if blo:
            lo >>= 1
            hi = -((-hi) >> 1)
    base = (e << steps) | bits
    return base, base + 1, steps


def div_log2(num: int, arg: int, ceil: bool) -> int:
    """ceil or floor of num / log2(arg) with the divisor clamped to >= 1."""
    if num <= 0:
        return 0
    if arg <= 2:
        return num
    if arg & (arg - 1) == 0:
        e = arg.bit_length() - 1
        return -(-num // e) if ceil else num // e
    # log2(arg) is irrational here, so num/log2(arg) is never an integer and
    # a narrow enough bracket pins the rounding down exactly.
    prec = 64
    while True:
        lo, hi, s = _log2_interval(arg, prec)
        lower = (num << s) // hi
        upper = -((-(num << s)) // lo)
        if upper - lower <= 1:
            return upper if ceil else lower
        prec *= 2


class Expr:
    """Base class of threshold expression nodes."""

    def __call__(self, n: int) -> int:
        if n < 1:
            raise ValueError(f"threshold functions are evaluated at n >= 1, got {n}")
        return self.value(n)

    def value(self, n: int) -> int:
        raise NotImplementedError

    def children(self) -> tuple[Expr, ...]:
        return ()

    def walk(self):
        yield self
        for c in self.children():
            yield from c.walk()


@dataclass(frozen=True)
class Const(Expr):
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("constants must be nonnegative")

    def value(self, n):
        return self.k

    def __str__(self):
        return str(self.k)


@dataclass(frozen=True)
class Var(Expr):
    def value(self, n):
        return n

    def __str__(self):
        return "n"


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr

    def value(self, n):
        return self.left.value(n) + self.right.value(n)

    def children(self):
        return (self.left, self.right)

    def __str__(self):
        return f"({self.left} + {self.right})"


@dataclass(frozen=True)
class Sub(Expr):
    """Truncated difference max(0, left - right)."""

    left: Expr
    right: Expr

    def value(self, n):
        return max(0, self.left.value(n) - self.right.value(n))

    def children(self):
        return (self.left, self.right)

    def __str__(self):
        return f"({self.left} - {self.right})"


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr

    def value(self, n):
        a = self.left.value(n)
        b = self.right.value(n)
        if a.bit_length() + b.bit_length() > MAX_BITS:
            raise ArithmeticCapacityError(f"product in {self} exceeds {MAX_BITS} bits at n={_show(n)}")
        return a * b

    def children(self):
        return (self.left, self.right)

    def __str__(self):
        return f"({self.left} * {self.right})"


@dataclass(frozen=True)
class Scale(Expr):
    """ceil or floor of (p/q) * arg."""

    p: int
    q: int
    arg: Expr
    ceil: bool = True

    def __post_init__(self):
        if self.q <= 0 or self.p < 0:
            raise ValueError("scale needs p >= 0 and q > 0")

    def value(self, n):
        x = self.p * self.arg.value(n)
        return -(-x // self.q) if self.ceil else x // self.q

    def children(self):
        return (self.arg,)

    def __str__(self):
        name = "ceil" if self.ceil else "floor"
        rat = str(self.p) if self.q == 1 else f"{self.p}/{self.q}"
        return f"{name}({rat} * {self.arg})"


@dataclass(frozen=True)
class Log2(Expr):
    """ceil(log2(arg)), taken as 0 when arg <= 1."""

    arg: Expr

    def value(self, n):
        return ceil_log2(self.arg.value(n))

    def children(self):
        return (self.arg,)

    def __str__(self):
        return f"ceil(log2({self.arg}))"


@dataclass(frozen=True)
class Sqrt(Expr):
    arg: Expr

    def value(self, n):
        return ceil_sqrt(self.arg.value(n))

    def children(self):
        return (self.arg,)

    def __str__(self):
        return f"ceil(sqrt({self.arg}))"


@dataclass(frozen=True)
class LogQuotient(Expr):
    """ceil or floor of num / log2(arg) with the real logarithm.

    The divisor is clamped to 1 when log2(arg) < 1.
    """

    num: Expr
    arg: Expr
    ceil: bool = True

    def value(self, n):
        return div_log2(self.num.value(n), self.arg.value(n), self.ceil)

    def children(self):
        return (self.num, self.arg)

    def __str__(self):
        name = "ceil" if self.ceil else "floor"
        return f"{name}({self.num} / log2({self.arg}))"


# Real-valued subterms, only ever evaluated under RealRound.

REAL_PRECISION_CAP = 1 << 13


class Real:
    """Base class of real-valued nodes (sums/products of integers and logs)."""

    def children(self) -> tuple:
        return ()


@dataclass(frozen=True)
class RInt(Real):
    """An integer-valued expression used inside a real context."""

    expr: Expr

    def children(self):
        return (self.expr,)

    def __str__(self):
        return str(self.expr)


@dataclass(frozen=True)
class RLog2(Real):
    """Real log2(arg); 0 when arg <= 1."""

    arg: Expr

    def children(self):
        return (self.arg,)

    def __str__(self):
        return f"log2({self.arg})"


@dataclass(frozen=True)
class ROp(Real):
    op: str  # '+', '-' or '*' (untruncated)
    left: Real
    right: Real

    def children(self):
        return (self.left, self.right)

    def __str__(self):
        return f"({self.left} {self.op} {self.right})"


def _real_exact(r: Real, n: int) -> int | None:
    """Integer value when every logarithm is an integer, else None."""
    if isinstance(r, RInt):
        return r.expr.value(n)
    if isinstance(r, RLog2):
        x = r.arg.value(n)
        if x <= 1:
            return 0
        return x.bit_length() - 1 if x & (x - 1) == 0 else None
    a = _real_exact(r.left, n)
    b = _real_exact(r.right, n)
    if a is None or b is None:
        return None
    return a + b if r.op == "+" else a - b if r.op == "-" else a * b


def _real_interval(r: Real, n: int, prec: int) -> tuple[int, int]:
    """Integers lo, hi with lo / 2**prec <= value <= hi / 2**prec."""
    if isinstance(r, RInt):
        v = r.expr.value(n) << prec
        return v, v
    if isinstance(r, RLog2):
        x = r.arg.value(n)
        if x <= 1:
            return 0, 0
        if x & (x - 1) == 0:
            v = (x.bit_length() - 1) << prec
            return v, v
        lo, hi, steps = _log2_interval(x, prec)
        return lo << (prec - steps), hi << (prec - steps)
    alo, ahi = _real_interval(r.left, n, prec)
    blo, bhi = _real_interval(r.right, n, prec)
    if r.op == "+":
        return alo + blo, ahi + bhi
    if r.op == "-":
        return alo - bhi, ahi - blo
    prods = (alo * blo, alo * bhi, ahi * blo, ahi * bhi)
    return min(prods) >> prec, -((-max(prods)) >> prec)


@dataclass(frozen=True)
class RealRound(Expr):
    """max(0, ceil(x)) or max(0, floor(x)) of a real expression x."""

    body: Real
    ceil: bool = True

    def value(self, n):
        exact = _real_exact(self.body, n)
        if exact is not None:
            return max(0, exact)
        prec = 64
        while prec <= REAL_PRECISION_CAP:
            lo, hi = _real_interval(self.body, n, prec)
            if self.ceil:
                a, b = -((-lo) >> prec), -((-hi) >> prec)
            else:
                a, b = lo >> prec, hi >> prec
            if a == b:
                return max(0, a)
            prec *= 2
        raise ArithmeticCapacityError(f"cannot decide rounding of {self} at n={_show(n)}")

    def children(self):
        return (self.body,)

    def walk(self):
        yield self
        stack = [self.body]
        while stack:
            node = stack.pop()
            if isinstance(node, Expr):
                yield from node.walk()
            else:
                stack.extend(node.children())

    def __str__(self):
        return f"{'ceil' if self.ceil else 'floor'}({self.body})"


@dataclass(frozen=True)
class Min(Expr):
    left: Expr
    right: Expr

    def value(self, n):
        return min(self.left.value(n), self.right.value(n))

    def children(self):
        return (self.left, self.right)

    def __str__(self):
        return f"min({self.left}, {self.right})"


@dataclass(frozen=True)
class Max(Expr):
    left: Expr
    right: Expr

    def value(self, n):
        return max(self.left.value(n), self.right.value(n))

    def children(self):
        return (self.left, self.right)

    def __str__(self):
        return f"max({self.left}, {self.right})"


@dataclass(frozen=True, eq=False)
class Opaque(Expr):
    """A user-supplied threshold function outside the DSL.

    Never analysed symbolically. ``poly_time=False`` declares that the
    function is not polynomial-time computable, which changes the verdict.
    """

    func: Callable[[int], int]
    name: str = "opaque"
    poly_time: bool = True

    def value(self, n):
        v = self.func(n)
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise ValueError(f"{self.name}({n}) returned {v!r}, expected a nonnegative int")
        return v

    def __str__(self):
        return self.name


ThresholdExpr = Union[Const, Var, Add, Sub, Mul, Scale, Log2, Sqrt, LogQuotient, RealRound, Min, Max, Opaque]


def eval_threshold(f: Expr, n: int) -> int:
    """Exact value of f(n) for n >= 1."""
    return f(n)
