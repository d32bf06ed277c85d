"""Executable instance transformations between k-clique and Ramsey quantifiers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .evaluator import EvalConfig, eval_ramsey
from .structures import Graph, Model, add_vertices, model_to_graph
from .threshold import Expr, FunctionCase, classify, inverse_threshold, validate_threshold

LINEAR_SCAN = 1 << 12
SHIFT_HORIZON = 1 << 40
EMBED_HORIZON = 1 << 22


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class ReductionOutput:
    graph: Graph
    params: dict[str, int]
    provenance: dict[str, object] = field(default_factory=dict)

    def describe(self) -> str:
        lines = [f"construction {self.provenance.get('construction')}"]
        lines += [f"{k} {v}" for k, v in self.params.items()]
        return "\n".join(lines)


def _require_class(f: Expr, allowed: set[FunctionCase], what: str) -> None:
    validate_threshold(f, require_monotone=True)
    case = classify(f, validate=False).case
    if case not in allowed:
        names = ", ".join(sorted(c.value for c in allowed))
        raise PreconditionError(f"{what} needs f in {names}; f={f} is {case.value}")


def _least_shift(f: Expr, start: int, bound: int) -> int:
    """Least d >= 0 with f(start + d) <= bound + d.

    Linear scan first, then doubling; past the scan the result is the first
    power of two that works, not necessarily the least.
    """
    for d in range(LINEAR_SCAN + 1):
        if f(start + d) <= bound + d:
            return d
    d = LINEAR_SCAN * 2
    while d <= SHIFT_HORIZON:
        if f(start + d) <= bound + d:
            return d
        d *= 2
    raise PreconditionError(f"no shift up to {SHIFT_HORIZON} brings f below the bound; is f sublinear?")


def pad_instance(g: Graph, b: int, f: Expr) -> ReductionOutput:
    """Add universal vertices until f(n') <= b'.

    Each universal vertex raises every maximal clique by one, so g has a
    b-clique iff the output has a b'-clique, with b' = b + delta.
    """
    if b < 0:
        raise ValueError("bound must be nonnegative")
    _require_class(f, {FunctionCase.BOUNDED, FunctionCase.SUBLINEAR_UNBOUNDED}, "padding")
    n = g.size
    delta = _least_shift(f, n, b) if n >= 1 else 1 + _least_shift(f, 1, b + 1)
    out = add_vertices(g, universal=delta)
    return ReductionOutput(
        out,
        {"delta": delta, "n": n, "b": b, "n_prime": n + delta, "b_prime": b + delta},
        {"construction": "pad", "f": str(f), "input_size": n},
    )


def _require_simple(g: Graph) -> None:
    if g.eligible != g.all_vertices:
        raise PreconditionError("clique instances must have every vertex eligible")


def embed_kclique_sublinear(g: Graph, k: int, f: Expr) -> ReductionOutput:
    """k-clique instance -> Ramsey instance for unbounded sublinear f.

    Starts from q = min{q : f(q) >= k}. When q < n or l = f(q) - k exceeds the
    q - n new vertices available, q is enlarged to the least q' >= max(q, n)
    with f(q') - k <= q' - n, which sublinearity guarantees to exist. The
    output adds l universal and q - n - l isolated vertices and asks for
    k' = f(q) = k + l.
    """
    if k < 1:
        raise ValueError("k must be positive")
    _require_simple(g)
    _require_class(f, {FunctionCase.SUBLINEAR_UNBOUNDED}, "the sublinear embedding")
    n = g.size
    q0 = inverse_threshold(f, k)
    if q0 is None:
        raise PreconditionError(f"f never reaches {k}; f must be unbounded")
    q = q0
    padded = 0
    if q < n or f(q) - k > q - n:
        start = max(q, n)
        padded = _least_shift(f, start, start - n + k)
        q = start + padded
    ell = f(q) - k
    out = add_vertices(g, universal=ell, isolated=q - n - ell)
    return ReductionOutput(
        out,
        {"n": n, "k": k, "q_initial": q0, "padding": padded, "q": q, "ell": ell,
         "n_prime": q, "k_prime": f(q)},
        {"construction": "sublinear", "f": str(f), "input_size": n},
    )


def embed_kclique_linear(g: Graph, m: int, f: Expr) -> ReductionOutput:
    """m-clique instance -> Ramsey instance for linearly growing f far from n.

    Scans for the least l >= 0 with m <= f(n + l) <= m + l, then adds
    l' = f(n + l) - m universal and l - l' isolated vertices.
    """
    if m < 1:
        raise ValueError("m must be positive")
    _require_simple(g)
    _require_class(f, {FunctionCase.LINEAR_FAR_FROM_N}, "the linear embedding")
    n = g.size
    q = inverse_threshold(f, m)
    if q is None:
        raise PreconditionError(f"f never reaches {m}")
    ell = max(0, q - n)
    while not f(n + ell) <= m + ell:
        ell += 1
        if ell > EMBED_HORIZON:
            raise PreconditionError(f"no l <= {EMBED_HORIZON} with f(n + l) <= m + l")
    ell_prime = f(n + ell) - m
    out = add_vertices(g, universal=ell_prime, isolated=ell - ell_prime)
    return ReductionOutput(
        out,
        {"n": n, "m": m, "ell": ell, "ell_prime": ell_prime, "n_prime": n + ell,
         "k_prime": m + ell_prime},
        {"construction": "linear", "f": str(f), "input_size": n},
    )


def probe_graph(n: int, i: int) -> Graph:
    """n elements, relation S = {0..i-1} x {0..i-1}: largest homogeneous set is exactly i."""
    pairs = frozenset((a, b) for a in range(i) for b in range(i))
    return model_to_graph(Model(n, pairs))


def probe_function(oracle: Callable[[Graph], bool], n: int) -> int | None:
    """Recover f(n) from membership queries alone.

    Membership of the i-th probe graph is monotone in i (it holds iff
    i >= f(n)), so a binary search finds the least qualifying i. Returns None
    when no i <= n qualifies, i.e. f(n) > n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not oracle(probe_graph(n, n)):
        return None
    lo, hi = -1, n  # oracle(lo) false (virtual), oracle(hi) true
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if oracle(probe_graph(n, mid)):
            hi = mid
        else:
            lo = mid
    return hi


def ramsey_membership(f: Expr, config: EvalConfig = EvalConfig()) -> Callable[[Graph], bool]:
    """Membership procedure for R_f, suitable for probe_function."""

    def member(g: Graph) -> bool:
        cert = eval_ramsey(g, f, config)
        if cert.outcome is None:
            raise RuntimeError("evaluation budget exhausted during probing")
        return cert.outcome

    return member
