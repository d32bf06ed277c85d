"""Model checking of Ramsey quantifiers with per-instance strategy dispatch."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .solvers import (
    Certificate,
    clique_by_branch_and_bound,
    clique_by_enumeration,
    clique_by_vertex_cover,
    clique_oracle,
)
from .structures import Graph, Model, model_to_graph
from .threshold import Expr, ceil_log2, validate_threshold


class Strategy(enum.Enum):
    ENUMERATE_SMALL = "EnumerateSmall"
    VERTEX_COVER_NEAR_N = "VertexCoverNearN"
    BRANCH_AND_BOUND = "BranchAndBound"
    ORACLE = "Oracle"


FORCED = {
    "auto": None,
    "enum": Strategy.ENUMERATE_SMALL,
    "vc": Strategy.VERTEX_COVER_NEAR_N,
    "bnb": Strategy.BRANCH_AND_BOUND,
    "oracle": Strategy.ORACLE,
}


@dataclass(frozen=True)
class EvalConfig:
    c_small: int = 4
    c_log: int = 2
    strategy: str = "auto"  # one of FORCED
    budget_ms: float | None = None
    oracle_limit: int = 20


@dataclass(frozen=True)
class EvalStrategy:
    strategy: Strategy
    n: int
    k: int


def choose_strategy(n: int, k: int, config: EvalConfig = EvalConfig()) -> EvalStrategy:
    """Pick an engine from the instance shape alone.

    Small k: enumerate the O(n^k) candidate sets. k close to n: the vertex
    cover search tree costs 2^(n-k) <= n^c_log. Otherwise branch and bound.
    """
    forced = FORCED[config.strategy]
    if forced is not None:
        return EvalStrategy(forced, n, k)
    if k <= config.c_small:
        return EvalStrategy(Strategy.ENUMERATE_SMALL, n, k)
    if n - k <= config.c_log * ceil_log2(n):
        return EvalStrategy(Strategy.VERTEX_COVER_NEAR_N, n, k)
    return EvalStrategy(Strategy.BRANCH_AND_BOUND, n, k)


def run_strategy(g: Graph, choice: EvalStrategy, config: EvalConfig) -> Certificate:
    k = choice.k
    s = choice.strategy
    if s is Strategy.ENUMERATE_SMALL:
        return clique_by_enumeration(g, k, max_k=max(config.c_small, 0))
    if s is Strategy.VERTEX_COVER_NEAR_N:
        return clique_by_vertex_cover(g, k)
    if s is Strategy.BRANCH_AND_BOUND:
        return clique_by_branch_and_bound(g, k, budget_ms=config.budget_ms)
    return clique_oracle(g, k, limit=config.oracle_limit)


def eval_ramsey(
    structure: Model | Graph,
    f: Expr,
    config: EvalConfig = EvalConfig(),
    loops_free: bool = False,
    validate: bool = True,
) -> Certificate:
    """Decide whether the structure has a homogeneous set of size >= f(n).

    A Model is read through ``model_to_graph``; witnesses keep the universe's
    element numbering.
    """
    if validate:
        validate_threshold(f, require_monotone=False)
    g = model_to_graph(structure, loops_free) if isinstance(structure, Model) else structure
    n = g.size
    if n == 0:
        # the empty universe: only the empty set, which is f-large iff f(0) <= 0;
        # thresholds are defined from n = 1, so treat f(0) as 0
        return Certificate(True, (), "EnumerateSmall", 0)
    k = f(n)
    choice = choose_strategy(n, min(k, n + 1), config)
    if k > n:
        return Certificate(False, None, choice.strategy.value, k)
    if k == 0:
        return Certificate(True, (), choice.strategy.value, k)
    cert = run_strategy(g, choice, config)
    cert.strategy = choice.strategy.value
    return cert
