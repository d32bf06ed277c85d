"""Exact clique-decision engines returning witness certificates.

Every engine answers "does g have a clique of at least k eligible vertices?".
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations

from .structures import Graph, bits


class SolverRefused(ValueError):
    """The engine declines an input outside its intended domain."""


class OracleLimitError(SolverRefused):
    pass


ORACLE_LIMIT = 20
ENUMERATION_MAX_K = 8


@dataclass
class Certificate:
    """Outcome of a clique decision.

    ``outcome`` is None when a time budget ran out before the search finished.
    """

    outcome: bool | None
    witness: tuple[int, ...] | None
    strategy: str
    k: int
    stats: dict[str, int] = field(default_factory=lambda: {"subsets": 0, "nodes": 0, "branches": 0})

    @property
    def exhausted(self) -> bool:
        return self.outcome is None


def _cert(outcome, witness, strategy, k, **stats) -> Certificate:
    s = {"subsets": 0, "nodes": 0, "branches": 0}
    s.update(stats)
    w = tuple(sorted(witness)) if witness is not None else None
    return Certificate(outcome, w, strategy, k, s)


def verify_certificate(g: Graph, cert: Certificate) -> bool:
    """Independent re-check of a positive certificate."""
    if cert.outcome is not True:
        return cert.witness is None
    w = cert.witness
    if w is None or len(w) < cert.k or len(set(w)) != len(w):
        return False
    if any(not (0 <= v < g.size) or not g.eligible >> v & 1 for v in w):
        return False
    return all(g.adj[a] >> b & 1 for a, b in combinations(w, 2))


def clique_oracle(g: Graph, k: int, limit: int = ORACLE_LIMIT) -> Certificate:
    """Brute force: try every k-subset of eligible vertices in lexicographic order."""
    if g.size > limit:
        raise OracleLimitError(f"oracle limited to {limit} vertices, got {g.size}")
    if k <= 0:
        return _cert(True, (), "Oracle", k)
    eligible = [v for v in range(g.size) if g.eligible >> v & 1]
    if k > len(eligible):
        return _cert(False, None, "Oracle", k)
    nbrs = [set(bits(row)) for row in g.adj]
    tried = 0
    for subset in combinations(eligible, k):
        tried += 1
        if all(b in nbrs[a] for a, b in combinations(subset, 2)):
            return _cert(True, subset, "Oracle", k, subsets=tried)
    return _cert(False, None, "Oracle", k, subsets=tried)


def max_clique_oracle(g: Graph, limit: int = ORACLE_LIMIT) -> int:
    k = 0
    while clique_oracle(g, k + 1, limit).outcome:
        k += 1
    return k


def clique_by_enumeration(g: Graph, k: int, max_k: int = ENUMERATION_MAX_K) -> Certificate:
    """Grow cliques vertex by vertex in increasing order: O(n^k) partial sets.

    Refuses k > max_k so an exponential enumeration is never started by accident.
    """
    if k > max_k:
        raise SolverRefused(f"enumeration refused for k={k} > {max_k}")
    if k <= 0:
        return _cert(True, (), "EnumerateSmall", k)
    if k > g.eligible.bit_count():
        return _cert(False, None, "EnumerateSmall", k)
    adj = g.adj
    count = 0
    clique: list[int] = []

    def extend(cand: int) -> bool:
        nonlocal count
        need = k - len(clique)
        if need == 0:
            return True
        while cand and cand.bit_count() >= need:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            count += 1
            clique.append(v)
            if extend(cand & adj[v]):
                return True
            clique.pop()
        return False

    found = extend(g.eligible)
    return _cert(found, clique if found else None, "EnumerateSmall", k, subsets=count)


def clique_by_vertex_cover(g: Graph, k: int) -> Certificate:
    """Clique of size >= k via a vertex cover of size <= n - k in the complement.

    Ineligible vertices go into the cover up front; the eligible remainder is
    searched with the two-way edge-branching tree, depth <= (#eligible - k),
    so at most 2**(n-k+1) nodes.
    """
    if k <= 0:
        return _cert(True, (), "VertexCoverNearN", k)
    elig = g.eligible
    m = elig.bit_count()
    if k > m:
        return _cert(False, None, "VertexCoverNearN", k)
    # complement edges among eligible vertices
    cadj = [elig & ~row & ~(1 << v) if elig >> v & 1 else 0 for v, row in enumerate(g.adj)]
    nodes = branches = 0
    stack = [(elig, m - k)]
    while stack:
        rest, budget = stack.pop()
        nodes += 1
        edge = None
        for v in bits(rest):
            hit = cadj[v] & rest
            if hit:
                edge = (v, (hit & -hit).bit_length() - 1)
                break
        if edge is None:
            return _cert(True, bits(rest), "VertexCoverNearN", k, nodes=nodes, branches=branches)
        if budget == 0:
            continue
        v, u = edge
        branches += 1
        stack.append((rest & ~(1 << u), budget - 1))
        stack.append((rest & ~(1 << v), budget - 1))
    return _cert(False, None, "VertexCoverNearN", k, nodes=nodes, branches=branches)


def _color_sort(adj: tuple[int, ...], cand: int) -> tuple[list[int], list[int]]:
    """Greedy sequential colouring; vertices listed by nondecreasing colour."""
    order: list[int] = []
    colors: list[int] = []
    uncolored = cand
    color = 0
    while uncolored:
        color += 1
        q = uncolored
        while q:
            low = q & -q
            v = low.bit_length() - 1
            uncolored ^= low
            q ^= low
            q &= ~adj[v]
            order.append(v)
            colors.append(color)
    return order, colors


def clique_by_branch_and_bound(g: Graph, k: int, budget_ms: float | None = None) -> Certificate:
    """Depth-first clique extension pruned by a greedy-colouring bound.

    Stops at the first clique of size k. With ``budget_ms`` the search may end
    undecided (outcome None).
    """
    if k <= 0:
        return _cert(True, (), "BranchAndBound", k)
    if k > g.eligible.bit_count():
        return _cert(False, None, "BranchAndBound", k)
    adj = g.adj
    deadline = None if budget_ms is None else time.perf_counter() + budget_ms / 1000
    nodes = 0
    clique: list[int] = []
    order, colors = _color_sort(adj, g.eligible)
    # frame: [order, colors, candidates, next index]
    stack = [[order, colors, g.eligible, len(order) - 1]]
    while stack:
        frame = stack[-1]
        order, colors, cand, i = frame
        if i < 0 or len(clique) + colors[i] < k:
            stack.pop()
            if clique and len(clique) >= len(stack):
                clique.pop()
            continue
        nodes += 1
        if deadline is not None and nodes % 256 == 0 and time.perf_counter() > deadline:
            return _cert(None, None, "BranchAndBound", k, nodes=nodes)
        v = order[i]
        frame[3] = i - 1
        frame[2] = cand & ~(1 << v)
        clique.append(v)
        if len(clique) >= k:
            return _cert(True, clique, "BranchAndBound", k, nodes=nodes)
        sub = cand & adj[v]
        if sub:
            so, sc = _color_sort(adj, sub)
            stack.append([so, sc, sub, len(so) - 1])
        else:
            clique.pop()
    return _cert(False, None, "BranchAndBound", k, nodes=nodes)
