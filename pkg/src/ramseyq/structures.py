"""Finite relational models, their clique-side graph view, and file formats.

Vertex sets are Python ints used as bitsets: bit ``v`` is vertex ``v``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.line = line
        where = ""
        if path:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


def bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Model:
    """A structure (M, S) with universe {0, ..., size-1} and binary relation S."""

    size: int
    relation: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("model size must be nonnegative")
        for a, b in self.relation:
            if not (0 <= a < self.size and 0 <= b < self.size):
                raise ValueError(f"pair ({a}, {b}) outside universe of size {self.size}")

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[tuple[int, int]]) -> Model:
        pairs = list(pairs)
        rel = frozenset(pairs)
        if len(rel) != len(pairs):
            raise ValueError("duplicate pairs in relation")
        return cls(size, rel)

    def homogeneous(self, subset: Iterable[int]) -> bool:
        """True iff S(a, b) holds for all a, b in the subset (a = b included)."""
        s = list(subset)
        return all((a, b) in self.relation for a in s for b in s)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with a set of vertices eligible for cliques."""

    size: int
    adj: tuple[int, ...]
    eligible: int

    def __post_init__(self):
        if len(self.adj) != self.size:
            raise ValueError("adjacency rows must match size")
        full = (1 << self.size) - 1
        if self.eligible & ~full:
            raise ValueError("eligible vertices outside the vertex set")
        for v, row in enumerate(self.adj):
            if row & ~full or row >> v & 1:
                raise ValueError(f"bad adjacency row for vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at {{{u}, {v}}}")

    @classmethod
    def _trusted(cls, size: int, adj: tuple[int, ...], eligible: int) -> Graph:
        """Construct without the O(edges) symmetry check; callers guarantee it."""
        g = object.__new__(cls)
        object.__setattr__(g, "size", size)
        object.__setattr__(g, "adj", adj)
        object.__setattr__(g, "eligible", eligible)
        return g

    @classmethod
    def from_edges(cls, size: int, edges: Iterable[tuple[int, int]], eligible: int | None = None) -> Graph:
        adj = [0] * size
        for a, b in edges:
            if a == b:
                raise ValueError(f"self-loop at {a}")
            if not (0 <= a < size and 0 <= b < size):
                raise ValueError(f"edge ({a}, {b}) outside vertex range")
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        if eligible is not None and eligible & ~((1 << size) - 1):
            raise ValueError("eligible vertices outside the vertex set")
        return cls._trusted(size, tuple(adj), (1 << size) - 1 if eligible is None else eligible)

    @property
    def all_vertices(self) -> int:
        return (1 << self.size) - 1

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.adj[a] >> b & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.size) for b in bits(self.adj[a] >> (a + 1) << (a + 1))]

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def is_clique(self, vertices: Iterable[int]) -> bool:
        """Eligible and pairwise adjacent."""
        vs = list(vertices)
        if len(set(vs)) != len(vs):
            return False
        return all(self.eligible >> v & 1 for v in vs) and all(
            self.has_edge(a, b) for a, b in combinations(vs, 2)
        )

    def __repr__(self):
        elig = "all" if self.eligible == self.all_vertices else sorted(bits(self.eligible))
        return f"Graph(size={self.size}, edges={self.edges()}, eligible={elig})"


def model_to_graph(m: Model, loops_free: bool = False) -> Graph:
    """Graph whose eligible cliques are exactly the homogeneous sets of m.

    Vertex a is eligible iff S(a, a); {a, b} is an edge iff S(a, b) and S(b, a).
    With ``loops_free`` every vertex is eligible, for relations that encode
    simple graphs without the diagonal.
    """
    adj = [0] * m.size
    eligible = (1 << m.size) - 1 if loops_free else 0
    for a, b in m.relation:
        if a == b:
            eligible |= 1 << a
        elif (b, a) in m.relation:
            adj[a] |= 1 << b
    return Graph._trusted(m.size, tuple(adj), eligible)


def graph_to_model(g: Graph) -> Model:
    """Inverse of model_to_graph (without ``loops_free``)."""
    pairs = {(v, v) for v in bits(g.eligible)}
    for a, b in g.edges():
        pairs.add((a, b))
        pairs.add((b, a))
    return Model(g.size, frozenset(pairs))


def add_vertices(g: Graph, universal: int = 0, isolated: int = 0) -> Graph:
    """Append `universal` vertices adjacent to everything before them and to
    each other, then `isolated` vertices with no edges. All new vertices are
    eligible."""
    if universal < 0 or isolated < 0:
        raise ValueError("vertex counts must be nonnegative")
    n = g.size
    n_u = n + universal
    new_bits = ((1 << universal) - 1) << n
    adj = [row | new_bits for row in g.adj]
    below = (1 << n_u) - 1
    for v in range(n, n_u):
        adj.append(below ^ (1 << v))
    adj.extend([0] * isolated)
    eligible = g.eligible | (((1 << (universal + isolated)) - 1) << n)
    return Graph._trusted(n_u + isolated, tuple(adj), eligible)


def complement(g: Graph) -> Graph:
    full = g.all_vertices
    adj = tuple(full ^ row ^ (1 << v) for v, row in enumerate(g.adj))
    return Graph._trusted(g.size, adj, g.eligible)


def induced(g: Graph, vertices: int) -> Graph:
    """Subgraph on the given vertex mask, keeping original numbering."""
    adj = tuple(row & vertices if vertices >> v & 1 else 0 for v, row in enumerate(g.adj))
    return Graph._trusted(g.size, adj, g.eligible & vertices)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph._trusted(n, tuple(full ^ (1 << v) for v in range(n)), full)


def empty_graph(n: int) -> Graph:
    return Graph._trusted(n, (0,) * n, (1 << n) - 1)


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)] if n > 2 else [])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


# Random instances. The generator is Python's `random.Random` (Mersenne
# Twister, MT19937) seeded explicitly; pairs are visited in lexicographic order.


def gnp(n: int, p: float, seed: int | random.Random) -> Graph:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def planted_clique(n: int, p: float, k: int, seed: int | random.Random) -> tuple[Graph, tuple[int, ...]]:
    """G(n, p) plus a clique on k vertices chosen uniformly at random."""
    if k > n:
        raise ValueError("planted clique larger than the graph")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    g = gnp(n, p, rng)
    planted = tuple(sorted(rng.sample(range(n), k)))
    return Graph.from_edges(n, g.edges() + list(combinations(planted, 2))), planted


def random_model(n: int, p: float, seed: int | random.Random, p_loop: float = 0.8) -> Model:
    """Random relation: each ordered off-diagonal pair with probability p,
    each diagonal pair with probability p_loop."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    pairs = set()
    for a in range(n):
        for b in range(n):
            if rng.random() < (p_loop if a == b else p):
                pairs.add((a, b))
    return Model(n, frozenset(pairs))


# File formats


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        yield lineno, raw.strip()


def _ints(fields: list[str], lineno: int, path) -> list[int]:
    try:
        return [int(x) for x in fields]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(fields)!r}", lineno, path) from None


def parse_dimacs(text: str, path: str | None = None) -> Graph:
    """DIMACS edge format: ``c`` comments, ``p edge N M``, ``e U V`` (1-based)."""
    n = None
    declared_m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, line in _lines(text):
        if not line or line[0] == "c":
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise FormatError("second problem line", lineno, path)
            if len(fields) != 4 or fields[1] not in ("edge", "col"):
                raise FormatError(f"malformed problem line {line!r}", lineno, path)
            n, declared_m = _ints(fields[2:], lineno, path)
            if n < 0 or declared_m < 0:
                raise FormatError("negative counts", lineno, path)
        elif fields[0] == "e":
            if n is None:
                raise FormatError("edge before problem line", lineno, path)
            if len(fields) != 3:
                raise FormatError(f"malformed edge line {line!r}", lineno, path)
            u, v = _ints(fields[1:], lineno, path)
            if not (1 <= u <= n and 1 <= v <= n):
                raise FormatError(f"vertex id out of range 1..{n}", lineno, path)
            if u == v:
                raise FormatError(f"self-loop at vertex {u}", lineno, path)
            key = (min(u, v) - 1, max(u, v) - 1)
            if key in seen:
                raise FormatError(f"duplicate edge {u} {v}", lineno, path)
            seen.add(key)
            edges.append(key)
        else:
            raise FormatError(f"unknown line type {fields[0]!r}", lineno, path)
    if n is None:
        raise FormatError("missing problem line", None, path)
    if declared_m != len(edges):
        raise FormatError(f"problem line declares {declared_m} edges, found {len(edges)}", None, path)
    return Graph.from_edges(n, edges)


def format_dimacs(g: Graph, comment: str | None = None) -> str:
    """DIMACS text for g. Eligibility cannot be expressed, so every vertex must be eligible."""
    if g.eligible != g.all_vertices:
        raise ValueError("DIMACS cannot record ineligible vertices; write the model format instead")
    out = []
    if comment:
        out.extend(f"c {line}" for line in comment.splitlines())
    edges = g.edges()
    out.append(f"p edge {g.size} {len(edges)}")
    out.extend(f"e {a + 1} {b + 1}" for a, b in edges)
    return "\n".join(out) + "\n"


def parse_model(text: str, path: str | None = None) -> Model:
    """Model format: ``n SIZE`` then ``S A B`` lines (0-based), ``#`` comments."""
    size = None
    pairs: set[tuple[int, int]] = set()
    for lineno, line in _lines(text):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "n":
            if size is not None:
                raise FormatError("second size line", lineno, path)
            if len(fields) != 2:
                raise FormatError(f"malformed size line {line!r}", lineno, path)
            (size,) = _ints(fields[1:], lineno, path)
            if size < 0:
                raise FormatError("negative size", lineno, path)
        elif fields[0] == "S":
            if size is None:
                raise FormatError("pair before size line", lineno, path)
            if len(fields) != 3:
                raise FormatError(f"malformed pair line {line!r}", lineno, path)
            a, b = _ints(fields[1:], lineno, path)
            if not (0 <= a < size and 0 <= b < size):
                raise FormatError(f"element out of range 0..{size - 1}", lineno, path)
            if (a, b) in pairs:
                raise FormatError(f"duplicate pair {a} {b}", lineno, path)
            pairs.add((a, b))
        else:
            raise FormatError(f"unknown line type {fields[0]!r}", lineno, path)
    if size is None:
        raise FormatError("missing size line", None, path)
    return Model(size, frozenset(pairs))


def format_model(m: Model, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"n {m.size}")
    out.extend(f"S {a} {b}" for a, b in sorted(m.relation))
    return "\n".join(out) + "\n"


def load_graph(path: str | Path) -> Graph:
    return parse_dimacs(Path(path).read_text(encoding="utf-8"), str(path))


def load_model(path: str | Path) -> Model:
    return parse_model(Path(path).read_text(encoding="utf-8"), str(path))


def write_graph(g: Graph, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_dimacs(g, comment), encoding="utf-8")


def write_model(m: Model, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_model(m, comment), encoding="utf-8")
