"""Finite simple graphs on the vertex set 1..n."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator

from .errors import InputError


def _edge(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """Undirected loop-free graph; vertices are 1-based indices ``1..n``."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 1:
            raise InputError(f"graph needs at least one vertex, got n={n}")
        normalized = set()
        for i, j in edges:
            if i == j:
                raise InputError(f"loop at vertex {i}")
            if not (1 <= i <= n and 1 <= j <= n):
                raise InputError(f"edge {{{i},{j}}} out of range 1..{n}")
            e = _edge(i, j)
            if e in normalized:
                raise InputError(f"duplicate edge {{{i},{j}}}")
            normalized.add(e)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(normalized))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def adjacent(self, i: int, j: int) -> bool:
        return _edge(i, j) in self.edges

    def neighbours(self, i: int) -> frozenset[int]:
        return frozenset(j for j in self.vertices if j != i and self.adjacent(i, j))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"

    def to_text(self) -> str:
        lines = [f"n {self.n}"]
        lines += [f"e {i} {j}" for i, j in self.sorted_edges()]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> Graph:
        """Read the ``n <count>`` / ``e <i> <j>`` text format."""
        n = None
        edges: list[tuple[int, int]] = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            try:
                if n is None:
                    if fields[0] != "n" or len(fields) != 2:
                        raise InputError(f"line {lineno}: expected 'n <count>'")
                    n = int(fields[1])
                elif fields[0] == "e" and len(fields) == 3:
                    edges.append((int(fields[1]), int(fields[2])))
                else:
                    raise InputError(f"line {lineno}: expected 'e <i> <j>'")
            except ValueError as exc:
                if isinstance(exc, InputError):
                    raise
                raise InputError(f"line {lineno}: bad integer in {raw!r}") from None
        if n is None:
            raise InputError("graph file has no 'n <count>' line")
        try:
            return cls(n, edges)
        except InputError as exc:
            raise InputError(f"invalid graph: {exc}") from None

    @classmethod
    def load(cls, path: str | Path) -> Graph:
        return cls.parse(Path(path).read_text())

    # convenience constructors
    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, combinations(range(1, n + 1), 2))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls(n, ((i, i + 1) for i in range(1, n)))


def complement(g: Graph) -> Graph:
    return Graph(g.n, (e for e in combinations(g.vertices, 2) if e not in g.edges))


def connected_components(g: Graph, within: Iterable[int] | None = None) -> list[frozenset[int]]:
    """Components sorted by their smallest vertex.

    With ``within``, components of the induced subgraph on that vertex set are
    returned, labelled by original indices.
    """
    pool = set(g.vertices if within is None else within)
    comps = []
    for start in sorted(pool):
        if start not in pool:
            continue
        pool.discard(start)
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in list(pool):
                if g.adjacent(v, w):
                    pool.discard(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) == 1


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph re-indexed by ascending original index.

    Returns the new graph and ``index_map`` where ``index_map[k-1]`` is the
    original vertex of new vertex ``k``.
    """
    vs = sorted(set(vertices))
    for v in vs:
        if not 1 <= v <= g.n:
            raise InputError(f"vertex {v} out of range 1..{g.n}")
    if not vs:
        raise InputError("induced subgraph on an empty vertex set")
    pos = {v: k for k, v in enumerate(vs, 1)}
    edges = [(pos[i], pos[j]) for i, j in g.edges if i in pos and j in pos]
    return Graph(len(vs), edges), vs


def adjacent_to_all(g: Graph, i: int, s: Iterable[int]) -> bool:
    s = set(s)
    if i in s:
        raise InputError(f"vertex {i} belongs to the set it is tested against")
    return all(g.adjacent(i, j) for j in s)


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labelled graph on ``n`` vertices, in bitmask order."""
    pairs = list(combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, (p for k, p in enumerate(pairs) if mask >> k & 1))
