"""Simple graphs, the gadget constructions, and the graph file format."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable


@dataclass(frozen=True)
class SimpleGraph:
    """Loop-free undirected graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge ({u}, {v}): need 0 <= u < v < n")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        es = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            es.add((min(u, v), max(u, v)))
        return cls(n, frozenset(es))

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def neighbours(self, v: int) -> set[int]:
        return {b if a == v else a for a, b in self.edges if v in (a, b)}

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def complement(self) -> "SimpleGraph":
        return SimpleGraph(
            self.n, frozenset(e for e in combinations(range(self.n), 2) if e not in self.edges)
        )

    def add_isolated(self, count: int = 1) -> "SimpleGraph":
        return SimpleGraph(self.n + count, self.edges)

    def induced(self, vertices: Iterable[int]) -> "SimpleGraph":
        vs = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(vs)}
        return SimpleGraph.from_edges(
            len(vs), ((pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos)
        )

    def __str__(self) -> str:
        return f"{self.n} {len(self.edges)}\n" + "".join(f"{u} {v}\n" for u, v in sorted(self.edges))


def complete_graph(k: int) -> SimpleGraph:
    return SimpleGraph(k, frozenset(combinations(range(k), 2)))


def empty_graph(k: int) -> SimpleGraph:
    return SimpleGraph(k, frozenset())


def path_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def star_graph(leaves: int) -> SimpleGraph:
    return SimpleGraph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def build_gadget(tau: int, k: int) -> SimpleGraph:
    """The ``k``-clique when ``tau`` is 1, the ``k``-vertex edgeless graph when 0."""
    if k < 0:
        raise ValueError("gadget size must be non-negative")
    return complete_graph(k) if tau else empty_graph(k)


def build_J(pi: int, tau: int, k: int, g: SimpleGraph) -> SimpleGraph:
    """``g`` plus a gadget on vertices ``g.n..g.n+k-1``, joined to every vertex
    of ``g`` when ``pi`` is 1."""
    n = g.n
    edges = set(g.edges)
    if tau:
        edges.update((n + i, n + j) for i, j in combinations(range(k), 2))
    if pi:
        edges.update((v, n + i) for v in range(n) for i in range(k))
    return SimpleGraph(n + k, frozenset(edges))


# bipartite graphs -----------------------------------------------------------

@dataclass(frozen=True)
class Bipartition:
    U: frozenset[int]
    V: frozenset[int]

    def check(self, g: SimpleGraph) -> None:
        if self.U & self.V or (self.U | self.V) != set(range(g.n)):
            raise ValueError("bipartition must split the vertex set into two disjoint parts")
        for u, v in g.edges:
            if (u in self.U) == (v in self.U):
                raise ValueError(f"edge ({u}, {v}) lies inside one side of the bipartition")


def bipartition(g: SimpleGraph) -> Bipartition:
    """A 2-colouring of ``g`` (vertex 0 of each component goes to ``U``)."""
    colour: dict[int, int] = {}
    for start in range(g.n):
        if start in colour:
            continue
        colour[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w in g.neighbours(v):
                if w not in colour:
                    colour[w] = 1 - colour[v]
                    stack.append(w)
                elif colour[w] == colour[v]:
                    raise ValueError("graph is not bipartite")
    return Bipartition(
        frozenset(v for v, c in colour.items() if c == 0),
        frozenset(v for v, c in colour.items() if c == 1),
    )


def is_connected(g: SimpleGraph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in g.neighbours(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def build_lemma7_Gk(g: SimpleGraph, bip: Bipartition, k: int) -> SimpleGraph:
    """Add a ``k``-clique ``W`` joined completely to the ``V`` side."""
    bip.check(g)
    n = g.n
    w = range(n, n + k)
    edges = set(g.edges)
    edges.update(combinations(w, 2))
    edges.update((v, x) for v in bip.V for x in w)
    return SimpleGraph(n + k, frozenset(edges))


@dataclass(frozen=True)
class Hand3Layout:
    graph: SimpleGraph
    U: tuple[int, ...]
    V: tuple[int, ...]
    W: tuple[int, ...]
    x_c: int
    x_d: int


def build_hand3_layout(g: SimpleGraph, bip: Bipartition, k: int) -> Hand3Layout:
    """Vertices ``U, V`` (from ``g``), then ``W`` (``k`` new), then ``x_c, x_d``.

    Edges: both x's to all of ``V`` and ``W``; ``V`` to ``W``; ``V`` a clique;
    ``x_c`` to ``U``; and ``U``-``V`` pairs that are *not* edges of ``g``.
    """
    bip.check(g)
    n = g.n
    U = tuple(sorted(bip.U))
    V = tuple(sorted(bip.V))
    W = tuple(range(n, n + k))
    x_c, x_d = n + k, n + k + 1
    edges = set()
    for x in (x_c, x_d):
        edges.update((y, x) for y in V + W)
    edges.update((v, w) for v in V for w in W)
    edges.update(combinations(V, 2))
    edges.update((u, x_c) for u in U)
    edges.update((min(u, v), max(u, v)) for u in U for v in V if not g.has_edge(u, v))
    return Hand3Layout(SimpleGraph.from_edges(n + k + 2, edges), U, V, W, x_c, x_d)


def build_hand3_Gk(g: SimpleGraph, bip: Bipartition, k: int) -> SimpleGraph:
    return build_hand3_layout(g, bip, k).graph


# file formats -----------------------------------------------------------------

class GraphFormatError(ValueError):
    pass


def parse_graph(text: str) -> SimpleGraph:
    """Line 1 ``"n m"``, then ``m`` lines ``"u v"`` with ``0 <= u < v < n``."""
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphFormatError("line 1: missing header 'n m'")
    lineno, header = lines[0]
    try:
        n, m = map(int, header.split())
    except ValueError:
        raise GraphFormatError(f"line {lineno}: header must be two integers 'n m'") from None
    if n < 0 or m < 0:
        raise GraphFormatError(f"line {lineno}: negative counts")
    body = lines[1:]
    if len(body) != m:
        raise GraphFormatError(f"header promises {m} edges but {len(body)} edge lines follow")
    edges = set()
    for lineno, ln in body:
        try:
            u, v = map(int, ln.split())
        except ValueError:
            raise GraphFormatError(f"line {lineno}: expected 'u v'") from None
        if u == v:
            raise GraphFormatError(f"line {lineno}: loop edge at vertex {u}")
        if not (0 <= u < v < n):
            raise GraphFormatError(f"line {lineno}: edge must satisfy 0 <= u < v < {n}")
        if (u, v) in edges:
            raise GraphFormatError(f"line {lineno}: duplicate edge ({u}, {v})")
        edges.add((u, v))
    return SimpleGraph(n, frozenset(edges))


def parse_bipartition(text: str, g: SimpleGraph) -> Bipartition:
    """One line listing the ``U`` vertices; everything else is ``V``."""
    first = next((ln for ln in text.splitlines() if ln.strip()), "")
    try:
        U = frozenset(int(t) for t in first.replace(",", " ").split())
    except ValueError:
        raise GraphFormatError("line 1: expected vertex numbers") from None
    bip = Bipartition(U, frozenset(range(g.n)) - U)
    bip.check(g)
    return bip
