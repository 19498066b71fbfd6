"""Simple graphs with orientable combinatorial embeddings.

An embedding is given by a rotation system: for each vertex, the cyclic
order of its neighbours.  Faces are recovered by tracing darts with the
rule ``(a, b) -> (b, succ_b(a))``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class EmbeddingError(ValueError):
    """Base class for malformed graph or embedding input."""


class InconsistentRotation(EmbeddingError):
    pass


class NonSimpleGraph(EmbeddingError):
    pass


Dart = tuple[int, int]
Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Abstract simple graph on vertices ``0..n-1``."""

    n: int
    adj: tuple[frozenset[int], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise NonSimpleGraph(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise EmbeddingError(f"edge ({u}, {v}) out of range for n={n}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(frozenset(s) for s in nbrs))

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> list[Edge]:
        return sorted(_edge(u, v) for u in range(self.n) for v in self.adj[u] if u < v)

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        """Induced subgraph on ``vertices`` relabelled densely in sorted order."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        adj = tuple(frozenset(index[w] for w in self.adj[v] if w in index) for v in keep)
        return Graph(len(keep), adj), index

    def without_edge(self, u: int, v: int) -> "Graph":
        if v not in self.adj[u]:
            raise EmbeddingError(f"no edge ({u}, {v})")
        adj = list(self.adj)
        adj[u] = adj[u] - {v}
        adj[v] = adj[v] - {u}
        return Graph(self.n, tuple(adj))

    def is_connected(self) -> bool:
        return len(connected_components(self)) <= 1


def as_graph(g: "Graph | EmbeddedGraph") -> Graph:
    return g.graph if isinstance(g, EmbeddedGraph) else g


@dataclass(frozen=True)
class SubgraphMask:
    """Vertex and edge selection over a host graph (used for H, Q, G')."""

    vertices: frozenset[int] = frozenset()
    edges: frozenset[Edge] = frozenset()

    def __post_init__(self) -> None:
        edges = frozenset(_edge(*e) for e in self.edges)
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", edges)
        for u, v in edges:
            if u not in self.vertices or v not in self.vertices:
                raise EmbeddingError(f"edge ({u}, {v}) of subgraph has an endpoint outside its vertex set")

    @classmethod
    def induced(cls, g: "Graph | EmbeddedGraph", vertices: Iterable[int]) -> "SubgraphMask":
        g = as_graph(g)
        vs = frozenset(vertices)
        return cls(vs, frozenset(e for e in g.edges() if e[0] in vs and e[1] in vs))

    def check_within(self, g: "Graph | EmbeddedGraph") -> None:
        g = as_graph(g)
        for v in self.vertices:
            if not 0 <= v < g.n:
                raise EmbeddingError(f"subgraph vertex {v} out of range")
        for u, v in self.edges:
            if not g.has_edge(u, v):
                raise EmbeddingError(f"subgraph edge ({u}, {v}) is not an edge of the host graph")

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class FaceWalk:
    """A closed boundary walk.  ``darts`` is empty only for the face of an isolated vertex."""

    darts: tuple[Dart, ...]
    isolated: int | None = None

    @property
    def length(self) -> int:
        return len(self.darts)

    def __len__(self) -> int:
        return len(self.darts)

    @property
    def instances(self) -> tuple[int, ...]:
        """Vertex occurrences along the walk, one per dart tail."""
        if self.isolated is not None:
            return (self.isolated,)
        return tuple(a for a, _ in self.darts)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.instances)


@dataclass(frozen=True)
class EmbeddedGraph:
    n: int
    rotation: tuple[tuple[int, ...], ...]
    _pos: tuple[dict[int, int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_pos", tuple({w: i for i, w in enumerate(r)} for r in self.rotation))

    @cached_property
    def graph(self) -> Graph:
        return Graph(self.n, tuple(frozenset(r) for r in self.rotation))

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def darts(self) -> Iterator[Dart]:
        for a in range(self.n):
            for b in self.rotation[a]:
                yield (a, b)

    def next_dart(self, d: Dart) -> Dart:
        a, b = d
        rot = self.rotation[b]
        return (b, rot[(self._pos[b][a] + 1) % len(rot)])

    @property
    def num_edges(self) -> int:
        return sum(len(r) for r in self.rotation) // 2

    @cached_property
    def faces(self) -> tuple[FaceWalk, ...]:
        return tuple(trace_faces(self))


def build_embedding(n: int, rotations: Sequence[Sequence[int]]) -> EmbeddedGraph:
    """Validate a rotation system and wrap it."""
    if n < 0 or len(rotations) != n:
        raise InconsistentRotation(f"expected {n} rotations, got {len(rotations)}")
    rots = tuple(tuple(int(w) for w in r) for r in rotations)
    for v, r in enumerate(rots):
        if v in r:
            raise NonSimpleGraph(f"loop at vertex {v}")
        if len(set(r)) != len(r):
            raise NonSimpleGraph(f"parallel edges at vertex {v}")
        for w in r:
            if not 0 <= w < n:
                raise InconsistentRotation(f"vertex {v} lists unknown neighbour {w}")
    for v, r in enumerate(rots):
        for w in r:
            if v not in rots[w]:
                raise InconsistentRotation(f"dart ({v}, {w}) has no reverse dart ({w}, {v})")
    return EmbeddedGraph(n, rots)


def trace_faces(g: EmbeddedGraph) -> list[FaceWalk]:
    seen: set[Dart] = set()
    faces = []
    for start in g.darts():
        if start in seen:
            continue
        walk = []
        d = start
        while d not in seen:
            seen.add(d)
            walk.append(d)
            d = g.next_dart(d)
        faces.append(FaceWalk(tuple(walk)))
    # an isolated vertex sits in a face of its own
    for v in range(g.n):
        if not g.rotation[v]:
            faces.append(FaceWalk((), isolated=v))
    return faces


def euler_characteristic(g: EmbeddedGraph) -> int:
    return g.n - g.num_edges + len(g.faces)


def genus(g: EmbeddedGraph) -> int:
    """Orientable genus of the surface hosting every component (sum over components)."""
    total = 0
    for comp in connected_components(g.graph):
        sub, _ = delete_vertices(g, set(range(g.n)) - set(comp))
        chi = euler_characteristic(sub)
        total += (2 - chi) // 2
    return total


def euler_genus(g: EmbeddedGraph) -> int:
    return 2 * genus(g)


def has_triangle(g: "Graph | EmbeddedGraph") -> bool:
    g = as_graph(g)
    for u in range(g.n):
        for v in g.adj[u]:
            if v > u and any(w > v for w in g.adj[u] & g.adj[v]):
                return True
    return False


def delete_vertices(g: EmbeddedGraph, s: Iterable[int]) -> tuple[EmbeddedGraph, dict[int, int]]:
    """Remove ``s``; returns the embedded subgraph and the old-to-new index map."""
    drop = set(s)
    keep = [v for v in range(g.n) if v not in drop]
    index = {v: i for i, v in enumerate(keep)}
    rots = tuple(tuple(index[w] for w in g.rotation[v] if w in index) for v in keep)
    return EmbeddedGraph(len(keep), rots), index


def connected_components(g: "Graph | EmbeddedGraph", within: Iterable[int] | None = None) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by smallest vertex."""
    g = as_graph(g)
    allowed = set(range(g.n)) if within is None else set(within)
    seen: set[int] = set()
    comps = []
    for s in sorted(allowed):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def components(g: EmbeddedGraph, h: SubgraphMask) -> list[tuple[EmbeddedGraph, SubgraphMask, dict[int, int]]]:
    """Split ``g`` into components, restricting ``h`` to each.

    Each entry carries the old-to-new vertex map of its component.
    """
    out = []
    for comp in connected_components(g):
        sub, index = delete_vertices(g, set(range(g.n)) - set(comp))
        hv = frozenset(index[v] for v in h.vertices if v in index)
        he = frozenset((index[a], index[b]) for a, b in h.edges if a in index and b in index)
        out.append((sub, SubgraphMask(hv, he), index))
    return out


def blocks(g: "Graph | EmbeddedGraph") -> list[frozenset[int]]:
    """Biconnected components (bridges and isolated vertices included) as vertex sets.

    Iterative Hopcroft-Tarjan over an edge stack.
    """
    g = as_graph(g)
    disc = [-1] * g.n
    low = [0] * g.n
    out: list[frozenset[int]] = []
    timer = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        if not g.adj[root]:
            disc[root] = timer
            timer += 1
            out.append(frozenset([root]))
            continue
        disc[root] = low[root] = timer
        timer += 1
        edge_stack: list[Edge] = []
        stack = [(root, -1, iter(sorted(g.adj[root])))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    edge_stack.append((v, w))
                    stack.append((w, v, iter(sorted(g.adj[w]))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    block: set[int] = set()
                    while True:
                        a, b = edge_stack.pop()
                        block.update((a, b))
                        if (a, b) == (u, v):
                            break
                    out.append(frozenset(block))
    return out


def block_edges(g: "Graph | EmbeddedGraph", block: frozenset[int]) -> list[Edge]:
    g = as_graph(g)
    return [e for e in g.edges() if e[0] in block and e[1] in block]


def distances_from(g: "Graph | EmbeddedGraph", source: int) -> dict[int, int]:
    g = as_graph(g)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def rotation_from_coordinates(positions: Sequence[tuple[float, float]], edges: Iterable[Sequence[int]]) -> list[list[int]]:
    """Counter-clockwise neighbour order from a straight-line drawing."""
    n = len(positions)
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)

    def angle(v: int, w: int) -> float:
        (x0, y0), (x1, y1) = positions[v], positions[w]
        return math.atan2(y1 - y0, x1 - x0)

    return [sorted(nbrs[v], key=lambda w: angle(v, w)) for v in range(n)]


def sorted_rotation(g: Graph) -> list[list[int]]:
    """Neighbours in increasing order; any rotation system is a valid orientable embedding."""
    return [sorted(g.adj[v]) for v in range(g.n)]
