"""Detection and reducibility of small 4-faces, stamens and poppies.

A configuration Q is judged against 4-list-assignments of the host: once
the rest of the graph is colored, vertex u of Q keeps at least
``4 - ext(u)`` colours, where ``ext(u)`` counts its neighbours outside Q.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .coloring import (
    ListAssignment,
    SizeCapExceeded,
    count_extensions,
    find_sparse_assignment,
    is_degree_choosable_structural,
    iter_colorings,
    sparse_assignment_exhaustive,
)
from .embedding import EmbeddedGraph, Graph, SubgraphMask, as_graph, connected_components

DEFAULT_STAMEN_VERTICES = 4
CONCRETE_CAP = 12
ABSTRACT_CAP = 10
SCAN_CAP = 10


class NotAPoppy(ValueError):
    pass


@dataclass(frozen=True)
class Stamen:
    """Path from ``root`` to a degree-3 ``tip``; stored root first."""

    path: tuple[int, ...]

    @property
    def root(self) -> int:
        return self.path[0]

    @property
    def tip(self) -> int:
        return self.path[-1]

    @property
    def internal(self) -> tuple[int, ...]:
        return self.path[1:-1]

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset((min(a, b), max(a, b)) for a, b in zip(self.path, self.path[1:]))

    def __len__(self) -> int:
        return len(self.path)


@dataclass(frozen=True)
class Poppy:
    center: int
    stamens: tuple[Stamen, ...]

    @property
    def vertices(self) -> frozenset[int]:
        vs = {self.center}
        for s in self.stamens:
            vs.update(s.path)
        return frozenset(vs)


@dataclass(frozen=True)
class Configuration:
    """Induced subgraph Q of a host with per-vertex external degree.

    ``vertices`` are host ids in increasing order; ``graph`` uses local
    indices into that tuple.
    """

    vertices: tuple[int, ...]
    graph: Graph
    ext: tuple[int, ...]

    @classmethod
    def from_subgraph(cls, g: Graph | EmbeddedGraph, vertices: Iterable[int]) -> "Configuration":
        g = as_graph(g)
        sub, index = g.induced(vertices)
        vs = tuple(sorted(index))
        ext = tuple(g.degree(v) - sub.degree(index[v]) for v in vs)
        return cls(vs, sub, ext)

    @classmethod
    def abstract(cls, graph: Graph, ext: Sequence[int]) -> "Configuration":
        return cls(tuple(range(graph.n)), graph, tuple(ext))

    def local(self, v: int) -> int:
        return self.vertices.index(v)

    def host_degree(self, i: int) -> int:
        return self.graph.degree(i) + self.ext[i]

    def residual_sizes(self, k: int = 4) -> tuple[int, ...]:
        return tuple(k - e for e in self.ext)

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [[self.vertices[a], self.vertices[b]] for a, b in self.graph.edges()],
            "ext": list(self.ext),
        }


@dataclass(frozen=True)
class ReducibilityVerdict:
    reducible: bool
    witness: dict | None = None
    reason: str = ""
    method: str = ""

    def __post_init__(self) -> None:
        if self.reducible != (self.witness is None):
            raise ValueError("a witness is present exactly when the configuration is not reducible")

    def to_json(self) -> dict:
        return {"reducible": self.reducible, "witness": self.witness, "reason": self.reason, "method": self.method}


# -- detection ------------------------------------------------------------------


def _canonical_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    i = cycle.index(min(cycle))
    return tuple(cycle[i:]) + tuple(cycle[:i])


def find_small_4faces(g: EmbeddedGraph, h: SubgraphMask) -> list[tuple[int, ...]]:
    """Facial 4-cycles avoiding H whose vertices all have degree at most four.

    One entry per face, so a 4-cycle bounding two faces is listed twice.
    """
    out = []
    for f in g.faces:
        if f.length != 4:
            continue
        cyc = f.instances
        if len(set(cyc)) != 4:
            continue
        if any(v in h.vertices or g.degree(v) > 4 for v in cyc):
            continue
        out.append(_canonical_cycle(cyc))
    return sorted(out)


def _is_tip(g: Graph, h: SubgraphMask, u: int) -> bool:
    return g.degree(u) == 3 and u not in h.vertices


def _is_internal(g: Graph, h: SubgraphMask, u: int) -> bool:
    return g.degree(u) == 4 and u not in h.vertices


def find_stamens(
    g: Graph | EmbeddedGraph,
    h: SubgraphMask,
    v: int,
    max_vertices: int = DEFAULT_STAMEN_VERTICES,
) -> list[Stamen]:
    """All v-stamens with at most ``max_vertices`` vertices, sorted by vertex sequence."""
    g = as_graph(g)
    found = []
    path = [v]

    def extend() -> None:
        if len(path) == max_vertices:
            return
        for w in sorted(g.adj[path[-1]]):
            if w in path:
                continue
            if _is_tip(g, h, w):
                found.append(Stamen(tuple(path) + (w,)))
            elif _is_internal(g, h, w):
                path.append(w)
                extend()
                path.pop()

    extend()
    return sorted(found, key=lambda s: s.path)


def internally_disjoint(a: Stamen, b: Stamen) -> bool:
    return not (set(a.internal) & set(b.path)) and not (set(b.internal) & set(a.path))


def _max_packing(stamens: list[Stamen]) -> list[Stamen]:
    """Largest pairwise internally disjoint family; fewest vertices, then lexicographic."""
    best: list[Stamen] = []
    best_key: tuple | None = None
    chosen: list[Stamen] = []
    order = sorted(stamens, key=lambda s: (len(s), s.path))

    def key(family: list[Stamen]) -> tuple:
        vs = set()
        for s in family:
            vs.update(s.path)
        return (-len(family), len(vs), [s.path for s in family])

    def rec(i: int) -> None:
        nonlocal best, best_key
        if len(chosen) + (len(order) - i) < len(best):
            return
        if i == len(order):
            k = key(chosen)
            if best_key is None or k < best_key:
                best, best_key = list(chosen), k
            return
        s = order[i]
        if all(internally_disjoint(s, t) for t in chosen):
            chosen.append(s)
            rec(i + 1)
            chosen.pop()
        rec(i + 1)

    rec(0)
    return best


def find_poppies(
    g: Graph | EmbeddedGraph,
    h: SubgraphMask,
    max_vertices: int = DEFAULT_STAMEN_VERTICES,
) -> list[Poppy]:
    g = as_graph(g)
    out = []
    for v in range(g.n):
        if v in h.vertices:
            continue
        packing = _max_packing(find_stamens(g, h, v, max_vertices))
        if len(packing) >= g.degree(v) - 2:
            out.append(Poppy(v, tuple(sorted(packing, key=lambda s: s.path))))
    return out


def stamen_symmetric_difference(g: Graph | EmbeddedGraph, h: SubgraphMask, a: Stamen, b: Stamen) -> Stamen | None:
    """For two stamens from the same root sharing their first edge, the tip-to-tip path
    formed by their symmetric difference, when that path is itself a stamen.
    """
    g = as_graph(g)
    if a.root != b.root or a.path[1] != b.path[1] or a == b:
        return None
    shared = a.edges & b.edges
    if len(shared) != 1:
        return None
    walk = tuple(reversed(a.path[1:])) + b.path[2:]
    if len(set(walk)) != len(walk) or len(walk) < 2:
        return None
    if not _is_tip(g, h, walk[0]):
        return None
    if not all(_is_internal(g, h, w) for w in walk[1:-1]):
        return None
    return Stamen(walk)


# -- reducibility ---------------------------------------------------------------


def _check_q(g: Graph, h: SubgraphMask, q: Iterable[int]) -> frozenset[int]:
    qs = frozenset(q)
    if not qs:
        raise ValueError("a configuration must be non-empty")
    if qs & h.vertices:
        raise ValueError(f"configuration meets H at {sorted(qs & h.vertices)}")
    if any(not 0 <= v < g.n for v in qs):
        raise ValueError("configuration vertex out of range")
    return qs


def check_reducible_concrete(
    g: Graph | EmbeddedGraph,
    h: SubgraphMask,
    q: Iterable[int],
    lists: ListAssignment,
    cap: int = CONCRETE_CAP,
) -> ReducibilityVerdict:
    """Every L-coloring of g - Q must extend to two L-colorings of g."""
    g = as_graph(g)
    qs = _check_q(g, h, q)
    if g.n > cap:
        raise SizeCapExceeded(f"{g.n} vertices exceeds concrete reducibility cap {cap}")
    rest = [v for v in range(g.n) if v not in qs]
    sub, index = g.induced(rest)
    sub_lists = tuple(lists[v] for v in rest)
    for psi in iter_colorings(sub, sub_lists):
        phi = {rest[i]: c for i, c in psi.items()}
        count = count_extensions(g, lists, phi, threshold=2)
        if count.value < 2:
            witness = {
                "remainder_coloring": {str(v): c for v, c in sorted(phi.items())},
                "extensions": count.value,
            }
            return ReducibilityVerdict(False, witness, "remainder coloring with fewer than two extensions", "concrete")
    return ReducibilityVerdict(True, None, "every remainder coloring extends twice", "concrete")


def check_reducible_abstract(
    c: Configuration,
    k: int = 4,
    method: str = "search",
    cap: int = ABSTRACT_CAP,
) -> ReducibilityVerdict:
    """Worst case over residual lists of sizes exactly ``k - ext(u)``.

    ``method="search"`` runs the pruned orbit search; ``"exhaustive"``
    counts colorings for every canonical assignment.  Both quantify over
    the same orbit representatives.
    """
    sizes = c.residual_sizes(k)
    if len(sizes) > cap:
        raise SizeCapExceeded(f"{len(sizes)} configuration vertices exceeds abstract cap {cap}")
    short = [c.vertices[i] for i, s in enumerate(sizes) if s < 1]
    if short:
        witness = {
            "residual_sizes": {str(v): s for v, s in zip(c.vertices, sizes)},
            "residual_lists": None,
            "colorings": 0,
        }
        return ReducibilityVerdict(False, witness, f"residual size below 1 at {short}", "guard")
    if method == "search":
        found = find_sparse_assignment(c.graph, sizes, 2)
    elif method == "exhaustive":
        found = sparse_assignment_exhaustive(c.graph, sizes, 2)
    else:
        raise ValueError(f"unknown method {method!r}")
    if found is None:
        return ReducibilityVerdict(True, None, "every residual assignment has two colorings", method)
    witness = {
        "residual_sizes": {str(v): s for v, s in zip(c.vertices, sizes)},
        "residual_lists": {str(v): sorted(l) for v, l in zip(c.vertices, found)},
        "colorings": count_extensions(c.graph, found).value,
    }
    return ReducibilityVerdict(False, witness, "residual assignment with fewer than two colorings", method)


def _validate_poppy(p: Poppy, c: Configuration) -> None:
    if p.center not in c.vertices:
        raise NotAPoppy(f"center {p.center} not in configuration")
    if not p.vertices <= set(c.vertices):
        raise NotAPoppy("stamen vertices outside the configuration")
    loc = {v: i for i, v in enumerate(c.vertices)}
    for s in p.stamens:
        if s.root != p.center or len(s) < 2 or len(set(s.path)) != len(s.path):
            raise NotAPoppy(f"{s.path} is not a simple path from the center")
        for a, b in zip(s.path, s.path[1:]):
            if not c.graph.has_edge(loc[a], loc[b]):
                raise NotAPoppy(f"{s.path} uses a non-edge ({a}, {b})")
        if c.host_degree(loc[s.tip]) != 3:
            raise NotAPoppy(f"tip {s.tip} does not have degree three")
        if any(c.host_degree(loc[w]) != 4 for w in s.internal):
            raise NotAPoppy(f"{s.path} has an internal vertex of degree other than four")
    for i, a in enumerate(p.stamens):
        for b in p.stamens[i + 1:]:
            if not internally_disjoint(a, b):
                raise NotAPoppy(f"stamens {a.path} and {b.path} share an internal vertex")
    if len(p.stamens) < c.host_degree(loc[p.center]) - 2:
        raise NotAPoppy("too few stamens for the degree of the center")


def poppy_configuration(g: Graph | EmbeddedGraph, p: Poppy) -> Configuration:
    return Configuration.from_subgraph(g, p.vertices)


def verify_poppy_constructive(p: Poppy, c: Configuration, k: int = 4) -> bool:
    """Replay the two-colour argument: two residual colours at the center, then
    each component of Q - center colored from degree-sized residual lists.
    """
    _validate_poppy(p, c)
    sizes = c.residual_sizes(k)
    ci = c.local(p.center)
    if sizes[ci] < 2:
        return False
    rest = [i for i in range(c.graph.n) if i != ci]
    for comp in connected_components(c.graph, rest):
        sub, index = c.graph.induced(comp)
        room = {index[i]: sizes[i] - (1 if c.graph.has_edge(i, ci) else 0) for i in comp}
        if any(room[j] < sub.degree(j) for j in range(sub.n)):
            return False
        slack = any(room[j] > sub.degree(j) for j in range(sub.n))
        # lists of size >= degree with one strict vertex always color;
        # otherwise fall back on the block structure
        if not slack and not is_degree_choosable_structural(sub):
            return False
    return True


def connected_subsets(g: Graph, allowed: Iterable[int], max_size: int) -> list[tuple[int, ...]]:
    """Connected vertex sets inside ``allowed`` with at most ``max_size`` vertices,
    ordered by size then lexicographically.
    """
    allowed = set(allowed)
    level = {frozenset([v]) for v in allowed}
    out = set(level)
    for _ in range(max_size - 1):
        nxt = set()
        for s in level:
            for u in s:
                for w in g.adj[u]:
                    if w in allowed and w not in s:
                        nxt.add(s | {w})
        nxt -= out
        out |= nxt
        level = nxt
    return sorted((tuple(sorted(s)) for s in out), key=lambda t: (len(t), t))


def _scan_one(args) -> ReducibilityVerdict:
    g, h, q, lists = args
    if lists is None:
        return check_reducible_abstract(Configuration.from_subgraph(g, q))
    return check_reducible_concrete(g, h, q, lists)


def scan_reducible_up_to_size(
    g: Graph | EmbeddedGraph,
    h: SubgraphMask,
    max_size: int,
    lists: ListAssignment | None = None,
    jobs: int = 1,
    cap: int = SCAN_CAP,
) -> list[tuple[tuple[int, ...], ReducibilityVerdict]]:
    """Verdict for every connected Q disjoint from H with |Q| <= max_size.

    Abstract (worst-case 4-list) verdicts unless concrete ``lists`` are given.
    """
    g = as_graph(g)
    if max_size > cap:
        raise SizeCapExceeded(f"scan size {max_size} exceeds cap {cap}")
    subsets = connected_subsets(g, [v for v in range(g.n) if v not in h.vertices], max_size)
    tasks = [(g, h, q, lists) for q in subsets]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            verdicts = list(pool.map(_scan_one, tasks, chunksize=8))
    else:
        verdicts = [_scan_one(t) for t in tasks]
    return list(zip(subsets, verdicts))


def reducible_found(scan: list[tuple[tuple[int, ...], ReducibilityVerdict]]) -> list[tuple[int, ...]]:
    return [q for q, v in scan if v.reducible]
