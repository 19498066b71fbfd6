"""Desk-scale checks of the exponential counting statements.

Bounds of the form ``2**(eps*(N - alpha*(g + |V(H)|)))`` are compared
against integer counts without floating point: with exponent ``p/q >= 0``
the test is ``count**q >= 2**p``; a negative exponent makes the bound
smaller than one, so any positive count meets it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .coloring import (
    ImproperPrecoloring,
    ListAssignment,
    Precoloring,
    SizeCapExceeded,
    count_extensions,
    iter_colorings,
)
from .configurations import check_reducible_concrete
from .discharging import DischargeParams, VertexBound, fmt, vertex_bound_from_charges
from .embedding import (
    EmbeddedGraph,
    Graph,
    SubgraphMask,
    as_graph,
    components,
    euler_characteristic,
    genus,
    has_triangle,
)

DEFAULT_EPSILON = Fraction(1, 8)
DEFAULT_ALPHA = Fraction(130)
COUNT_CAP = 12
CRITICALITY_CAP = 7


class HypothesisViolated(ValueError):
    pass


class PreconditionFailed(ValueError):
    pass


@dataclass(frozen=True)
class CriticalityParams:
    epsilon: Fraction = DEFAULT_EPSILON
    alpha: Fraction = DEFAULT_ALPHA

    def __post_init__(self) -> None:
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.epsilon < 0 or self.alpha < 0:
            raise ValueError("epsilon and alpha must be non-negative")

    @property
    def small_epsilon(self) -> bool:
        return self.epsilon <= DEFAULT_EPSILON

    @property
    def default_constants(self) -> bool:
        return self.epsilon == DEFAULT_EPSILON and self.alpha == DEFAULT_ALPHA

    def exponent(self, n: int, g: Fraction | int, h_size: int) -> Fraction:
        return self.epsilon * (n - self.alpha * (g + h_size))


def meets_bound(count: int, exponent: Fraction) -> bool:
    """``count >= 2**exponent`` decided in integers."""
    exponent = Fraction(exponent)
    if count <= 0:
        return False
    if exponent <= 0:
        return True
    return count ** exponent.denominator >= 2 ** exponent.numerator


@dataclass(frozen=True)
class BoundReport:
    n: int
    genus: int
    h_size: int
    count: int
    exponent: Fraction
    passed: bool
    default_constants: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "genus": self.genus,
            "h_size": self.h_size,
            "count": self.count,
            "exponent": fmt(self.exponent),
            "passed": self.passed,
            "default_constants": self.default_constants,
        }


def _h_graph(g: Graph, h: SubgraphMask) -> tuple[Graph, list[int]]:
    verts = sorted(h.vertices)
    index = {v: i for i, v in enumerate(verts)}
    return Graph.from_edges(len(verts), [(index[a], index[b]) for a, b in h.edges]), verts


def h_colorings(g: Graph | EmbeddedGraph, h: SubgraphMask, lists: ListAssignment) -> Iterator[dict[int, int]]:
    """L-colorings of H (proper on the edges of H only)."""
    g = as_graph(g)
    hg, verts = _h_graph(g, h)
    for psi in iter_colorings(hg, tuple(lists[v] for v in verts)):
        yield {verts[i]: c for i, c in psi.items()}


def safe_count(g: Graph, lists: ListAssignment, phi: Precoloring, threshold: int | None = None) -> int:
    """Count extensions, treating a precoloring that clashes on an edge of ``g`` as zero."""
    try:
        return count_extensions(g, lists, phi, threshold).value
    except ImproperPrecoloring:
        if any(c not in lists[v] for v, c in phi.items()):
            raise
        return 0


def _require_proper_subgraph(g: Graph, h: SubgraphMask) -> None:
    h.check_within(g)
    if len(h.vertices) == g.n and len(h.edges) == g.num_edges:
        raise HypothesisViolated("H must be a proper subgraph of G")


def main_bound_check(
    g: EmbeddedGraph,
    h: SubgraphMask,
    lists: ListAssignment,
    phi: Precoloring,
    params: CriticalityParams = CriticalityParams(),
    cap: int = COUNT_CAP,
) -> BoundReport:
    graph = g.graph
    if graph.n > cap:
        raise SizeCapExceeded(f"{graph.n} vertices exceeds counting cap {cap}")
    if has_triangle(graph):
        raise HypothesisViolated("G contains a triangle")
    _require_proper_subgraph(graph, h)
    short = [v for v in range(graph.n) if len(lists[v]) < 4]
    if short:
        raise HypothesisViolated(f"lists smaller than four at vertices {short}")
    if set(phi) != set(h.vertices):
        raise HypothesisViolated("the precoloring must be defined exactly on V(H)")
    for v, c in phi.items():
        if c not in lists[v]:
            raise HypothesisViolated(f"precoloring uses colour {c} outside L({v})")
    for a, b in h.edges:
        if phi[a] == phi[b]:
            raise HypothesisViolated(f"precoloring is not proper on the H-edge ({a}, {b})")
    count = safe_count(graph, lists, phi)
    if count == 0:
        raise HypothesisViolated("the precoloring does not extend to G")
    gen = genus(g)
    exponent = params.exponent(graph.n, gen, len(h.vertices))
    return BoundReport(graph.n, gen, len(h.vertices), count, exponent, meets_bound(count, exponent), params.default_constants)


def rescaled_bound_check(
    g: EmbeddedGraph,
    h: SubgraphMask,
    lists: ListAssignment,
    phi: Precoloring,
    alpha: Fraction,
    epsilon: Fraction = DEFAULT_EPSILON,
) -> BoundReport:
    """Same comparison with a user-chosen alpha; not the published constant unless alpha is 130."""
    return main_bound_check(g, h, lists, phi, CriticalityParams(epsilon, alpha))


def _minus(g: Graph, q: frozenset[int], lists: ListAssignment, phi: Precoloring) -> tuple[Graph, ListAssignment, dict[int, int]]:
    keep = [v for v in range(g.n) if v not in q]
    sub, index = g.induced(keep)
    return sub, tuple(lists[v] for v in keep), {index[v]: c for v, c in phi.items() if v in index}


def doubling_rows(
    g: Graph | EmbeddedGraph,
    h: SubgraphMask,
    lists: ListAssignment,
    q,
    cap: int = COUNT_CAP,
) -> list[dict]:
    """For each extending L-coloring of H: counts in G and in G - Q."""
    g = as_graph(g)
    if g.n > cap:
        raise SizeCapExceeded(f"{g.n} vertices exceeds counting cap {cap}")
    qs = frozenset(q)
    verdict = check_reducible_concrete(g, h, qs, lists, cap=cap)
    if not verdict.reducible:
        raise PreconditionFailed(f"Q={sorted(qs)} is not reducible for these lists: {verdict.witness}")
    rows = []
    for phi in h_colorings(g, h, lists):
        full = safe_count(g, lists, phi)
        if full == 0:
            continue
        sub, sub_lists, sub_phi = _minus(g, qs, lists, phi)
        rest = safe_count(sub, sub_lists, sub_phi)
        rows.append({"phi": phi, "count": full, "count_without_q": rest, "ok": full >= 2 * rest})
    return rows


def doubling_check(g: Graph | EmbeddedGraph, h: SubgraphMask, lists: ListAssignment, q, cap: int = COUNT_CAP) -> bool:
    return all(r["ok"] for r in doubling_rows(g, h, lists, q, cap))


def _subgraph_family(g: Graph, h: SubgraphMask) -> list[tuple[int, Graph, list[int]]]:
    """Maximal proper subgraphs containing H, up to the edge deletions that only add colorings.

    Induced subgraphs G[S] for V(H) <= S < V(G), and G - e for e outside E(H).
    Each entry is ``(|V(G')|, graph, host ids of its vertices)``.
    """
    out = []
    hv = sorted(h.vertices)
    free = [v for v in range(g.n) if v not in h.vertices]
    for r in range(len(free)):
        for extra in itertools.combinations(free, r):
            keep = sorted(hv + list(extra))
            sub, _ = g.induced(keep)
            out.append((len(keep), sub, keep))
    for a, b in g.edges():
        if (a, b) not in h.edges:
            out.append((g.n, g.without_edge(a, b), list(range(g.n))))
    return out


def _genus_value(g: Graph | EmbeddedGraph, genus_kind: str, genus_value: int | None) -> int:
    if genus_value is not None:
        return genus_value
    if not isinstance(g, EmbeddedGraph):
        return 0
    if genus_kind == "euler":
        return 2 * genus(g)
    if genus_kind == "orientable":
        return genus(g)
    raise ValueError(f"unknown genus kind {genus_kind!r}")


def criticality_check(
    g: Graph | EmbeddedGraph,
    h: SubgraphMask,
    lists: ListAssignment,
    params: CriticalityParams = CriticalityParams(),
    reading: str = "per_subgraph",
    genus_kind: str = "euler",
    genus_value: int | None = None,
    cap: int = CRITICALITY_CAP,
) -> bool:
    """Decide (eps, alpha)-exponential criticality of (G, H) with respect to L.

    ``reading="per_subgraph"`` lets each G' pick its own precoloring of H;
    ``reading="uniform"`` asks for one precoloring serving every G'.
    """
    if reading not in ("per_subgraph", "uniform"):
        raise ValueError(f"unknown reading {reading!r}")
    gen = _genus_value(g, genus_kind, genus_value)
    graph = as_graph(g)
    if graph.n > cap:
        raise SizeCapExceeded(f"{graph.n} vertices exceeds criticality cap {cap}")
    _require_proper_subgraph(graph, h)
    hs = len(h.vertices)
    top = params.exponent(graph.n, gen, hs)
    phis = list(h_colorings(graph, h, lists))
    # precolorings that G itself does not already satisfy
    short = [phi for phi in phis if not meets_bound(safe_count(graph, lists, phi), top)]
    if not short:
        return False
    family = _subgraph_family(graph, h)

    def good(phi: dict[int, int], size: int, sub: Graph, keep: list[int]) -> bool:
        index = {v: i for i, v in enumerate(keep)}
        sub_lists = tuple(lists[v] for v in keep)
        sub_phi = {index[v]: c for v, c in phi.items()}
        return meets_bound(safe_count(sub, sub_lists, sub_phi), params.exponent(size, gen, hs))

    if reading == "per_subgraph":
        return all(any(good(phi, *member) for phi in short) for member in family)
    return any(all(good(phi, *member) for member in family) for phi in short)


@dataclass(frozen=True)
class ComponentBound:
    n: int
    h_size: int
    bound: VertexBound
    h_proper: bool

    @property
    def within(self) -> bool:
        return self.n <= self.bound.rounded_bound

    def to_json(self) -> dict:
        return {"n": self.n, "h_size": self.h_size, "h_proper": self.h_proper, "within": self.within, "bound": self.bound.to_json()}


def per_component_bound(g: EmbeddedGraph, h: SubgraphMask, params: DischargeParams = DischargeParams()) -> list[ComponentBound]:
    out = []
    for sub, hsub, _ in components(g, h):
        chi = euler_characteristic(sub)
        out.append(ComponentBound(sub.n, len(hsub.vertices), vertex_bound_from_charges(len(hsub.vertices), chi, params), len(hsub.vertices) < sub.n))
    return out
