"""Exact list-coloring counts and degree-choosability.

Lists are tuples of frozensets indexed by vertex; colours are arbitrary
non-negative integers.  Counting is a fail-first backtracking search that
multiplies independent components, so counts are exact Python ints.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .embedding import EmbeddedGraph, Graph, as_graph, blocks, block_edges, connected_components

ListAssignment = tuple[frozenset[int], ...]
Precoloring = Mapping[int, int]


class ColoringError(ValueError):
    pass


class ImproperPrecoloring(ColoringError):
    pass


class EmptyList(ColoringError):
    pass


class DisconnectedInput(ColoringError):
    pass


class SizeCapExceeded(RuntimeError):
    """Raised when an exhaustive procedure is asked to run beyond its desk-scale cap."""


@dataclass(frozen=True)
class CountResult:
    value: int
    threshold_reached: bool = False

    @property
    def exact(self) -> int | None:
        return None if self.threshold_reached else self.value

    def at_least(self, k: int) -> bool:
        return self.value >= k

    def to_json(self) -> dict:
        if self.threshold_reached:
            return {"threshold_reached": True, "threshold": self.value}
        return {"threshold_reached": False, "count": self.value}


def make_lists(lists: Sequence[Sequence[int]]) -> ListAssignment:
    return tuple(frozenset(int(c) for c in l) for l in lists)


def uniform_lists(n: int, colors: Sequence[int]) -> ListAssignment:
    return tuple(frozenset(colors) for _ in range(n))


# -- counting -------------------------------------------------------------------


def _prepare(g: Graph, lists: ListAssignment, precoloring: Precoloring | None) -> dict[int, int] | None:
    """Residual colour bitmasks of uncolored vertices, or None when some list empties."""
    if len(lists) != g.n:
        raise ColoringError(f"list assignment covers {len(lists)} vertices, graph has {g.n}")
    phi = dict(precoloring or {})
    for v, c in phi.items():
        if not 0 <= v < g.n:
            raise ImproperPrecoloring(f"precolored vertex {v} out of range")
        if c not in lists[v]:
            raise ImproperPrecoloring(f"vertex {v}: colour {c} not in its list")
        for w in g.adj[v]:
            if phi.get(w) == c:
                raise ImproperPrecoloring(f"adjacent vertices {v} and {w} both precolored {c}")
    for v in range(g.n):
        if v not in phi and not lists[v]:
            raise EmptyList(f"vertex {v} has an empty list")
    palette = sorted(set().union(*lists)) if lists else []
    bit = {c: 1 << i for i, c in enumerate(palette)}
    residual: dict[int, int] = {}
    for v in range(g.n):
        if v in phi:
            continue
        mask = 0
        for c in lists[v]:
            mask |= bit[c]
        for w in g.adj[v]:
            if w in phi:
                mask &= ~bit[phi[w]]
        if not mask:
            return None
        residual[v] = mask
    return residual


def _components(adj: tuple[frozenset[int], ...], verts: dict[int, int]) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for s in sorted(verts):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w in verts and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def _pick(residual: dict[int, int], comp: list[int]) -> int:
    return min(comp, key=lambda v: (residual[v].bit_count(), v))


def _branch(adj, residual: dict[int, int], v: int, color_bit: int, comp: list[int]) -> dict[int, int] | None:
    sub = {}
    for u in comp:
        if u == v:
            continue
        m = residual[u]
        if u in adj[v]:
            m &= ~color_bit
            if not m:
                return None
        sub[u] = m
    return sub


def _count_component(adj, residual: dict[int, int], comp: list[int], limit: int | None) -> int:
    if len(comp) == 1:
        c = residual[comp[0]].bit_count()
        return c if limit is None else min(c, limit)
    v = _pick(residual, comp)
    total = 0
    m = residual[v]
    while m:
        b = m & -m
        m ^= b
        sub = _branch(adj, residual, v, b, comp)
        if sub is None:
            continue
        total += _count(adj, sub, None if limit is None else limit - total)
        if limit is not None and total >= limit:
            return limit
    return total


def _count(adj, residual: dict[int, int], limit: int | None) -> int:
    """Number of proper colorings of the residual instance, capped at ``limit``."""
    if not residual:
        return 1 if limit is None else min(1, limit)
    product = 1
    for comp in _components(adj, residual):
        c = _count_component(adj, residual, comp, limit)
        if c == 0:
            return 0
        product *= c
        if limit is not None:
            product = min(product, limit)
    return product


def _count_task(args) -> int:
    adj, residual, limit = args
    return _count(adj, residual, limit)


def _count_parallel(adj, residual: dict[int, int], limit: int | None, jobs: int) -> int:
    # split on the fail-first vertex of the whole instance; siblings are
    # cancelled once the running total reaches the threshold
    comp = sorted(residual)
    v = _pick(residual, comp)
    tasks = []
    m = residual[v]
    while m:
        b = m & -m
        m ^= b
        sub = _branch(adj, residual, v, b, comp)
        if sub is not None:
            tasks.append((adj, sub, limit))
    total = 0
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        pending = {pool.submit(_count_task, t) for t in tasks}
        while pending:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for f in done:
                total += f.result()
            if limit is not None and total >= limit:
                for f in pending:
                    f.cancel()
                return limit
    return total


def count_extensions(
    g: Graph | EmbeddedGraph,
    lists: ListAssignment,
    precoloring: Precoloring | None = None,
    threshold: int | None = None,
    jobs: int = 1,
) -> CountResult:
    """Count L-colorings of ``g`` agreeing with ``precoloring``.

    With a ``threshold`` the search stops as soon as that many colorings
    are found and returns ``CountResult(threshold, threshold_reached=True)``.
    """
    g = as_graph(g)
    if threshold is not None and threshold < 0:
        raise ValueError("threshold must be non-negative")
    residual = _prepare(g, lists, precoloring)
    if threshold == 0:
        return CountResult(0, True)
    if residual is None:
        return CountResult(0)
    if jobs > 1 and len(residual) > 1:
        value = _count_parallel(g.adj, residual, threshold, jobs)
    else:
        value = _count(g.adj, residual, threshold)
    if threshold is not None and value >= threshold:
        return CountResult(threshold, True)
    return CountResult(value)


def extends_at_least(
    g: Graph | EmbeddedGraph,
    lists: ListAssignment,
    precoloring: Precoloring | None,
    k: int,
) -> bool:
    return count_extensions(g, lists, precoloring, threshold=k).value >= k


def iter_colorings(
    g: Graph | EmbeddedGraph,
    lists: ListAssignment,
    precoloring: Precoloring | None = None,
) -> Iterator[dict[int, int]]:
    """All L-colorings extending ``precoloring``, in lexicographic vertex/colour order."""
    g = as_graph(g)
    phi = dict(precoloring or {})
    _prepare(g, lists, phi)
    free = [v for v in range(g.n) if v not in phi]
    current = dict(phi)

    def rec(i: int) -> Iterator[dict[int, int]]:
        if i == len(free):
            yield dict(current)
            return
        v = free[i]
        for c in sorted(lists[v]):
            if all(current.get(w) != c for w in g.adj[v]):
                current[v] = c
                yield from rec(i + 1)
                del current[v]

    yield from rec(0)


# -- degree-choosability --------------------------------------------------------


def is_gallai_tree(g: Graph | EmbeddedGraph) -> bool:
    """True iff every block is a clique or an odd cycle."""
    g = as_graph(g)
    for b in blocks(g):
        k = len(b)
        e = len(block_edges(g, b))
        if e == k * (k - 1) // 2:
            continue
        if k >= 3 and k % 2 == 1 and e == k:
            continue
        return False
    return True


def is_degree_choosable_structural(g: Graph | EmbeddedGraph) -> bool:
    g = as_graph(g)
    if g.n == 0 or not g.is_connected():
        raise DisconnectedInput("degree-choosability is defined here for connected graphs")
    return not is_gallai_tree(g)


DEGREE_CHOOSABLE_CAP = 7


def degree_choosability_witness(g: Graph | EmbeddedGraph, cap: int = DEGREE_CHOOSABLE_CAP) -> ListAssignment | None:
    """An uncolorable assignment with ``|L(v)| = d(v)``, or None if none exists.

    Vertices of degree zero get an empty list, so K1 has the empty witness.
    """
    g = as_graph(g)
    if g.n == 0 or not g.is_connected():
        raise DisconnectedInput("degree-choosability is defined here for connected graphs")
    if g.n > cap:
        raise SizeCapExceeded(f"{g.n} vertices exceeds brute-force cap {cap}")
    return find_sparse_assignment(g, [g.degree(v) for v in range(g.n)], 1)


def is_degree_choosable_bruteforce(g: Graph | EmbeddedGraph, cap: int = DEGREE_CHOOSABLE_CAP) -> bool:
    return degree_choosability_witness(g, cap) is None


# -- list assignments up to colour renaming -------------------------------------
#
# An orbit of list assignments under colour permutations is a multiset of
# membership sets (for each colour, the set of vertices whose list holds it).
# Encoding vertex i as bit (m-1-i) and listing the multiset in decreasing
# numeric order, then naming colours 0, 1, ... in that order, gives the
# lexicographically least relabelling of the orbit.


def _mask_bit(m: int, i: int) -> int:
    return 1 << (m - 1 - i)


def _masks_to_lists(m: int, masks: Sequence[int]) -> ListAssignment:
    lists: list[set[int]] = [set() for _ in range(m)]
    for c, mask in enumerate(masks):
        for i in range(m):
            if mask & _mask_bit(m, i):
                lists[i].add(c)
    return tuple(frozenset(l) for l in lists)


def canonical_form(lists: ListAssignment) -> ListAssignment:
    """Lexicographically least relabelling of ``lists`` under colour permutations."""
    m = len(lists)
    membership: dict[int, int] = {}
    for i, l in enumerate(lists):
        for c in l:
            membership[c] = membership.get(c, 0) | _mask_bit(m, i)
    return _masks_to_lists(m, sorted(membership.values(), reverse=True))


def canonical_list_assignments(sizes: Sequence[int], universe: int | None = None) -> Iterator[ListAssignment]:
    """One representative per colour-permutation orbit of lists with the given sizes.

    Only orbits using at most ``universe`` colours are produced; with the
    default ``universe = sum(sizes)`` every orbit is realisable.
    """
    m = len(sizes)
    if universe is None:
        universe = sum(sizes)
    if any(s < 0 for s in sizes):
        raise ValueError("list sizes must be non-negative")
    if m and max(sizes) > universe:
        return

    rem = list(sizes)
    chosen: list[int] = []

    def first_open() -> int:
        for i in range(m):
            if rem[i]:
                return i
        return m

    def rec(t: int, bound: int) -> Iterator[ListAssignment]:
        if t == m:
            yield _masks_to_lists(m, chosen)
            return
        if len(chosen) == universe:
            return
        head = _mask_bit(m, t)
        for sub in range(min(bound, head - 1), -1, -1):
            mask = head | sub
            members = [i for i in range(t, m) if mask & _mask_bit(m, i)]
            if any(rem[i] == 0 for i in members):
                continue
            for i in members:
                rem[i] -= 1
            chosen.append(mask)
            if rem[t]:
                yield from rec(t, sub)
            else:
                nxt = first_open()
                yield from rec(nxt, (_mask_bit(m, nxt) - 1) if nxt < m else 0)
            chosen.pop()
            for i in members:
                rem[i] += 1

    t0 = first_open()
    yield from rec(t0, (_mask_bit(m, t0) - 1) if t0 < m else 0)


# -- adversarial search for sparse assignments ----------------------------------


def _search_order(g: Graph, sizes: Sequence[int]) -> list[int]:
    order: list[int] = []
    placed: set[int] = set()
    while len(order) < g.n:
        frontier = [v for v in range(g.n) if v not in placed and any(w in placed for w in g.adj[v])]
        pool = frontier or [v for v in range(g.n) if v not in placed]
        v = min(pool, key=lambda x: (sizes[x], x))
        order.append(v)
        placed.add(v)
    return order


def _greedy_lower_bound(adj: Sequence[frozenset[int]], comp: list[int], room: dict[int, int]) -> int:
    """Colorings of ``comp`` guaranteed for *any* lists with ``room[u]`` colours each.

    Colours greedily in reverse BFS order from the vertex with most slack.
    """
    cs = set(comp)
    z = max(comp, key=lambda u: (room[u] - len(adj[u] & cs), -u))
    bfs = [z]
    seen = {z}
    i = 0
    while i < len(bfs):
        for w in sorted(adj[bfs[i]] & cs):
            if w not in seen:
                seen.add(w)
                bfs.append(w)
        i += 1
    done: set[int] = set()
    bound = 1
    for u in reversed(bfs):
        choices = room[u] - len(adj[u] & done)
        if choices <= 0:
            return 0
        bound *= choices
        done.add(u)
    return bound


def find_sparse_assignment(
    g: Graph | EmbeddedGraph,
    sizes: Sequence[int],
    k: int,
    universe: int | None = None,
) -> ListAssignment | None:
    """Find lists with ``|L(v)| = sizes[v]`` admitting fewer than ``k`` colorings.

    Walks the same orbit representatives as ``canonical_list_assignments``
    (in a connectivity-driven vertex order) and prunes a branch once the
    lists fixed so far force ``k`` colorings whatever is added later.  That
    is sound because enlarging lists never loses colorings.  Returns the
    witness in canonical form, or None if every assignment has ``k``
    colorings.
    """
    g = as_graph(g)
    m = g.n
    if len(sizes) != m:
        raise ValueError("one size per vertex required")
    if k <= 0:
        return None
    if universe is None:
        universe = sum(sizes)
    if m == 0:
        return None if k <= 1 else ()
    if any(s <= 0 for s in sizes):
        # an empty list kills every coloring
        return canonical_form(_fresh_lists(sizes))
    order = _search_order(g, sizes)
    pos = {v: p for p, v in enumerate(order)}
    adj = [frozenset(pos[w] for w in g.adj[v]) for v in order]
    size = [sizes[v] for v in order]
    rem = list(size)
    members_of: list[list[int]] = []
    lists: list[list[int]] = [[] for _ in range(m)]

    def verdict() -> str:
        """'prune', 'witness' or 'open' for the current partial assignment."""
        done = [p for p in range(m) if rem[p] == 0]
        open_ = [p for p in range(m) if rem[p] > 0]
        dset = set(done)
        psi: dict[int, int] = {}
        total = 0
        seen = 0
        comps = _components(tuple(adj), {p: 0 for p in open_}) if open_ else []
        known = [set(l) for l in lists]

        def rec(i: int) -> bool:
            nonlocal total, seen
            if i == len(done):
                seen += 1
                bound = 1
                for comp in comps:
                    room = {}
                    for u in comp:
                        used = {psi[w] for w in adj[u] if w in dset}
                        room[u] = size[u] - len(used & known[u])
                    bound *= _greedy_lower_bound(adj, comp, room)
                    if not bound:
                        break
                total += bound
                return total >= k
            p = done[i]
            for c in lists[p]:
                if all(psi.get(w) != c for w in adj[p]):
                    psi[p] = c
                    if rec(i + 1):
                        return True
                    del psi[p]
            return False

        if rec(0):
            return "prune"
        if not open_:
            return "witness"
        # no coloring of the finished part at all: nothing added later helps
        if not seen:
            return "witness" if len(members_of) + sum(rem) <= universe else "open"
        return "open"

    result: list[ListAssignment] = []

    def emit() -> None:
        full = [list(l) for l in lists]
        c = len(members_of)
        for p in range(m):
            for _ in range(rem[p]):
                full[p].append(c)
                c += 1
        back = [frozenset()] * m
        for p, v in enumerate(order):
            back[v] = frozenset(full[p])
        result.append(canonical_form(tuple(back)))

    def rec(t: int, bound: int) -> bool:
        head = _mask_bit(m, t)
        if len(members_of) == universe:
            return False
        for sub in range(min(bound, head - 1), -1, -1):
            mask = head | sub
            members = [i for i in range(t, m) if mask & _mask_bit(m, i)]
            if any(rem[i] == 0 for i in members):
                continue
            c = len(members_of)
            members_of.append(mask)
            for i in members:
                rem[i] -= 1
                lists[i].append(c)
            if rem[t]:
                found = rec(t, sub)
            else:
                found = step()
            members_of.pop()
            for i in members:
                rem[i] += 1
                lists[i].pop()
            if found:
                return True
        return False

    def step() -> bool:
        state = verdict()
        if state == "prune":
            return False
        if state == "witness":
            emit()
            return True
        nxt = next(i for i in range(m) if rem[i])
        return rec(nxt, _mask_bit(m, nxt) - 1)

    step()
    return result[0] if result else None


def _fresh_lists(sizes: Sequence[int]) -> ListAssignment:
    out = []
    c = 0
    for s in sizes:
        out.append(frozenset(range(c, c + max(s, 0))))
        c += max(s, 0)
    return tuple(out)


def count_all_assignments(g: Graph | EmbeddedGraph, sizes: Sequence[int], universe: int | None = None) -> Iterator[tuple[ListAssignment, int]]:
    """Exhaustive companion to ``find_sparse_assignment``: every orbit with its coloring count."""
    g = as_graph(g)
    for lists in canonical_list_assignments(sizes, universe):
        if any(not l for l in lists):
            yield lists, 0
        else:
            yield lists, count_extensions(g, lists).value


def sparse_assignment_exhaustive(g: Graph | EmbeddedGraph, sizes: Sequence[int], k: int, universe: int | None = None) -> ListAssignment | None:
    for lists, count in count_all_assignments(g, sizes, universe):
        if count < k:
            return lists
    return None
