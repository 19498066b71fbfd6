"""Bundled fixture corpus: builders, manifest and loader.

The JSON files under ``trifree/data`` are produced from the builders here
by ``scripts/make_fixtures.py``; tests check the two stay in sync.

Host graphs around the drawn configurations follow one recipe: the drawn
part is bipartite, and every half-edge leaving it is routed to a hub in H
that only touches one side of the bipartition, so no triangle appears.
Half-edges keep the directions they have in the drawing, which keeps the
drawn 4-cycles facial.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from importlib import resources

from .embedding import Graph, rotation_from_coordinates, sorted_rotation
from .formats import EmbeddingDocument, document_from_json, serialize

CENSUS_FILE = "census_connected_le6.g6"


@dataclass(frozen=True)
class Fixture:
    name: str
    doc: EmbeddingDocument
    description: str = ""
    q: tuple[int, ...] | None = None
    tags: tuple[str, ...] = field(default=())

    def manifest_entry(self) -> dict:
        out = {"file": f"{self.name}.json", "description": self.description, "tags": list(self.tags)}
        if self.q is not None:
            out["Q"] = list(self.q)
        return out


def _lists(n: int, colours=(1, 2, 3, 4)) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(colours) for _ in range(n))


def _varied_lists(n: int, seed: str, palette: int = 6) -> tuple[tuple[int, ...], ...]:
    rng = random.Random(seed)
    return tuple(tuple(sorted(rng.sample(range(1, palette + 1), 4))) for _ in range(n))


def _doc(n, rotations, hv=(), he=(), lists=None, pre=None, name="") -> EmbeddingDocument:
    return EmbeddingDocument(
        n=n,
        rotations=tuple(tuple(r) for r in rotations),
        h_vertices=tuple(sorted(hv)),
        h_edges=tuple(sorted((min(a, b), max(a, b)) for a, b in he)),
        lists=None if lists is None else tuple(tuple(sorted(l)) for l in lists),
        precoloring=tuple(sorted((pre or {}).items())),
        name=name,
    )


# -- basic shapes ---------------------------------------------------------------


def cycle_rotation(n: int) -> list[list[int]]:
    return [[(v + 1) % n, (v - 1) % n] for v in range(n)]


def cube_rotation() -> list[list[int]]:
    # outer square 0-3, inner square 4-7
    pos = [(-2, -2), (2, -2), (2, 2), (-2, 2), (-1, -1), (1, -1), (1, 1), (-1, 1)]
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)]
    return rotation_from_coordinates(pos, edges)


def torus_grid_rotation(rows: int, cols: int) -> list[list[int]]:
    """Quadrangulation of the torus; cyclic order N, E, S, W at every vertex."""

    def vid(r: int, c: int) -> int:
        return (r % rows) * cols + (c % cols)

    return [
        [vid(r - 1, c), vid(r, c + 1), vid(r + 1, c), vid(r, c - 1)]
        for r in range(rows)
        for c in range(cols)
    ]


def prism_rotation(k: int) -> list[list[int]]:
    """Planar k-prism: outer cycle 0..k-1, inner cycle k..2k-1."""
    pos = [(2 * math.cos(2 * math.pi * i / k), 2 * math.sin(2 * math.pi * i / k)) for i in range(k)]
    pos += [(math.cos(2 * math.pi * i / k), math.sin(2 * math.pi * i / k)) for i in range(k)]
    edges = [(i, (i + 1) % k) for i in range(k)] + [(k + i, k + (i + 1) % k) for i in range(k)] + [(i, k + i) for i in range(k)]
    return rotation_from_coordinates(pos, edges)


def k4_rotation() -> list[list[int]]:
    pos = [(0, 0), (2, 0), (1, 2), (1, 0.7)]
    edges = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)]
    return rotation_from_coordinates(pos, edges)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def disjoint_union(*rotations: list[list[int]]) -> list[list[int]]:
    out: list[list[int]] = []
    for rot in rotations:
        off = len(out)
        out.extend([w + off for w in r] for r in rot)
    return out


# -- drawn configurations inside host graphs ------------------------------------


def _angle(p, q) -> float:
    return math.atan2(q[1] - p[1], q[0] - p[0])


def hosted(
    pos: dict[int, tuple[float, float]],
    edges: list[tuple[int, int]],
    stubs: dict[int, list[float]],
    side_a: set[int],
) -> tuple[int, list[list[int]], list[int]]:
    """Attach every stub to a hub vertex in H.

    Stub ``j`` of a vertex on side A goes to hub ``("A", j)``, likewise for
    side B, so each hub is adjacent to one colour class only.  Returns the
    vertex count, the rotation system and the hub ids.
    """
    n0 = max(pos) + 1
    hubs: dict[tuple[str, int], int] = {}
    angle: dict[tuple[int, int], float] = {}
    nbrs: dict[int, list[int]] = {v: [] for v in range(n0)}
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
        angle[(a, b)] = _angle(pos[a], pos[b])
        angle[(b, a)] = _angle(pos[b], pos[a])
    for v in sorted(stubs):
        side = "A" if v in side_a else "B"
        for j, deg in enumerate(stubs[v]):
            key = (side, j)
            if key not in hubs:
                hubs[key] = n0 + len(hubs)
                nbrs[hubs[key]] = []
            x = hubs[key]
            nbrs[v].append(x)
            nbrs[x].append(v)
            angle[(v, x)] = math.radians(deg)
            angle[(x, v)] = float(v)
    n = n0 + len(hubs)
    rot = [sorted(nbrs[v], key=lambda w: angle[(v, w)]) for v in range(n)]
    return n, rot, sorted(hubs.values())


def figure_poppy_host() -> tuple[int, list[list[int]], list[int]]:
    """Center 0 of degree six with four internally disjoint stamens.

    Drawn part: 0 at the origin, 1 (1,0), 2 (1,1), 3 (-1,0), 4 (-1,1),
    5 (0,1), 6 (0,-1), 7 (0,-2); tips 5 and 7.
    """
    pos = {0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (-1, 0), 4: (-1, 1), 5: (0, 1), 6: (0, -1), 7: (0, -2)}
    edges = [(0, 1), (1, 2), (2, 5), (5, 4), (4, 3), (3, 0), (0, 5), (0, 6), (6, 7)]
    stubs = {0: [-45, -135], 1: [-60, -30], 2: [60, 30], 3: [-120, -150], 4: [120, 150], 6: [0, 180], 7: [-60, -120]}
    return hosted(pos, edges, stubs, side_a={0, 2, 4, 7})


def figure_stamen_host(center_degree: int = 6) -> tuple[int, list[list[int]], list[int]]:
    """Vertical path 0-1-2-3 from the center 0 down to the tip 3."""
    pos = {0: (0, 0), 1: (0, -1), 2: (0, -2), 3: (0, -3)}
    edges = [(0, 1), (1, 2), (2, 3)]
    spread = {6: [70, 80, 90, 100, 110], 3: [60, 120]}[center_degree]
    stubs = {0: spread, 1: [0, 180], 2: [0, 180], 3: [-60, -120]}
    return hosted(pos, edges, stubs, side_a={0, 2})


def figure_rule_host() -> tuple[int, list[list[int]], list[int]]:
    """Rule 1 picture: major 0 (degree five) and 1 (in H), tip 5.

    Drawn part: 0 origin, 1 (1,0), 2 (1,1), 3 (-1,0), 4 (-1,1), 5 (0,1).
    """
    pos = {0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (-1, 0), 4: (-1, 1), 5: (0, 1)}
    edges = [(0, 5), (0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)]
    stubs = {0: [-45, -135], 2: [60, 30], 3: [-120, -150], 4: [120, 150]}
    return hosted(pos, edges, stubs, side_a={0, 2, 4})


# -- registry -------------------------------------------------------------------


def _build() -> list[Fixture]:
    fx: list[Fixture] = []
    c4 = cycle_rotation(4)
    fx.append(Fixture("c4_2lists", _doc(4, c4, lists=_lists(4, (1, 2))), "4-cycle, every list {1,2}", tags=("planar",)))
    fx.append(Fixture("c4_4lists", _doc(4, c4, lists=_lists(4)), "4-cycle, every list {1,2,3,4}", q=(0, 1, 2, 3), tags=("planar", "doubling")))
    fx.append(Fixture("c4_H1", _doc(4, c4, hv=[0], lists=_lists(4), pre={0: 1}), "4-cycle, H one vertex precoloured 1", tags=("planar",)))
    fx.append(Fixture("c5_2lists", _doc(5, cycle_rotation(5), lists=_lists(5, (1, 2))), "5-cycle, every list {1,2}", tags=("planar",)))

    pend = cycle_rotation(5) + [[0]]
    pend[0] = [1, 5, 4]
    fx.append(Fixture("c5_pendant", _doc(6, pend, lists=_varied_lists(6, "c5_pendant")), "5-cycle with a pendant at 0; the inner 5-face has one 3-vertex", tags=("planar",)))

    c4p = cycle_rotation(4) + [[0]]
    c4p[0] = [1, 4, 3]
    fx.append(Fixture("c4_pendant", _doc(5, c4p, hv=[2], lists=_lists(5), pre={2: 1}), "4-cycle with pendant 4 outside H", q=(4,), tags=("planar", "doubling")))

    fx.append(Fixture("p3_critical", _doc(3, [[1], [0, 2], [1]], hv=[0, 2], lists=[(1,), (1, 2), (2,)], pre={0: 1, 2: 2}), "path whose precoloring blocks the middle vertex", tags=("planar", "criticality")))
    fx.append(Fixture("h_plus_isolated", _doc(2, [[], []], hv=[0], lists=_lists(2), pre={0: 1}), "H a single vertex plus an isolated 4-list vertex", tags=("planar", "criticality")))

    cube = cube_rotation()
    fx.append(Fixture("cube", _doc(8, cube, lists=_varied_lists(8, "cube")), "cube, H empty", q=(0, 1, 2, 3), tags=("planar", "doubling")))
    fx.append(Fixture("cube_H1", _doc(8, cube, hv=[0], lists=_lists(8), pre={0: 1}), "cube, H one vertex", tags=("planar",)))
    fx.append(Fixture("cube_H7", _doc(8, cube, hv=range(7), he=[e for e in _edges(cube) if 7 not in e], lists=_varied_lists(8, "cube_H7")), "cube, only vertex 7 outside H; no reducible configuration", tags=("planar", "hypothesis")))

    grid = torus_grid_rotation(4, 4)
    fx.append(Fixture("torus_grid", _doc(16, grid), "4x4 toroidal grid, H empty", tags=("torus",)))
    black = [v for v in range(16) if (v // 4 + v % 4) % 2 == 0]
    fx.append(Fixture("torus_grid_H", _doc(16, grid, hv=black), "4x4 toroidal grid, H one colour class", tags=("torus", "hypothesis")))
    fx.append(Fixture("two_torus_grids", _doc(32, disjoint_union(grid, grid), hv=[0]), "two disjoint 4x4 toroidal grids, H meets the first", tags=("torus",)))

    prism = prism_rotation(5)
    pl = _varied_lists(10, "prism5")
    fx.append(Fixture("prism5_H1", _doc(10, prism, hv=[0], lists=pl, pre={0: pl[0][0]}), "planar 5-prism, H one vertex", tags=("planar",)))

    fx.append(Fixture("k4", _doc(4, k4_rotation(), lists=_lists(4)), "K4 (contains triangles)", tags=("planar", "triangle")))
    fx.append(Fixture("petersen", _doc(10, sorted_rotation(petersen_graph())), "Petersen graph, sorted rotations", tags=("nonplanar",)))

    union = disjoint_union(cycle_rotation(4), cycle_rotation(5))
    fx.append(Fixture("c4_c5_union", _doc(9, union, hv=[0], lists=_lists(9), pre={0: 1}), "disjoint 4-cycle and 5-cycle, H one vertex of the 4-cycle", tags=("planar",)))

    n, rot, hubs = figure_poppy_host()
    fx.append(Fixture("figure_poppy", _doc(n, rot, hv=hubs, lists=_varied_lists(n, "figure_poppy")), "degree-six center with four stamens, hubs in H", q=tuple(range(8)), tags=("poppy", "doubling")))
    n, rot, hubs = figure_stamen_host(6)
    fx.append(Fixture("figure_stamen", _doc(n, rot, hv=hubs, lists=_lists(n)), "degree-six center with one stamen through two 4-vertices", tags=("stamen",)))
    n, rot, hubs = figure_stamen_host(3)
    fx.append(Fixture("figure_stamen_deg3", _doc(n, rot, hv=hubs, lists=_varied_lists(n, "figure_stamen_deg3")), "degree-three center with one stamen", q=(0, 1, 2, 3), tags=("poppy", "doubling")))
    n, rot, hubs = figure_rule_host()
    fx.append(Fixture("figure_rule", _doc(n, rot, hv=hubs + [1], lists=_lists(n)), "two stamens from 0 and one from 1 ending at 5", tags=("rule1",)))
    return fx


def _edges(rot: list[list[int]]) -> list[tuple[int, int]]:
    return sorted({(min(v, w), max(v, w)) for v, r in enumerate(rot) for w in r})


def built_fixtures() -> dict[str, Fixture]:
    return {f.name: f for f in _build()}


def _data():
    return resources.files("trifree") / "data"


def manifest() -> dict:
    return json.loads((_data() / "manifest.json").read_text())


def fixture_names() -> list[str]:
    return sorted(manifest())


def load_fixture(name: str) -> Fixture:
    entry = manifest()[name]
    text = (_data() / entry["file"]).read_text()
    doc = document_from_json(json.loads(text), name)
    q = tuple(entry["Q"]) if "Q" in entry else None
    return Fixture(name, doc, entry.get("description", ""), q, tuple(entry.get("tags", ())))


def fixture_text(name: str) -> str:
    return (_data() / manifest()[name]["file"]).read_text()


def census_text() -> str:
    return (_data() / CENSUS_FILE).read_text()


def write_fixtures(directory) -> list[str]:
    """Write every fixture and the manifest into ``directory``."""
    from pathlib import Path

    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    entries = {}
    for f in _build():
        (out / f"{f.name}.json").write_text(serialize(f.doc))
        entries[f.name] = f.manifest_entry()
    (out / "manifest.json").write_text(json.dumps(entries, indent=2, sort_keys=True) + "\n")
    return sorted(entries)
