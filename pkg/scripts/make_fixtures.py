"""Regenerate the bundled fixture JSONs and the graph6 census of small connected graphs."""

import argparse
from pathlib import Path

import networkx as nx

from trifree.corpus import CENSUS_FILE, write_fixtures
from trifree.embedding import Graph
from trifree.formats import encode_graph6

DATA = Path(__file__).resolve().parents[1] / "src" / "trifree" / "data"


def census(max_n: int) -> list[str]:
    """Every connected graph on 1..max_n vertices, one graph6 line each (atlas order)."""
    lines = []
    for g in nx.graph_atlas_g():
        if 0 < g.number_of_nodes() <= max_n and nx.is_connected(g):
            lines.append(encode_graph6(Graph.from_edges(g.number_of_nodes(), g.edges())))
    return lines


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=DATA)
    ap.add_argument("--census-max", type=int, default=6)
    args = ap.parse_args()
    names = write_fixtures(args.out)
    lines = census(args.census_max)
    (args.out / CENSUS_FILE).write_text("\n".join(lines) + "\n")
    print(f"{len(names)} fixtures, {len(lines)} census graphs -> {args.out}")


if __name__ == "__main__":
    main()
