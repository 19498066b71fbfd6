"""Criticality verdicts on the small fixtures for a grid of (epsilon, alpha).

Compares the per-subgraph and uniform readings of the definition and reports
where they disagree.

    python3 scripts/criticality_survey.py
"""

from fractions import Fraction

from trifree.coloring import uniform_lists
from trifree.corpus import fixture_names, load_fixture
from trifree.harness import CRITICALITY_CAP, CriticalityParams, criticality_check

EPSILONS = [Fraction(0), Fraction(1, 8), Fraction(1, 2), Fraction(1)]
ALPHAS = [Fraction(0), Fraction(1), Fraction(130)]


def main() -> None:
    disagreements = []
    print(f"{'fixture':18} {'eps':>4} {'alpha':>5}  per_subgraph  uniform")
    for name in fixture_names():
        f = load_fixture(name)
        g, h = f.doc.embedding(), f.doc.h()
        if g.n > CRITICALITY_CAP or (len(h.vertices) == g.n and len(h.edges) == g.num_edges):
            continue
        lists = f.doc.list_assignment() if f.doc.lists else uniform_lists(g.n, (1, 2, 3, 4))
        for eps in EPSILONS:
            for alpha in ALPHAS:
                p = CriticalityParams(eps, alpha)
                per = criticality_check(g, h, lists, p)
                uni = criticality_check(g, h, lists, p, reading="uniform")
                if per or uni:
                    print(f"{name:18} {str(eps):>4} {str(alpha):>5}  {str(per):>12}  {str(uni):>7}")
                if per != uni:
                    disagreements.append((name, eps, alpha))
    print(f"\nreadings disagree on {len(disagreements)} settings: {disagreements}")


if __name__ == "__main__":
    main()
