"""Slow, obviously-correct reference implementations used only by the tests."""

from __future__ import annotations

import itertools
from fractions import Fraction

import mpmath


def edges_of(rotations) -> list[tuple[int, int]]:
    return sorted({(min(v, w), max(v, w)) for v, r in enumerate(rotations) for w in r})


def naive_count(n: int, edges, lists, phi=None) -> int:
    """Plain product over all list choices, filtered for properness."""
    phi = phi or {}
    choices = [[phi[v]] if v in phi else sorted(lists[v]) for v in range(n)]
    total = 0
    for col in itertools.product(*choices):
        if all(col[a] != col[b] for a, b in edges):
            total += 1
    return total


def naive_orbit_reps(sizes, universe):
    """One representative per colour-permutation orbit, by brute-force closure."""
    perms = list(itertools.permutations(range(universe)))
    seen = set()
    reps = []
    per_vertex = [list(itertools.combinations(range(universe), s)) for s in sizes]
    for choice in itertools.product(*per_vertex):
        key = tuple(frozenset(c) for c in choice)
        if key in seen:
            continue
        orbit = {tuple(frozenset(p[c] for c in l) for l in key) for p in perms}
        seen |= orbit
        reps.append(key)
    return reps


def mp_meets(count: int, exponent: Fraction) -> bool:
    """count >= 2**exponent through 60-digit logarithms (ties treated as met)."""
    if count <= 0:
        return False
    with mpmath.workdps(60):
        lhs = mpmath.log(count, 2)
        rhs = mpmath.mpf(exponent.numerator) / exponent.denominator
        return lhs >= rhs - mpmath.mpf(10) ** -40


def naive_criticality(n, edges, h_vertices, h_edges, lists, epsilon, alpha, genus, reading="per_subgraph") -> bool:
    """Definition read literally: every proper subgraph G' with H <= G' <= G."""
    h_vertices = sorted(h_vertices)
    h_edges = {tuple(sorted(e)) for e in h_edges}
    free = [v for v in range(n) if v not in h_vertices]
    hs = len(h_vertices)

    def bound_exp(size):
        return Fraction(epsilon) * (size - Fraction(alpha) * (genus + hs))

    def count_on(vs, es, phi):
        index = {v: i for i, v in enumerate(vs)}
        return naive_count(len(vs), [(index[a], index[b]) for a, b in es], [lists[v] for v in vs], {index[v]: c for v, c in phi.items()})

    phis = []
    for col in itertools.product(*[sorted(lists[v]) for v in h_vertices]):
        phi = dict(zip(h_vertices, col))
        if all(phi[a] != phi[b] for a, b in h_edges):
            phis.append(phi)
    all_vs = list(range(n))
    fails_g = [phi for phi in phis if not mp_meets(count_on(all_vs, edges, phi), bound_exp(n))]

    subgraphs = []
    for r in range(len(free) + 1):
        for extra in itertools.combinations(free, r):
            vs = sorted(h_vertices + list(extra))
            vset = set(vs)
            avail = [e for e in edges if e[0] in vset and e[1] in vset and e not in h_edges]
            for k in range(len(avail) + 1):
                for chosen in itertools.combinations(avail, k):
                    if len(vs) == n and k == len(avail):
                        continue
                    subgraphs.append((vs, sorted(h_edges) + list(chosen)))

    def ok(phi, vs, es):
        return mp_meets(count_on(vs, es, phi), bound_exp(len(vs)))

    if reading == "per_subgraph":
        return all(any(ok(phi, vs, es) for phi in fails_g) for vs, es in subgraphs)
    return any(all(ok(phi, vs, es) for vs, es in subgraphs) for phi in fails_g)
