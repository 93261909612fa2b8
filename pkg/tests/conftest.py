"""Shared graphs and brute-force oracles.

The oracles here deliberately avoid the package's search code: they scan
raw edge subsets, subgraphs and set partitions directly.
"""

from fractions import Fraction
from itertools import combinations

import pytest

from fpoly.gallery import c4_chord_graph, example1_graph, example2_graph, example3_graph
from fpoly.graph_core import WeightedGraph


def make(f, edges, names=()):
    return WeightedGraph.build(f, edges, names)


def triangle(f=(1, 1, 1)):
    return make(f, [(0, 1), (1, 2), (2, 0)])


def cycle(k, f=1):
    return make([f] * k, [(i, (i + 1) % k) for i in range(k)])


def single_edge(f=(1, 1)):
    return make(f, [(0, 1)])


def star3():
    return make([3, 1, 1, 1], [(0, 1), (0, 2), (0, 3)])


def edgeless(n=3):
    return make([1] * n, [])


# oracles

def brute_matchings(g):
    """Every edge subset, kept if no vertex exceeds its weight."""
    out = []
    m = g.edge_count
    for mask in range(1 << m):
        load = [0] * g.vertex_count
        for i, (a, b) in enumerate(g.edges):
            if mask >> i & 1:
                load[a] += 1
                load[b] += 1
        if all(x <= w for x, w in zip(load, g.f)):
            out.append(mask)
    return out


def brute_density(g):
    """max |E(H)| / floor(f(H)/2) over all subgraphs H with >= 2 vertices."""
    if g.vertex_count < 2:
        return Fraction(0)
    best = None
    n, m = g.vertex_count, g.edge_count
    for vmask in range(1 << n):
        if bin(vmask).count("1") < 2:
            continue
        fh = sum(g.f[v] for v in range(n) if vmask >> v & 1)
        inside = [i for i, (a, b) in enumerate(g.edges) if vmask >> a & 1 and vmask >> b & 1]
        for size in range(len(inside) + 1):
            val = Fraction(size, fh // 2)
            if best is None or val > best:
                best = val
    return best


def brute_gamma(g):
    """max over U and actual subsets F of the boundary (no size shortcut)."""
    if g.edge_count == 0:
        return Fraction(0)
    best = None
    n = g.vertex_count
    for vmask in range(1 << n):
        U = {v for v in range(n) if vmask >> v & 1}
        inner = [i for i, (a, b) in enumerate(g.edges) if a in U and b in U]
        cut = [i for i, (a, b) in enumerate(g.edges) if (a in U) != (b in U)]
        fu = sum(g.f[v] for v in U)
        for size in range(len(cut) + 1):
            for F in combinations(cut, size):
                if fu + len(F) < 2:
                    continue
                val = Fraction(len(inner) + len(F), (fu + len(F)) // 2)
                if best is None or val > best:
                    best = val
    return best


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def brute_index(g):
    """Fewest blocks over every set partition of E(G) into f-matchings."""
    ok = set(brute_matchings(g))
    best = None
    for part in set_partitions(list(range(g.edge_count))):
        if all(sum(1 << e for e in block) in ok for block in part):
            if best is None or len(part) < best:
                best = len(part)
    return best or 0


def float_frac_index(g):
    """Independent floating-point LP via scipy over every f-matching."""
    import numpy as np
    from scipy.optimize import linprog

    masks = [mk for mk in brute_matchings(g) if mk]
    if not g.edge_count:
        return 0.0
    A = np.array([[1.0 if mk >> e & 1 else 0.0 for mk in masks] for e in range(g.edge_count)])
    res = linprog(np.ones(len(masks)), A_eq=A, b_eq=np.ones(g.edge_count),
                  bounds=[(0, None)] * len(masks), method="highs")
    assert res.status == 0
    return res.fun


@pytest.fixture
def ex1():
    return example1_graph()


@pytest.fixture
def ex2_3():
    return example2_graph(3)


@pytest.fixture
def ex3_1():
    return example3_graph(1)


@pytest.fixture
def c4c():
    return c4_chord_graph()


# one line per acceptance criterion, echoed after the run even without -s
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
