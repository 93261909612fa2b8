"""Fractional and integer f-chromatic index, and the bound report around them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import exact_lp
from .exact_lp import EQ, GE, LinearProgram
from .graph_core import WeightedGraph, check_edge_cap, degrees
from .matching import FMatching, enumerate_all, enumerate_maximal, is_f_matching
from .parameters import ParameterReport, delta_star, gamma_star, parameter_report

EQUALITY_ALL = "equality"
COVER_MAXIMAL = "cover"


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class FractionalColouring:
    weights: dict[FMatching, Fraction]
    mode: str

    @property
    def value(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def coverage(self, edge_count: int) -> list[Fraction]:
        total = [Fraction(0)] * edge_count
        for M, w in self.weights.items():
            for e in M.edges:
                total[e] += w
        return total


def frac_index_lp(g: WeightedGraph, mode: str = COVER_MAXIMAL,
                  cap: int | None = None) -> tuple[Fraction, FractionalColouring]:
    """Minimum total weight of f-matchings covering every edge.

    ``"equality"`` uses every f-matching and requires each edge to be covered
    exactly once; ``"cover"`` uses only maximal f-matchings with ``>= 1``
    coverage. Both give the same minimum.
    """
    if mode not in (EQUALITY_ALL, COVER_MAXIMAL):
        raise ValueError(f"unknown mode {mode!r}")
    check_edge_cap(g, cap)
    if g.edge_count == 0:
        return Fraction(0), FractionalColouring({}, mode)
    if mode == EQUALITY_ALL:
        columns = enumerate_all(g, cap)
        relation = EQ
    else:
        columns = enumerate_maximal(g, cap)
        relation = GE
    value, weights = _covering_lp(columns, g.edge_count, relation)
    return value, FractionalColouring(weights, mode)


def covering_lp(columns: list[FMatching], edge_count: int, relation: str) -> LinearProgram:
    """The full LP: one unit-cost variable per column, one row per edge."""
    rows = [([1 if e in M.edges else 0 for M in columns], relation, 1)
            for e in range(edge_count)]
    return LinearProgram.build([1] * len(columns), rows)


def _covering_lp(columns: list[FMatching], m: int, relation: str,
                 batch: int = 8) -> tuple[Fraction, dict[FMatching, Fraction]]:
    # Delayed column generation: the master LP holds a growing subset of the
    # columns; its dual prices every column exactly (integers over a common
    # denominator) and the most negative reduced costs enter. At exit the
    # master dual is feasible for the full LP, which is checked directly.
    members = [sorted(M.edges) for M in columns]
    active: list[int] = []
    for e in range(m):
        if relation == EQ:
            j = next(j for j, es in enumerate(members) if es == [e])
        else:
            j = next(j for j, es in enumerate(members) if e in es)
        if j not in active:
            active.append(j)

    while True:
        rows = [([1 if e in columns[j].edges else 0 for j in active], relation, 1)
                for e in range(m)]
        master = LinearProgram.build([1] * len(active), rows)
        outcome = exact_lp.solve(master)
        if not isinstance(outcome, exact_lp.Optimal):
            raise AssertionError(f"master LP failed: {outcome!r}")
        y = outcome.dual
        denom = 1
        for q in y:
            denom = denom * q.denominator // math.gcd(denom, q.denominator)
        scaled = [int(q * denom) for q in y]
        priced = []
        chosen = set(active)
        for j, es in enumerate(members):
            if j not in chosen:
                gain = sum(scaled[e] for e in es) - denom
                if gain > 0:
                    priced.append((-gain, j))
        if not priced:
            break
        priced.sort()
        active.extend(j for _, j in priced[:batch])

    point = [Fraction(0)] * len(columns)
    for j, w in zip(active, outcome.point):
        point[j] = w
    full = covering_lp(columns, m, relation)
    certificate = exact_lp.Optimal(outcome.value, tuple(point), outcome.dual)
    if not exact_lp.check_certificate(full, certificate):
        raise AssertionError("fractional colouring LP did not certify")
    weights = {columns[j]: w for j, w in enumerate(point) if w}
    return outcome.value, weights


def frac_index_formula(g: WeightedGraph, cap: int | None = None) -> Fraction:
    """max{Delta*_f, Gamma*_f}; only valid when Delta*_f >= 1."""
    ds = delta_star(g)
    if ds < 1:
        raise PreconditionError(
            f"the closed formula needs fractional maximum f-degree >= 1, got {ds}")
    return max(ds, gamma_star(g, cap))


def _greedy(g: WeightedGraph) -> int:
    classes: list[list[int]] = []
    for a, b in g.edges:
        for load in classes:
            if load[a] < g.f[a] and load[b] < g.f[b]:
                load[a] += 1
                load[b] += 1
                break
        else:
            load = [0] * g.vertex_count
            load[a] = load[b] = 1
            classes.append(load)
    return len(classes)


def exact_index(g: WeightedGraph, cap: int | None = None,
                lower_bound: int | None = None) -> tuple[int, list[FMatching]]:
    """Minimum number of f-matchings partitioning E(G), with one optimal partition.

    Depth-first branch-and-bound over edges in id order. An edge goes into an
    already opened class or opens the next one, so empty classes are never
    distinguished; a parallel copy never goes into a lower class than its
    predecessor. The search starts from ``max{Delta_f, w_f}`` and stops as soon
    as a partition meets the lower bound.
    """
    check_edge_cap(g, cap)
    m = g.edge_count
    if m == 0:
        return 0, []
    if lower_bound is None:
        r = parameter_report(g)
        lower_bound = max(r.delta, r.density)
    edges = g.edges
    f = g.f
    prev_parallel = [-1] * m
    last_seen: dict[tuple[int, int], int] = {}
    for i, (a, b) in enumerate(edges):
        key = (min(a, b), max(a, b))
        prev_parallel[i] = last_seen.get(key, -1)
        last_seen[key] = i

    best = _greedy(g)
    best_assign: Optional[list[int]] = None
    assign = [-1] * m
    loads: list[list[int]] = []
    remaining = list(degrees(g))

    def feasible_rest(limit: int) -> bool:
        # every vertex must still fit its unplaced edges into `limit` classes
        for v in range(g.vertex_count):
            room = (limit - len(loads)) * f[v] + sum(f[v] - L[v] for L in loads)
            if remaining[v] > room:
                return False
        return True

    def visit(i: int) -> bool:
        nonlocal best, best_assign
        if i == m:
            if len(loads) < best:
                best = len(loads)
                best_assign = list(assign)
            return best <= lower_bound
        a, b = edges[i]
        start = assign[prev_parallel[i]] if prev_parallel[i] >= 0 else 0
        remaining[a] -= 1
        remaining[b] -= 1
        for c in range(start, len(loads)):
            L = loads[c]
            if L[a] < f[a] and L[b] < f[b]:
                L[a] += 1
                L[b] += 1
                assign[i] = c
                if len(loads) < best and feasible_rest(best - 1) and visit(i + 1):
                    return True
                L[a] -= 1
                L[b] -= 1
        if len(loads) + 1 < best:
            L = [0] * g.vertex_count
            L[a] = L[b] = 1
            loads.append(L)
            assign[i] = len(loads) - 1
            if feasible_rest(best - 1) and visit(i + 1):
                return True
            loads.pop()
        remaining[a] += 1
        remaining[b] += 1
        assign[i] = -1
        return False

    if best > lower_bound:
        visit(0)
    if best_assign is None:
        best_assign = _greedy_assignment(g)
    classes = [FMatching(frozenset(e for e in range(m) if best_assign[e] == c))
               for c in range(best)]
    assert all(is_f_matching(g, M) for M in classes)
    return best, classes


def _greedy_assignment(g: WeightedGraph) -> list[int]:
    loads: list[list[int]] = []
    out = []
    for a, b in g.edges:
        for c, load in enumerate(loads):
            if load[a] < g.f[a] and load[b] < g.f[b]:
                load[a] += 1
                load[b] += 1
                out.append(c)
                break
        else:
            load = [0] * g.vertex_count
            load[a] = load[b] = 1
            loads.append(load)
            out.append(len(loads) - 1)
    return out


@dataclass(frozen=True)
class BoundsReport:
    """The integer and fractional index next to every parameter bound.

    All verdicts are properties evaluated from the stored numbers.
    """

    chi_f: int
    chi_star_f: Fraction
    params: ParameterReport

    @property
    def delta(self) -> int:
        return self.params.delta

    @property
    def density(self) -> int:
        return self.params.density

    @property
    def gamma(self) -> int:
        return self.params.gamma

    @property
    def lower_bound_ok(self) -> bool:
        return self.chi_f >= max(self.delta, self.density)

    @property
    def nns_ok(self) -> bool:
        return self.chi_f <= max(Fraction(9, 8) * self.delta + Fraction(6, 8), self.density)

    @property
    def conjecture1_ok(self) -> bool:
        return self.chi_f <= max(self.delta + 1, self.density)

    @property
    def fractional_below_integer_ok(self) -> bool:
        return self.chi_star_f <= self.chi_f

    @property
    def ceil_identity_ok(self) -> Optional[bool]:
        """None when Delta*_f < 1, where the identity is not asserted."""
        if self.params.delta_star < 1:
            return None
        return self.ceil_identity_observed

    @property
    def ceil_identity_observed(self) -> bool:
        """The same comparison, reported in every regime but never enforced."""
        return math.ceil(self.chi_star_f) == max(self.delta, self.gamma)

    @property
    def sandwich_ok(self) -> bool:
        c = math.ceil(self.chi_star_f)
        return c <= self.chi_f <= c + 1

    @property
    def lemma5_ok(self) -> bool:
        return max(self.delta + 1, self.gamma) == max(self.delta + 1, self.density)

    @property
    def proven_bounds_ok(self) -> bool:
        """Every proven bound; the conjectured one and the sandwich are left out."""
        return (self.lower_bound_ok and self.nns_ok and self.fractional_below_integer_ok
                and self.ceil_identity_ok is not False and self.lemma5_ok)


def bounds_report(g: WeightedGraph, cap: int | None = None,
                  mode: str = COVER_MAXIMAL) -> BoundsReport:
    params = parameter_report(g)
    chi_star, _ = frac_index_lp(g, mode, cap)
    chi, _ = exact_index(g, cap, lower_bound=max(params.delta, params.density))
    return BoundsReport(chi, chi_star, params)
