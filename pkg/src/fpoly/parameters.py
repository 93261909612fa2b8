"""Exact degree, density and boundary-density parameters of weighted graphs.

All searches are exhaustive over vertex subsets (guarded by a vertex cap).
Ties between maximizing subsets go to the lexicographically smallest sorted
vertex list, then to the smallest boundary size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .graph_core import (
    WeightedGraph, check_vertex_cap, degrees, edge_masks, mask_members,
)


def ceil(q: Fraction) -> int:
    return math.ceil(q)


@dataclass(frozen=True)
class ParameterReport:
    delta_star: Fraction
    density_star: Fraction
    gamma_star: Fraction
    density_witness: Optional[tuple[int, ...]]
    gamma_witness: Optional[tuple[tuple[int, ...], int]]

    @property
    def delta(self) -> int:
        return ceil(self.delta_star)

    @property
    def density(self) -> int:
        return ceil(self.density_star)

    @property
    def gamma(self) -> int:
        return ceil(self.gamma_star)


def delta_star(g: WeightedGraph) -> Fraction:
    """max over vertices of d(v)/f(v)."""
    return max(Fraction(d, w) for d, w in zip(degrees(g), g.f))


def delta(g: WeightedGraph) -> int:
    return ceil(delta_star(g))


def _subset_stats(g: WeightedGraph):
    """Yield (mask, |E[U]|, |boundary U|, f(U)) for every vertex subset."""
    n = g.vertex_count
    emasks = edge_masks(g)
    for mask in range(1 << n):
        inner = cut = 0
        for em in emasks:
            hit = mask & em
            if hit == em:
                inner += 1
            elif hit:
                cut += 1
        fu = sum(g.f[v] for v in range(n) if mask >> v & 1)
        yield mask, inner, cut, fu


def _better(value, key, best_value, best_key) -> bool:
    return best_value is None or value > best_value or (value == best_value and key < best_key)


def density_search(g: WeightedGraph, cap: int | None = None
                   ) -> tuple[Fraction, Optional[tuple[int, ...]]]:
    """w*_f with its maximizing vertex set (``None`` below two vertices)."""
    check_vertex_cap(g, cap)
    if g.vertex_count < 2:
        return Fraction(0), None
    best = best_key = None
    for mask, inner, _cut, fu in _subset_stats(g):
        if bin(mask).count("1") < 2:
            continue
        value = Fraction(inner, fu // 2)
        key = mask_members(mask)
        if _better(value, key, best, best_key):
            best, best_key = value, key
    return best, best_key


def gamma_search(g: WeightedGraph, cap: int | None = None
                 ) -> tuple[Fraction, Optional[tuple[tuple[int, ...], int]]]:
    """Gamma*_f with its maximizing (U, |F|) pair (``None`` without edges).

    For fixed U the objective only depends on the size s of the boundary
    subset F, so s runs over 0..|boundary U| instead of over subsets.
    """
    check_vertex_cap(g, cap)
    if g.edge_count == 0:
        return Fraction(0), None
    best = best_key = None
    for mask, inner, cut, fu in _subset_stats(g):
        members = mask_members(mask)
        for s in range(cut + 1):
            if fu + s < 2:
                continue
            value = Fraction(inner + s, (fu + s) // 2)
            key = (members, s)
            if _better(value, key, best, best_key):
                best, best_key = value, key
    return best, best_key


def density_star(g: WeightedGraph, cap: int | None = None) -> Fraction:
    return density_search(g, cap)[0]


def gamma_star(g: WeightedGraph, cap: int | None = None) -> Fraction:
    return gamma_search(g, cap)[0]


def density(g: WeightedGraph, cap: int | None = None) -> int:
    return ceil(density_star(g, cap))


def gamma(g: WeightedGraph, cap: int | None = None) -> int:
    return ceil(gamma_star(g, cap))


def parameter_report(g: WeightedGraph, cap: int | None = None) -> ParameterReport:
    dens, dens_w = density_search(g, cap)
    gam, gam_w = gamma_search(g, cap)
    return ParameterReport(delta_star(g), dens, gam, dens_w, gam_w)


def lemma5_holds(g: WeightedGraph, cap: int | None = None,
                 report: ParameterReport | None = None) -> bool:
    """max{Delta_f + 1, Gamma_f} == max{Delta_f + 1, w_f}."""
    r = report or parameter_report(g, cap)
    return max(r.delta + 1, r.gamma) == max(r.delta + 1, r.density)
