"""f-matchings: the predicate, exhaustive and maximal enumeration, indicators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .graph_core import WeightedGraph, check_edge_cap


@dataclass(frozen=True)
class FMatching:
    edges: frozenset[int]

    @classmethod
    def of(cls, edges: Iterable[int]) -> FMatching:
        return cls(frozenset(edges))

    @property
    def mask(self) -> int:
        m = 0
        for e in self.edges:
            m |= 1 << e
        return m

    def sorted_edges(self) -> list[int]:
        return sorted(self.edges)

    def __len__(self) -> int:
        return len(self.edges)


def _check_ids(g: WeightedGraph, M: Iterable[int]) -> list[int]:
    M = list(M)
    for e in M:
        if not 0 <= e < g.edge_count:
            raise ValueError(f"edge id {e} out of range")
    return M


def is_f_matching(g: WeightedGraph, M: Iterable[int] | FMatching) -> bool:
    if isinstance(M, FMatching):
        M = M.edges
    load = [0] * g.vertex_count
    for e in set(_check_ids(g, M)):
        a, b = g.edges[e]
        load[a] += 1
        load[b] += 1
    return all(x <= cap for x, cap in zip(load, g.f))


def _enumerate_masks(g: WeightedGraph) -> list[int]:
    # depth-first over edge ids with residual capacities; only f-matchings
    # are ever generated
    edges = g.edges
    m = len(edges)
    residual = list(g.f)
    out: list[int] = []

    def visit(i: int, mask: int) -> None:
        if i == m:
            out.append(mask)
            return
        visit(i + 1, mask)
        a, b = edges[i]
        if residual[a] and residual[b]:
            residual[a] -= 1
            residual[b] -= 1
            visit(i + 1, mask | (1 << i))
            residual[a] += 1
            residual[b] += 1

    visit(0, 0)
    out.sort()
    return out


def _maximal_masks(g: WeightedGraph, masks: list[int]) -> list[int]:
    edges = g.edges
    out = []
    for mask in masks:
        load = [0] * g.vertex_count
        for i, (a, b) in enumerate(edges):
            if mask >> i & 1:
                load[a] += 1
                load[b] += 1
        free = [cap - x for cap, x in zip(g.f, load)]
        if all(mask >> i & 1 or not (free[a] and free[b]) for i, (a, b) in enumerate(edges)):
            out.append(mask)
    return out


def _from_mask(mask: int) -> FMatching:
    return FMatching(frozenset(i for i in range(mask.bit_length()) if mask >> i & 1))


def enumerate_all(g: WeightedGraph, cap: int | None = None) -> list[FMatching]:
    """All f-matchings of ``g`` (including the empty one), ordered by edge-id bitmask."""
    check_edge_cap(g, cap)
    return [_from_mask(m) for m in _enumerate_masks(g)]


def enumerate_maximal(g: WeightedGraph, cap: int | None = None) -> list[FMatching]:
    """Inclusion-maximal f-matchings, ordered by edge-id bitmask."""
    check_edge_cap(g, cap)
    return [_from_mask(m) for m in _maximal_masks(g, _enumerate_masks(g))]


def indicator(g: WeightedGraph, M: FMatching | Iterable[int]) -> tuple[Fraction, ...]:
    """The 0/1 characteristic vector of ``M`` over edge ids."""
    edges = M.edges if isinstance(M, FMatching) else frozenset(M)
    return tuple(Fraction(1) if e in edges else Fraction(0) for e in range(g.edge_count))
