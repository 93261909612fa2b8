"""Membership in the f-matching polytope and the competing inequality systems.

Membership is decided exactly: a point is tested for being a convex
combination of f-matching indicators by an LP over all enumerated
f-matchings. A Farkas certificate of infeasibility becomes a separating
inequality ``a.x <= c`` valid for every f-matching.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence, Union

from . import exact_lp
from .exact_lp import EQ, LinearProgram
from .graph_core import (
    GraphFormatError, WeightedGraph, check_vertex_cap, edge_masks, incidence, mask_members,
)
from .matching import FMatching, enumerate_all, indicator

log = logging.getLogger(__name__)

EdgePoint = tuple[Fraction, ...]


class QSystemVariant(enum.Enum):
    Q_ORIGINAL = "q"
    Q_UNIT = "q-unit"
    EDMONDS_F = "edmonds-f"
    EDMONDS_1 = "edmonds-1"


# kind labels in sort order, per variant
_KINDS = {
    QSystemVariant.Q_ORIGINAL: ("(i)", "(ii)", "(iii)"),
    QSystemVariant.Q_UNIT: ("(i)", "unit", "(ii)", "(iii)"),
    QSystemVariant.EDMONDS_F: ("(a)", "(b)", "(c)"),
    QSystemVariant.EDMONDS_1: ("(1)", "(2)", "(3)"),
}
_KIND_ORDER = {k: i for i, k in enumerate(
    ("(i)", "unit", "(ii)", "(iii)", "(a)", "(b)", "(c)", "(1)", "(2)", "(3)"))}


@dataclass(frozen=True)
class ConstraintViolation:
    """A violated inequality written as ``lhs <= rhs`` (so ``lhs > rhs``).

    Nonnegativity is written as ``-x(e) <= 0``. ``witness`` is ``(e,)`` for
    edge constraints, ``(v,)`` for vertex constraints and ``(U, F)`` (sorted
    id tuples) for subset constraints.
    """

    kind: str
    witness: tuple
    lhs: Fraction
    rhs: Fraction

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.witness)


@dataclass(frozen=True)
class Member:
    weights: dict[FMatching, Fraction]

    is_member = True


@dataclass(frozen=True)
class NonMember:
    """Separating inequality ``coefficients . y <= bound`` for all f-matchings."""

    coefficients: EdgePoint
    bound: Fraction

    is_member = False

    @property
    def functional(self) -> tuple[EdgePoint, Fraction]:
        return self.coefficients, self.bound


MembershipVerdict = Union[Member, NonMember]


def as_point(g: WeightedGraph, values: Iterable) -> EdgePoint:
    x = tuple(Fraction(v) for v in values)
    if len(x) != g.edge_count:
        raise ValueError(f"point has {len(x)} coordinates, graph has {g.edge_count} edges")
    return x


def parse_point(text: str, edge_count: int) -> EdgePoint:
    """Parse ``<edge-id> <p>/<q>`` lines; missing edges default to 0."""
    values: dict[int, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError("expected '<edge-id> <rational>'", lineno)
        try:
            e = int(parts[0])
        except ValueError:
            raise GraphFormatError(f"bad edge id {parts[0]!r}", lineno) from None
        if not 0 <= e < edge_count:
            raise GraphFormatError(f"edge id {e} out of range (graph has {edge_count} edges)",
                                   lineno)
        if e in values:
            raise GraphFormatError(f"duplicate entry for edge {e}", lineno)
        try:
            values[e] = parse_rational(parts[1])
        except ValueError:
            raise GraphFormatError(f"bad rational {parts[1]!r}", lineno) from None
    missing = [e for e in range(edge_count) if e not in values]
    if missing:
        log.warning("point file omits edges %s; using 0", missing)
    return tuple(values.get(e, Fraction(0)) for e in range(edge_count))


def parse_rational(token: str) -> Fraction:
    """Parse ``p/q`` or an integer; decimals are rejected to keep input exact."""
    if any(c in token for c in ".eE"):
        raise ValueError(f"not an exact rational: {token!r}")
    return Fraction(token)


def format_point(x: Sequence[Fraction]) -> str:
    return "".join(f"{e} {q.numerator}/{q.denominator}\n" for e, q in enumerate(x))


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((p * q for p, q in zip(a, b) if p and q), Fraction(0))


def membership(g: WeightedGraph, x: Sequence, cap: int | None = None) -> MembershipVerdict:
    """Decide whether ``x`` lies in the f-matching polytope of ``g``.

    The returned certificate has already been re-verified: member weights
    re-sum to ``x`` exactly, and a separating inequality holds on every
    f-matching while cutting off ``x``.
    """
    x = as_point(g, x)
    matchings = enumerate_all(g, cap)
    m = g.edge_count
    cols = len(matchings)
    rows = [([Fraction(1)] * cols, EQ, Fraction(1))]
    for e in range(m):
        rows.append(([Fraction(1) if e in M.edges else Fraction(0) for M in matchings],
                     EQ, x[e]))
    lp = LinearProgram.build([0] * cols, rows)
    outcome = exact_lp.solve(lp)

    if isinstance(outcome, exact_lp.Optimal):
        weights = {M: w for M, w in zip(matchings, outcome.point) if w}
        verdict: MembershipVerdict = Member(weights)
        if not _member_ok(g, x, weights):
            raise AssertionError("convex weights failed re-verification")
        return verdict

    assert isinstance(outcome, exact_lp.Infeasible)
    y = outcome.farkas
    # y0 + sum_{e in M} y_e <= 0 for every M, and y0 + y.x > 0
    coeffs, bound = _primitive(list(y[1:]), -y[0])
    verdict = NonMember(coeffs, bound)
    if not _separates(g, matchings, coeffs, bound, x):
        raise AssertionError("separating inequality failed re-verification")
    return verdict


def _primitive(a: list[Fraction], c: Fraction) -> tuple[EdgePoint, Fraction]:
    """Scale ``a.y <= c`` to coprime integer coefficients."""
    vals = a + [c]
    lcm = 1
    for q in vals:
        lcm = lcm * q.denominator // math.gcd(lcm, q.denominator)
    ints = [int(q * lcm) for q in vals]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    g = g or 1
    ints = [v // g for v in ints]
    return tuple(Fraction(v) for v in ints[:-1]), Fraction(ints[-1])


def _member_ok(g: WeightedGraph, x: EdgePoint, weights: dict[FMatching, Fraction]) -> bool:
    if any(w < 0 for w in weights.values()) or sum(weights.values()) != 1:
        return False
    total = [Fraction(0)] * g.edge_count
    for M, w in weights.items():
        for e in M.edges:
            total[e] += w
    return tuple(total) == tuple(x)


def _separates(g, matchings, coeffs, bound, x) -> bool:
    for M in matchings:
        if sum((coeffs[e] for e in M.edges), Fraction(0)) > bound:
            return False
    return _dot(coeffs, x) > bound


def member_weights_ok(g: WeightedGraph, x: Sequence, verdict: Member) -> bool:
    return _member_ok(g, as_point(g, x), verdict.weights)


def separating_check(g: WeightedGraph, functional: tuple[Sequence, Fraction],
                     x: Sequence, cap: int | None = None) -> bool:
    """True iff ``a.y <= c`` holds for every f-matching of ``g`` and fails at ``x``."""
    a, c = functional
    a = as_point(g, a)
    x = as_point(g, x)
    return _separates(g, enumerate_all(g, cap), a, Fraction(c), x)


def check_system(g: WeightedGraph, x: Sequence, variant: QSystemVariant | str,
                 cap: int | None = None, first_only: bool = False) -> list[ConstraintViolation]:
    """All violated inequalities of ``variant`` at ``x``, sorted by (kind, witness).

    Subset families are scanned over every U; for ``EDMONDS_F`` every
    F within the boundary of U is enumerated literally.
    """
    variant = QSystemVariant(variant)
    x = as_point(g, x)
    if variant is QSystemVariant.EDMONDS_1 and any(w != 1 for w in g.f):
        raise ValueError("the edmonds-1 system only applies when f is identically 1")
    check_vertex_cap(g, cap)

    found: list[ConstraintViolation] = []
    try:
        for kind in _KINDS[variant]:
            for v in _scan(g, x, variant, kind):
                found.append(v)
                if first_only:
                    raise _Stop
    except _Stop:
        pass
    found.sort(key=ConstraintViolation.sort_key)
    return found


class _Stop(Exception):
    pass


def _scan(g: WeightedGraph, x: EdgePoint, variant: QSystemVariant, kind: str):
    m, n = g.edge_count, g.vertex_count
    zero, one = Fraction(0), Fraction(1)

    if kind in ("(i)", "(1)", "(a)"):
        for e in range(m):
            if x[e] < 0:
                yield ConstraintViolation(kind, (e,), -x[e], zero)
    if kind in ("unit", "(a)"):
        for e in range(m):
            if x[e] > 1:
                yield ConstraintViolation(kind, (e,), x[e], one)

    if kind in ("(ii)", "(b)", "(2)"):
        for v, inc in enumerate(incidence(g)):
            lhs = sum((x[e] for e in inc), zero)
            rhs = Fraction(1 if kind == "(2)" else g.f[v])
            if lhs > rhs:
                yield ConstraintViolation(kind, (v,), lhs, rhs)

    if kind in ("(iii)", "(3)", "(c)"):
        emasks = edge_masks(g)
        for mask in range(1 << n):
            U = mask_members(mask)
            inner = [e for e, em in enumerate(emasks) if mask & em == em]
            base = sum((x[e] for e in inner), zero)
            if kind == "(iii)":
                rhs = Fraction(sum(g.f[v] for v in U) // 2)
                if base > rhs:
                    yield ConstraintViolation(kind, (U, ()), base, rhs)
            elif kind == "(3)":
                rhs = Fraction(len(U) // 2)
                if base > rhs:
                    yield ConstraintViolation(kind, (U, ()), base, rhs)
            else:
                fu = sum(g.f[v] for v in U)
                cut = [e for e, em in enumerate(emasks) if mask & em and mask & em != em]
                for size in range(len(cut) + 1):
                    rhs = Fraction((fu + size) // 2)
                    for F in combinations(cut, size):
                        lhs = base + sum((x[e] for e in F), zero)
                        if lhs > rhs:
                            yield ConstraintViolation(kind, (U, F), lhs, rhs)


def variant_rows(g: WeightedGraph, variant: QSystemVariant | str
                 ) -> list[tuple[tuple[Fraction, ...], str, Fraction]]:
    """The ``<=`` rows of ``variant`` as LP data (nonnegativity is left to bounds)."""
    variant = QSystemVariant(variant)
    m, n = g.edge_count, g.vertex_count
    rows = []

    def row(edges: Iterable[int], rhs: int):
        es = set(edges)
        rows.append((tuple(Fraction(1) if e in es else Fraction(0) for e in range(m)),
                     exact_lp.LE, Fraction(rhs)))

    if variant in (QSystemVariant.Q_UNIT, QSystemVariant.EDMONDS_F):
        for e in range(m):
            row([e], 1)
    for v, inc in enumerate(incidence(g)):
        row(inc, 1 if variant is QSystemVariant.EDMONDS_1 else g.f[v])
    emasks = edge_masks(g)
    for mask in range(1, 1 << n):
        U = mask_members(mask)
        inner = [e for e, em in enumerate(emasks) if mask & em == em]
        if variant is QSystemVariant.EDMONDS_F:
            fu = sum(g.f[v] for v in U)
            cut = [e for e, em in enumerate(emasks) if mask & em and mask & em != em]
            for size in range(len(cut) + 1):
                for F in combinations(cut, size):
                    if inner or F:
                        row(inner + list(F), (fu + size) // 2)
        elif inner:
            bound = len(U) // 2 if variant is QSystemVariant.EDMONDS_1 else \
                sum(g.f[v] for v in U) // 2
            row(inner, bound)
    return rows
