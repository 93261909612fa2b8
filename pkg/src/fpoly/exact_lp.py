"""Exact rational linear programming.

A dense two-phase tableau simplex over :class:`fractions.Fraction` with
Bland's smallest-index rule, plus a certificate checker that verifies an
outcome from the LP data alone.

Certificates use the following conventions, always for the problem written
as a minimization (a maximization is checked as ``min -c.x``):

* ``Optimal.dual`` holds one multiplier per row, ``<=0`` on ``<=`` rows,
  ``>=0`` on ``>=`` rows and free on ``=`` rows. The reduced costs
  ``d = c - A^T y`` are ``>=0`` on bounded variables and ``0`` on free ones,
  and ``y.b + d.lb`` equals the primal value.
* ``Infeasible.farkas`` has the same sign pattern; ``d = A^T y`` is ``<=0`` on
  bounded variables and ``0`` on free ones, and ``d.lb < y.b``.
* ``Unbounded`` carries a feasible point and a ray ``r`` with ``A r`` obeying
  each row's relation against 0, ``r >= 0`` on bounded variables, and
  ``c.r < 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

Number = Union[int, Fraction]

LE, EQ, GE = "<=", "=", ">="
_RELATIONS = (LE, EQ, GE)
MIN, MAX = "min", "max"


@dataclass(frozen=True)
class Row:
    coefficients: tuple[Fraction, ...]
    relation: str
    rhs: Fraction


@dataclass(frozen=True)
class LinearProgram:
    """``direction`` of ``objective . x`` subject to ``rows``.

    ``lower_bounds`` gives one entry per variable; ``None`` marks a free
    variable. Omitting the tuple means every variable is ``>= 0``.
    """

    variable_count: int
    rows: tuple[Row, ...]
    objective: tuple[Fraction, ...]
    direction: str = MIN
    lower_bounds: Optional[tuple[Optional[Fraction], ...]] = None

    def __post_init__(self) -> None:
        n = self.variable_count
        if len(self.objective) != n:
            raise ValueError(f"objective has length {len(self.objective)}, expected {n}")
        for i, row in enumerate(self.rows):
            if len(row.coefficients) != n:
                raise ValueError(f"row {i} has {len(row.coefficients)} coefficients, expected {n}")
            if row.relation not in _RELATIONS:
                raise ValueError(f"row {i} has unknown relation {row.relation!r}")
        if self.direction not in (MIN, MAX):
            raise ValueError(f"unknown direction {self.direction!r}")
        if self.lower_bounds is not None and len(self.lower_bounds) != n:
            raise ValueError("lower_bounds must have one entry per variable")

    @classmethod
    def build(cls, objective: Sequence[Number],
              rows: Iterable[tuple[Sequence[Number], str, Number]],
              direction: str = MIN,
              lower_bounds: Optional[Sequence[Optional[Number]]] = None) -> LinearProgram:
        obj = tuple(Fraction(c) for c in objective)
        built = tuple(
            Row(tuple(Fraction(a) for a in coeffs), rel, Fraction(rhs))
            for coeffs, rel, rhs in rows)
        lbs = None
        if lower_bounds is not None:
            lbs = tuple(None if b is None else Fraction(b) for b in lower_bounds)
        return cls(len(obj), built, obj, direction, lbs)

    def bounds(self) -> tuple[Optional[Fraction], ...]:
        if self.lower_bounds is None:
            return (Fraction(0),) * self.variable_count
        return self.lower_bounds

    def min_objective(self) -> tuple[Fraction, ...]:
        if self.direction == MAX:
            return tuple(-c for c in self.objective)
        return self.objective


@dataclass(frozen=True)
class Optimal:
    value: Fraction
    point: tuple[Fraction, ...]
    dual: Optional[tuple[Fraction, ...]] = None


@dataclass(frozen=True)
class Infeasible:
    farkas: tuple[Fraction, ...]


@dataclass(frozen=True)
class Unbounded:
    point: tuple[Fraction, ...]
    ray: tuple[Fraction, ...]


LPOutcome = Union[Optimal, Infeasible, Unbounded]


class CyclingError(RuntimeError):
    """Raised when a basis repeats under a pivot rule without anti-cycling."""


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b) if x and y), Fraction(0))


class _Tableau:
    """Standard-form tableau ``A' x' = b', x' >= 0`` with ``b' >= 0``."""

    def __init__(self, lp: LinearProgram):
        self.lp = lp
        bounds = lp.bounds()
        cost = lp.min_objective()

        # structural columns: (original variable, sign)
        self.struct: list[tuple[int, int]] = []
        for j, lb in enumerate(bounds):
            self.struct.append((j, 1))
            if lb is None:
                self.struct.append((j, -1))
        ns = len(self.struct)
        m = len(lp.rows)

        self.signs: list[int] = []
        relations: list[str] = []
        body: list[list[Fraction]] = []
        rhs: list[Fraction] = []
        for row in lp.rows:
            shifted = row.rhs - sum(
                (a * lb for a, lb in zip(row.coefficients, bounds) if lb is not None and a),
                Fraction(0))
            coeffs = [row.coefficients[j] * s for j, s in self.struct]
            rel = row.relation
            sign = 1
            if shifted < 0:
                sign = -1
                shifted = -shifted
                coeffs = [-a for a in coeffs]
                rel = {LE: GE, GE: LE, EQ: EQ}[rel]
            self.signs.append(sign)
            relations.append(rel)
            body.append(coeffs)
            rhs.append(shifted)

        slack_rows = [i for i in range(m) if relations[i] != EQ]
        art_rows = [i for i in range(m) if relations[i] != LE]
        self.slack_start = ns
        self.art_start = ns + len(slack_rows)
        self.ncols = self.art_start + len(art_rows)
        self.init_basis = [0] * m
        self.init_cost = [Fraction(0)] * self.ncols

        self.T: list[list[Fraction]] = []
        for i in range(m):
            self.T.append(body[i] + [Fraction(0)] * (self.ncols - ns) + [rhs[i]])
        for k, i in enumerate(slack_rows):
            col = self.slack_start + k
            self.T[i][col] = Fraction(1 if relations[i] == LE else -1)
            if relations[i] == LE:
                self.init_basis[i] = col
        for k, i in enumerate(art_rows):
            col = self.art_start + k
            self.T[i][col] = Fraction(1)
            self.init_basis[i] = col
        self.basis = list(self.init_basis)

        self.cost = [Fraction(0)] * self.ncols
        for k, (j, s) in enumerate(self.struct):
            self.cost[k] = cost[j] * s
        self.constant = sum((c * lb for c, lb in zip(cost, bounds) if lb is not None and c),
                            Fraction(0))
        self.z: list[Fraction] = []

    def price(self, cost: Sequence[Fraction]) -> None:
        z = list(cost) + [Fraction(0)]
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.T[i]
                for j, a in enumerate(row):
                    if a:
                        z[j] -= cb * a
        self.z = z

    def pivot(self, r: int, col: int) -> None:
        prow = self.T[r]
        pv = prow[col]
        if pv != 1:
            prow = [a / pv if a else a for a in prow]
            self.T[r] = prow
        nz = [j for j, a in enumerate(prow) if a]
        for i, row in enumerate(self.T):
            if i != r:
                factor = row[col]
                if factor:
                    for j in nz:
                        row[j] -= factor * prow[j]
        factor = self.z[col]
        if factor:
            z = self.z
            for j in nz:
                z[j] -= factor * prow[j]
        self.basis[r] = col

    def run(self, rule: str, max_iterations: Optional[int]) -> Optional[int]:
        """Pivot to optimality; returns an unbounded entering column or None."""
        limit = self.art_start
        seen: set[tuple[int, ...]] = set()
        iterations = 0
        while True:
            z = self.z
            if rule == "bland":
                enter = next((j for j in range(limit) if z[j] < 0), None)
            else:
                enter = None
                best = Fraction(0)
                for j in range(limit):
                    if z[j] < best:
                        best, enter = z[j], j
            if enter is None:
                return None
            leave = None
            best_ratio = None
            for i, row in enumerate(self.T):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    if (best_ratio is None or ratio < best_ratio
                            or (ratio == best_ratio and self.basis[i] < self.basis[leave])):
                        best_ratio, leave = ratio, i
            if leave is None:
                return enter
            self.pivot(leave, enter)
            iterations += 1
            if max_iterations is not None and iterations > max_iterations:
                raise CyclingError(f"no termination within {max_iterations} pivots")
            if rule != "bland":
                key = tuple(sorted(self.basis))
                if key in seen:
                    raise CyclingError("basis repeated: the pivot rule is cycling")
                seen.add(key)

    def multipliers(self, init_cost: Sequence[Fraction]) -> list[Fraction]:
        """Simplex multipliers ``c_B B^-1`` read off the initial basis columns."""
        return [init_cost[c] - self.z[c] for c in self.init_basis]

    def std_point(self) -> list[Fraction]:
        x = [Fraction(0)] * self.ncols
        for i, b in enumerate(self.basis):
            x[b] = self.T[i][-1]
        return x

    def original(self, std: Sequence[Fraction], shift: bool = True) -> tuple[Fraction, ...]:
        bounds = self.lp.bounds()
        out = [(lb if (shift and lb is not None) else Fraction(0)) for lb in bounds]
        for k, (j, s) in enumerate(self.struct):
            if std[k]:
                out[j] += s * std[k]
        return tuple(out)


def solve(lp: LinearProgram, rule: str = "bland",
          max_iterations: Optional[int] = None) -> LPOutcome:
    """Solve ``lp`` exactly.

    ``rule="bland"`` (smallest index) guarantees termination. ``"dantzig"``
    (most negative reduced cost) is kept for comparison only; it raises
    :class:`CyclingError` when it revisits a basis.
    """
    if rule not in ("bland", "dantzig"):
        raise ValueError(f"unknown pivot rule {rule!r}")
    tab = _Tableau(lp)
    m = len(lp.rows)

    if tab.art_start < tab.ncols:
        phase1 = [Fraction(0)] * tab.ncols
        for c in range(tab.art_start, tab.ncols):
            phase1[c] = Fraction(1)
        tab.price(phase1)
        tab.run(rule, max_iterations)
        if tab.z[-1] != 0:
            y = tab.multipliers(phase1)
            return Infeasible(tuple(s * yi for s, yi in zip(tab.signs, y)))
        for i in range(m):
            if tab.basis[i] >= tab.art_start:
                row = tab.T[i]
                col = next((j for j in range(tab.art_start) if row[j]), None)
                if col is not None:
                    tab.pivot(i, col)

    tab.price(tab.cost)
    enter = tab.run(rule, max_iterations)
    std = tab.std_point()
    point = tab.original(std)
    if enter is not None:
        direction = [Fraction(0)] * tab.ncols
        direction[enter] = Fraction(1)
        for i, b in enumerate(tab.basis):
            direction[b] = -tab.T[i][enter]
        return Unbounded(point, tab.original(direction, shift=False))

    y = tab.multipliers([Fraction(0)] * tab.ncols)
    dual = tuple(s * yi for s, yi in zip(tab.signs, y))
    return Optimal(_dot(lp.objective, point), point, dual)


def _row_ok(lhs: Fraction, rel: str, rhs: Fraction) -> bool:
    if rel == LE:
        return lhs <= rhs
    if rel == GE:
        return lhs >= rhs
    return lhs == rhs


def _sign_ok(y: Fraction, rel: str) -> bool:
    if rel == LE:
        return y <= 0
    if rel == GE:
        return y >= 0
    return True


def is_feasible(lp: LinearProgram, x: Sequence[Fraction]) -> bool:
    if len(x) != lp.variable_count:
        raise ValueError("point has the wrong dimension")
    for xj, lb in zip(x, lp.bounds()):
        if lb is not None and xj < lb:
            return False
    return all(_row_ok(_dot(r.coefficients, x), r.relation, r.rhs) for r in lp.rows)


def _transpose_times(lp: LinearProgram, y: Sequence[Fraction]) -> list[Fraction]:
    d = [Fraction(0)] * lp.variable_count
    for yi, row in zip(y, lp.rows):
        if yi:
            for j, a in enumerate(row.coefficients):
                if a:
                    d[j] += yi * a
    return d


def check_certificate(lp: LinearProgram, outcome: LPOutcome) -> bool:
    """Verify ``outcome`` against ``lp`` using rational arithmetic only."""
    n, m = lp.variable_count, len(lp.rows)
    bounds = lp.bounds()
    cost = lp.min_objective()

    if isinstance(outcome, Optimal):
        if len(outcome.point) != n:
            raise ValueError("point has the wrong dimension")
        if outcome.dual is None:
            return False
        if len(outcome.dual) != m:
            raise ValueError("dual has the wrong dimension")
        x, y = outcome.point, outcome.dual
        if not is_feasible(lp, x) or outcome.value != _dot(lp.objective, x):
            return False
        if not all(_sign_ok(yi, r.relation) for yi, r in zip(y, lp.rows)):
            return False
        aty = _transpose_times(lp, y)
        d = [c - a for c, a in zip(cost, aty)]
        for dj, lb in zip(d, bounds):
            if (lb is None and dj != 0) or (lb is not None and dj < 0):
                return False
        dual_value = _dot(y, [r.rhs for r in lp.rows]) + sum(
            (dj * lb for dj, lb in zip(d, bounds) if lb is not None), Fraction(0))
        return dual_value == _dot(cost, x)

    if isinstance(outcome, Infeasible):
        y = outcome.farkas
        if len(y) != m:
            raise ValueError("Farkas vector has the wrong dimension")
        if not all(_sign_ok(yi, r.relation) for yi, r in zip(y, lp.rows)):
            return False
        d = _transpose_times(lp, y)
        for dj, lb in zip(d, bounds):
            if (lb is None and dj != 0) or (lb is not None and dj > 0):
                return False
        best = sum((dj * lb for dj, lb in zip(d, bounds) if lb is not None), Fraction(0))
        return best < _dot(y, [r.rhs for r in lp.rows])

    if isinstance(outcome, Unbounded):
        x, r = outcome.point, outcome.ray
        if len(x) != n or len(r) != n:
            raise ValueError("point or ray has the wrong dimension")
        if not is_feasible(lp, x):
            return False
        for rj, lb in zip(r, bounds):
            if lb is not None and rj < 0:
                return False
        for row in lp.rows:
            if not _row_ok(_dot(row.coefficients, r), row.relation, Fraction(0)):
                return False
        return _dot(cost, r) < 0

    raise TypeError(f"not an LP outcome: {outcome!r}")
