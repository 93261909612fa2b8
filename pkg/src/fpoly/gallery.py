"""The counterexample graphs, their machine-checkable claims, and a random sweep.

Each gallery item bundles a weighted graph, an optional witness point and a
list of claims; :func:`verify` evaluates every claim by calling the other
modules. :func:`sweep` stress-tests the identities on seeded random graphs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import exact_lp
from .chromatic import (
    COVER_MAXIMAL, EQUALITY_ALL, bounds_report, exact_index, frac_index_formula, frac_index_lp,
)
from .exact_lp import LinearProgram
from .graph_core import (
    WeightedGraph, boundary, degree, degrees, f_sum, induced_edges, incidence,
)
from .matching import enumerate_all, indicator
from .parameters import delta_star, parameter_report
from .polytope import (
    EdgePoint, QSystemVariant, check_system, membership, separating_check, variant_rows,
)


@dataclass(frozen=True)
class Claim:
    description: str
    check: Callable[[], bool] = field(compare=False)


@dataclass(frozen=True)
class GalleryItem:
    name: str
    graph: WeightedGraph
    witness: Optional[EdgePoint]
    claims: tuple[Claim, ...]
    notes: str = ""


@dataclass(frozen=True)
class ClaimResult:
    description: str
    passed: bool


@dataclass(frozen=True)
class Verification:
    name: str
    results: tuple[ClaimResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)


def verify(item: GalleryItem) -> Verification:
    return Verification(item.name, tuple(ClaimResult(c.description, bool(c.check()))
                                         for c in item.claims))


def _cap(g: WeightedGraph) -> int:
    return max(20, g.edge_count, g.vertex_count)


def _nonmember(g: WeightedGraph, x: EdgePoint) -> bool:
    cap = _cap(g)
    verdict = membership(g, x, cap)
    return not verdict.is_member and separating_check(g, verdict.functional, x, cap)


def _clean(g: WeightedGraph, x: EdgePoint, variant: QSystemVariant) -> bool:
    return check_system(g, x, variant, cap=_cap(g)) == []


# graph constructors

def example1_graph() -> WeightedGraph:
    return WeightedGraph.build([2, 2], [(0, 1), (0, 1)], ["a", "b"])


def example2_graph(k: int) -> WeightedGraph:
    """Odd cycle u=c0, c1, ..., c(k-1) plus u' joined to u by two edges.

    Edge ids: cycle edges c(i)c(i+1) are 0..k-1, then e1 = k and e2 = k+1.
    """
    if k < 3 or k % 2 == 0:
        raise ValueError(f"k must be an odd integer >= 3, got {k}")
    names = ["u"] + [f"c{i}" for i in range(1, k)] + ["u'"]
    edges = [(i, (i + 1) % k) for i in range(k)] + [(0, k), (0, k)]
    return WeightedGraph.build([2] + [1] * (k - 1) + [2], edges, names)


def example2_point(k: int) -> EdgePoint:
    half = Fraction(1, 2)
    return tuple([half] * k + [Fraction(1), Fraction(0)])


def example3_graph(k: int) -> WeightedGraph:
    """Vertices v1..v6 (ids 0..5), f = 2 everywhere.

    Edge ids: v1v4 first, then k copies each of v1v2, v1v3, v4v5, v4v6, then
    k+1 copies each of v2v3 and v5v6.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    edges = ([(0, 3)] + [(0, 1)] * k + [(0, 2)] * k + [(3, 4)] * k + [(3, 5)] * k
             + [(1, 2)] * (k + 1) + [(4, 5)] * (k + 1))
    return WeightedGraph.build([2] * 6, edges, [f"v{i}" for i in range(1, 7)])


# the two chords of the 4-cycle a-b-c-d-a, with f(a) = f(b) = 2
C4_CHORDS = {"a-c": (0, 2), "b-d": (1, 3)}


def c4_chord_graph(chord: str = "a-c") -> WeightedGraph:
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), C4_CHORDS[chord]]
    return WeightedGraph.build([2, 2, 1, 1], edges, ["a", "b", "c", "d"])


# gallery items

def example1() -> GalleryItem:
    g = example1_graph()
    x = (Fraction(2), Fraction(0))
    claims = (
        Claim("x = (2, 0) satisfies the system without unit bounds",
              lambda: _clean(g, x, QSystemVariant.Q_ORIGINAL)),
        Claim("x violates the unit bound at edge 0 (2 > 1)",
              lambda: [(v.kind, v.witness, v.lhs, v.rhs)
                       for v in check_system(g, x, QSystemVariant.Q_UNIT)]
              == [("unit", (0,), 2, 1)]),
        Claim("x is outside the f-matching polytope (verified separating inequality)",
              lambda: _nonmember(g, x)),
        Claim("fractional maximum f-degree is 1", lambda: delta_star(g) == 1),
        Claim("f-chromatic index is 1", lambda: exact_index(g)[0] == 1),
    )
    return GalleryItem("example1", g, x, claims)


def example2(k: int = 3) -> GalleryItem:
    g = example2_graph(k)
    x = example2_point(k)
    claims = (
        Claim("f(v) <= d(v) at every vertex",
              lambda: all(w <= d for w, d in zip(g.f, degrees(g)))),
        Claim("x satisfies the system with unit bounds",
              lambda: _clean(g, x, QSystemVariant.Q_UNIT)),
        Claim("x is outside the f-matching polytope (verified separating inequality)",
              lambda: _nonmember(g, x)),
        Claim("boundary sums: x(u) = 2, x(u') = 1, x(v) = 1 elsewhere",
              lambda: _boundary_sums(g, x) == [2] + [1] * (k - 1) + [1]),
        Claim("|E[U]| <= f(U) - 1 for every nonempty U",
              lambda: example2_case_bound_holds(g)),
        Claim("x violates some subset-boundary inequality of the f-matching system",
              lambda: any(v.kind == "(c)" for v in
                          check_system(g, x, QSystemVariant.EDMONDS_F, first_only=True))),
    )
    return GalleryItem(f"example2(k={k})", g, x, claims)


def _boundary_sums(g: WeightedGraph, x: EdgePoint) -> list[Fraction]:
    return [sum((x[e] for e in inc), Fraction(0)) for inc in incidence(g)]


def example2_case_bound_holds(g: WeightedGraph) -> bool:
    """|E[U]| <= f(U) - 1 over every nonempty vertex set U."""
    n = g.vertex_count
    for mask in range(1, 1 << n):
        U = [v for v in range(n) if mask >> v & 1]
        if len(induced_edges(g, U)) > f_sum(g, U) - 1:
            return False
    return True


def c4_chord() -> GalleryItem:
    """The 4-cycle with a chord, two consecutive vertices of weight 2.

    Which chord is meant is left open, so both are searched; the two
    placements are mirror images of each other, and the first one that
    yields a witness is kept.
    """
    tried = []
    for chord in C4_CHORDS:
        g = c4_chord_graph(chord)
        x = find_witness(g, QSystemVariant.Q_UNIT)
        tried.append(chord)
        if x is not None:
            break
    claims = (
        Claim("the graph is simple", lambda: len(set(map(frozenset, g.edges))) == g.edge_count),
        Claim("a witness point was found", lambda: x is not None),
        Claim("the witness satisfies the system with unit bounds",
              lambda: x is not None and _clean(g, x, QSystemVariant.Q_UNIT)),
        Claim("the witness is outside the f-matching polytope",
              lambda: x is not None and _nonmember(g, x)),
    )
    return GalleryItem("c4_chord", g, x, claims, notes=f"chord {chord}; tried {', '.join(tried)}")


def example3(k: int = 1) -> GalleryItem:
    g = example3_graph(k)
    cap = _cap(g)
    U = (0, 1, 2)
    cache: dict = {}

    def params():
        if "p" not in cache:
            cache["p"] = parameter_report(g, cap)
        return cache["p"]

    def chi_star():
        if "chi" not in cache:
            cache["chi"] = frac_index_lp(g, COVER_MAXIMAL, cap)[0]
        return cache["chi"]

    def gamma_at_witness() -> Fraction:
        F = boundary(g, U)
        inner = len(induced_edges(g, U))
        return Fraction(inner + 1, (f_sum(g, U) + 1) // 2) if len(F) >= 1 else Fraction(0)

    target = k + Fraction(2, 3)
    claims = (
        Claim(f"every vertex has degree {2 * k + 1}",
              lambda: all(degree(g, v) == 2 * k + 1 for v in g.graph.vertices())),
        Claim(f"fractional maximum f-degree is {k} + 1/2",
              lambda: params().delta_star == k + Fraction(1, 2)),
        Claim("fractional f-density <= fractional maximum f-degree",
              lambda: params().density_star <= params().delta_star),
        Claim("U = {v1, v2, v3} with |F| = 1 attains (3k+2)/3",
              lambda: boundary(g, U) == frozenset({0}) and gamma_at_witness() == target),
        Claim(f"boundary density >= {k} + 2/3",
              lambda: params().gamma_star >= target),
        Claim("fractional f-chromatic index > max(fractional f-degree, fractional f-density)",
              lambda: chi_star() > max(params().delta_star, params().density_star)),
        Claim("fractional f-chromatic index = max(fractional f-degree, boundary density)",
              lambda: chi_star() == frac_index_formula(g, cap)),
    )
    return GalleryItem(f"example3(k={k})", g, None, claims)


GALLERY = {
    "example1": "two vertices, two parallel edges, f = 2: x = (2, 0)",
    "example2": "odd cycle plus a doubled pendant edge (--k odd >= 3)",
    "c4_chord": "simple 4-cycle with a chord, witness found by search",
    "example3": "six-vertex multigraph where the f-density formula fails (--k >= 1)",
}


def get_item(name: str, k: Optional[int] = None) -> GalleryItem:
    if name == "example1":
        return example1()
    if name == "example2":
        return example2(3 if k is None else k)
    if name == "c4_chord":
        return c4_chord()
    if name == "example3":
        return example3(1 if k is None else k)
    raise KeyError(f"unknown gallery item {name!r}; choose from {', '.join(GALLERY)}")


# witness search

def witness_directions(g: WeightedGraph, random_count: int = 24, seed: int = 0,
                       subset_directions: bool = True) -> list[tuple[int, ...]]:
    """Objective directions, deduplicated, in this order: unit vectors,
    per-vertex incidence sums (plain and signed against the other edges),
    the edge sets E[U] + F of every subset-boundary inequality, then seeded
    integer directions.

    If the relaxed system admits a point outside the f-matching polytope,
    that point breaks a unit bound or a subset-boundary inequality, so the
    first three families already reach a witness vertex.
    """
    m = g.edge_count
    dirs: list[tuple[int, ...]] = []
    for e in range(m):
        dirs.append(tuple(int(i == e) for i in range(m)))
    for inc in incidence(g):
        s = set(inc)
        dirs.append(tuple(int(e in s) for e in range(m)))
        dirs.append(tuple(1 if e in s else -1 for e in range(m)))
    if subset_directions:
        for coeffs, _rel, _rhs in variant_rows(g, QSystemVariant.EDMONDS_F):
            dirs.append(tuple(int(c) for c in coeffs))
    rng = random.Random(seed)
    for _ in range(random_count):
        dirs.append(tuple(rng.randint(-3, 3) for _ in range(m)))
    seen = set()
    out = []
    for d in dirs:
        if d not in seen and any(d):
            seen.add(d)
            out.append(d)
    return out


def find_witness(g: WeightedGraph, variant: QSystemVariant | str,
                 cap: int | None = None, random_count: int = 24,
                 seed: int = 0, subset_directions: bool = True) -> Optional[EdgePoint]:
    """A vertex of the variant's polyhedron outside the f-matching polytope.

    Vertices are reached by maximizing a deterministic family of directions;
    ``None`` does not prove that the polyhedron equals the polytope.
    """
    variant = QSystemVariant(variant)
    if g.edge_count == 0:
        return None
    cap = _cap(g) if cap is None else cap
    rows = variant_rows(g, variant)
    tested: set[EdgePoint] = set()
    for direction in witness_directions(g, random_count, seed, subset_directions):
        lp = LinearProgram.build(direction, rows, direction=exact_lp.MAX)
        outcome = exact_lp.solve(lp)
        if not isinstance(outcome, exact_lp.Optimal):
            continue
        x = outcome.point
        if x in tested:
            continue
        tested.add(x)
        if not membership(g, x, cap).is_member:
            return x
    return None


# random graphs and the sweep

def random_weighted_graph(max_vertices: int, max_edges: int, max_f: int, seed: int,
                          uniform_f: Optional[int] = None) -> WeightedGraph:
    """Seeded loopless multigraph; ``uniform_f`` forces a constant weight."""
    if min(max_vertices, max_edges, max_f) < 1:
        raise ValueError("limits must be >= 1")
    rng = random.Random(seed)
    n = rng.randint(min(2, max_vertices), max_vertices)
    edges = []
    if n >= 2:
        for _ in range(rng.randint(1, max_edges)):
            a, b = rng.sample(range(n), 2)
            edges.append((a, b))
    f = [uniform_f if uniform_f is not None else rng.randint(1, max_f) for _ in range(n)]
    return WeightedGraph.build(f, edges)


@dataclass(frozen=True)
class SweepLimits:
    max_vertices: int = 5
    max_edges: int = 8
    max_f: int = 3
    points_per_graph: int = 2
    hunt_witnesses: bool = True


@dataclass
class SweepReport:
    instances_tested: int = 0
    seed: int = 0
    corollary3_confirmed: int = 0
    corollary4_confirmed: int = 0
    lemma5_confirmed: int = 0
    theorem3_confirmed: int = 0
    theorem2_confirmed: int = 0
    mode_agreement_confirmed: int = 0
    bounds_confirmed: int = 0
    gamma_exceeds_density_count: int = 0
    conjecture1_exceptions: list = field(default_factory=list)
    qf_gap_witnesses: list = field(default_factory=list)
    failures: list = field(default_factory=list)


def sample_points(g: WeightedGraph, count: int, rng: random.Random) -> list[EdgePoint]:
    """Alternate random rational points in [0, 1] with convex combinations
    of two f-matchings (which always lie in the polytope)."""
    m = g.edge_count
    matchings = enumerate_all(g, _cap(g))
    points = []
    for i in range(count):
        if i % 2 == 0:
            points.append(tuple(Fraction(rng.randint(0, q), q)
                                for q in (rng.choice((1, 2, 3, 4)) for _ in range(m))))
        else:
            M1, M2 = rng.choice(matchings), rng.choice(matchings)
            t = Fraction(rng.randint(0, 4), 4)
            a, b = indicator(g, M1), indicator(g, M2)
            points.append(tuple(t * p + (1 - t) * q for p, q in zip(a, b)))
    return points


def check_instance(g: WeightedGraph, report: SweepReport, label: str,
                   rng: random.Random, limits: SweepLimits) -> None:
    """Run every identity on one graph and update ``report`` in place."""
    cap = _cap(g)

    def fail(what: str) -> None:
        report.failures.append(f"{label}: {what}")

    report.instances_tested += 1
    params = parameter_report(g, cap)
    chi_star, _ = frac_index_lp(g, COVER_MAXIMAL, cap)
    chi_star_eq, _ = frac_index_lp(g, EQUALITY_ALL, cap)
    if chi_star == chi_star_eq:
        report.mode_agreement_confirmed += 1
    else:
        fail(f"LP modes disagree: {chi_star} vs {chi_star_eq}")

    if all(w == 1 for w in g.f):
        if chi_star == max(params.delta_star, params.density_star):
            report.corollary3_confirmed += 1
        else:
            fail("fractional index differs from max(degree, density) with f = 1")
    if params.delta_star >= 1:
        if chi_star == max(params.delta_star, params.gamma_star):
            report.corollary4_confirmed += 1
        else:
            fail("fractional index differs from max(degree, boundary density)")
    if max(params.delta + 1, params.gamma) == max(params.delta + 1, params.density):
        report.lemma5_confirmed += 1
    else:
        fail("max(degree + 1, boundary density) differs from max(degree + 1, density)")
    if params.gamma_star > params.density_star:
        report.gamma_exceeds_density_count += 1

    b = bounds_report(g, cap)
    if b.proven_bounds_ok and b.chi_star_f == chi_star:
        report.bounds_confirmed += 1
    else:
        fail(f"bound check failed: {b}")
    if not b.conjecture1_ok:
        report.conjecture1_exceptions.append(g)

    unit = all(w == 1 for w in g.f)
    for x in sample_points(g, limits.points_per_graph, rng):
        verdict = membership(g, x, cap)
        if verdict.is_member == (check_system(g, x, QSystemVariant.EDMONDS_F, cap) == []):
            report.theorem3_confirmed += 1
        else:
            fail(f"membership disagrees with the f-matching system at {x}")
        if unit:
            if verdict.is_member == (check_system(g, x, QSystemVariant.EDMONDS_1, cap) == []):
                report.theorem2_confirmed += 1
            else:
                fail(f"membership disagrees with the matching system at {x}")
        if verdict.is_member and (check_system(g, x, QSystemVariant.Q_UNIT, cap)
                                  or check_system(g, x, QSystemVariant.Q_ORIGINAL, cap)):
            fail(f"polytope member violates a relaxed system at {x}")

    if limits.hunt_witnesses and g.edge_count:
        x = find_witness(g, QSystemVariant.Q_UNIT, cap, random_count=0,
                         subset_directions=False)
        if x is not None:
            if _clean(g, x, QSystemVariant.Q_UNIT) and _nonmember(g, x):
                report.qf_gap_witnesses.append((g, x))
            else:
                fail(f"witness {x} does not re-verify")


def sweep_pool_gallery() -> list[tuple[str, WeightedGraph]]:
    return [
        ("example1", example1_graph()),
        ("example2(k=3)", example2_graph(3)),
        ("example3(k=1)", example3_graph(1)),
        ("c4_chord", c4_chord_graph()),
    ]


def sweep(count: int, seed: int, limits: SweepLimits = SweepLimits()) -> SweepReport:
    """Check ``count`` seeded random graphs (every third with f = 1) plus the
    gallery graphs. A nonempty ``failures`` list means a bug."""
    report = SweepReport(seed=seed)
    if count <= 0:
        return report
    rng = random.Random(seed)
    for name, g in sweep_pool_gallery():
        check_instance(g, report, name, rng, limits)
    for i in range(count):
        sub = rng.randrange(2 ** 32)
        g = random_weighted_graph(limits.max_vertices, limits.max_edges, limits.max_f, sub,
                                  uniform_f=1 if i % 3 == 0 else None)
        check_instance(g, report, f"random #{i} (seed {sub})", rng, limits)
    return report
