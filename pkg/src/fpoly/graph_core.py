"""Loopless multigraphs with positive integer vertex weights.

Vertices are dense 0-based ids. Edges are stored individually, so parallel
edges carry distinct, stable ids assigned in declaration order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union


class GraphFormatError(ValueError):
    """Raised for malformed graph or point input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapExceededError(ValueError):
    """Raised when an exhaustive scan would exceed its configured size cap."""

    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(
            f"{what} count {size} exceeds cap {cap}; rerun with a cap of at least {size}")


DEFAULT_EDGE_CAP = 20
DEFAULT_VERTEX_CAP = 20


@dataclass(frozen=True)
class Multigraph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if self.vertex_count < 1:
            raise ValueError("graph must have at least 1 vertex")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for i, (u, v) in enumerate(edges):
            if u == v:
                raise ValueError(f"edge {i} is a loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge {i} has an endpoint out of range")
        object.__setattr__(self, "edges", edges)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.vertex_count)


@dataclass(frozen=True)
class WeightedGraph:
    """The pair (G, f): a multigraph and a positive weight per vertex.

    ``names`` is only used for display and serialization; it defaults to
    ``v0, v1, ...``.
    """

    graph: Multigraph
    f: tuple[int, ...]
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        f = tuple(int(w) for w in self.f)
        if len(f) != self.graph.vertex_count:
            raise ValueError("f must assign a weight to every vertex")
        if any(w < 1 for w in f):
            raise ValueError("vertex weights must be positive integers")
        object.__setattr__(self, "f", f)
        names = tuple(self.names) or tuple(f"v{i}" for i in range(len(f)))
        if len(names) != len(f) or len(set(names)) != len(names):
            raise ValueError("vertex names must be unique, one per vertex")
        object.__setattr__(self, "names", names)

    @classmethod
    def build(cls, f: Iterable[int], edges: Iterable[tuple[int, int]],
              names: Iterable[str] = ()) -> WeightedGraph:
        f = tuple(f)
        return cls(Multigraph(len(f), tuple(edges)), f, tuple(names))

    @property
    def vertex_count(self) -> int:
        return self.graph.vertex_count

    @property
    def edge_count(self) -> int:
        return self.graph.edge_count

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self.graph.edges


GraphLike = Union[Multigraph, WeightedGraph]


def _multigraph(g: GraphLike) -> Multigraph:
    return g.graph if isinstance(g, WeightedGraph) else g


def _vertex_set(g: Multigraph, U: Iterable[int]) -> frozenset[int]:
    U = frozenset(U)
    for v in U:
        if not 0 <= v < g.vertex_count:
            raise ValueError(f"vertex {v} out of range")
    return U


def vertex_mask(U: Iterable[int]) -> int:
    mask = 0
    for v in U:
        mask |= 1 << v
    return mask


def mask_members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def induced_edges(g: GraphLike, U: Iterable[int]) -> frozenset[int]:
    """E[U]: ids of edges with both endpoints in U."""
    g = _multigraph(g)
    U = _vertex_set(g, U)
    return frozenset(i for i, (a, b) in enumerate(g.edges) if a in U and b in U)


def boundary(g: GraphLike, U: Iterable[int]) -> frozenset[int]:
    """The boundary of U: ids of edges with exactly one endpoint in U."""
    g = _multigraph(g)
    U = _vertex_set(g, U)
    return frozenset(i for i, (a, b) in enumerate(g.edges) if (a in U) != (b in U))


def cut_edges(g: GraphLike, X: Iterable[int], Y: Iterable[int]) -> frozenset[int]:
    """E(X, Y) for disjoint vertex sets X and Y."""
    g = _multigraph(g)
    X = _vertex_set(g, X)
    Y = _vertex_set(g, Y)
    if X & Y:
        raise ValueError("cut_edges requires disjoint vertex sets")
    return frozenset(
        i for i, (a, b) in enumerate(g.edges)
        if (a in X and b in Y) or (a in Y and b in X))


def degree(g: GraphLike, v: int) -> int:
    g = _multigraph(g)
    if not 0 <= v < g.vertex_count:
        raise ValueError(f"vertex {v} out of range")
    return sum((a == v) + (b == v) for a, b in g.edges)


def degrees(g: GraphLike) -> tuple[int, ...]:
    g = _multigraph(g)
    d = [0] * g.vertex_count
    for a, b in g.edges:
        d[a] += 1
        d[b] += 1
    return tuple(d)


def f_sum(g: WeightedGraph, U: Iterable[int]) -> int:
    """f(U), the total weight of a vertex set."""
    U = _vertex_set(g.graph, U)
    return sum(g.f[v] for v in U)


def incidence(g: GraphLike) -> tuple[tuple[int, ...], ...]:
    """Edge ids incident to each vertex, in id order."""
    g = _multigraph(g)
    inc: list[list[int]] = [[] for _ in range(g.vertex_count)]
    for i, (a, b) in enumerate(g.edges):
        inc[a].append(i)
        inc[b].append(i)
    return tuple(tuple(x) for x in inc)


def edge_masks(g: GraphLike) -> tuple[int, ...]:
    """Per-edge vertex bitmask, for fast subset scans."""
    g = _multigraph(g)
    return tuple((1 << a) | (1 << b) for a, b in g.edges)


def check_vertex_cap(g: GraphLike, cap: int | None) -> None:
    g = _multigraph(g)
    cap = DEFAULT_VERTEX_CAP if cap is None else cap
    if g.vertex_count > cap:
        raise CapExceededError("vertex", g.vertex_count, cap)


def check_edge_cap(g: GraphLike, cap: int | None) -> None:
    g = _multigraph(g)
    cap = DEFAULT_EDGE_CAP if cap is None else cap
    if g.edge_count > cap:
        raise CapExceededError("edge", g.edge_count, cap)


# graph file format

def parse_graph(text: str) -> WeightedGraph:
    """Parse the line-oriented graph format.

    Recognized lines are ``vertex <name> <weight>``,
    ``edge <name1> <name2> [multiplicity]`` and ``#`` comments. A
    multiplicity of n yields n consecutive edge ids.
    """
    names: list[str] = []
    weights: list[int] = []
    index: dict[str, int] = {}
    edges: list[tuple[int, int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "vertex":
            if len(parts) != 3:
                raise GraphFormatError("expected 'vertex <name> <f-weight>'", lineno)
            name = parts[1]
            if name in index:
                raise GraphFormatError(f"duplicate vertex {name!r}", lineno)
            weight = _parse_int(parts[2], "f-weight", lineno)
            if weight < 1:
                raise GraphFormatError(f"f-weight must be positive, got {weight}", lineno)
            index[name] = len(names)
            names.append(name)
            weights.append(weight)
        elif kind == "edge":
            if len(parts) not in (3, 4):
                raise GraphFormatError("expected 'edge <name1> <name2> [multiplicity]'", lineno)
            ends = []
            for name in parts[1:3]:
                if name not in index:
                    raise GraphFormatError(f"unknown vertex {name!r}", lineno)
                ends.append(index[name])
            if ends[0] == ends[1]:
                raise GraphFormatError(f"loop at vertex {parts[1]!r}", lineno)
            mult = _parse_int(parts[3], "multiplicity", lineno) if len(parts) == 4 else 1
            if mult < 1:
                raise GraphFormatError(f"multiplicity must be positive, got {mult}", lineno)
            edges.extend([(ends[0], ends[1])] * mult)
        else:
            raise GraphFormatError(f"unknown directive {kind!r}", lineno)

    if not names:
        raise GraphFormatError("graph must have at least 1 vertex")
    return WeightedGraph.build(weights, edges, names)


def _parse_int(token: str, what: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"{what} must be an integer, got {token!r}", lineno) from None


def format_graph(g: WeightedGraph) -> str:
    """Serialize to the canonical graph format.

    Runs of identical consecutive edges are folded into one line with a
    multiplicity, which preserves edge ids on re-parse.
    """
    lines = [f"vertex {name} {w}" for name, w in zip(g.names, g.f)]
    i = 0
    edges = g.edges
    while i < len(edges):
        j = i
        while j + 1 < len(edges) and edges[j + 1] == edges[i]:
            j += 1
        a, b = edges[i]
        mult = j - i + 1
        suffix = f" {mult}" if mult > 1 else ""
        lines.append(f"edge {g.names[a]} {g.names[b]}{suffix}")
        i = j + 1
    return "\n".join(lines) + "\n"
