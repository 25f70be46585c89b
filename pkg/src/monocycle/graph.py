"""Two-edge-colored simple graphs, bipartite views and checkable certificates.

Adjacency is stored per color as one integer bitset per vertex. An edge that
carries both colors simply appears in both relations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union


class GraphError(ValueError):
    """Raised for malformed graph input (loops, bad vertex ids, empty colorsets)."""


class Color(enum.Enum):
    RED = "R"
    BLUE = "B"

    def swap(self) -> "Color":
        return Color.BLUE if self is Color.RED else Color.RED

    @property
    def label(self) -> str:
        return "Red" if self is Color.RED else "Blue"

    @classmethod
    def parse(cls, token: str) -> "Color":
        token = token.strip()
        for c in cls:
            if token.upper() in (c.value, c.label.upper()):
                return c
        raise GraphError(f"unknown color {token!r}")


COLORS = (Color.RED, Color.BLUE)


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class SimpleGraph:
    """Uncolored simple graph; ``color`` records which view it came from, if any."""

    n: int
    adj: tuple[int, ...]
    color: Color | None = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], color: Color | None = None) -> "SimpleGraph":
        adj = [0] * n
        for u, v in edges:
            _check_pair(n, u, v)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), color)

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "SimpleGraph":
        left = (1 << a) - 1
        right = ((1 << b) - 1) << a
        return cls(a + b, tuple(right if v < a else left for v in range(a + b)))

    def mask(self, v: int, color: Color | None = None) -> int:
        return self.adj[v]

    def has_edge(self, u: int, v: int, color: Color | None = None) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def with_edge(self, u: int, v: int) -> "SimpleGraph":
        _check_pair(self.n, u, v)
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return SimpleGraph(self.n, tuple(adj), self.color)

    def without_edge(self, u: int, v: int) -> "SimpleGraph":
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return SimpleGraph(self.n, tuple(adj), self.color)

    def induced(self, vertices: Iterable[int]) -> "SimpleGraph":
        """Same vertex ids; edges leaving ``vertices`` are dropped."""
        keep = to_mask(vertices)
        return SimpleGraph(
            self.n, tuple(a & keep if keep >> v & 1 else 0 for v, a in enumerate(self.adj)), self.color
        )


@dataclass(frozen=True)
class ColoredGraph:
    """Simple graph on ``range(n)`` whose edges carry a nonempty subset of {Red, Blue}."""

    n: int
    red: tuple[int, ...]
    blue: tuple[int, ...]

    def adj(self, color: Color) -> tuple[int, ...]:
        return self.red if color is Color.RED else self.blue

    def mask(self, v: int, color: Color | None = None) -> int:
        if color is None:
            return self.red[v] | self.blue[v]
        return self.adj(color)[v]

    def has_edge(self, u: int, v: int, color: Color | None = None) -> bool:
        return bool(self.mask(u, color) >> v & 1)

    def colors_of(self, u: int, v: int) -> frozenset[Color]:
        return frozenset(c for c in COLORS if self.adj(c)[u] >> v & 1)

    def degree(self, v: int, color: Color | None = None) -> int:
        return self.mask(v, color).bit_count()

    def min_degree(self) -> int:
        return min((self.degree(v) for v in range(self.n)), default=0)

    def edges(self) -> list[tuple[int, int, frozenset[Color]]]:
        out = []
        for u in range(self.n):
            for v in bits(self.mask(u) >> (u + 1) << (u + 1)):
                out.append((u, v, self.colors_of(u, v)))
        return out

    def edge_count(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def underlying(self) -> SimpleGraph:
        return SimpleGraph(self.n, tuple(r | b for r, b in zip(self.red, self.blue)))

    def swap_colors(self) -> "ColoredGraph":
        return ColoredGraph(self.n, self.blue, self.red)

    def relabel(self, perm: Sequence[int]) -> "ColoredGraph":
        """Vertex ``v`` becomes ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabeling must be a permutation of the vertex set")
        return build(
            self.n, [(perm[u], perm[v], cs) for u, v, cs in self.edges()]
        )

    def with_edge(self, u: int, v: int, color: Color) -> "ColoredGraph":
        _check_pair(self.n, u, v)
        red, blue = list(self.red), list(self.blue)
        target = red if color is Color.RED else blue
        target[u] |= 1 << v
        target[v] |= 1 << u
        return ColoredGraph(self.n, tuple(red), tuple(blue))


GraphLike = Union[ColoredGraph, SimpleGraph]

_TOKENS = {"R": frozenset({Color.RED}), "B": frozenset({Color.BLUE}), "RB": frozenset(COLORS)}


def colorset(spec) -> frozenset[Color]:
    """Accept a Color, a token like ``"RB"``, or an iterable of colors/tokens."""
    if isinstance(spec, Color):
        return frozenset({spec})
    if isinstance(spec, str):
        try:
            return _TOKENS[spec]
        except KeyError:
            raise GraphError(f"bad color token {spec!r}") from None
    out = frozenset(c if isinstance(c, Color) else Color.parse(c) for c in spec)
    return out


def _check_pair(n: int, u: int, v: int) -> None:
    if not (0 <= u < n and 0 <= v < n):
        raise GraphError(f"vertex out of range in edge ({u}, {v}) for n={n}")
    if u == v:
        raise GraphError(f"loop at vertex {u}")


def build(n: int, edges: Iterable[tuple[int, int, object]]) -> ColoredGraph:
    """Build a colored graph; repeated pairs merge their colorsets."""
    if n < 0:
        raise GraphError("negative vertex count")
    red = [0] * n
    blue = [0] * n
    for u, v, spec in edges:
        _check_pair(n, u, v)
        cs = colorset(spec)
        if not cs:
            raise GraphError(f"empty colorset on edge ({u}, {v})")
        if Color.RED in cs:
            red[u] |= 1 << v
            red[v] |= 1 << u
        if Color.BLUE in cs:
            blue[u] |= 1 << v
            blue[v] |= 1 << u
    return ColoredGraph(n, tuple(red), tuple(blue))


def from_masks(n: int, red: Sequence[int], blue: Sequence[int]) -> ColoredGraph:
    """Build directly from adjacency bitsets, checking symmetry and loops."""
    red, blue = tuple(red), tuple(blue)
    for rel in (red, blue):
        for v, a in enumerate(rel):
            if a >> v & 1 or a >> n:
                raise GraphError(f"bad adjacency mask at vertex {v}")
            for w in bits(a):
                if not rel[w] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {w}")
    return ColoredGraph(n, red, blue)


def monochrome_view(g: ColoredGraph, color: Color) -> SimpleGraph:
    return SimpleGraph(g.n, g.adj(color), color)


@dataclass(frozen=True)
class BipartiteView:
    """Edges of one color between two disjoint vertex sets of a parent graph."""

    graph: GraphLike
    X: tuple[int, ...]
    Y: tuple[int, ...]
    color: Color | None = None

    def __post_init__(self):
        object.__setattr__(self, "X", tuple(sorted(self.X)))
        object.__setattr__(self, "Y", tuple(sorted(self.Y)))
        if set(self.X) & set(self.Y):
            raise GraphError("bipartite view parts must be disjoint")
        if isinstance(self.graph, ColoredGraph) and self.color is None:
            raise GraphError("a view of a colored graph needs a color")

    @property
    def xmask(self) -> int:
        return to_mask(self.X)

    @property
    def ymask(self) -> int:
        return to_mask(self.Y)

    def side(self, v: int) -> int:
        if v in self.X:
            return 0
        if v in self.Y:
            return 1
        raise GraphError(f"vertex {v} is not in the view")

    def other_part(self, v: int) -> tuple[int, ...]:
        return self.Y if self.side(v) == 0 else self.X

    def nbr_mask(self, v: int) -> int:
        opposite = self.ymask if self.side(v) == 0 else self.xmask
        return self.graph.mask(v, self.color) & opposite

    def degree(self, v: int) -> int:
        return self.nbr_mask(v).bit_count()

    def deficiency(self, v: int) -> int:
        return len(self.other_part(v)) - self.degree(v)

    def max_deficiency(self) -> int:
        return max((self.deficiency(v) for v in self.X + self.Y), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.nbr_mask(u) >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(x, y) for x in self.X for y in bits(self.nbr_mask(x))]

    def restrict(self, X: Iterable[int], Y: Iterable[int]) -> "BipartiteView":
        return BipartiteView(self.graph, tuple(X), tuple(Y), self.color)

    def without(self, vertices: Iterable[int]) -> "BipartiteView":
        drop = set(vertices)
        return self.restrict([x for x in self.X if x not in drop], [y for y in self.Y if y not in drop])

    def swapped(self) -> "BipartiteView":
        return BipartiteView(self.graph, self.Y, self.X, self.color)

    def as_simple(self) -> SimpleGraph:
        """The view as an uncolored graph on the parent's vertex ids."""
        n = self.graph.n
        adj = [0] * n
        for v in self.X + self.Y:
            adj[v] = self.nbr_mask(v)
        return SimpleGraph(n, tuple(adj), self.color)


def deficiency(view: BipartiteView, v: int) -> int:
    return view.deficiency(v)


@dataclass(frozen=True)
class CycleCertificate:
    vertices: tuple[int, ...]
    color: Color | None = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))

    @property
    def length(self) -> int:
        return len(self.vertices)

    def canonical(self) -> tuple[int, ...]:
        """Rotation starting at the smallest vertex, oriented toward the smaller neighbor."""
        vs = self.vertices
        if not vs:
            return vs
        i = vs.index(min(vs))
        fwd = vs[i:] + vs[:i]
        back = (fwd[0],) + tuple(reversed(fwd[1:]))
        return min(fwd, back)

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


@dataclass(frozen=True)
class PathCertificate:
    vertices: tuple[int, ...]
    color: Color | None = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))

    @property
    def length(self) -> int:
        """Number of edges."""
        return len(self.vertices) - 1

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]


@dataclass(frozen=True)
class Check:
    """Truthy verification outcome with a reason code when it fails."""

    ok: bool
    reason: str | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _edge_check(g: GraphLike, u: int, v: int, color: Color | None) -> Check | None:
    if isinstance(g, ColoredGraph):
        if color is None:
            return Check(False, "color", "certificate on a colored graph needs a color")
        if g.has_edge(u, v, color):
            return None
        if g.has_edge(u, v):
            return Check(False, "color", f"edge {u}-{v} lacks color {color.label}")
        return Check(False, "missing", f"no edge {u}-{v}")
    if g.has_edge(u, v):
        return None
    return Check(False, "missing", f"no edge {u}-{v}")


def _sequence_check(g: GraphLike, vs: Sequence[int]) -> Check | None:
    for v in vs:
        if not isinstance(v, int) or not 0 <= v < g.n:
            return Check(False, "range", f"vertex {v!r} out of range")
    if len(set(vs)) != len(vs):
        return Check(False, "repeat", "repeated vertex")
    return None


def verify_cycle(g: GraphLike, cert: CycleCertificate) -> Check:
    vs = cert.vertices
    if len(vs) < 3:
        return Check(False, "short", f"cycle needs at least 3 vertices, got {len(vs)}")
    bad = _sequence_check(g, vs)
    if bad is not None:
        return bad
    if isinstance(g, SimpleGraph) and g.color is not None and cert.color not in (None, g.color):
        return Check(False, "color", "certificate color differs from the view color")
    for i, u in enumerate(vs):
        bad = _edge_check(g, u, vs[(i + 1) % len(vs)], cert.color)
        if bad is not None:
            return bad
    return Check(True)


def verify_path(g: GraphLike, cert: PathCertificate) -> Check:
    vs = cert.vertices
    if not vs:
        return Check(False, "short", "empty path")
    bad = _sequence_check(g, vs)
    if bad is not None:
        return bad
    for u, v in zip(vs, vs[1:]):
        bad = _edge_check(g, u, v, cert.color)
        if bad is not None:
            return bad
    return Check(True)
