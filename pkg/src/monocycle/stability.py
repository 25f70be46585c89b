"""Constructive procedures for the two near-extremal structures.

* sparse set: a large set L on which one color is sparse; the other color is
  pancyclic on L (extended by Hamiltonian cycles through outside vertices), or
  the sparse color yields every even cycle through an outside set X.
* four parts: two near-complete red pairs and two near-complete blue pairs;
  long even cycles come from gluing two exact-length paths with a pair of
  connectors, after absorbing leftover vertices.

Every asymptotic window is recomputed from the actual sizes: an operation that
cannot meet a bound raises or reports the named inequality instead of assuming
that n is large.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .finders import (
    Status,
    bagga_varma_bipancyclic,
    berge_condition,
    berge_ham_path,
    bondy_pancyclic,
    chvatal_hamiltonian,
    connected_matching,
    jackson_cycle,
    maximum_matching,
)
from .graph import (
    COLORS,
    BipartiteView,
    Color,
    ColoredGraph,
    CycleCertificate,
    GraphError,
    PathCertificate,
    bits,
    monochrome_view,
    to_mask,
    verify_cycle,
    verify_path,
)
from .search import components
from .witness import (
    CLASSIFY_DELTA_LIMIT,
    ConnectedMatchingWitness,
    CROSS_GRAPHS,
    DEFAULT_DELTA,
    PAIR_VIEWS,
    Inequality,
    PartitionWitness,
    SparseSetWitness,
    WitnessError,
    WitnessReport,
    as_delta,
    check_deficiency,
    cross_view,
    verify_connected_matching,
    verify_partition,
    verify_sparse_set,
)


class StabilityError(GraphError):
    pass


class ParityError(StabilityError):
    pass


class InfeasibleError(StabilityError):
    """A size or degree inequality needed by a construction fails on this instance."""

    def __init__(self, inequality: Inequality | str):
        self.inequality = inequality
        super().__init__(str(inequality))


class StructureError(StabilityError):
    pass


def _fail(name, lhs, op, rhs, subject="") -> InfeasibleError:
    return InfeasibleError(Inequality(name, lhs, op, rhs, str(subject)))


def _require(name, lhs, op, rhs, subject="") -> None:
    ineq = Inequality(name, lhs, op, rhs, str(subject))
    if not ineq.holds:
        raise InfeasibleError(ineq)


# -- exact-length paths in a bipartite view ---------------------------------------------


def _ranked(view: BipartiteView, pool: Iterable[int]) -> list[int]:
    return sorted(pool, key=lambda v: (view.deficiency(v), v))


@dataclass(frozen=True)
class _PathPlan:
    sub: BipartiteView | None
    start: int
    end: int
    tail: int | None  # appended after ``end`` for even lengths
    direct: tuple[int, ...] | None = None  # short paths fixed without search


def _plan_path(view: BipartiteView, a: int, b: int, length: int) -> _PathPlan:
    if a == b:
        raise StabilityError("path endpoints must differ")
    sa, sb = view.side(a), view.side(b)
    if length < 1:
        raise _fail("path length >= 1", length, ">=", 1)
    if length % 2 == 1:
        if sa == sb:
            raise ParityError(f"odd length {length} needs endpoints on opposite sides")
        x, y = (a, b) if sa == 0 else (b, a)
        if length == 1:
            if not view.has_edge(a, b):
                raise _fail("edge between the endpoints", 0, ">=", 1, f"{a}-{b}")
            return _PathPlan(None, a, b, None, (a, b))
        h = (length + 1) // 2
        _require("(l+1)/2 <= |A1|", h, "<=", len(view.X))
        _require("(l+1)/2 <= |A2|", h, "<=", len(view.Y))
        X1 = [x] + _ranked(view, (v for v in view.X if v != x))[: h - 1]
        Y1 = [y] + _ranked(view, (v for v in view.Y if v != y))[: h - 1]
        sub = view.restrict(X1, Y1)
        pre = berge_condition(sub)
        if not pre:
            raise InfeasibleError(Inequality(f"bi-connectivity degree sum ({pre.detail})", 0, ">=", 1))
        return _PathPlan(sub, a, b, None)
    if sa != sb:
        raise ParityError(f"even length {length} needs endpoints on the same side")
    if sa == 1:
        view = view.swapped()
    h = length // 2
    _require("l/2 <= |A1| - 1", h, "<=", len(view.X) - 1)
    _require("l/2 <= |A2|", h, "<=", len(view.Y))
    last: InfeasibleError | None = None
    for x2 in bits(view.nbr_mask(b)):
        if h == 1:
            if view.has_edge(a, x2):
                return _PathPlan(None, a, b, None, (a, x2, b))
            continue
        X1 = [a] + _ranked(view, (v for v in view.X if v not in (a, b)))[: h - 1]
        Y1 = [x2] + _ranked(view, (v for v in view.Y if v != x2))[: h - 1]
        sub = view.restrict(X1, Y1)
        pre = berge_condition(sub)
        if pre:
            return _PathPlan(sub, a, x2, b)
        last = InfeasibleError(Inequality(f"bi-connectivity degree sum ({pre.detail})", 0, ">=", 1, f"x2={x2}"))
    if last is None:
        raise _fail("usable neighbor x2 of the second endpoint", 0, ">=", 1, b)
    raise last


def exact_length_path(
    view: BipartiteView, a: int, b: int, length: int, deficiency_cap=None
) -> PathCertificate:
    """Path from ``a`` to ``b`` with exactly ``length`` edges inside the bipartite view.

    Odd lengths need endpoints on opposite sides, even lengths on the same side.
    The path is a Hamiltonian path of a balanced sub-view chosen around the
    endpoints (for even lengths, through a neighbor x2 of ``b`` followed by the
    edge x2-b). Raises :class:`ParityError` or :class:`InfeasibleError`.
    """
    if deficiency_cap is not None:
        _require("max deficiency of the view", view.max_deficiency(), "<=", deficiency_cap)
    plan = _plan_path(view, a, b, length)
    if plan.direct is not None:
        vertices = plan.direct
    else:
        out = berge_ham_path(plan.sub, plan.start, plan.end)
        if not out.found:  # pragma: no cover - would contradict the bi-connectivity theorem
            raise StabilityError(f"Hamiltonian path search failed: {out.status.value}")
        vertices = next(iter(out.certificates.values())).vertices
        if vertices[0] != plan.start:
            vertices = tuple(reversed(vertices))
        if plan.tail is not None:
            vertices = vertices + (plan.tail,)
    cert = PathCertificate(tuple(vertices), view.color)
    check = verify_path(view.graph, cert)
    if not check or cert.length != length or cert.endpoints != (a, b):  # pragma: no cover
        raise AssertionError(f"bad exact-length path: {check.detail}")
    return cert


def path_window(view: BipartiteView, a: int, b: int, lengths: Iterable[int] | None = None) -> list[int]:
    """Lengths of the right parity for which :func:`exact_length_path` can plan a path."""
    top = 2 * min(len(view.X), len(view.Y))
    lengths = range(1, top + 1) if lengths is None else lengths
    out = []
    for length in lengths:
        try:
            _plan_path(view, a, b, length)
        except StabilityError:
            continue
        out.append(length)
    return out


# -- connectors and gluing ----------------------------------------------------------------


@dataclass(frozen=True)
class Frame:
    """The four parts seen from one color: pairs (F1, F2) and (F3, F4) are near-complete."""

    color: Color
    parts: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]

    def index(self, v: int) -> int | None:
        for k, p in enumerate(self.parts, 1):
            if v in p:
                return k
        return None

    def view(self, g: ColoredGraph, i: int, j: int) -> BipartiteView:
        return BipartiteView(g, self.parts[i - 1], self.parts[j - 1], self.color)

    def relabeled(self, sigma: dict[int, int]) -> "Frame":
        parts = [()] * 4
        names = [""] * 4
        for k in range(1, 5):
            parts[sigma[k] - 1] = self.parts[k - 1]
            names[sigma[k] - 1] = self.names[k - 1]
        return Frame(self.color, tuple(parts), tuple(names))


def frame_of(w: PartitionWitness, color: Color) -> Frame:
    if color is Color.RED:
        return Frame(color, (w.U1, w.U2, w.U3, w.U4), ("U1", "U2", "U3", "U4"))
    return Frame(color, (w.U1, w.U3, w.U2, w.U4), ("U1", "U3", "U2", "U4"))


@dataclass(frozen=True)
class Connector:
    """A monochromatic edge or 2-path joining F1 u F2 (``left``) to F3 u F4 (``right``)."""

    left: int
    right: int
    via: tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.via) + 1

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.left, *self.via, self.right)


@dataclass(frozen=True)
class GlueStructure:
    frame: Frame
    first: Connector
    second: Connector

    @property
    def color(self) -> Color:
        return self.frame.color

    def parities(self) -> tuple[int, int]:
        f = self.frame
        odd1 = int(f.index(self.first.left) != f.index(self.second.left))
        odd2 = int(f.index(self.first.right) != f.index(self.second.right))
        return odd1, odd2

    def compatible(self) -> bool:
        odd1, odd2 = self.parities()
        return (self.first.length + self.second.length + odd1 + odd2) % 2 == 0

    @property
    def case(self) -> str:
        if self.color is Color.BLUE:
            return "case4"
        if self.first.via or self.second.via:
            return "case3"
        f = self.frame
        pairs = {(f.index(c.left), f.index(c.right)) for c in (self.first, self.second)}
        return "case1" if pairs == {(1, 3), (2, 4)} else "case2"

    def describe(self) -> str:
        f = self.frame

        def one(c: Connector) -> str:
            a, b = f.names[f.index(c.left) - 1], f.names[f.index(c.right) - 1]
            mid = f"-{c.via[0]}-" if c.via else "-"
            return f"{a}:{c.left}{mid}{b}:{c.right}"

        return f"{self.color.value} {one(self.first)} + {one(self.second)}"


def verify_structure(g: ColoredGraph, w: PartitionWitness, s: GlueStructure) -> None:
    f = s.frame
    core = w.core
    seen: set[int] = set()
    for c in (s.first, s.second):
        if f.index(c.left) not in (1, 2) or f.index(c.right) not in (3, 4):
            raise StructureError(f"connector {c.vertices} does not join F1uF2 to F3uF4")
        for v in c.via:
            if v in core:
                raise StructureError(f"connector interior {v} lies in a part")
        vs = c.vertices
        for u, v in zip(vs, vs[1:]):
            if not g.has_edge(u, v, s.color):
                raise StructureError(f"connector edge {u}-{v} is not {s.color.label}")
        if seen & set(vs):
            raise StructureError("connectors are not vertex-disjoint")
        seen |= set(vs)
    if not s.compatible():
        raise StructureError("connectors close only odd cycles")


def connectors(g: ColoredGraph, w: PartitionWitness, frame: Frame, per_side: int = 3) -> list[Connector]:
    """Cross edges of the frame color, then 2-paths through vertices outside the parts."""
    left = to_mask(frame.parts[0] + frame.parts[1])
    right = to_mask(frame.parts[2] + frame.parts[3])
    adj = g.adj(frame.color)
    out = [Connector(u, v) for u in bits(left) for v in bits(adj[u] & right)]
    core = to_mask(w.core)
    for x in range(g.n):
        if core >> x & 1:
            continue
        ls = list(bits(adj[x] & left))[:per_side]
        rs = list(bits(adj[x] & right))[:per_side]
        out.extend(Connector(a, b, (x,)) for a in ls for b in rs)
    return out


def find_structures(g: ColoredGraph, w: PartitionWitness, frame: Frame, limit: int = 64) -> list[GlueStructure]:
    """Vertex-disjoint connector pairs that close even cycles, shortest connectors first."""
    cons = connectors(g, w, frame)
    found = []
    for c1, c2 in combinations(cons, 2):
        if set(c1.vertices) & set(c2.vertices):
            continue
        s = GlueStructure(frame, c1, c2)
        if s.compatible():
            found.append(s)
            if len(found) >= limit:
                break
    found.sort(key=lambda s: (s.first.length + s.second.length, s.first.vertices, s.second.vertices))
    return found


def _splits(s: GlueStructure, total: int) -> list[tuple[int, int]]:
    odd1, odd2 = s.parities()
    rest = total - s.first.length - s.second.length
    lo1 = 1 if odd1 else 2
    lo2 = 1 if odd2 else 2
    out = [
        (p1, rest - p1)
        for p1 in range(lo1, rest - lo2 + 1)
        if p1 % 2 == odd1 and (rest - p1) % 2 == odd2
    ]
    out.sort(key=lambda p: (abs(p[0] - p[1]), -p[0]))
    return out


def glue_split(g: ColoredGraph, s: GlueStructure, total: int) -> tuple[int, int]:
    """Lengths (p1, p2) of the two paths used for a glued cycle of length ``total``."""
    f = s.frame
    va, vb = f.view(g, 1, 2), f.view(g, 3, 4)
    splits = _splits(s, total)
    if not splits:
        raise _fail("room for both paths", total - s.first.length - s.second.length, ">=", 2)
    first_error = None
    for p1, p2 in splits:
        try:
            _plan_path(va, s.first.left, s.second.left, p1)
            _plan_path(vb, s.second.right, s.first.right, p2)
        except InfeasibleError as exc:
            first_error = first_error or exc
            continue
        return p1, p2
    raise first_error


def glue_cycles(g: ColoredGraph, w: PartitionWitness, s: GlueStructure, length: int) -> CycleCertificate:
    """Cycle of exactly ``length`` formed by two exact-length paths joined by the connectors.

    The split of ``length`` minus the connector lengths between the two paths is
    the most balanced one with the right parities, e.g. (l-1, l-1) or (l, l-2)
    for two cross edges and length 2l.
    """
    if length % 2:
        raise ParityError("glued cycles have even length")
    verify_structure(g, w, s)
    f = s.frame
    p1, p2 = glue_split(g, s, length)
    P1 = exact_length_path(f.view(g, 1, 2), s.first.left, s.second.left, p1)
    P2 = exact_length_path(f.view(g, 3, 4), s.second.right, s.first.right, p2)
    cycle = P1.vertices + s.second.via + P2.vertices + tuple(reversed(s.first.via))
    cert = CycleCertificate(cycle, s.color)
    check = verify_cycle(g, cert)
    if not check or cert.length != length:  # pragma: no cover
        raise AssertionError(f"glued cycle invalid: {check.detail}")
    return cert


def glue_window(g: ColoredGraph, w: PartitionWitness, s: GlueStructure, lengths: Iterable[int] | None = None) -> list[int]:
    """Even lengths the structure can produce on this instance."""
    verify_structure(g, w, s)
    lengths = range(4, g.n + 1, 2) if lengths is None else sorted(lengths)
    out = []
    for length in lengths:
        if length % 2:
            continue
        try:
            glue_split(g, s, length)
        except InfeasibleError:
            continue
        out.append(length)
    return out


# -- V0 processing -------------------------------------------------------------------------------


@dataclass(frozen=True)
class V0Step:
    vertex: int
    rule: int | None
    destination: str
    counts: dict[str, int]
    accounted: int


@dataclass
class V0Result:
    witness: PartitionWitness
    cover_moved: tuple[int, ...]
    steps: list[V0Step]
    unassigned: tuple[int, ...]
    cross_edges: dict[str, int]


_RULE_TARGETS = {1: "XR", 2: "XB", 3: "U4", 4: "U3", 5: "U2", 6: "U1"}


def _rule(r12: int, r34: int, b13: int, b24: int) -> int | None:
    if r12 >= 3 and r34 >= 3:
        return 1
    if b13 >= 3 and b24 >= 3:
        return 2
    if r12 <= 2 and b13 <= 2:
        return 3
    if r12 <= 2 and b24 <= 2:
        return 4
    if r34 <= 2 and b13 <= 2:
        return 5
    if r34 <= 2 and b24 <= 2:
        return 6
    return None  # unreachable: the six rules cover every count pattern


def _small_cover(view: BipartiteView) -> tuple[int, ...]:
    edges = view.edges()
    touched = sorted({v for e in edges for v in e})
    for k in range(3):
        for cover in combinations(touched, k):
            cs = set(cover)
            if all(u in cs or v in cs for u, v in edges):
                return cover
    raise StabilityError("cross graph has no vertex cover of size 2")  # pragma: no cover


def process_v0(g: ColoredGraph, w: PartitionWitness) -> V0Result:
    """Empty both cross graphs by moving a small vertex cover to V0, then absorb V0.

    Vertices are taken in increasing order and placed by the first matching rule:
    three or more red edges to both U1uU2 and U3uU4 -> X_R; three or more blue
    edges to both U1uU3 and U2uU4 -> X_B; otherwise the part whose sparse sides
    the vertex respects (U4, U3, U2, U1 in that order).
    """
    sets = {k: set(getattr(w, k)) for k in ("U1", "U2", "U3", "U4", "V0", "XR", "XB")}
    moved: list[int] = []
    for color, *_ in CROSS_GRAPHS:
        view = cross_view(g, w, color)
        m = maximum_matching(view.as_simple(), view.X + view.Y)
        if m.size >= 3:
            raise StabilityError(
                f"{color.label} cross graph has a matching of size {m.size}; use the gluing route"
            )
        for v in _small_cover(view):
            for k in ("U1", "U2", "U3", "U4"):
                if v in sets[k]:
                    sets[k].discard(v)
                    sets["V0"].add(v)
                    moved.append(v)
    steps = []
    unassigned = []
    for v in sorted(sets["V0"]):
        masks = {k: to_mask(sets[k]) for k in ("U1", "U2", "U3", "U4")}
        red, blue = g.red[v], g.blue[v]
        counts = {
            "red_U1U2": (red & (masks["U1"] | masks["U2"])).bit_count(),
            "red_U3U4": (red & (masks["U3"] | masks["U4"])).bit_count(),
            "blue_U1U3": (blue & (masks["U1"] | masks["U3"])).bit_count(),
            "blue_U2U4": (blue & (masks["U2"] | masks["U4"])).bit_count(),
        }
        rule = _rule(*counts.values())
        sets["V0"].discard(v)
        if rule is None:  # pragma: no cover
            unassigned.append(v)
            dest = "V0"
        else:
            dest = _RULE_TARGETS[rule]
            sets[dest].add(v)
        accounted = sum(len(s) for s in sets.values()) + len(unassigned)
        steps.append(V0Step(v, rule, dest, counts, accounted))
    out = PartitionWitness(
        tuple(sets["U1"]), tuple(sets["U2"]), tuple(sets["U3"]), tuple(sets["U4"]),
        V0=tuple(unassigned), XR=tuple(sets["XR"]), XB=tuple(sets["XB"]), delta=w.delta, processed=True,
    )
    cross = {color.value: len(cross_view(g, out, color).edges()) for color, *_ in CROSS_GRAPHS}
    return V0Result(out, tuple(moved), steps, tuple(unassigned), cross)


# -- parity switch through an inner edge -------------------------------------------------------------

# Part permutations preserving both the red pairing {1,2},{3,4} and the blue pairing {1,3},{2,4}.
_SYMMETRIES = (
    {1: 1, 2: 2, 3: 3, 4: 4},
    {1: 2, 2: 1, 3: 4, 4: 3},
    {1: 3, 2: 4, 3: 1, 4: 2},
    {1: 4, 2: 3, 3: 2, 4: 1},
)


def vertex_types(g: ColoredGraph, frame: Frame, x: int) -> list[tuple[int, int]]:
    """Pairs (i, j), i in {1,2}, j in {3,4}, with two or more frame-color edges from x to F_i and to F_j."""
    adj = g.adj(frame.color)[x]
    cnt = {k: (adj & to_mask(frame.parts[k - 1])).bit_count() for k in range(1, 5)}
    return [(i, j) for i in (1, 2) for j in (3, 4) if cnt[i] >= 2 and cnt[j] >= 2]


def _canonical(g, frame: Frame, absorbed: Sequence[int]):
    """Two absorbed vertices whose types share one index, relabeled to types (1,3) and (1,4)."""
    for x, xp in combinations(sorted(absorbed), 2):
        for pair in ((x, xp), (xp, x)):
            for t1 in vertex_types(g, frame, pair[0]):
                for t2 in vertex_types(g, frame, pair[1]):
                    for sigma in _SYMMETRIES:
                        m1 = tuple(sorted((sigma[t1[0]], sigma[t1[1]])))
                        m2 = tuple(sorted((sigma[t2[0]], sigma[t2[1]])))
                        if m1 == (1, 3) and m2 == (1, 4):
                            return pair[0], pair[1], frame.relabeled(sigma)
    return None


def _inner_edges(g, frame: Frame) -> list[tuple[int, int, int]]:
    adj = g.adj(frame.color)
    out = []
    for k in (2, 3, 4):
        part = to_mask(frame.parts[k - 1])
        for u in bits(part):
            for v in bits(adj[u] & part):
                if u < v:
                    out.append((k, u, v))
    return out


def _nbrs(g, color, v, part, exclude=()) -> list[int]:
    return [u for u in bits(g.adj(color)[v] & to_mask(part)) if u not in exclude]


@dataclass
class _Switch:
    frame: Frame
    x: int
    xp: int
    a: int
    b: int
    ap: int
    bp: int
    edge: tuple[int, int, int]


def _switch_setup(g, frame: Frame, absorbed) -> _Switch | str:
    found = _canonical(g, frame, absorbed)
    if found is None:
        return "no two absorbed vertices with types sharing exactly one index"
    x, xp, fr = found
    c = fr.color
    A = _nbrs(g, c, x, fr.parts[0])
    Bs = _nbrs(g, c, x, fr.parts[2])
    Ap = _nbrs(g, c, xp, fr.parts[0])
    Bp = _nbrs(g, c, xp, fr.parts[3])
    choice = next(((a, ap) for a in A for ap in Ap if a != ap), None)
    if choice is None or not Bs or not Bp:
        return "absorbed vertices lack distinct attachments"
    inner = _inner_edges(g, fr)
    if not inner:
        return f"every edge inside {', '.join(fr.names[1:])} avoids {c.label}"
    return _Switch(fr, x, xp, choice[0], Bs[0], choice[1], Bp[0], inner[0])


def _switch_cycle(g, sw: _Switch, length: int) -> tuple[CycleCertificate, str]:
    fr, c = sw.frame, sw.frame.color
    k, u0, v0 = sw.edge
    ell = length // 2
    if k == 2:
        q2 = 2 * (ell // 2) - 7
        _require("2*floor(l/2) - 7 >= 1", q2, ">=", 1)
        q1 = 2 * ((ell + 1) // 2) - 1
        last = None
        for u, v in ((u0, v0), (v0, u0)):
            cs = _nbrs(g, c, v, fr.parts[0], exclude=(sw.a, sw.ap))
            for cc in cs:
                ds = [d for d in _nbrs(g, c, sw.a, fr.parts[1], exclude=(u, v)) if g.has_edge(cc, d, c)]
                if not ds:
                    continue
                d = ds[0]
                try:
                    P1 = exact_length_path(fr.view(g, 3, 4), sw.b, sw.bp, q1)
                    rest = BipartiteView(
                        g,
                        [y for y in fr.parts[0] if y not in (sw.a, cc)],
                        [y for y in fr.parts[1] if y not in (d, v)],
                        c,
                    )
                    P2 = exact_length_path(rest, sw.ap, u, q2)
                except InfeasibleError as exc:
                    last = exc
                    continue
                cyc = P1.vertices + (sw.xp,) + P2.vertices + (v, cc, d, sw.a, sw.x)
                return CycleCertificate(cyc, c), f"parity-switch:{c.value} inner edge {u}-{v} in {fr.names[1]}"
        raise last or _fail("common neighbor d of a and c", 0, ">=", 1)
    return _switch_split(g, sw, length)


def _switch_split(g, sw: _Switch, length: int) -> tuple[CycleCertificate, str]:
    """Inner edge in F3 or F4: route the F3-F4 path through it to flip its parity."""
    fr, c = sw.frame, sw.frame.color
    k, u0, v0 = sw.edge
    last: InfeasibleError | None = None
    va = fr.view(g, 1, 2)
    for u, v in ((u0, v0), (v0, u0)):
        if k == 3 and v == sw.b:
            continue
        if k == 4 and u == sw.bp:
            continue
        for pa in sorted(range(2, length - 4, 2), key=lambda p: abs(p - (length - 4) // 2)):
            pb = length - 4 - pa
            for q1 in sorted(range(0, pb), key=lambda q: abs(q - (pb - 1) // 2)):
                q2 = pb - 1 - q1
                # b -> u stays in F3 when the edge is in F3, crosses otherwise
                if k == 3 and (q1 % 2 or q2 % 2 == 0):
                    continue
                if k == 4 and (q1 % 2 == 0 or q2 % 2):
                    continue
                if (q1 == 0) != (u == sw.b) or (q2 == 0) != (v == sw.bp):
                    continue
                try:
                    PA = exact_length_path(va, sw.a, sw.ap, pa)
                    left, right = _disjoint_paths(g, fr, c, (sw.b, u, q1), (v, sw.bp, q2))
                except (InfeasibleError, ParityError) as exc:
                    last = exc if isinstance(exc, InfeasibleError) else last
                    continue
                pb_vertices = left + right
                cyc = PA.vertices + (sw.xp,) + tuple(reversed(pb_vertices)) + (sw.x,)
                return CycleCertificate(cyc, c), f"parity-switch:{c.value} inner edge {u}-{v} in {fr.names[k - 1]}"
    raise last or _fail("split of the parity-switched path", 0, ">=", 1)


def _disjoint_paths(g, fr: Frame, c: Color, first, second) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Two vertex-disjoint exact-length paths in c[F3, F4] (a zero length means a single vertex)."""
    (s1, e1, q1), (s2, e2, q2) = first, second
    F3, F4 = fr.parts[2], fr.parts[3]
    fixed = {s1, e1, s2, e2}

    def need(s, e, q):
        # vertices of a q-edge path besides its endpoints, per side
        if q == 0:
            return {3: 0, 4: 0}
        home = 3 if s in F3 else 4
        cnt = {home: q // 2 + 1, 7 - home: q // 2} if q % 2 == 0 else {3: (q + 1) // 2, 4: (q + 1) // 2}
        for v in {s, e}:
            cnt[3 if v in F3 else 4] -= 1
        return cnt

    n1 = need(s1, e1, q1)
    pool3 = [v for v in F3 if v not in fixed]
    pool4 = [v for v in F4 if v not in fixed]
    take3, take4 = max(n1[3], 0), max(n1[4], 0)
    if take3 > len(pool3) or take4 > len(pool4):
        raise _fail("room for the first sub-path", len(pool3) + len(pool4), ">=", take3 + take4)
    mine = {s1, e1} | set(pool3[:take3]) | set(pool4[:take4])
    theirs = {s2, e2} | set(pool3[take3:]) | set(pool4[take4:])

    def run(s, e, q, allowed):
        if q == 0:
            return (s,)
        view = BipartiteView(g, [v for v in F3 if v in allowed], [v for v in F4 if v in allowed], c)
        return exact_length_path(view, s, e, q).vertices

    return run(s1, e1, q1, mine), run(s2, e2, q2, theirs)


# -- the four-part pipeline -----------------------------------------------------------------------


@dataclass
class PipelineResult:
    n: int
    t: int
    r: int
    target: list[int]
    witness: PartitionWitness
    certificates: dict[Color, dict[int, CycleCertificate]] = field(default_factory=lambda: {c: {} for c in COLORS})
    routes: dict[Color, dict[int, str]] = field(default_factory=lambda: {c: {} for c in COLORS})
    infeasible: dict[int, list[str]] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    v0: V0Result | None = None

    def lengths(self, color: Color) -> list[int]:
        return sorted(self.certificates[color])

    @property
    def color(self) -> Color:
        return max(COLORS, key=lambda c: (len(set(self.target) & set(self.certificates[c])), c is Color.RED))

    @property
    def missing(self) -> list[int]:
        have = self.certificates[self.color]
        return [k for k in self.target if k not in have]

    def record(self, cert: CycleCertificate, route: str) -> None:
        self.certificates[cert.color][cert.length] = cert
        self.routes[cert.color][cert.length] = route


def _deficiency_bound_report(g, w: PartitionWitness) -> WitnessReport:
    report = WitnessReport()
    check_deficiency(g, w, 7 * w.delta * g.n, report, "deficiency")
    return report


def _bipancyclic_short(g, w: PartitionWitness, res: PipelineResult) -> None:
    for color, i, j in PAIR_VIEWS:
        view = BipartiteView(g, w.part(i), w.part(j), color)
        wanted = [k for k in res.target if k not in res.certificates[color]]
        for m in range(min(len(view.X), len(view.Y)), 3, -1):
            lengths = [k for k in wanted if k <= 2 * m]
            if not lengths:
                break
            sub = view.restrict(_ranked(view, view.X)[:m], _ranked(view, view.Y)[:m])
            out = bagga_varma_bipancyclic(sub, lengths)
            if out.status is Status.FOUND:
                for cert in out.certificates.values():
                    res.record(cert, f"bipancyclic:{color.value}[U{i},U{j}] m={m}")
                break
        else:
            if wanted:
                res.notes.append(f"no balanced sub-view of {color.value}[U{i},U{j}] met the bipancyclic degree condition")


def _glue_all(g, w, res: PipelineResult, prefix: str = "") -> dict[Color, bool]:
    present = {}
    for color in COLORS:
        frame = frame_of(w, color)
        structures = find_structures(g, w, frame)
        present[color] = bool(structures)
        for s in structures:
            remaining = [k for k in res.target if k not in res.certificates[color]]
            if not remaining:
                break
            for k in remaining:
                try:
                    cert = glue_cycles(g, w, s, k)
                except InfeasibleError as exc:
                    res.infeasible.setdefault(k, []).append(f"{prefix}glue[{s.case}] {s.describe()}: {exc}")
                    continue
                res.record(cert, f"{prefix}glue[{s.case}]:{s.describe()}")
    return present


def four_part_cycles(g: ColoredGraph, w: PartitionWitness, target: Iterable[int] | None = None) -> PipelineResult:
    """Even cycles of a four-part witness: short ones from bipancyclic pairs, long ones by gluing.

    Order of routes: bipancyclic sub-views; connector pairs already present;
    after moving a vertex cover to V0 and absorbing V0, connector pairs through
    the absorbed vertices; finally the parity switch through an edge inside a
    part. Lengths no route reaches are listed in ``infeasible`` with reasons.
    """
    n = g.n
    t, r = divmod(n, 3)
    if r == 1:
        raise StabilityError("the four-part procedure covers n = 3t or 3t + 2 only")
    report = verify_partition(g, w, "glue")
    if not w.processed:
        report.checks.extend(_deficiency_bound_report(g, w).checks)
    if not report.ok:
        raise WitnessError(report)
    target = list(range(4, 2 * t + 3, 2)) if target is None else sorted(set(target))
    for k in target:
        if k < 4 or k % 2:
            raise StabilityError(f"target lengths must be even and at least 4 (got {k})")
    res = PipelineResult(n, t, r, target, w)
    _bipancyclic_short(g, w, res)
    present = _glue_all(g, w, res)
    if not any(present.values()):
        try:
            v0 = process_v0(g, w)
        except StabilityError as exc:
            res.notes.append(str(exc))
        else:
            res.v0 = v0
            res.witness = v0.witness
            res.notes.append(
                f"moved cover {list(v0.cover_moved)} to V0 and absorbed it: XR={list(v0.witness.XR)} XB={list(v0.witness.XB)}"
            )
            present = _glue_all(g, v0.witness, res, prefix="after-V0:")
    w2 = res.witness
    for color in COLORS:
        if present.get(color):
            continue
        remaining = [k for k in res.target if k not in res.certificates[color]]
        if not remaining:
            continue
        absorbed = w2.XR if color is Color.RED else w2.XB
        sw = _switch_setup(g, frame_of(w2, color), absorbed)
        if isinstance(sw, str):
            res.notes.append(f"{color.label} parity switch unavailable: {sw}")
            continue
        for k in remaining:
            try:
                cert, route = _switch_cycle(g, sw, k)
            except InfeasibleError as exc:
                res.infeasible.setdefault(k, []).append(f"parity-switch {color.value}: {exc}")
                continue
            check = verify_cycle(g, cert)
            if not check or cert.length != k:  # pragma: no cover
                raise AssertionError(f"parity-switch cycle invalid: {check.detail}")
            res.record(cert, route)
    best = res.certificates[res.color]
    for k in target:
        if k not in best:
            res.infeasible.setdefault(k, []).append("no long-cycle route")
    res.infeasible = {k: v for k, v in sorted(res.infeasible.items()) if k not in best}
    return res


# -- the sparse-set procedure -------------------------------------------------------------------


@dataclass
class SparseResult:
    n: int
    t: int
    r: int
    case: int
    color: Color
    target: list[int]
    extension: tuple[int, ...]
    certificates: dict[int, CycleCertificate] = field(default_factory=dict)
    routes: dict[int, str] = field(default_factory=dict)
    infeasible: dict[int, str] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def missing(self) -> list[int]:
        return [k for k in self.target if k not in self.certificates]


def sparse_set_cycles(g: ColoredGraph, w: SparseSetWitness, target: Iterable[int] | None = None) -> SparseResult:
    """Cycles from a sparse set L.

    If L together with its extension L' (outside vertices with at least δn+2
    dense-color edges into L) has at least 2t+r vertices, the dense color gets
    every length in [3, 2t+r]: pancyclicity of the dense graph on L, then
    Hamiltonian cycles of L plus added L' vertices. Otherwise the sparse color
    gets every even length in [4, 2t+2] from cycles through m outside vertices
    with few dense-color edges into L.
    """
    report = verify_sparse_set(g, w, "lemma")
    if not report.ok:
        raise WitnessError(report)
    n = g.n
    t, r = divmod(n, 3)
    dn = w.delta * n
    L = list(w.L)
    lmask = to_mask(L)
    ext = w.extension(g)
    dense = w.dense_color
    outside = [v for v in range(n) if not lmask >> v & 1]
    dense_to_L = {v: (g.mask(v, dense) & lmask).bit_count() for v in outside}
    if len(L) + len(ext) >= 2 * t + r:
        case, color = 1, dense
        default = list(range(3, 2 * t + r + 1))
    else:
        case, color = 2, w.sparse_color
        default = list(range(4, 2 * t + 3, 2))
    target = default if target is None else sorted(set(target))
    res = SparseResult(n, t, r, case, color, target, ext)
    gap = [v for v in outside if dn + 1 < dense_to_L[v] < dn + 2]
    if gap:
        res.notes.append(
            f"vertices {gap} have between delta*n+1 and delta*n+2 {dense.label} edges into L; "
            "they are in neither L' nor the low-degree outside set"
        )
    if case == 1:
        _sparse_case1(g, w, L, ext, res)
    else:
        low = [v for v in outside if dense_to_L[v] < dn + 2]
        _sparse_case2(g, w, L, low, res)
    return res


def _sparse_case1(g, w: SparseSetWitness, L, ext, res: SparseResult) -> None:
    dense = w.dense_color
    view = monochrome_view(g, dense)
    short = [k for k in res.target if 3 <= k <= len(L)]
    if short:
        out = bondy_pancyclic(view, L, short)
        if out.status is Status.FOUND or out.certificates:
            for k, cert in out.certificates.items():
                res.certificates[k] = cert
                res.routes[k] = f"pancyclic:{dense.value}[L]"
        for k in short:
            if k not in res.certificates:
                res.infeasible[k] = f"pancyclic {dense.value}[L]: {out.status.value} {out.detail}".strip()
    for k in res.target:
        if k <= len(L) or k in res.certificates:
            continue
        add = k - len(L)
        if add > len(ext):
            res.infeasible[k] = str(Inequality("|L'| >= k - |L|", len(ext), ">=", add))
            continue
        Y = sorted(L + list(ext[:add]))
        out = chvatal_hamiltonian(view, Y)
        if not out.precondition:
            res.notes.append(f"length {k}: degree-sequence condition fails ({out.precondition.detail})")
        if out.found:
            res.certificates[k] = out.certificates[k]
            res.routes[k] = f"hamiltonian:{dense.value}[L + {add} of L']"
        else:
            res.infeasible[k] = f"hamiltonian {dense.value}[L + {add} of L']: {out.status.value}"


def _sparse_case2(g, w: SparseSetWitness, L, low, res: SparseResult) -> None:
    sparse = w.sparse_color
    for k in res.target:
        if k % 2 or k < 4:
            res.infeasible[k] = "odd or too short for the bipartite route"
            continue
        m = k // 2
        if m > len(low):
            res.infeasible[k] = str(Inequality("outside vertices with few dense edges into L", len(low), ">=", m))
            continue
        view = BipartiteView(g, low[:m], L, sparse)
        k_floor = min(view.degree(x) for x in view.X)
        out = jackson_cycle(view, k_floor)
        if out.found:
            res.certificates[k] = out.certificates[k]
            res.routes[k] = f"bipartite-long-cycle:{sparse.value}[X, L] |X|={m} k={k_floor}"
        else:
            res.infeasible[k] = f"{sparse.value}[X, L] with |X|={m}: {out.status.value} {out.detail}".strip()


# -- classification -----------------------------------------------------------------------------


@dataclass(frozen=True)
class StabilityCase:
    kind: str  # "CaseI", "CaseII", "CaseIII" or "NoneFound"
    witness: ConnectedMatchingWitness | SparseSetWitness | PartitionWitness | None
    report: WitnessReport | None
    delta: Fraction
    notes: tuple[str, ...] = ()


def _peel(g: ColoredGraph, color: Color, delta: Fraction) -> list[int] | None:
    n = g.n
    adj = g.adj(color)
    S = (1 << n) - 1
    size_floor = (Fraction(2, 3) - delta / 2) * n
    cap = 10 * delta * n
    while S.bit_count() >= size_floor:
        degs = [((adj[v] & S).bit_count(), -v) for v in bits(S)]
        top, negv = max(degs)
        if top <= cap:
            return list(bits(S))
        S &= ~(1 << -negv)
    return None


def _four_blocks(g: ColoredGraph, delta: Fraction, limit: int = 12) -> PartitionWitness | None:
    full = (1 << g.n) - 1
    red = components(g.red, full)
    blue = components(g.blue, full)
    if len(red) > limit or len(blue) > limit:
        return None
    floor = (Fraction(1, 4) - 3 * delta) * g.n
    for rm in range(1, 1 << (len(red) - 1)):
        A = 0
        for i, c in enumerate(red):
            if rm >> i & 1:
                A |= c
        for bm in range(1, (1 << len(blue)) - 1):
            Bm = 0
            for i, c in enumerate(blue):
                if bm >> i & 1:
                    Bm |= c
            parts = (A & Bm, A & ~Bm & full, Bm & ~A & full, full & ~A & ~Bm)
            if all(p.bit_count() >= floor for p in parts):
                w = PartitionWitness(*(tuple(bits(p)) for p in parts), delta=delta)
                if verify_partition(g, w, "classify"):
                    return w
    return None


def classify_stability(g: ColoredGraph, delta=DEFAULT_DELTA) -> StabilityCase:
    """Decide the large connected matching case exactly, then look for a sparse set or four blocks.

    Only witnesses that pass validation are returned; otherwise ``NoneFound``.
    """
    delta = as_delta(delta)
    if not 0 < delta < CLASSIFY_DELTA_LIMIT:
        raise StabilityError("delta must lie in (0, 1/36)")
    n = g.n
    best = max((connected_matching(g, c) for c in COLORS), key=lambda cm: cm.matching.size)
    if best.matching.size:
        cw = ConnectedMatchingWitness(best.matching.color, tuple(sorted(best.component)), best.matching.edges)
        rep = verify_connected_matching(g, cw, delta)
        if rep.ok:
            return StabilityCase("CaseI", cw, rep, delta)
    notes = [f"largest connected matching covers {2 * best.matching.size} < (2/3 + delta)n = {float((Fraction(2, 3) + delta) * n):.3f}"]
    for color in COLORS:
        S = _peel(g, color, delta)
        if S is not None:
            sw = SparseSetWitness(tuple(S), color, delta)
            rep = verify_sparse_set(g, sw, "classify")
            if rep.ok:
                return StabilityCase("CaseII", sw, rep, delta, tuple(notes))
    notes.append("greedy peeling found no sparse set")
    pw = _four_blocks(g, delta)
    if pw is not None:
        return StabilityCase("CaseIII", pw, verify_partition(g, pw, "classify"), delta, tuple(notes))
    notes.append("no four-block pattern in the monochromatic components")
    return StabilityCase("NoneFound", None, None, delta, tuple(notes))


def verify_witness(g: ColoredGraph, w, stage: str | None = None) -> WitnessReport:
    """Validate any witness type against ``g``; the report lists every inequality checked."""
    if isinstance(w, StabilityCase):
        if w.witness is None:
            return WitnessReport()
        if isinstance(w.witness, ConnectedMatchingWitness):
            return verify_connected_matching(g, w.witness, w.delta)
        return verify_witness(g, w.witness, "classify")
    if isinstance(w, SparseSetWitness):
        return verify_sparse_set(g, w, stage or "lemma")
    if isinstance(w, PartitionWitness):
        return verify_partition(g, w, stage or "glue")
    raise TypeError(f"cannot verify {type(w).__name__}")
