"""Certificate-returning versions of classical cycle and matching theorems.

Each finder validates the theorem's hypothesis, then searches. When the
hypothesis holds the search is complete, so a missing object would be a
counterexample to the theorem rather than a search failure.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import networkx as nx

from .graph import (
    BipartiteView,
    Color,
    ColoredGraph,
    CycleCertificate,
    GraphError,
    PathCertificate,
    SimpleGraph,
    bits,
    monochrome_view,
    verify_cycle,
    verify_path,
)
from .search import (
    chord_closure,
    components,
    find_cycle_of_length,
    hamiltonian_cycle,
    hamiltonian_path,
)


class Status(enum.Enum):
    FOUND = "found"
    PRECONDITION_FAILED = "precondition_failed"
    EXHAUSTED = "search_exhausted"
    EXCEPTIONAL = "exceptional"


@dataclass(frozen=True)
class Precondition:
    holds: bool
    witness: Any = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.holds


@dataclass
class FinderOutcome:
    status: Status
    certificates: dict[int, Any] = field(default_factory=dict)
    precondition: Precondition | None = None
    detail: str = ""

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND


@dataclass(frozen=True)
class Matching:
    edges: tuple[tuple[int, int], ...]
    color: Color | None = None

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)


def verify_matching(g, m: Matching) -> bool:
    seen: set[int] = set()
    for u, v in m.edges:
        if u in seen or v in seen or u == v:
            return False
        seen.update((u, v))
        if not g.has_edge(u, v, m.color):
            return False
    return True


def _adj(g: SimpleGraph | BipartiteView) -> tuple[int, ...]:
    return g.as_simple().adj if isinstance(g, BipartiteView) else g.adj


def _checked_cycle(g, vertices, color) -> CycleCertificate:
    cert = CycleCertificate(tuple(vertices), color)
    check = verify_cycle(g, cert)
    if not check:  # pragma: no cover - search bug guard
        raise AssertionError(f"finder produced an invalid cycle: {check.detail}")
    return cert


# -- Hall ---------------------------------------------------------------------


@dataclass(frozen=True)
class HallResult:
    matching: Matching
    violator: frozenset[int] | None = None

    @property
    def saturating(self) -> bool:
        return self.violator is None


def hall_matching(view: BipartiteView) -> HallResult:
    """Matching saturating X by augmenting paths, or a set S with |N(S)| < |S|."""
    if len(view.X) > len(view.Y):
        raise GraphError("Hall matching needs |X| <= |Y|")
    match_y: dict[int, int] = {}
    match_x: dict[int, int] = {}

    def augment(x: int, seen: set[int]) -> bool:
        for y in bits(view.nbr_mask(x)):
            if y in seen:
                continue
            seen.add(y)
            if y not in match_y or augment(match_y[y], seen):
                match_y[y] = x
                match_x[x] = y
                return True
        return False

    for x in view.X:
        augment(x, set())
    matching = Matching(tuple(sorted((x, y) for x, y in match_x.items())), view.color)
    free = [x for x in view.X if x not in match_x]
    if not free:
        return HallResult(matching)
    # X-vertices reachable from an unmatched x by alternating paths form a violator.
    S = {free[0]}
    stack = [free[0]]
    while stack:
        x = stack.pop()
        for y in bits(view.nbr_mask(x)):
            x2 = match_y.get(y)
            if x2 is not None and x2 not in S:
                S.add(x2)
                stack.append(x2)
    return HallResult(matching, frozenset(S))


# -- Chvatal ------------------------------------------------------------------


def chvatal_condition(degrees: Sequence[int]) -> Precondition:
    d = sorted(degrees)
    n = len(d)
    for k in range(1, n):
        if not k < n / 2:
            break
        if d[k - 1] <= k and d[n - k - 1] < n - k:
            return Precondition(False, k, f"d_{k}={d[k - 1]} <= {k} but d_{n - k}={d[n - k - 1]} < {n - k}")
    return Precondition(True)


def _hamiltonian(g: SimpleGraph, vertices=None) -> tuple[list[int] | None, bool]:
    vs = list(range(g.n)) if vertices is None else sorted(vertices)
    return hamiltonian_cycle(g.adj, vs)


def chvatal_hamiltonian(g: SimpleGraph, vertices=None) -> FinderOutcome:
    """Hamiltonian cycle of ``g`` (or of the subgraph induced by ``vertices``)."""
    vs = list(range(g.n)) if vertices is None else sorted(vertices)
    if len(vs) < 3:
        raise GraphError("Hamiltonian cycles need n >= 3")
    keep = 0
    for v in vs:
        keep |= 1 << v
    pre = chvatal_condition([(g.adj[v] & keep).bit_count() for v in vs])
    cycle, _ = _hamiltonian(g, vs)
    if cycle is None:
        return FinderOutcome(Status.EXHAUSTED if pre else Status.PRECONDITION_FAILED, precondition=pre)
    return FinderOutcome(Status.FOUND, {len(vs): _checked_cycle(g, cycle, g.color)}, pre)


# -- Bondy ---------------------------------------------------------------------


def ore_condition(g: SimpleGraph, vertices=None) -> Precondition:
    vs = list(range(g.n)) if vertices is None else sorted(vertices)
    keep = 0
    for v in vs:
        keep |= 1 << v
    n = len(vs)
    deg = {v: (g.adj[v] & keep).bit_count() for v in vs}
    for i, u in enumerate(vs):
        for v in vs[i + 1 :]:
            if not g.adj[u] >> v & 1 and deg[u] + deg[v] < n:
                return Precondition(False, (u, v), f"deg({u})+deg({v})={deg[u] + deg[v]} < {n}")
    return Precondition(True)


def is_balanced_complete_bipartite(g: SimpleGraph, vertices=None) -> bool:
    from .search import two_coloring

    vs = list(range(g.n)) if vertices is None else sorted(vertices)
    keep = 0
    for v in vs:
        keep |= 1 << v
    parts = two_coloring(g.adj, keep)
    if parts is None:
        return False
    a, b = parts
    if abs(a.bit_count() - b.bit_count()) > 1:
        return False
    return all((g.adj[v] & keep) == (b if a >> v & 1 else a) for v in vs)


def _all_lengths(adj, vertices: Sequence[int], lengths: Sequence[int], seed: list[int]) -> dict[int, list[int]]:
    """Cycles for each requested length: chord shortening from ``seed``, exact search otherwise."""
    known: dict[int, list[int]] = {len(seed): list(seed)}
    chord_closure(adj, seed, known)
    keep = 0
    for v in vertices:
        keep |= 1 << v
    out = {}
    for length in lengths:
        if length not in known:
            found = find_cycle_of_length(adj, length, keep)
            if found is None:
                continue
            known[length] = found
            chord_closure(adj, found, known)
        out[length] = known[length]
    return out


def bondy_pancyclic(g: SimpleGraph, vertices=None, lengths=None) -> FinderOutcome:
    """Cycles of every length 3..n under the Ore-type degree-sum condition."""
    vs = list(range(g.n)) if vertices is None else sorted(vertices)
    n = len(vs)
    pre = ore_condition(g, vs)
    if not pre:
        return FinderOutcome(Status.PRECONDITION_FAILED, precondition=pre, detail=pre.detail)
    if n >= 3 and n % 2 == 0 and is_balanced_complete_bipartite(g, vs):
        return FinderOutcome(Status.EXCEPTIONAL, precondition=pre, detail="balanced complete bipartite")
    wanted = list(range(3, n + 1)) if lengths is None else sorted(lengths)
    cycle, _ = _hamiltonian(g, vs)
    if cycle is None:
        return FinderOutcome(Status.EXHAUSTED, precondition=pre)
    found = _all_lengths(g.adj, vs, wanted, cycle)
    certs = {k: _checked_cycle(g, c, g.color) for k, c in sorted(found.items())}
    status = Status.FOUND if len(certs) == len(wanted) else Status.EXHAUSTED
    return FinderOutcome(status, certs, pre)


# -- Bagga-Varma ----------------------------------------------------------------

MIN_BIPANCYCLIC_PART = 4


def bagga_varma_condition(view: BipartiteView) -> Precondition:
    m = len(view.X)
    if m != len(view.Y):
        return Precondition(False, "unbalanced", f"|X|={m} != |Y|={len(view.Y)}")
    if m < MIN_BIPANCYCLIC_PART:
        return Precondition(False, "small", f"part size {m} < {MIN_BIPANCYCLIC_PART}")
    deg = {v: view.degree(v) for v in view.X + view.Y}
    for x in view.X:
        for y in view.Y:
            if not view.has_edge(x, y) and deg[x] + deg[y] < m + 1:
                return Precondition(False, (x, y), f"deg({x})+deg({y})={deg[x] + deg[y]} < {m + 1}")
    return Precondition(True)


def bagga_varma_bipancyclic(view: BipartiteView, lengths=None) -> FinderOutcome:
    m = len(view.X)
    if m != len(view.Y):
        raise GraphError("Bagga-Varma needs balanced parts")
    pre = bagga_varma_condition(view)
    if not pre:
        return FinderOutcome(Status.PRECONDITION_FAILED, precondition=pre, detail=pre.detail)
    wanted = list(range(4, 2 * m + 1, 2)) if lengths is None else sorted(lengths)
    g = view.as_simple()
    vs = view.X + view.Y
    cycle, _ = _hamiltonian(g, vs)
    if cycle is None:
        return FinderOutcome(Status.EXHAUSTED, precondition=pre)
    found = _all_lengths(g.adj, vs, wanted, cycle)
    certs = {k: _checked_cycle(view.graph, c, view.color) for k, c in sorted(found.items())}
    status = Status.FOUND if len(certs) == len(wanted) else Status.EXHAUSTED
    return FinderOutcome(status, certs, pre)


# -- Berge ---------------------------------------------------------------------


def berge_condition(view: BipartiteView) -> Precondition:
    m = len(view.X)
    if m != len(view.Y):
        return Precondition(False, "unbalanced", f"|X|={m} != |Y|={len(view.Y)}")
    du = sorted(view.degree(v) for v in view.X)
    dv = sorted(view.degree(v) for v in view.Y)
    i = next((i for i in range(1, m + 1) if du[i - 1] <= i + 1), None)
    j = next((j for j in range(1, m + 1) if dv[j - 1] <= j + 1), None)
    if i is None or j is None:
        return Precondition(True, detail="no qualifying index")
    total = du[i - 1] + dv[j - 1]
    if total < m + 2:
        return Precondition(False, (i, j), f"deg(u_{i})+deg(v_{j})={total} < {m + 2}")
    return Precondition(True)


def berge_ham_path(view: BipartiteView, u: int, v: int) -> FinderOutcome:
    """Hamiltonian path of a balanced bipartite view between ``u`` and ``v``."""
    if view.side(u) == view.side(v):
        raise GraphError("Hamiltonian path endpoints must lie on opposite sides")
    pre = berge_condition(view)
    if not pre:
        return FinderOutcome(Status.PRECONDITION_FAILED, precondition=pre, detail=pre.detail)
    g = view.as_simple()
    path, _ = hamiltonian_path(g.adj, view.X + view.Y, u, v)
    if path is None:
        return FinderOutcome(Status.EXHAUSTED, precondition=pre)
    cert = PathCertificate(tuple(path), view.color)
    if not verify_path(view.graph, cert):  # pragma: no cover
        raise AssertionError("finder produced an invalid path")
    return FinderOutcome(Status.FOUND, {cert.length: cert}, pre)


# -- Jackson ---------------------------------------------------------------------


def jackson_condition(view: BipartiteView, k: int) -> Precondition:
    for x in view.X:
        if view.degree(x) < k:
            return Precondition(False, x, f"deg({x})={view.degree(x)} < k={k}")
    if not 2 <= len(view.X) <= k:
        return Precondition(False, "X", f"need 2 <= |X|={len(view.X)} <= k={k}")
    if len(view.Y) > 2 * k - 2:
        return Precondition(False, "Y", f"|Y|={len(view.Y)} > 2k-2={2 * k - 2}")
    return Precondition(True)


def _alternating_cycle(view: BipartiteView) -> list[int] | None:
    """Cycle through every X vertex, alternating with distinct Y vertices."""
    X = view.X
    if len(X) < 2:
        return None
    xmask = view.xmask
    nb = {v: view.nbr_mask(v) for v in view.X + view.Y}
    start = X[0]
    path = [start]

    def extend(cur: int, free_x: int, free_y: int) -> bool:
        if not free_x:
            # cur is an X vertex; close through a Y vertex adjacent to start.
            closer = nb[cur] & nb[start] & free_y
            if closer:
                path.append((closer & -closer).bit_length() - 1)
                return True
            return False
        if free_y.bit_count() < free_x.bit_count() + 1:
            return False
        for y in bits(nb[cur] & free_y):
            nxt = nb[y] & free_x
            if not nxt:
                continue
            path.append(y)
            for x in bits(nxt):
                path.append(x)
                if extend(x, free_x & ~(1 << x), free_y & ~(1 << y)):
                    return True
                path.pop()
            path.pop()
        return False

    if extend(start, xmask & ~(1 << start), view.ymask):
        return path
    return None


def jackson_cycle(view: BipartiteView, k: int) -> FinderOutcome:
    """Cycle of length 2|X| in a bipartite view whose X side has minimum degree k."""
    pre = jackson_condition(view, k)
    if not pre:
        return FinderOutcome(Status.PRECONDITION_FAILED, precondition=pre, detail=pre.detail)
    cycle = _alternating_cycle(view)
    if cycle is None:
        return FinderOutcome(Status.EXHAUSTED, precondition=pre)
    cert = _checked_cycle(view.graph, cycle, view.color)
    return FinderOutcome(Status.FOUND, {cert.length: cert}, pre)


# -- Bondy-Simonovits -------------------------------------------------------------


def dense_even_window(n: int, q: int) -> list[int]:
    hi = min(n, math.floor(2 * n ** (1 / q) + 1e-9))
    lo = max(4, 2 * q)
    return [k for k in range(lo, hi + 1) if k % 2 == 0]


def dense_even_condition(g: SimpleGraph, q: int) -> Precondition:
    m = g.edge_count()
    bound = 100 * q * g.n ** (1 + 1 / q)
    if m > bound:
        return Precondition(True)
    return Precondition(False, m, f"|E|={m} <= 100*q*n^(1+1/q)={bound:.1f}")


def dense_even_cycles(g: SimpleGraph, q: int, force: bool = False) -> FinderOutcome:
    """Even cycles of every length in [2q, 2n^(1/q)] for very dense graphs.

    The edge bound is vacuous for small graphs; ``force`` runs the search anyway.
    """
    if q < 1:
        raise GraphError("q must be a positive integer")
    pre = dense_even_condition(g, q)
    if not pre and not force:
        return FinderOutcome(Status.PRECONDITION_FAILED, precondition=pre, detail=pre.detail)
    wanted = dense_even_window(g.n, q)
    certs = {}
    known: dict[int, list[int]] = {}
    full = (1 << g.n) - 1
    for length in sorted(wanted, reverse=True):
        if length not in known:
            found = find_cycle_of_length(g.adj, length, full)
            if found is None:
                continue
            known[length] = found
            chord_closure(g.adj, found, known)
    for length in wanted:
        if length in known:
            certs[length] = _checked_cycle(g, known[length], g.color)
    if len(certs) == len(wanted):
        return FinderOutcome(Status.FOUND, certs, pre)
    status = Status.EXHAUSTED if pre else Status.PRECONDITION_FAILED
    return FinderOutcome(status, certs, pre, detail=f"missing {sorted(set(wanted) - set(certs))}")


# -- connected matchings ------------------------------------------------------------


@dataclass(frozen=True)
class ConnectedMatching:
    component: frozenset[int]
    matching: Matching


def maximum_matching(g: SimpleGraph, vertices=None) -> Matching:
    """Maximum-cardinality matching of a general graph (Edmonds' blossom algorithm)."""
    vs = range(g.n) if vertices is None else sorted(vertices)
    keep = set(vs)
    G = nx.Graph()
    G.add_nodes_from(keep)
    G.add_edges_from((u, v) for u in keep for v in bits(g.adj[u]) if u < v and v in keep)
    mate = nx.max_weight_matching(G, maxcardinality=True)
    return Matching(tuple(sorted(tuple(sorted(e)) for e in mate)), g.color)


def connected_matching(g: ColoredGraph, color: Color) -> ConnectedMatching:
    """The monochromatic component carrying the largest matching."""
    view = monochrome_view(g, color)
    best = ConnectedMatching(frozenset(), Matching((), color))
    for comp in components(view.adj, (1 << g.n) - 1):
        if comp.bit_count() < 2:
            continue
        members = list(bits(comp))
        m = maximum_matching(view, members)
        if m.size > best.matching.size:
            best = ConnectedMatching(frozenset(members), m)
    return best
