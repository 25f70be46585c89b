"""Deterministic generators for the extremal colorings and for structured test instances.

Every generator returns an :class:`Instance`: the graph, the parameters that
produced it, and the properties the construction is expected to have.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .graph import Color, ColoredGraph, GraphError, build
from .witness import DEFAULT_DELTA, PartitionWitness, SparseSetWitness, as_delta

R, B, RB = "R", "B", "RB"

FAMILIES = (
    "example1",
    "example2",
    "example3",
    "k4paths",
    "k5bulls",
    "random",
    "sparse",
    "fourpart",
)


@dataclass
class Instance:
    family: str
    params: dict[str, Any]
    graph: ColoredGraph
    expected: dict[str, Any] = field(default_factory=dict)
    witness: PartitionWitness | SparseSetWitness | None = None
    structure: dict[str, Any] | None = None

    @property
    def n(self) -> int:
        return self.graph.n

    def parts(self) -> dict[str, list[int]]:
        return self.params.get("parts", {})


def _clique(vs, color) -> list[tuple[int, int, str]]:
    vs = list(vs)
    return [(u, v, color) for i, u in enumerate(vs) for v in vs[i + 1 :]]


def _biclique(xs, ys, color) -> list[tuple[int, int, str]]:
    return [(x, y, color) for x in xs for y in ys]


def split_n(n: int) -> tuple[int, int]:
    if n < 0:
        raise GraphError("n must be nonnegative")
    return divmod(n, 3)


# -- Example 1: big blue clique, red bipartite rest -----------------------------


def example1(t: int, r: int) -> Instance:
    """K_{3t+r} with a blue clique on 2t+r vertices and every other edge red."""
    if t < 1:
        raise GraphError("example1 needs t >= 1")
    if r not in (0, 1, 2):
        raise GraphError("r must be 0, 1 or 2")
    n = 3 * t + r
    U1 = range(2 * t + r)
    U2 = range(2 * t + r, n)
    g = build(n, _clique(U1, B) + _clique(U2, B) + _biclique(U1, U2, R))
    longest = 2 * t + r if 2 * t + r >= 3 else None
    expected = {"circumference": longest, "circumference_color": "Blue" if longest else None}
    if longest:
        expected["branch"] = "AllLengths(Blue)"
    return Instance("example1", {"t": t, "r": r, "parts": {"U1": list(U1), "U2": list(U2)}}, g, expected)


# -- Example 2: four parts plus two special vertices ------------------------------


def example2_sizes(n: int) -> list[int]:
    q, extra = divmod(n - 2, 4)
    return [q] * (4 - extra) + [q + 1] * extra


def example2(n: int, seed: int = 0, inside: str | None = None) -> Instance:
    """Four parts with blue U1-U2, U3-U4 and red U1-U3, U2-U4, no U1-U4 or U2-U3 edges,
    plus a vertex x with only red edges and a vertex y with only blue edges.

    Edges inside the parts get a seeded fair coin unless ``inside`` forces "R" or "B".
    """
    if n < 8:
        raise GraphError("example2 needs n >= 8")
    if inside not in (None, R, B):
        raise GraphError("inside must be 'R', 'B' or None")
    sizes = example2_sizes(n)
    parts, start = [], 0
    for s in sizes:
        parts.append(list(range(start, start + s)))
        start += s
    U1, U2, U3, U4 = parts
    x, y = n - 2, n - 1
    rng = random.Random(seed)
    edges = _biclique(U1, U2, B) + _biclique(U3, U4, B) + _biclique(U1, U3, R) + _biclique(U2, U4, R)
    for p in parts:
        for u, v, _ in _clique(p, R):
            edges.append((u, v, inside or (R if rng.random() < 0.5 else B)))
    edges += [(v, x, R) for v in range(n - 2)] + [(x, y, R)]
    edges += [(v, y, B) for v in range(n - 2)]
    g = build(n, edges)
    bound = 2 * math.ceil((n - 2) / 4) + 1
    expected = {"min_degree": (3 * n - 2) // 4, "circumference_at_most": bound}
    params = {"n": n, "seed": seed, "inside": inside, "parts": {f"U{i}": p for i, p in enumerate(parts, 1)}, "x": x, "y": y}
    return Instance("example2", params, g, expected)


# -- Example 3: halves, red bipartite ----------------------------------------------


def example3(t: int) -> Instance:
    """K_{3t+1} split into halves; blue inside each half, red across."""
    if t < 2:
        raise GraphError("example3 needs t >= 2")
    n = 3 * t + 1
    U1 = range(n // 2)
    U2 = range(n // 2, n)
    g = build(n, _clique(U1, B) + _clique(U2, B) + _biclique(U1, U2, R))
    expected = {
        "red_spectrum": list(range(4, 2 * (n // 2) + 1, 2)),
        "absent_length": 2 * t + 1,
        "blue_circumference": n - n // 2,
    }
    return Instance("example3", {"t": t, "parts": {"U1": list(U1), "U2": list(U2)}}, g, expected)


# -- tiny degenerate colorings ---------------------------------------------------------


def k4_two_paths() -> Instance:
    """K4 split into the red path 0-1-2-3 and the blue path 2-0-3-1."""
    red = [(0, 1), (1, 2), (2, 3)]
    return _complement_coloring(4, red, "k4paths", {"circumference": None})


def k5_two_bulls() -> Instance:
    """K5 split into two bulls: a 4-edge path plus the chord joining its second and fourth vertices.

    Red is the bull on 0-1-2-3-4 (chord 1-3); blue, the complement, is the bull on 3-0-2-4-1 (chord 0-4).
    """
    red = [(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)]
    return _complement_coloring(5, red, "k5bulls", {"circumference": 3, "triangles_per_color": 1})


def _complement_coloring(n: int, red, family: str, expected) -> Instance:
    rs = {tuple(sorted(e)) for e in red}
    edges = [(u, v, R if (u, v) in rs else B) for u in range(n) for v in range(u + 1, n)]
    return Instance(family, {}, build(n, edges), expected)


# -- random dense colorings ---------------------------------------------------------------


def degree_floor(n: int) -> int:
    return math.ceil((3 * n - 1) / 4)


def random_min_degree(n: int, seed: int = 0) -> Instance:
    """Random graph with minimum degree at least ceil((3n-1)/4), each edge colored by a fair coin.

    Starts from K_n and deletes edges in a seeded random order whenever both
    endpoints stay at or above the floor.
    """
    if n < 4:
        raise GraphError("random_min_degree needs n >= 4")
    rng = random.Random(seed)
    floor = degree_floor(n)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    deg = [n - 1] * n
    kept = []
    for u, v in pairs:
        if deg[u] > floor and deg[v] > floor:
            deg[u] -= 1
            deg[v] -= 1
        else:
            kept.append((u, v))
    kept.sort()
    edges = [(u, v, R if rng.random() < 0.5 else B) for u, v in kept]
    g = build(n, edges)
    return Instance("random", {"n": n, "seed": seed}, g, {"min_degree_at_least": floor})


# -- sparse-set instances -----------------------------------------------------------------


def sparse_set_instance(kind: str, t: int | None = None, r: int = 0, delta=None) -> Instance:
    """Complete graphs with a blue clique L on which red is empty.

    * ``"direct"``: |L| = 2t + r, nothing outside is blue-attached to L (small n is fine).
    * ``"augment"``: |L| = 2t + r - 1 plus one outside vertex joined to L in blue, so
      the cycle of length 2t + r needs an added vertex. Needs δn >= 1 + r/3.
    * ``"jackson"``: |L| = 2t + r - 1 and every outside vertex is red to L, so only
      red even cycles through the outside are available. Same size requirement.

    The defaults for the last two use n = 1002 and δ = 999/1000000.
    """
    if kind == "direct":
        t = 2 if t is None else t
        delta = DEFAULT_DELTA if delta is None else as_delta(delta)
        n = 3 * t + r
        size = 2 * t + r
        attached = 0
    elif kind in ("augment", "jackson"):
        t = 334 if t is None else t
        delta = Fraction(999, 1000000) if delta is None else as_delta(delta)
        n = 3 * t + r
        size = 2 * t + r - 1
        attached = 1 if kind == "augment" else 0
    else:
        raise GraphError(f"unknown sparse-set kind {kind!r}")
    if t < 1 or r not in (0, 1, 2):
        raise GraphError("bad (t, r)")
    if size < (Fraction(2, 3) - delta) * n:
        raise GraphError(f"|L| = {size} < (2/3 - delta)n; increase n or delta")
    L = range(size)
    outside = range(size, n)
    edges = _clique(L, B) + _clique(outside, B)
    for i, v in enumerate(outside):
        edges += _biclique(L, [v], B if i < attached else R)
    g = build(n, edges)
    w = SparseSetWitness(tuple(L), Color.RED, delta)
    expected = {"case": 1 if kind != "jackson" else 2}
    params = {"kind": kind, "t": t, "r": r, "delta": str(delta)}
    return Instance("sparse", params, g, expected, witness=w)


# -- four-part instances ---------------------------------------------------------------------

PLANTINGS = ("none", "case1", "case2", "case2x", "case3", "case4", "claim65")


def four_part_instance(
    n: int,
    planting: str = "none",
    seed: int = 0,
    delta=DEFAULT_DELTA,
    v0: int = 0,
    missing: int = 0,
) -> Instance:
    """Four near-complete bipartite pairs R[U1,U2], R[U3,U4], B[U1,U3], B[U2,U4].

    There are no U1-U4 or U2-U3 edges and every edge inside a part is blue.
    ``missing`` deletes a random matching of that size from each of the four
    pairs; ``v0`` extra vertices copy the adjacency pattern of a random part and
    start in V0. ``planting`` adds the cross structure used by the gluing step:

    * ``case1``: red (dual) edges x1y1 in U1xU3 and x2y2 in U2xU4
    * ``case2``: two disjoint red (dual) edges in U1xU3
    * ``case2x``: red edges in U1xU4 and in U2xU3
    * ``case3``: two outside vertices, w1 red to three of U1 and three of U3, w2 red to three of U2 and three of U4
    * ``case4``: blue edges in U1xU4 and in U3xU2
    * ``claim65``: outside vertices x (red to three of U1 and three of U3) and x' (red to
      the same three of U1 and three of U4) plus a red edge inside U2
    """
    if planting not in PLANTINGS:
        raise GraphError(f"unknown planting {planting!r}; choose from {', '.join(PLANTINGS)}")
    if n < 16:
        raise GraphError("four_part_instance needs n >= 16")
    delta = as_delta(delta)
    rng = random.Random(seed)
    outside = 2 if planting in ("case3", "claim65") else 0
    core = n - v0 - outside
    if v0 < 0 or missing < 0 or core < 16:
        raise GraphError("planting and v0 leave fewer than 16 vertices for the four parts")
    q, extra = divmod(core, 4)
    sizes = [q] * (4 - extra) + [q + 1] * extra
    parts, start = [], 0
    for s in sizes:
        parts.append(list(range(start, start + s)))
        start += s
    if missing > min(sizes):
        raise GraphError("missing matching larger than a part")
    homes = {v: rng.randrange(4) for v in range(core, core + v0)}
    members = [list(p) for p in parts]
    for v, h in homes.items():
        members[h].append(v)
    colors: dict[tuple[int, int], str] = {}
    pair_color = {(0, 1): R, (2, 3): R, (0, 2): B, (1, 3): B}
    for (i, j), c in pair_color.items():
        drop = set()
        if missing:
            xs = rng.sample(parts[i], missing)
            ys = rng.sample(parts[j], missing)
            drop = {tuple(sorted(e)) for e in zip(xs, ys)}
        for u in members[i]:
            for v in members[j]:
                e = (min(u, v), max(u, v))
                if e not in drop:
                    colors[e] = c
    for m in members:
        for u, v, _ in _clique(sorted(m), B):
            colors[(u, v)] = B
    U1, U2, U3, U4 = parts
    structure: dict[str, Any] = {"planting": planting}
    XR: tuple[int, ...] = ()

    def add(u, v, c):
        e = (min(u, v), max(u, v))
        old = colors.get(e)
        colors[e] = RB if old and old != c else c

    if planting == "case1":
        add(U1[0], U3[0], R)
        add(U2[0], U4[0], R)
        structure["edges"] = [(U1[0], U3[0]), (U2[0], U4[0])]
    elif planting == "case2":
        add(U1[0], U3[0], R)
        add(U1[1], U3[1], R)
        structure["edges"] = [(U1[0], U3[0]), (U1[1], U3[1])]
    elif planting == "case2x":
        add(U1[0], U4[0], R)
        add(U2[0], U3[0], R)
        structure["edges"] = [(U1[0], U4[0]), (U2[0], U3[0])]
    elif planting == "case4":
        add(U1[0], U4[0], B)
        add(U3[0], U2[0], B)
        structure["edges"] = [(U1[0], U4[0]), (U2[0], U3[0])]
    elif planting == "case3":
        w1, w2 = n - 2, n - 1
        for v in U1[:3] + U3[:3]:
            add(w1, v, R)
        for v in U2[:3] + U4[:3]:
            add(w2, v, R)
        XR = (w1, w2)
        structure["via"] = [w1, w2]
    elif planting == "claim65":
        x, xp = n - 2, n - 1
        if len(U1) < 4:
            raise GraphError("claim65 planting needs |U1| >= 4")
        for v in U1[:3] + U3[:3]:
            add(x, v, R)
        for v in U1[:3] + U4[:3]:
            add(xp, v, R)
        colors[(U2[0], U2[1])] = R
        XR = (x, xp)
        structure.update({"via": [x, xp], "inner_edge": (U2[0], U2[1])})
    g = build(n, [(u, v, c) for (u, v), c in sorted(colors.items())])
    w = PartitionWitness(U1, U2, U3, U4, V0=tuple(homes), XR=XR, delta=delta)
    params = {
        "n": n,
        "planting": planting,
        "seed": seed,
        "delta": str(delta),
        "v0": v0,
        "missing": missing,
        "homes": {v: h + 1 for v, h in homes.items()},
    }
    t, r = divmod(n, 3)
    return Instance("fourpart", params, g, {"target_max": 2 * t + 2}, witness=w, structure=structure)


def generate(family: str, **kw) -> Instance:
    """Dispatch by family name (used by the command line)."""
    if family == "example1":
        return example1(kw["t"], kw.get("r", 0))
    if family == "example2":
        return example2(kw["n"], kw.get("seed", 0), kw.get("inside"))
    if family == "example3":
        return example3(kw["t"])
    if family == "k4paths":
        return k4_two_paths()
    if family == "k5bulls":
        return k5_two_bulls()
    if family == "random":
        return random_min_degree(kw["n"], kw.get("seed", 0))
    if family == "sparse":
        return sparse_set_instance(kw.get("kind", "direct"), kw.get("t"), kw.get("r", 0), kw.get("delta"))
    if family == "fourpart":
        return four_part_instance(
            kw["n"], kw.get("planting", "none"), kw.get("seed", 0), kw.get("delta", DEFAULT_DELTA),
            kw.get("v0", 0), kw.get("missing", 0),
        )
    raise GraphError(f"unknown family {family!r}")
