"""Structural witnesses for the near-extremal cases and their validators.

All thresholds are evaluated in exact rational arithmetic; every check is kept
as an :class:`Inequality` with the actual numbers so a failed validation says
precisely which bound broke and at which vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .graph import BipartiteView, Color, ColoredGraph, GraphError, to_mask

DEFAULT_DELTA = Fraction(1, 1024)
LEMMA_DELTA_LIMIT = Fraction(1, 1000)
CLASSIFY_DELTA_LIMIT = Fraction(1, 36)


class WitnessError(GraphError):
    """A witness failed validation; ``report`` holds every checked inequality."""

    def __init__(self, report: "WitnessReport"):
        self.report = report
        first = report.failures[0] if report.failures else None
        super().__init__(f"invalid witness: {first}" if first else "invalid witness")


def as_delta(value) -> Fraction:
    """Accept a Fraction, int, float or a string such as ``"1/1024"`` or ``"0.001"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**9)
    return Fraction(str(value).strip())


@dataclass(frozen=True)
class Inequality:
    name: str
    lhs: Fraction | int
    op: str
    rhs: Fraction | int
    subject: str = ""

    @property
    def holds(self) -> bool:
        if self.op == "<=":
            return self.lhs <= self.rhs
        if self.op == ">=":
            return self.lhs >= self.rhs
        if self.op == "<":
            return self.lhs < self.rhs
        if self.op == ">":
            return self.lhs > self.rhs
        if self.op == "==":
            return self.lhs == self.rhs
        raise ValueError(f"unknown comparison {self.op!r}")

    def __str__(self) -> str:
        where = f" at {self.subject}" if self.subject else ""
        verdict = "ok" if self.holds else "FAILED"
        return f"{self.name}{where}: {_fmt(self.lhs)} {self.op} {_fmt(self.rhs)} [{verdict}]"


def _fmt(x) -> str:
    if isinstance(x, Fraction) and x.denominator != 1:
        return f"{x} (~{float(x):.4g})"
    return str(x)


@dataclass
class WitnessReport:
    checks: list[Inequality] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)

    @property
    def failures(self) -> list[Inequality]:
        return [c for c in self.checks if not c.holds]

    def add(self, name, lhs, op, rhs, subject="") -> Inequality:
        ineq = Inequality(name, lhs, op, rhs, str(subject))
        self.checks.append(ineq)
        return ineq

    def __bool__(self) -> bool:
        return self.ok

    def lines(self) -> list[str]:
        return [str(c) for c in self.checks]


# -- witness types ------------------------------------------------------------


@dataclass(frozen=True)
class SparseSetWitness:
    """A large vertex set ``L`` inside which ``sparse_color`` has small maximum degree."""

    L: tuple[int, ...]
    sparse_color: Color = Color.RED
    delta: Fraction = DEFAULT_DELTA

    def __post_init__(self):
        object.__setattr__(self, "L", tuple(sorted(set(self.L))))
        object.__setattr__(self, "delta", as_delta(self.delta))

    @property
    def dense_color(self) -> Color:
        return self.sparse_color.swap()

    def extension(self, g: ColoredGraph) -> tuple[int, ...]:
        """Outside vertices with at least δn+2 dense-color edges into L."""
        lmask = to_mask(self.L)
        bound = self.delta * g.n + 2
        return tuple(
            v for v in range(g.n) if not lmask >> v & 1 and (g.mask(v, self.dense_color) & lmask).bit_count() >= bound
        )


@dataclass(frozen=True)
class PartitionWitness:
    """Four parts U1..U4 plus the leftover set V0 and the absorbed sets X_R, X_B."""

    U1: tuple[int, ...]
    U2: tuple[int, ...]
    U3: tuple[int, ...]
    U4: tuple[int, ...]
    V0: tuple[int, ...] = ()
    XR: tuple[int, ...] = ()
    XB: tuple[int, ...] = ()
    delta: Fraction = DEFAULT_DELTA
    processed: bool = False

    def __post_init__(self):
        for name in ("U1", "U2", "U3", "U4", "V0", "XR", "XB"):
            object.__setattr__(self, name, tuple(sorted(getattr(self, name))))
        object.__setattr__(self, "delta", as_delta(self.delta))

    @property
    def parts(self) -> tuple[tuple[int, ...], ...]:
        return (self.U1, self.U2, self.U3, self.U4)

    def part(self, j: int) -> tuple[int, ...]:
        return self.parts[j - 1]

    def part_of(self, v: int) -> int | None:
        for j, p in enumerate(self.parts, 1):
            if v in p:
                return j
        return None

    @property
    def core(self) -> frozenset[int]:
        return frozenset(v for p in self.parts for v in p)

    def with_parts(self, parts: Sequence[Iterable[int]], **kw) -> "PartitionWitness":
        U1, U2, U3, U4 = (tuple(p) for p in parts)
        return replace(self, U1=U1, U2=U2, U3=U3, U4=U4, **kw)

    def sizes(self) -> dict[str, int]:
        return {k: len(getattr(self, k)) for k in ("U1", "U2", "U3", "U4", "V0", "XR", "XB")}


# The four near-complete bipartite views and the two cross graphs that must stay sparse.
PAIR_VIEWS = ((Color.RED, 1, 2), (Color.RED, 3, 4), (Color.BLUE, 1, 3), (Color.BLUE, 2, 4))
CROSS_GRAPHS = ((Color.RED, (1, 2), (3, 4)), (Color.BLUE, (1, 3), (2, 4)))


def pair_view(g: ColoredGraph, w: PartitionWitness, color: Color, i: int, j: int) -> BipartiteView:
    return BipartiteView(g, w.part(i), w.part(j), color)


def cross_view(g: ColoredGraph, w: PartitionWitness, color: Color) -> BipartiteView:
    _, left, right = next(c for c in CROSS_GRAPHS if c[0] is color)
    X = w.part(left[0]) + w.part(left[1])
    Y = w.part(right[0]) + w.part(right[1])
    return BipartiteView(g, X, Y, color)


def _label(color: Color, i: int, j: int) -> str:
    return f"{color.value}[U{i},U{j}]"


def _cross_label(color: Color) -> str:
    _, (a, b), (c, d) = next(x for x in CROSS_GRAPHS if x[0] is color)
    return f"{color.value}[U{a}uU{b},U{c}uU{d}]"


def _check_cover(report: WitnessReport, g: ColoredGraph, sets: dict[str, tuple[int, ...]]) -> bool:
    seen: dict[int, str] = {}
    for name, members in sets.items():
        for v in members:
            if not 0 <= v < g.n:
                report.add("vertex in range", v, "<", g.n, name)
                return False
            if v in seen:
                report.add(f"disjoint sets ({seen[v]}, {name})", 1, "==", 0, f"vertex {v}")
                return False
            seen[v] = name
    report.add("sets cover V", len(seen), "==", g.n)
    return len(seen) == g.n


def max_deficiency(g: ColoredGraph, w: PartitionWitness) -> tuple[int, str]:
    """Largest deficiency over the four pair views, with the view and vertex that attain it."""
    best, where = 0, ""
    for color, i, j in PAIR_VIEWS:
        view = pair_view(g, w, color, i, j)
        for v in view.X + view.Y:
            d = view.deficiency(v)
            if d > best:
                best, where = d, f"vertex {v} in {_label(color, i, j)}"
    return best, where


def check_deficiency(g: ColoredGraph, w: PartitionWitness, bound, report: WitnessReport, name: str) -> None:
    for color, i, j in PAIR_VIEWS:
        view = pair_view(g, w, color, i, j)
        worst = max(view.X + view.Y, key=lambda v: (view.deficiency(v), -v), default=None)
        if worst is None:
            continue
        report.add(f"{name} in {_label(color, i, j)}", view.deficiency(worst), "<=", bound, f"vertex {worst}")


def verify_partition(g: ColoredGraph, w: PartitionWitness, stage: str = "glue") -> WitnessReport:
    """Check a partition witness.

    ``stage`` selects which inequalities apply:

    * ``"classify"`` — the raw four-block outcome: no V0, parts of size at least
      (1/4 - 3δ)n and both cross graphs empty.
    * ``"lemma"`` — the hypotheses of the four-part procedure: parts of size at
      least (1/4 - 4δ)n, |V0| <= δn, cross graphs of maximum degree <= δn, and
      the derived deficiency bound 7δn.
    * ``"glue"`` — what the path-gluing construction actually needs: nonempty
      parts, absorbed vertices with three edges of their color to both halves,
      deficiency at most 8δn + 4 and at most 2(δn + 4) cross edges per color.
    """
    if stage not in ("classify", "lemma", "glue"):
        raise ValueError(f"unknown stage {stage!r}")
    report = WitnessReport()
    n = g.n
    dn = w.delta * n
    sets = {"U1": w.U1, "U2": w.U2, "U3": w.U3, "U4": w.U4, "V0": w.V0, "XR": w.XR, "XB": w.XB}
    if not _check_cover(report, g, sets):
        return report
    if stage == "classify":
        report.add("V0 empty", len(w.V0) + len(w.XR) + len(w.XB), "==", 0)
        for j, p in enumerate(w.parts, 1):
            report.add(f"|U{j}| >= (1/4 - 3delta)n", len(p), ">=", (Fraction(1, 4) - 3 * w.delta) * n)
        for color, *_ in CROSS_GRAPHS:
            report.add(f"edges of {_cross_label(color)}", len(cross_view(g, w, color).edges()), "==", 0)
        return report
    if stage == "lemma":
        report.add("delta < 1/1000", w.delta, "<", LEMMA_DELTA_LIMIT)
        for j, p in enumerate(w.parts, 1):
            report.add(f"|U{j}| >= (1/4 - 4delta)n", len(p), ">=", (Fraction(1, 4) - 4 * w.delta) * n)
        report.add("|V0| <= delta n", len(w.V0), "<=", dn)
        for color, *_ in CROSS_GRAPHS:
            view = cross_view(g, w, color)
            worst = max(view.X + view.Y, key=lambda v: (view.degree(v), -v), default=None)
            if worst is not None:
                report.add(f"max degree of {_cross_label(color)}", view.degree(worst), "<=", dn, f"vertex {worst}")
        check_deficiency(g, w, 7 * dn, report, "deficiency")
        return report
    for j, p in enumerate(w.parts, 1):
        report.add(f"|U{j}| >= 1", len(p), ">=", 1)
    for color, members in ((Color.RED, w.XR), (Color.BLUE, w.XB)):
        _, left, right = next(c for c in CROSS_GRAPHS if c[0] is color)
        lmask = to_mask(w.part(left[0]) + w.part(left[1]))
        rmask = to_mask(w.part(right[0]) + w.part(right[1]))
        for x in members:
            m = g.mask(x, color)
            report.add(f"X_{color.value} edges to U{left[0]}uU{left[1]}", (m & lmask).bit_count(), ">=", 3, f"vertex {x}")
            report.add(f"X_{color.value} edges to U{right[0]}uU{right[1]}", (m & rmask).bit_count(), ">=", 3, f"vertex {x}")
    check_deficiency(g, w, 8 * dn + 4, report, "deficiency")
    for color, *_ in CROSS_GRAPHS:
        report.add(f"edges of {_cross_label(color)}", len(cross_view(g, w, color).edges()), "<=", 2 * (dn + 4))
    return report


def verify_sparse_set(g: ColoredGraph, w: SparseSetWitness, stage: str = "lemma") -> WitnessReport:
    """``"lemma"``: |L| >= (2/3 - δ)n and Δ <= 11δn; ``"classify"``: |L| >= (2/3 - δ/2)n and Δ <= 10δn."""
    report = WitnessReport()
    n = g.n
    for v in w.L:
        if not 0 <= v < n:
            report.add("vertex in range", v, "<", n, "L")
            return report
    if stage == "lemma":
        size_bound, deg_bound = (Fraction(2, 3) - w.delta) * n, 11 * w.delta * n
        report.add("delta < 1/1000", w.delta, "<", LEMMA_DELTA_LIMIT)
    elif stage == "classify":
        size_bound, deg_bound = (Fraction(2, 3) - w.delta / 2) * n, 10 * w.delta * n
    else:
        raise ValueError(f"unknown stage {stage!r}")
    report.add("|L| lower bound", len(w.L), ">=", size_bound)
    lmask = to_mask(w.L)
    worst = max(w.L, key=lambda v: ((g.mask(v, w.sparse_color) & lmask).bit_count(), -v), default=None)
    if worst is not None:
        deg = (g.mask(worst, w.sparse_color) & lmask).bit_count()
        report.add(f"max degree of {w.sparse_color.value}[L]", deg, "<=", deg_bound, f"vertex {worst}")
    return report


@dataclass(frozen=True)
class ConnectedMatchingWitness:
    color: Color
    component: tuple[int, ...]
    matching: tuple[tuple[int, int], ...]


def verify_connected_matching(g: ColoredGraph, w: ConnectedMatchingWitness, delta) -> WitnessReport:
    from .search import component

    report = WitnessReport()
    delta = as_delta(delta)
    comp = to_mask(w.component)
    if w.component:
        reach = component(g.adj(w.color), w.component[0], comp)
        report.add("component connected", reach.bit_count(), "==", len(w.component))
    seen: set[int] = set()
    for u, v in w.matching:
        if u in seen or v in seen or not g.has_edge(u, v, w.color) or not (comp >> u & 1 and comp >> v & 1):
            report.add("matching edge valid", 0, "==", 1, f"edge {u}-{v}")
        seen.update((u, v))
    report.add("matched vertices >= (2/3 + delta)n", 2 * len(w.matching), ">=", (Fraction(2, 3) + delta) * g.n)
    return report
