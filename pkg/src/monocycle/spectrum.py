"""Exact monochromatic cycle spectra by exhaustive search.

Each length is searched separately, longest first, inside the biconnected
blocks that can hold it. A found cycle is shortened along its chords so dense
graphs rarely need more than a handful of searches.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .graph import (
    COLORS,
    Color,
    ColoredGraph,
    CycleCertificate,
    GraphLike,
    build,
    verify_cycle,
)
from .search import blocks, chord_closure, find_cycle_of_length, two_coloring

DEFAULT_EXACT_LIMIT = 14
DEFAULT_ARROW_BUDGET = 1 << 20


class SpectrumRefused(Exception):
    """The instance is larger than the exact-search threshold."""

    def __init__(self, n: int, limit: int):
        self.n = n
        self.limit = limit
        super().__init__(f"exact spectrum refused: n={n} exceeds threshold {limit}")


def _adjacency(g: GraphLike, color: Color | None) -> tuple[int, ...]:
    if isinstance(g, ColoredGraph):
        if color is None:
            raise ValueError("a color is required for a colored graph")
        return g.adj(color)
    return g.adj


def cycle_lengths(adj: Sequence[int], n: int, wanted: Sequence[int] | None = None) -> dict[int, list[int]]:
    """Map each achievable cycle length (optionally only those in ``wanted``) to a witness."""
    full = (1 << n) - 1
    bounds = []
    for b in sorted(blocks(adj, full), key=lambda m: m & -m):
        parts = two_coloring(adj, b)
        if parts is None:
            bounds.append((b, b.bit_count(), False))
        else:
            bounds.append((b, 2 * min(p.bit_count() for p in parts), True))
    top = max((cap for _, cap, _ in bounds), default=0)
    targets = range(top, 2, -1) if wanted is None else sorted(set(wanted), reverse=True)
    known: dict[int, list[int]] = {}
    for length in targets:
        if length in known or length < 3:
            continue
        for b, cap, bipartite in bounds:
            if length > cap or (bipartite and length % 2):
                continue
            found = find_cycle_of_length(adj, length, b)
            if found:
                known[length] = found
                chord_closure(adj, found, known)
                break
    if wanted is not None:
        keep = set(wanted)
        known = {k: v for k, v in known.items() if k in keep}
    return dict(sorted(known.items()))


def cycle_spectrum(
    g: GraphLike, color: Color | None = None, max_n_exact: int = DEFAULT_EXACT_LIMIT
) -> dict[int, CycleCertificate]:
    """Every cycle length in ``[3, n]`` of the given color, each with a verified certificate."""
    if g.n > max_n_exact:
        raise SpectrumRefused(g.n, max_n_exact)
    adj = _adjacency(g, color)
    cert_color = color if isinstance(g, ColoredGraph) else getattr(g, "color", None)
    out = {}
    for length, cyc in cycle_lengths(adj, g.n).items():
        cert = CycleCertificate(tuple(cyc), cert_color)
        check = verify_cycle(g, cert)
        if not check:  # pragma: no cover - would indicate a search bug
            raise AssertionError(f"unsound certificate for length {length}: {check.detail}")
        out[length] = cert
    return out


@dataclass(frozen=True)
class Branch:
    kind: str  # "AllLengths", "AllEven" or "Neither"
    color: Color | None = None

    def __str__(self) -> str:
        return self.kind if self.color is None else f"{self.kind}({self.color.label})"


@dataclass(frozen=True)
class TheoremVerdict:
    n: int
    t: int
    r: int
    holds: bool
    branch: Branch
    missing: tuple[int, ...]


@dataclass
class SpectrumReport:
    n: int
    red: dict[int, CycleCertificate]
    blue: dict[int, CycleCertificate]
    circumference: CycleCertificate | None
    verdict: TheoremVerdict | None = None
    exact: bool = True
    extra: dict = field(default_factory=dict)

    def lengths(self, color: Color) -> list[int]:
        return sorted((self.red if color is Color.RED else self.blue).keys())


def _longest(spectra: dict[Color, dict[int, CycleCertificate]]) -> CycleCertificate | None:
    best = None
    for color in COLORS:
        if not spectra[color]:
            continue
        cert = spectra[color][max(spectra[color])]
        if best is None or (cert.length, _neg(cert.canonical())) > (best.length, _neg(best.canonical())):
            best = cert
    return best


def _neg(seq: tuple[int, ...]) -> tuple[int, ...]:
    # larger is better in the comparison above; lexicographically smaller cycles win ties
    return tuple(-x for x in seq)


def monochromatic_circumference(g: ColoredGraph, max_n_exact: int = DEFAULT_EXACT_LIMIT) -> CycleCertificate | None:
    """Longest monochromatic cycle; ties go to the lexicographically smaller canonical cycle."""
    spectra = {c: cycle_spectrum(g, c, max_n_exact) for c in COLORS}
    return _longest(spectra)


def verdict_from_spectra(n: int, red: set[int] | Sequence[int], blue: set[int] | Sequence[int]) -> TheoremVerdict:
    if n < 3:
        raise ValueError("the verdict needs n >= 3")
    t, r = divmod(n, 3)
    all_lengths = set(range(3, 2 * t + r + 1))
    all_even = set(range(4, 2 * t + 3, 2))
    sets = {Color.RED: set(red), Color.BLUE: set(blue)}
    candidates = []
    for kind, required in (("AllLengths", all_lengths), ("AllEven", all_even)):
        for color in COLORS:
            candidates.append((Branch(kind, color), tuple(sorted(required - sets[color]))))
    for branch, missing in candidates:
        if not missing:
            return TheoremVerdict(n, t, r, True, branch, ())
    _, missing = min(candidates, key=lambda bm: len(bm[1]))
    return TheoremVerdict(n, t, r, False, Branch("Neither"), missing)


def theorem_verdict(g: ColoredGraph, max_n_exact: int = DEFAULT_EXACT_LIMIT) -> TheoremVerdict:
    red = cycle_spectrum(g, Color.RED, max_n_exact)
    blue = cycle_spectrum(g, Color.BLUE, max_n_exact)
    return verdict_from_spectra(g.n, red, blue)


def spectrum_report(g: ColoredGraph, max_n_exact: int = DEFAULT_EXACT_LIMIT) -> SpectrumReport:
    spectra = {c: cycle_spectrum(g, c, max_n_exact) for c in COLORS}
    verdict = verdict_from_spectra(g.n, spectra[Color.RED], spectra[Color.BLUE]) if g.n >= 3 else None
    return SpectrumReport(g.n, spectra[Color.RED], spectra[Color.BLUE], _longest(spectra), verdict)


@dataclass(frozen=True)
class ArrowsResult:
    status: str  # "yes", "no" or "budget"
    length: int
    colorings_checked: int
    counterexample: ColoredGraph | None = None


def _host_edges(host: GraphLike) -> list[tuple[int, int]]:
    if isinstance(host, ColoredGraph):
        return [(u, v) for u, v, _ in host.edges()]
    return host.edges()


def _coloring(n: int, edges: list[tuple[int, int]], code: int) -> tuple[list[int], list[int]]:
    red = [0] * n
    blue = [0] * n
    for i, (u, v) in enumerate(edges):
        target = blue if i and code >> (i - 1) & 1 else red
        target[u] |= 1 << v
        target[v] |= 1 << u
    return red, blue


def _first_counterexample(n: int, edges: list[tuple[int, int]], length: int, lo: int, hi: int) -> int | None:
    full = (1 << n) - 1
    for code in range(lo, hi):
        red, blue = _coloring(n, edges, code)
        if find_cycle_of_length(red, length, full) is None and find_cycle_of_length(blue, length, full) is None:
            return code
    return None


def arrows_cycle(
    host: GraphLike, length: int, budget: int = DEFAULT_ARROW_BUDGET, workers: int = 1
) -> ArrowsResult:
    """Decide whether every 2-coloring of ``host`` has a monochromatic cycle of ``length``.

    The first edge is fixed red (color swap symmetry), so ``2**(m-1)`` colorings
    are enumerated in increasing code order; the reported counterexample is the
    first one in that order regardless of ``workers``.
    """
    if length < 3:
        raise ValueError("cycle length must be at least 3")
    n = host.n
    edges = sorted(_host_edges(host))
    total = 1 << max(len(edges) - 1, 0)
    if total > budget:
        return ArrowsResult("budget", length, 0)
    if workers <= 1 or total < 4096:
        code = _first_counterexample(n, edges, length, 0, total)
    else:
        step = -(-total // workers)
        bounds = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_first_counterexample, n, edges, length, lo, hi) for lo, hi in bounds]
            hits = [f.result() for f in futures]
        code = min((h for h in hits if h is not None), default=None)
    if code is None:
        return ArrowsResult("yes", length, total)
    red, blue = _coloring(n, edges, code)
    witness = build(
        n,
        [(u, v, Color.RED if red[u] >> v & 1 else Color.BLUE) for u, v in edges],
    )
    for c in COLORS:
        if length in cycle_spectrum(witness, c, max_n_exact=max(n, DEFAULT_EXACT_LIMIT)):
            raise AssertionError("counterexample failed re-verification")  # pragma: no cover
    return ArrowsResult("no", length, code + 1, witness)
