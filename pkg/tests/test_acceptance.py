"""Acceptance criteria, one test per criterion.

Each test appends a ``[criterion k] PASS|FAIL ...`` line to the acceptance
section printed at the end of the pytest run, then asserts. Reference values
come from the brute-force oracles in ``oracles.py``, never from the package.
"""

import math
import random
import time
from pathlib import Path

import networkx as nx
import pytest

from conftest import ACCEPTANCE_LINES
from monocycle import textformat
from monocycle.constructions import (
    example1,
    example2,
    example3,
    four_part_instance,
    k4_two_paths,
    k5_two_bulls,
    random_min_degree,
)
from monocycle.finders import (
    Status,
    bagga_varma_bipancyclic,
    berge_ham_path,
    bondy_pancyclic,
    chvatal_hamiltonian,
    dense_even_condition,
    dense_even_cycles,
    dense_even_window,
    hall_matching,
    is_balanced_complete_bipartite,
    jackson_cycle,
    verify_matching,
)
from monocycle.graph import BipartiteView, Color, SimpleGraph, build, verify_cycle, verify_path
from monocycle.spectrum import arrows_cycle, spectrum_report, theorem_verdict
from monocycle.stability import find_structures, four_part_cycles, frame_of, glue_cycles, glue_window, process_v0
from monocycle.witness import PAIR_VIEWS, pair_view
from oracles import cycle_length_set, has_hamiltonian_path, hall_condition_holds, max_matching_size

R, B = Color.RED, Color.BLUE
SWEEP_DIR = Path(__file__).resolve().parent.parent / "sweep_failures"


def report(k, ok, detail):
    ACCEPTANCE_LINES.append(f"[criterion {k}] {'PASS' if ok else 'FAIL'} {detail}")
    return ok


def mono(g, c):
    return [(u, v) for u, v, cs in g.edges() if c in cs]


def oracle_spectra(g):
    return {c: cycle_length_set(g.n, mono(g, c)) for c in (R, B)}


def oracle_circumference(g):
    return max((max(s) for s in oracle_spectra(g).values() if s), default=0)


# -- 1. Example 1 ------------------------------------------------------------------


def test_criterion_1_example1_circumference_and_verdict():
    bad, slowest = [], 0.0
    for n in range(6, 15):
        t, r = divmod(n, 3)
        start = time.perf_counter()
        g = example1(t, r).graph
        circ = oracle_circumference(g)
        verdict = theorem_verdict(g)
        slowest = max(slowest, time.perf_counter() - start)
        if circ != 2 * t + r or str(verdict.branch) != "AllLengths(Blue)" or not verdict.holds:
            bad.append((n, circ, str(verdict.branch)))
    ok = not bad and slowest <= 60
    report(1, ok, f"Example 1, n=6..14: circumference 2t+r and AllLengths(Blue); failures={bad}; slowest {slowest:.2f}s")
    assert ok


# -- 2. Example 2 ------------------------------------------------------------------


def test_criterion_2_example2_degree_and_circumference():
    bad, count = [], 0
    for n in (8, 10, 12, 14):
        cap = 2 * math.ceil((n - 2) / 4) + 1
        for seed in range(20):
            g = example2(n, seed).graph
            count += 1
            circ = oracle_circumference(g)
            if circ > cap or g.min_degree() != (3 * n - 2) // 4:
                bad.append((n, seed, circ, g.min_degree()))
    ok = not bad
    report(2, ok, f"Example 2, {count} instances: circumference <= 2*ceil((n-2)/4)+1, min degree floor((3n-2)/4); failures={bad}")
    assert ok


# -- 3. Example 3 ------------------------------------------------------------------


def test_criterion_3_example3_gap_and_red_spectrum():
    bad = []
    for t in (2, 3, 4):
        g = example3(t).graph
        spectra = oracle_spectra(g)
        rep = spectrum_report(g)
        even = set(range(4, 2 * (g.n // 2) + 1, 2))
        if any(2 * t + 1 in s for s in spectra.values()) or spectra[R] != even or set(rep.red) != even:
            bad.append(t)
        if set(rep.blue) != spectra[B]:
            bad.append(t)
    ok = not bad
    report(3, ok, f"Example 3, t=2,3,4: no monochromatic C_(2t+1), red spectrum all even in [4, 2*floor(n/2)]; failures={bad}")
    assert ok


# -- 4. degenerate hosts -------------------------------------------------------------


def test_criterion_4_degenerate_hosts():
    start = time.perf_counter()
    k4 = k4_two_paths().graph
    k5 = k5_two_bulls().graph
    k4_cycles = oracle_spectra(k4)
    k5_circ = oracle_circumference(k5)
    res = arrows_cycle(SimpleGraph.complete(5), 4)
    elapsed = time.perf_counter() - start
    bulls = False
    if res.counterexample is not None:
        bull = nx.bull_graph()
        bulls = all(nx.is_isomorphic(nx.Graph(mono(res.counterexample, c)), bull) for c in (R, B))
    ok = (
        not any(k4_cycles.values())
        and k5_circ == 3
        and res.status == "no"
        and res.colorings_checked <= 2**10
        and bulls
        and elapsed <= 5
    )
    report(4, ok, f"K4 acyclic, K5 circumference 3, arrows(K5, C4)={res.status} with two bulls={bulls}; {elapsed:.2f}s")
    assert ok


# -- 5. finders ----------------------------------------------------------------------

TARGET = 500
ATTEMPTS = 40_000


def _random_bipartite(rng, a, b, p):
    xs, ys = tuple(range(a)), tuple(range(a, a + b))
    pairs = [(x, y) for x in xs for y in ys if rng.random() < p]
    return xs, ys, pairs


def _hall(rng):
    a = rng.randint(1, 6)
    xs, ys, pairs = _random_bipartite(rng, a, rng.randint(a, 12 - a), rng.uniform(0.3, 0.9))
    view = BipartiteView(SimpleGraph.from_edges(len(xs) + len(ys), pairs), xs, ys)
    nbrs = {x: {y for u, y in pairs if u == x} for x in xs}
    if not hall_condition_holds(xs, nbrs):
        return None
    res = hall_matching(view)
    found = res.saturating and verify_matching(view.graph, res.matching) and res.matching.size == len(xs)
    return found, found and max_matching_size(pairs) == len(xs), False


def _general(rng):
    n = rng.randint(4, 12)
    p = rng.uniform(0.5, 0.95)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return n, edges, SimpleGraph.from_edges(n, edges)


def _chvatal(rng):
    n, edges, g = _general(rng)
    out = chvatal_hamiltonian(g)
    if not out.precondition:
        return None
    ok = out.found and all(verify_cycle(g, c) for c in out.certificates.values())
    return ok, ok and n in cycle_length_set(n, edges), out.status is Status.EXHAUSTED


def _bondy(rng):
    n, edges, g = _general(rng)
    if rng.random() < 0.02:  # occasionally the exceptional complete bipartite host
        m = rng.randint(2, 6)
        n, g = 2 * m, SimpleGraph.complete_bipartite(m, m)
        edges = g.edges()
    out = bondy_pancyclic(g)
    if not out.precondition:
        return None
    lengths = cycle_length_set(n, edges)
    if out.status is Status.EXCEPTIONAL:
        ok = is_balanced_complete_bipartite(g) and lengths == set(range(4, n + 1, 2))
        return ok, ok, False
    ok = out.found and sorted(out.certificates) == list(range(3, n + 1))
    ok = ok and all(verify_cycle(g, c) for c in out.certificates.values())
    return ok, ok and lengths == set(range(3, n + 1)), out.status is Status.EXHAUSTED


def _bagga_varma(rng):
    m = rng.randint(4, 6)
    xs, ys, pairs = _random_bipartite(rng, m, m, rng.uniform(0.5, 0.95))
    g = SimpleGraph.from_edges(2 * m, pairs)
    out = bagga_varma_bipancyclic(BipartiteView(g, xs, ys))
    if not out.precondition:
        return None
    want = list(range(4, 2 * m + 1, 2))
    ok = out.found and sorted(out.certificates) == want and all(verify_cycle(g, c) for c in out.certificates.values())
    return ok, ok and set(want) <= cycle_length_set(2 * m, pairs), out.status is Status.EXHAUSTED


def _berge(rng):
    m = rng.randint(2, 6)
    xs, ys, pairs = _random_bipartite(rng, m, m, rng.uniform(0.5, 0.95))
    g = SimpleGraph.from_edges(2 * m, pairs)
    u, v = rng.choice(xs), rng.choice(ys)
    out = berge_ham_path(BipartiteView(g, xs, ys), u, v)
    if not out.precondition:
        return None
    ok = out.found and all(verify_path(g, c) and set(c.endpoints) == {u, v} for c in out.certificates.values())
    agree = ok and has_hamiltonian_path(2 * m, pairs, xs + ys, u, v)
    return ok, agree, out.status is Status.EXHAUSTED


def _jackson(rng):
    k = rng.randint(2, 6)
    a = rng.randint(2, k)
    b = rng.randint(k, max(k, min(2 * k - 2, 12 - a)))
    if a + b > 12:
        return "skip"
    xs, ys, pairs = _random_bipartite(rng, a, b, rng.uniform(0.6, 1.0))
    g = SimpleGraph.from_edges(a + b, pairs)
    out = jackson_cycle(BipartiteView(g, xs, ys), k)
    if not out.precondition:
        return None
    ok = out.found and all(verify_cycle(g, c) and c.length == 2 * a for c in out.certificates.values())
    return ok, ok and 2 * a in cycle_length_set(a + b, pairs), out.status is Status.EXHAUSTED


def _dense_even(rng):
    n, edges, g = _general(rng)
    q = rng.randint(1, 3)
    if not dense_even_condition(g, q):
        return None
    out = dense_even_cycles(g, q)
    ok = out.found and all(verify_cycle(g, c) for c in out.certificates.values())
    return ok, ok and set(dense_even_window(n, q)) <= cycle_length_set(n, edges), out.status is Status.EXHAUSTED


def _run_finder(name, trial, seed):
    rng = random.Random(seed)
    confirmed = found = agree = exhausted = 0
    attempts = 0
    start = time.perf_counter()
    while confirmed < TARGET and attempts < ATTEMPTS:
        attempts += 1
        res = trial(rng)
        if res is None or res == "skip":
            continue
        confirmed += 1
        f, a, e = res
        found += f
        agree += a
        exhausted += e
    elapsed = time.perf_counter() - start
    ok = confirmed >= TARGET and found == confirmed and agree == confirmed and exhausted == 0
    detail = (
        f"{name}: {confirmed} precondition-confirmed instances from {attempts} draws, "
        f"found+verified {found}, brute force agrees {agree}, exhausted {exhausted}; {elapsed:.1f}s"
    )
    return ok, detail


FINDERS = [
    ("hall", _hall),
    ("chvatal", _chvatal),
    ("bondy", _bondy),
    ("bagga-varma", _bagga_varma),
    ("berge", _berge),
    ("jackson", _jackson),
]


@pytest.mark.parametrize("name, trial", FINDERS, ids=[f[0] for f in FINDERS])
def test_criterion_5_finder_contract(name, trial):
    ok, detail = _run_finder(name, trial, seed=5)
    report(5, ok, detail)
    assert ok


@pytest.mark.xfail(strict=True, reason="the dense even-cycle edge bound exceeds C(n,2) for every n <= 12")
def test_criterion_5_dense_even_contract():
    ok, detail = _run_finder("dense-even", _dense_even, seed=5)
    report(5, ok, detail + " (unattainable: no graph with n <= 12 meets the edge bound)")
    assert ok


def test_criterion_5_dense_even_forced_search_matches_brute_force():
    rng = random.Random(55)
    bad = 0
    for _ in range(TARGET):
        n, edges, g = _general(rng)
        q = rng.randint(1, 3)
        out = dense_even_cycles(g, q, force=True)
        lengths = cycle_length_set(n, edges)
        want = [k for k in dense_even_window(n, q) if k in lengths]
        if sorted(out.certificates) != want or not all(verify_cycle(g, c) for c in out.certificates.values()):
            bad += 1
        if out.status is Status.EXHAUSTED:
            bad += 1
    ok = bad == 0
    report(5, ok, f"dense-even forced search on {TARGET} instances matches brute force on the window; mismatches={bad}")
    assert ok


# -- 6. stability pipeline ------------------------------------------------------------


@pytest.mark.parametrize("planting, color", [("case1", R), ("case2", R), ("case3", R), ("case4", B)])
def test_criterion_6_glue_and_short_cycles(planting, color):
    start = time.perf_counter()
    inst = four_part_instance(24, planting)
    g, w = inst.graph, inst.witness
    s = find_structures(g, w, frame_of(w, color))[0]
    window = glue_window(g, w, s)
    glued = [glue_cycles(g, w, s, k) for k in window]
    glued_ok = all(c.length == k and c.color is color and verify_cycle(g, c) for c, k in zip(glued, window))
    res = four_part_cycles(g, w, range(4, 11, 2))
    short = res.certificates[color]
    short_ok = all(
        k in short and verify_cycle(g, short[k]) and res.routes[color][k].startswith("bipancyclic") for k in range(4, 11, 2)
    )
    elapsed = time.perf_counter() - start
    ok = set(range(12, 19, 2)) <= set(window) and glued_ok and short_ok and elapsed <= 120
    report(6, ok, f"{planting}: glue window {window}, short lengths 4..10 via bipancyclic={short_ok}; {elapsed:.1f}s")
    assert ok


# -- 7. V0 processing ---------------------------------------------------------------


def test_criterion_7_v0_conservation_and_deficiency():
    bad = []
    for seed in range(100):
        rng = random.Random(seed)
        n = rng.choice((24, 28, 32))
        inst = four_part_instance(n, seed=seed, v0=rng.randint(1, 4), delta=rng.choice(("1/1024", "1/100")))
        res = process_v0(inst.graph, inst.witness)
        w = res.witness
        bound = 8 * w.delta * n + 4
        worst = max(pair_view(inst.graph, w, c, i, j).max_deficiency() for c, i, j in PAIR_VIEWS)
        if not all(step.accounted == n for step in res.steps) or worst > bound or w.V0:
            bad.append((seed, worst))
    ok = not bad
    report(7, ok, f"process_v0 on 100 instances: vertex count conserved at every step, deficiency <= 8*delta*n+4; failures={bad}")
    assert ok


# -- 8. oracle self-consistency -------------------------------------------------------


def _random_colored(rng):
    n = rng.randint(3, 12)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            tok = rng.choice(("-", "R", "B", "RB"))
            if tok != "-":
                edges.append((u, v, tok))
    return build(n, edges)


def test_criterion_8_spectrum_symmetries():
    rng = random.Random(8)
    bad = []
    for i in range(200):
        g = _random_colored(rng)
        rep = spectrum_report(g)
        base = (set(rep.red), set(rep.blue))
        swapped = spectrum_report(g.swap_colors())
        perm = list(range(g.n))
        rng.shuffle(perm)
        relabeled = spectrum_report(g.relabel(perm))
        missing = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v, R)]
        grown = base
        if missing:
            u, v = rng.choice(missing)
            more = spectrum_report(g.with_edge(u, v, R))
            grown = (set(more.red), set(more.blue))
        if (set(swapped.blue), set(swapped.red)) != base:
            bad.append((i, "swap"))
        if (set(relabeled.red), set(relabeled.blue)) != base:
            bad.append((i, "relabel"))
        if not (base[0] <= grown[0] and base[1] <= grown[1]):
            bad.append((i, "monotone"))
    ok = not bad
    report(8, ok, f"200 random instances: color swap, relabeling and edge addition behave; failures={bad}")
    assert ok


# -- exploratory verdict sweep --------------------------------------------------------


def test_exploratory_verdict_sweep():
    failing, checked = [], 0
    for n in range(9, 15):
        for seed in range(20):
            inst = random_min_degree(n, seed)
            g = inst.graph
            assert g.min_degree() >= inst.expected["min_degree_at_least"]
            rep = spectrum_report(g)
            for certs in (rep.red, rep.blue):
                for cert in certs.values():
                    assert verify_cycle(g, cert)
                    checked += 1
            if not rep.verdict.holds:
                failing.append((n, seed, g))
    if failing:
        SWEEP_DIR.mkdir(exist_ok=True)
        for n, seed, g in failing:
            textformat.write(g, SWEEP_DIR / f"random_n{n}_s{seed}.cg", [f"verdict failed for n={n} seed={seed}"])
    report("sweep", True, f"random min-degree sweep n=9..14, 120 instances, {checked} certificates verified, "
           f"{len(failing)} verdict failures persisted")
