"""Shared search engine for cycles and Hamiltonian objects on bitset graphs.

Everything here works on ``adj``: a sequence of neighbor bitsets indexed by
vertex id. Vertex subsets are bitsets as well.
"""

from __future__ import annotations

import random
import sys
from typing import Sequence

from .graph import bits, lowest

EXACT_HAMILTONIAN_LIMIT = 20
POSA_RESTARTS = 8


def component(adj: Sequence[int], start: int, allowed: int) -> int:
    """Vertices reachable from ``start`` inside ``allowed`` (``start`` included)."""
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def components(adj: Sequence[int], allowed: int) -> list[int]:
    out = []
    rest = allowed
    while rest:
        c = component(adj, lowest(rest), allowed)
        out.append(c)
        rest &= ~c
    return out


def two_coloring(adj: Sequence[int], mask: int) -> tuple[int, int] | None:
    """Bipartition of the subgraph induced by ``mask``, or None if it has an odd cycle."""
    side: dict[int, int] = {}
    parts = [0, 0]
    for root in bits(mask):
        if root in side:
            continue
        side[root] = 0
        parts[0] |= 1 << root
        stack = [root]
        while stack:
            v = stack.pop()
            for w in bits(adj[v] & mask):
                if w not in side:
                    side[w] = 1 - side[v]
                    parts[side[w]] |= 1 << w
                    stack.append(w)
                elif side[w] == side[v]:
                    return None
    return parts[0], parts[1]


def blocks(adj: Sequence[int], allowed: int) -> list[int]:
    """Vertex sets of the biconnected components with at least three vertices."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    out: list[int] = []
    stack: list[tuple[int, int]] = []
    counter = [0]
    limit = sys.getrecursionlimit()
    if allowed.bit_count() * 2 + 50 > limit:
        sys.setrecursionlimit(allowed.bit_count() * 2 + 50)

    def visit(v: int, parent: int) -> None:
        disc[v] = low[v] = counter[0]
        counter[0] += 1
        for w in bits(adj[v] & allowed):
            if w not in disc:
                stack.append((v, w))
                visit(w, v)
                low[v] = min(low[v], low[w])
                if low[w] >= disc[v]:
                    mask = 0
                    while True:
                        a, b = stack.pop()
                        mask |= (1 << a) | (1 << b)
                        if (a, b) == (v, w):
                            break
                    if mask.bit_count() >= 3:
                        out.append(mask)
            elif w != parent and disc[w] < disc[v]:
                stack.append((v, w))
                low[v] = min(low[v], disc[w])

    for root in bits(allowed):
        if root not in disc:
            visit(root, -1)
    return out


def find_cycle_of_length(adj: Sequence[int], length: int, allowed: int) -> list[int] | None:
    """Backtracking search for a cycle with exactly ``length`` vertices inside ``allowed``.

    The cycle is rooted at its smallest vertex and extended in ascending vertex
    order, so the first witness is the lexicographically smallest one.
    """
    if length < 3 or allowed.bit_count() < length:
        return None
    for s in bits(allowed):
        avail = allowed & ~((1 << (s + 1)) - 1)
        if avail.bit_count() < length - 1:
            break
        if (adj[s] & avail).bit_count() < 2:
            continue
        path = [s]
        if _extend(adj, s, s, avail, length - 1, path):
            return path
    return None


def _extend(adj: Sequence[int], s: int, cur: int, avail: int, need: int, path: list[int]) -> bool:
    if need == 0:
        return bool(adj[cur] >> s & 1)
    closers = adj[s] & avail
    if not closers:
        return False
    cand = adj[cur] & avail
    if need == 1:
        cand &= closers
    if not cand:
        return False
    if need > 1:
        reach = component(adj, cur, avail | (1 << cur)) & ~(1 << cur)
        if reach.bit_count() < need or not reach & closers:
            return False
    for w in bits(cand):
        path.append(w)
        if _extend(adj, s, w, avail & ~(1 << w), need - 1, path):
            return True
        path.pop()
    return False


def chord_shortenings(adj: Sequence[int], cycle: Sequence[int]) -> dict[int, list[int]]:
    """Shorter cycles obtained from ``cycle`` by a single chord, one per length."""
    out: dict[int, list[int]] = {}
    k = len(cycle)
    pos = {v: i for i, v in enumerate(cycle)}
    for i, u in enumerate(cycle):
        for w in bits(adj[u]):
            j = pos.get(w)
            if j is None or j <= i + 1 or (i == 0 and j == k - 1):
                continue
            inner = j - i + 1
            outer = k - (j - i) + 1
            if inner >= 3 and inner not in out:
                out[inner] = list(cycle[i : j + 1])
            if outer >= 3 and outer not in out:
                out[outer] = list(cycle[j:]) + list(cycle[: i + 1])
    return out


def chord_closure(adj: Sequence[int], cycle: Sequence[int], known: dict[int, list[int]]) -> None:
    """Add every length reachable from ``cycle`` by repeated chord shortening to ``known``."""
    work = [list(cycle)]
    while work:
        c = work.pop()
        if all(k in known for k in range(3, len(c))):
            continue
        for length, sub in sorted(chord_shortenings(adj, c).items(), reverse=True):
            if length not in known:
                known[length] = sub
                work.append(sub)


def _localize(adj: Sequence[int], vertices: Sequence[int]) -> list[int]:
    index = {v: i for i, v in enumerate(vertices)}
    keep = 0
    for v in vertices:
        keep |= 1 << v
    local = []
    for v in vertices:
        m = 0
        for w in bits(adj[v] & keep):
            m |= 1 << index[w]
        local.append(m)
    return local


def _posa(adj: list[int], k: int, start: int, rng: random.Random | None, max_steps: int) -> list[int] | None:
    path = [start]
    inp = 1 << start
    for _ in range(max_steps):
        end = path[-1]
        free = adj[end] & ~inp
        if free:
            w = lowest(free) if rng is None else rng.choice(list(bits(free)))
            path.append(w)
            inp |= 1 << w
            continue
        if adj[path[0]] & ~inp:
            path.reverse()
            continue
        if adj[end] >> path[0] & 1:
            if len(path) == k:
                return path
            for i, p in enumerate(path):
                if adj[p] & ~inp:
                    path = path[i + 1 :] + path[: i + 1]
                    break
            else:
                return None
            continue
        pos = {v: i for i, v in enumerate(path)}
        cands = [pos[w] for w in bits(adj[end]) if pos[w] < len(path) - 2]
        if not cands:
            return None
        i = min(cands) if rng is None else rng.choice(cands)
        path[i + 1 :] = path[i + 1 :][::-1]
    return None


def _dp_hamiltonian_cycle(adj: list[int], k: int) -> list[int] | None:
    full = (1 << k) - 1
    dp = [0] * (1 << k)
    dp[1] = 1
    for mask in range(1, full + 1, 2):
        ends = dp[mask]
        if not ends:
            continue
        for w in bits(full & ~mask):
            if adj[w] & ends:
                dp[mask | (1 << w)] |= 1 << w
    closing = dp[full] & adj[0] & ~1
    if not closing:
        return None
    cur = lowest(closing)
    mask = full
    path = [cur]
    while mask != 1:
        prev = mask ^ (1 << cur)
        cur = lowest(dp[prev] & adj[cur])
        path.append(cur)
        mask = prev
    path.reverse()
    return path


def hamiltonian_cycle(
    adj: Sequence[int], vertices: Sequence[int], exact_limit: int = EXACT_HAMILTONIAN_LIMIT
) -> tuple[list[int] | None, bool]:
    """Hamiltonian cycle of the subgraph induced by ``vertices``.

    Returns ``(cycle, decided)``: ``decided`` is False only when the heuristic
    failed and the vertex count is above ``exact_limit``.
    """
    vertices = sorted(vertices)
    k = len(vertices)
    if k < 3:
        return None, True
    local = _localize(adj, vertices)
    if min(m.bit_count() for m in local) < 2:
        return None, True
    if component(local, 0, (1 << k) - 1).bit_count() != k:
        return None, True
    steps = 10 * k * k + 100
    for attempt in range(POSA_RESTARTS):
        rng = None if attempt == 0 else random.Random(attempt)
        start = 0 if rng is None else rng.randrange(k)
        found = _posa(local, k, start, rng, steps)
        if found:
            return [vertices[i] for i in found], True
    if k <= exact_limit:
        found = _dp_hamiltonian_cycle(local, k)
        return (None if found is None else [vertices[i] for i in found]), True
    return None, False


def hamiltonian_path(
    adj: Sequence[int], vertices: Sequence[int], s: int, t: int, exact_limit: int = EXACT_HAMILTONIAN_LIMIT
) -> tuple[list[int] | None, bool]:
    """Hamiltonian path from ``s`` to ``t`` through exactly ``vertices``.

    Reduced to a Hamiltonian cycle through an extra vertex joined to ``s`` and ``t``.
    """
    vertices = sorted(vertices)
    if s == t or s not in vertices or t not in vertices:
        return None, True
    if len(vertices) == 2:
        return ([s, t] if adj[s] >> t & 1 else None), True
    local = _localize(adj, vertices)
    k = len(vertices)
    index = {v: i for i, v in enumerate(vertices)}
    z = k
    local.append((1 << index[s]) | (1 << index[t]))
    local[index[s]] |= 1 << z
    local[index[t]] |= 1 << z
    cycle, decided = hamiltonian_cycle(local, list(range(k + 1)), exact_limit + 1)
    if cycle is None:
        return None, decided
    i = cycle.index(z)
    walk = cycle[i + 1 :] + cycle[:i]
    if walk[0] != index[s]:
        walk.reverse()
    return [vertices[j] for j in walk], True
