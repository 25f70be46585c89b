"""Independent brute-force oracles used only by the tests.

They share no code with the search engine: cycles are found by a subset
dynamic program, matchings by exhaustive edge selection.
"""

from itertools import combinations


def neighbor_sets(n, edges):
    nb = [set() for _ in range(n)]
    for u, v in edges:
        nb[u].add(v)
        nb[v].add(u)
    return nb


def cycle_length_set(n, edges):
    """All cycle lengths of a simple graph, by a DP over vertex subsets.

    For each root s (the smallest cycle vertex) reach[mask] holds the possible
    end vertices of simple paths from s visiting exactly ``mask``.
    """
    nb = neighbor_sets(n, edges)
    lengths = set()
    for s in range(n):
        higher = [v for v in range(s + 1, n)]
        index = {v: i for i, v in enumerate(higher)}
        reach = {0: {s}}
        order = sorted(range(1 << len(higher)), key=lambda m: bin(m).count("1"))
        for mask in order:
            ends = reach.get(mask)
            if not ends:
                continue
            size = bin(mask).count("1") + 1
            if size >= 3 and any(s in nb[e] for e in ends if e != s):
                lengths.add(size)
            for e in ends:
                for w in nb[e]:
                    if w > s and not mask >> index[w] & 1:
                        reach.setdefault(mask | 1 << index[w], set()).add(w)
    return lengths


def has_hamiltonian_path(n, edges, vertices, s, t):
    nb = neighbor_sets(n, edges)
    vs = sorted(vertices)
    idx = {v: i for i, v in enumerate(vs)}
    reach = {1 << idx[s]: {s}}
    full = (1 << len(vs)) - 1
    for mask in sorted(range(1 << len(vs)), key=lambda m: bin(m).count("1")):
        for e in reach.get(mask, ()):
            for w in nb[e]:
                if w in idx and not mask >> idx[w] & 1:
                    reach.setdefault(mask | 1 << idx[w], set()).add(w)
    return t in reach.get(full, set())


def max_matching_size(edges):
    edges = list(edges)
    best = 0
    def grow(i, used, size):
        nonlocal best
        best = max(best, size)
        if size + (len(edges) - i) <= best:
            return
        for j in range(i, len(edges)):
            u, v = edges[j]
            if u not in used and v not in used:
                grow(j + 1, used | {u, v}, size + 1)
    grow(0, frozenset(), 0)
    return best


def hall_condition_holds(X, nbrs):
    for k in range(1, len(X) + 1):
        for S in combinations(X, k):
            if len(set().union(*(nbrs[x] for x in S))) < k:
                return False
    return True
