"""Baseline solvers: constraint-aware greedy peeling, rank-1 LRBO, brute force."""

from __future__ import annotations

import heapq
import math
from itertools import combinations

import numpy as np

from .constraints import ConstraintSpec, lmo, validate
from .graph import WeightedGraph, induced_weight
from .spectral import dominant_eigenpair

# Above this vertex count the peeling loop switches from a lazy heap to a
# vectorized argmin scan (identical output, much faster in numpy).
_HEAP_LIMIT = 3000

BRUTE_FORCE_LIMIT = 10**7


# Group counts only shrink during peeling, so once a group hits its minimum
# its surviving members can never be removed again; all three peeling
# implementations below exploit this to skip frozen groups permanently.


def _peel_argmin(graph, spec):
    """Peeling via full argmin scans; O(n^2) but vectorized."""
    n = graph.n
    labels = spec.attr.labels
    mins = np.asarray(spec.mins, dtype=np.int64)
    counts = np.array([len(g) for g in spec.attr.groups], dtype=np.int64)
    key = np.asarray(graph.adj.sum(axis=1)).ravel().astype(np.float64)
    alive = np.ones(n, dtype=bool)
    for i in range(spec.attr.r):
        if counts[i] <= mins[i]:
            key[spec.attr.groups[i]] = np.inf
    indptr, indices, data = graph.adj.indptr, graph.adj.indices, graph.adj.data
    for _ in range(n - spec.k):
        v = int(np.argmin(key))
        if not np.isfinite(key[v]):
            raise AssertionError("no removable vertex before reaching size k")
        alive[v] = False
        key[v] = np.inf
        nbrs = indices[indptr[v]:indptr[v + 1]]
        key[nbrs] -= data[indptr[v]:indptr[v + 1]]
        g = labels[v]
        counts[g] -= 1
        if counts[g] == mins[g]:
            members = spec.attr.groups[g]
            key[members[alive[members]]] = np.inf
    return np.flatnonzero(alive)


def _peel_heap(graph, spec):
    """Peeling via a lazy-deletion binary min-heap keyed by (degree, id)."""
    n = graph.n
    labels = spec.attr.labels
    mins = list(spec.mins)
    counts = [len(g) for g in spec.attr.groups]
    deg = np.asarray(graph.adj.sum(axis=1)).ravel().astype(np.float64)
    alive = np.ones(n, dtype=bool)
    frozen = [counts[i] <= mins[i] for i in range(spec.attr.r)]
    heap = [(deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    indptr, indices, data = graph.adj.indptr, graph.adj.indices, graph.adj.data
    remaining = n
    while remaining > spec.k:
        if not heap:
            raise AssertionError("no removable vertex before reaching size k")
        d, v = heapq.heappop(heap)
        if not alive[v] or d != deg[v] or frozen[labels[v]]:
            continue
        alive[v] = False
        remaining -= 1
        g = labels[v]
        counts[g] -= 1
        if counts[g] == mins[g]:
            frozen[g] = True
        for u, w in zip(indices[indptr[v]:indptr[v + 1]],
                        data[indptr[v]:indptr[v + 1]]):
            if alive[u]:
                deg[u] -= w
                if not frozen[labels[u]]:
                    heapq.heappush(heap, (deg[u], u))
    return np.flatnonzero(alive)


def _peel_bucket(graph, spec):
    """Peeling via a bucket queue over integer degrees (unweighted graphs)."""
    if not graph.is_unweighted():
        raise ValueError("bucket peeling requires unit edge weights")
    n = graph.n
    labels = spec.attr.labels
    mins = list(spec.mins)
    counts = [len(g) for g in spec.attr.groups]
    deg = np.asarray(graph.adj.sum(axis=1)).ravel().astype(np.int64)
    alive = np.ones(n, dtype=bool)
    frozen = [counts[i] <= mins[i] for i in range(spec.attr.r)]
    max_deg = int(deg.max()) if n else 0
    buckets = [[] for _ in range(max_deg + 1)]
    for v in range(n):
        heapq.heappush(buckets[deg[v]], v)
    indptr, indices = graph.adj.indptr, graph.adj.indices
    cur = 0
    remaining = n
    while remaining > spec.k:
        while cur <= max_deg:
            found = None
            while buckets[cur]:
                v = buckets[cur][0]
                if alive[v] and deg[v] == cur and not frozen[labels[v]]:
                    found = v
                    break
                heapq.heappop(buckets[cur])
            if found is not None:
                break
            cur += 1
        if cur > max_deg:
            raise AssertionError("no removable vertex before reaching size k")
        v = heapq.heappop(buckets[cur])
        alive[v] = False
        remaining -= 1
        g = labels[v]
        counts[g] -= 1
        if counts[g] == mins[g]:
            frozen[g] = True
        for u in indices[indptr[v]:indptr[v + 1]]:
            if alive[u]:
                deg[u] -= 1
                if not frozen[labels[u]]:
                    heapq.heappush(buckets[deg[u]], int(u))
        cur = max(0, cur - 1)
    return np.flatnonzero(alive)


def greedy_peel(graph: WeightedGraph, spec: ConstraintSpec) -> np.ndarray:
    """Remove minimum-(weighted-)degree removable vertices until k remain.

    A vertex is removable iff its group stays at or above its minimum after
    removal; ties go to the lower vertex id. Returns the sorted survivor ids,
    always a feasible set of size k.
    """
    validate(spec, graph)
    if graph.n > _HEAP_LIMIT:
        return _peel_argmin(graph, spec)
    if graph.is_unweighted():
        return _peel_bucket(graph, spec)
    return _peel_heap(graph, spec)


def lrbo_rank1(graph: WeightedGraph, spec: ConstraintSpec,
               power_iters=1000, power_tol=1e-8, seed=0):
    """Rank-1 low-rank bilinear optimization baseline.

    Replaces A by its dominant spectral component v1 u1^T (u1 = eig1 * v1)
    and maximizes the bilinear form x^T v1 u1^T y over feasible binary pairs
    via sign-candidate linear maximizations. Returns
    (selected, (x_ind, y_ind), bilinear_value); ``selected`` is the x
    candidate inducing the larger edge weight.
    """
    validate(spec, graph)
    if graph.m == 0:
        raise ValueError("LRBO requires a graph with at least one edge")
    eig1, v1, _ = dominant_eigenpair(graph.adj, graph.w_max,
                                     power_iters, power_tol, seed)
    u1 = eig1 * v1
    candidates = []
    for sign in (1.0, -1.0):
        x = lmo(spec, sign * v1)
        cx = float(v1 @ x)
        y = lmo(spec, np.sign(eig1 * cx) * u1 if eig1 * cx != 0 else u1)
        value = cx * float(u1 @ y)
        candidates.append((x, y, value))
    best_x, best_y, bilinear_value = max(candidates, key=lambda c: c[2])
    # Collapse the pair to one reported subgraph: the x candidate with the
    # larger induced weight (the bilinear optimum itself is a pair).
    sets = [np.flatnonzero(c[0] > 0.5) for c in candidates]
    weights = [induced_weight(graph, s) for s in sets]
    selected = sets[int(np.argmax(weights))]
    return selected, (best_x, best_y), bilinear_value


def brute_force(graph: WeightedGraph, spec: ConstraintSpec):
    """Exhaustive oracle over all feasible k-subsets (small instances only).

    Returns (best_set, best_weight); ties resolve to the lexicographically
    smallest subset. Guarded by ``BRUTE_FORCE_LIMIT`` on C(n, k).
    """
    validate(spec, graph)
    n, k = graph.n, spec.k
    if math.comb(n, k) > BRUTE_FORCE_LIMIT:
        raise ValueError(f"C({n},{k}) exceeds the brute-force guard")
    dense = graph.adj.toarray()
    labels = spec.attr.labels
    mins = spec.mins
    r = spec.attr.r
    best_set, best_val = None, -1.0
    for combo in combinations(range(n), k):
        idx = np.fromiter(combo, dtype=np.int64, count=k)
        counts = np.bincount(labels[idx], minlength=r)
        if np.any(counts < mins):
            continue
        val = float(dense[np.ix_(idx, idx)].sum()) / 2.0
        if val > best_val:
            best_set, best_val = idx, val
    if best_set is None:
        raise ValueError("no feasible subset exists for this spec")
    return best_set, best_val
