"""Brute-force reference implementations, independent of the turan3 package.

Everything here works from first principles: triples are listed in colex
order by sorting, pattern copies are found by trying every injection, and
small extremal problems are solved by sweeping all 2^C(n,3) edge sets with
numpy.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

PATTERN_EDGES = {
    "P": (7, [(0, 1, 2), (2, 3, 4), (4, 5, 6)]),
    "C": (6, [(0, 1, 2), (2, 3, 4), (0, 4, 5)]),
    "M": (6, [(0, 1, 2), (3, 4, 5)]),
    "P2": (5, [(0, 1, 2), (2, 3, 4)]),
    "P2uK3": (8, [(0, 1, 2), (2, 3, 4), (5, 6, 7)]),
}


def pattern(name: str) -> tuple[int, list[tuple[int, int, int]]]:
    if name.startswith("K") and name[1:].isdigit():
        k = int(name[1:])
        return k, list(combinations(range(k), 3))
    return PATTERN_EDGES[name]


@lru_cache(maxsize=None)
def colex(n: int) -> tuple[tuple[int, int, int], ...]:
    return tuple(sorted(combinations(range(n), 3), key=lambda t: (t[2], t[1], t[0])))


@lru_cache(maxsize=None)
def index(n: int) -> dict[tuple[int, int, int], int]:
    return {t: i for i, t in enumerate(colex(n))}


def to_mask(n: int, edges) -> int:
    idx = index(n)
    m = 0
    for e in edges:
        m |= 1 << idx[tuple(sorted(e))]
    return m


def to_edges(n: int, mask: int) -> list[tuple[int, int, int]]:
    return [t for i, t in enumerate(colex(n)) if mask >> i & 1]


def injections(pattern_name: str, n: int):
    k, _ = pattern(pattern_name)
    return permutations(range(n), k)


def embeddings(n: int, mask: int, pattern_name: str) -> int:
    """Number of injective maps sending every pattern edge onto an edge of the graph."""
    k, pe = pattern(pattern_name)
    edges = set(to_edges(n, mask))
    count = 0
    for f in permutations(range(n), k):
        if all(tuple(sorted((f[a], f[b], f[c]))) in edges for a, b, c in pe):
            count += 1
    return count


def has_copy(n: int, mask: int, pattern_name: str) -> bool:
    k, pe = pattern(pattern_name)
    edges = set(to_edges(n, mask))
    for f in permutations(range(n), k):
        if all(tuple(sorted((f[a], f[b], f[c]))) in edges for a, b, c in pe):
            return True
    return False


@lru_cache(maxsize=None)
def copy_masks(n: int, pattern_name: str) -> tuple[int, ...]:
    k, pe = pattern(pattern_name)
    if k > n:
        return ()
    out = set()
    for f in permutations(range(n), k):
        out.add(to_mask(n, [(f[a], f[b], f[c]) for a, b, c in pe]))
    return tuple(sorted(out))


def automorphisms(pattern_name: str) -> int:
    k, pe = pattern(pattern_name)
    target = {tuple(sorted(e)) for e in pe}
    return sum(
        1 for f in permutations(range(k)) if {tuple(sorted((f[a], f[b], f[c]))) for a, b, c in pe} == target
    )


@lru_cache(maxsize=None)
def triple_perms(n: int) -> np.ndarray:
    """Row ``p`` maps triple index ``i`` to the index of its image under permutation ``p``."""
    idx = index(n)
    rows = []
    for f in permutations(range(n)):
        rows.append([idx[tuple(sorted((f[a], f[b], f[c])))] for a, b, c in colex(n)])
    return np.array(rows, dtype=np.int64)


def canon(n: int, masks) -> list[int]:
    """Least integer mask over all relabelings, for each input mask."""
    masks = np.asarray(list(masks), dtype=np.uint64)
    N = len(colex(n))
    bits = ((masks[:, None] >> np.arange(N, dtype=np.uint64)) & np.uint64(1)).astype(np.uint64)
    best = None
    for row in triple_perms(n):
        weights = np.left_shift(np.uint64(1), row.astype(np.uint64))
        img = (bits * weights).sum(axis=1, dtype=np.uint64)
        best = img if best is None else np.minimum(best, img)
    return [int(x) for x in best]


def isomorphic(n: int, a: int, b: int) -> bool:
    return canon(n, [a])[0] == canon(n, [b])[0]


# --- exhaustive sweep over every graph on n <= 6 vertices -------------------


@lru_cache(maxsize=None)
def all_graphs(n: int) -> np.ndarray:
    N = len(colex(n))
    return np.arange(1 << N, dtype=np.uint32)


@lru_cache(maxsize=None)
def _contains(n: int, pattern_name: str) -> np.ndarray:
    g = all_graphs(n)
    hit = np.zeros(g.shape, dtype=bool)
    for c in copy_masks(n, pattern_name):
        c = np.uint32(c)
        hit |= (g & c) == c
    return hit


def _cross_masks(n: int) -> list[int]:
    out = []
    for size in range(1, n):
        for S in combinations(range(n), size):
            if 0 not in S:
                continue
            s = set(S)
            out.append(to_mask(n, [t for t in colex(n) if 0 < len(s.intersection(t)) < 3]))
    return out


def _flag(n: int, flag: str) -> np.ndarray:
    g = all_graphs(n)
    if flag == "connected":
        ok = np.ones(g.shape, dtype=bool)
        for x in _cross_masks(n):
            ok &= (g & np.uint32(x)) != 0
        return ok
    if flag == "intersecting":
        bad = np.zeros(g.shape, dtype=bool)
        for s, t in combinations(colex(n), 2):
            if not set(s) & set(t):
                pair = np.uint32(to_mask(n, [s, t]))
                bad |= (g & pair) == pair
        return ~bad
    if flag == "no_common_vertex":
        ok = g != 0
        for v in range(n):
            star = np.uint32(to_mask(n, [t for t in colex(n) if v in t]))
            ok &= (g & ~star) != 0
        return ok
    raise KeyError(flag)


def feasible(n: int, forbidden=(), required=None, flags=(), excluded=()) -> np.ndarray:
    """Boolean array over all graphs: which satisfy the constraints."""
    g = all_graphs(n)
    ok = np.ones(g.shape, dtype=bool)
    for name in forbidden:
        ok &= ~_contains(n, name)
    if required is not None:
        ok &= _contains(n, required)
    for f in flags:
        ok &= _flag(n, f)
    full = np.uint32((1 << len(colex(n))) - 1)
    for big in excluded:
        images = {int(x) for x in _images(n, big)}
        inside = np.zeros(g.shape, dtype=bool)
        for im in images:
            inside |= (g & (full ^ np.uint32(im))) == 0
        ok &= ~inside
    return ok


def _images(n: int, mask: int) -> np.ndarray:
    N = len(colex(n))
    bits = np.array([(mask >> i) & 1 for i in range(N)], dtype=np.uint64)
    perms = triple_perms(n)
    return (bits[None, :] * np.left_shift(np.uint64(1), perms.astype(np.uint64))).sum(axis=1, dtype=np.uint64)


def brute_max(n: int, forbidden=(), required=None, flags=(), excluded=()) -> tuple[int | None, list[int]]:
    """``(max edges, canonical masks of all optimal graphs)``; ``None`` if nothing is feasible."""
    ok = feasible(n, forbidden, required, flags, excluded)
    g = all_graphs(n)
    if not ok.any():
        return None, []
    sizes = np.bitwise_count(g)
    best = int(sizes[ok].max())
    opt = g[ok & (sizes == best)]
    return best, sorted(set(canon(n, opt.tolist())))


@lru_cache(maxsize=None)
def orbit_reps(n: int) -> tuple[int, ...]:
    """Least mask of every isomorphism class of graphs on ``n`` vertices."""
    N = len(colex(n))
    seen = np.zeros(1 << N, dtype=bool)
    weights = np.left_shift(np.uint64(1), triple_perms(n).astype(np.uint64))
    reps = []
    pos = 0
    while True:
        unseen = np.flatnonzero(~seen[pos:pos + 4096])
        if unseen.size == 0:
            pos += 4096
            if pos >= seen.size:
                break
            continue
        pos += int(unseen[0])
        reps.append(pos)
        bits = np.array([(pos >> i) & 1 for i in range(N)], dtype=np.uint64)
        seen[(weights * bits).sum(axis=1, dtype=np.uint64).astype(np.int64)] = True
    return tuple(reps)
