"""Canonical labeling, isomorphism and embedding tests for 3-graphs.

Canonical forms come from ordered partition refinement followed by
individualization, keeping the lexicographically least relabeled edge list.
Automorphisms found between equal leaves prune the branching.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import comb
from typing import Iterable, Sequence

from .core import Hypergraph3, components, members
from .patterns import _embed_iter, common_vertex

__all__ = [
    "CanonicalForm",
    "refinement_keys",
    "canonical_form",
    "canonical_labeling",
    "are_isomorphic",
    "embeds_into",
    "dedupe",
]


@dataclass(frozen=True, order=True)
class CanonicalForm:
    n: int
    canonical_edges: tuple[tuple[int, int, int], ...]

    def graph(self) -> Hypergraph3:
        return Hypergraph3.from_edges(self.n, self.canonical_edges)


def refinement_keys(H: Hypergraph3) -> list[tuple]:
    """Per-vertex (degree, sorted link-pair degree sums); relabeling permutes it."""
    deg = H.degrees()
    sums: list[list[int]] = [[] for _ in range(H.n)]
    for a, b, c in H.triples():
        sums[a].append(deg[b] + deg[c])
        sums[b].append(deg[a] + deg[c])
        sums[c].append(deg[a] + deg[b])
    return [(deg[v], tuple(sorted(sums[v]))) for v in range(H.n)]


def _refine(cells: list[list[int]], inc: list[list[tuple[int, int]]]) -> list[list[int]]:
    """Split cells until every vertex of a cell sees the same multiset of link cell pairs."""
    while True:
        where = {}
        for i, cell in enumerate(cells):
            for v in cell:
                where[v] = i
        out: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            keyed: dict[tuple, list[int]] = {}
            for v in cell:
                sig = tuple(sorted(tuple(sorted((where[x], where[y]))) for x, y in inc[v]))
                keyed.setdefault(sig, []).append(v)
            if len(keyed) > 1:
                changed = True
            for sig in sorted(keyed):
                out.append(keyed[sig])
        cells = out
        if not changed:
            return cells


def _certificate(order: Sequence[int], triples: list[tuple[int, int, int]]) -> tuple:
    label = {v: i for i, v in enumerate(order)}
    return tuple(sorted(tuple(sorted((label[a], label[b], label[c]))) for a, b, c in triples))


def _orbits(n: int, gens: Iterable[dict[int, int]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x, y in g.items():
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    return [find(x) for x in range(n)]


def canonical_labeling(H: Hypergraph3) -> tuple[list[int], tuple]:
    """Return ``(order, certificate)``: vertex ``order[i]`` receives canonical label ``i``."""
    n = H.n
    triples = H.triples()
    inc: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for a, b, c in triples:
        inc[a].append((b, c))
        inc[b].append((a, c))
        inc[c].append((a, b))
    keys = refinement_keys(H)
    groups: dict[tuple, list[int]] = {}
    for v in range(n):
        groups.setdefault(keys[v], []).append(v)
    start = _refine([groups[k] for k in sorted(groups)], inc)

    # each reference leaf is (order, path, certificate)
    refs: dict[str, tuple[list[int], list[int], tuple]] = {}
    autos: list[dict[int, int]] = []

    def leaf(cells: list[list[int]], path: list[int]) -> int:
        order = [c[0] for c in cells]
        cert = _certificate(order, triples)
        if not refs:
            refs["first"] = refs["best"] = (order, path[:], cert)
            return len(path)
        for ref_order, ref_path, ref_cert in (refs["first"], refs["best"]):
            if cert == ref_cert:
                # ref_order[i] -> order[i] is an automorphism; the current
                # subtree is the image of one already explored
                g = {ref_order[i]: order[i] for i in range(n) if ref_order[i] != order[i]}
                if g:
                    autos.append(g)
                k = 0
                while k < len(path) and k < len(ref_path) and path[k] == ref_path[k]:
                    k += 1
                return k
        if cert < refs["best"][2]:
            refs["best"] = (order, path[:], cert)
        return len(path)

    def search(cells: list[list[int]], path: list[int]) -> int:
        if len(cells) == n:
            return leaf(cells, path)
        d = len(path)
        target = min((i for i, c in enumerate(cells) if len(c) > 1), key=lambda i: (len(cells[i]), i))
        done: list[int] = []
        for w in cells[target]:
            if done:
                fixing = [g for g in autos if all(g.get(p, p) == p for p in path)]
                if fixing:
                    orb = _orbits(n, fixing)
                    if any(orb[w] == orb[u] for u in done):
                        continue
            child = cells[:target] + [[w], [x for x in cells[target] if x != w]] + cells[target + 1:]
            j = search(_refine(child, inc), path + [w])
            done.append(w)
            if j < d:
                return j
        return d

    if n == 0:
        return [], ()
    search(start, [])
    return refs["best"][0], refs["best"][2]


def canonical_form(H: Hypergraph3) -> CanonicalForm:
    return _canonical_cached(H)


@lru_cache(maxsize=65536)
def _canonical_cached(H: Hypergraph3) -> CanonicalForm:
    _, cert = canonical_labeling(H)
    return CanonicalForm(H.n, cert)


def are_isomorphic(H1: Hypergraph3, H2: Hypergraph3) -> bool:
    if H1.n != H2.n or H1.m != H2.m:
        return False
    if sorted(H1.degrees()) != sorted(H2.degrees()):
        return False
    return canonical_form(H1) == canonical_form(H2)


# --- embedding --------------------------------------------------------------


@lru_cache(maxsize=1024)
def _target_shape(Hbig: Hypergraph3) -> tuple[str, tuple[int, ...]]:
    """Classify a target as a full star, a union of cliques, or generic."""
    n = Hbig.n
    if n >= 3 and Hbig.m == comb(n - 1, 2) and Hbig.m and common_vertex(Hbig) is not None:
        return "star", (n,)
    sizes = []
    for comp in components(Hbig):
        k = comp.bit_count()
        if k >= 3:
            verts = list(members(comp))
            sub = sum(1 for t in Hbig.triples() if t[0] in verts)
            if sub != comb(k, 3):
                return "generic", ()
        sizes.append(k)
    return "cliques", tuple(sorted(sizes, reverse=True))


def _pack(parts: list[int], bins: list[int]) -> bool:
    """Can every part go into a bin with room to spare (exact DFS, parts descending)."""
    if not parts:
        return True
    p = parts[0]
    tried = set()
    for i, cap in enumerate(bins):
        if cap >= p and cap not in tried:
            tried.add(cap)
            bins[i] -= p
            ok = _pack(parts[1:], bins)
            bins[i] += p
            if ok:
                return True
    return False


def _nontrivial_parts(H: Hypergraph3) -> list[int]:
    return sorted((c.bit_count() for c in components(H) if c.bit_count() >= 3), reverse=True)


def _embeds_generic(H: Hypergraph3, Hbig: Hypergraph3) -> bool:
    used = H.support()
    if not used:
        return True
    # compress to the non-isolated vertices of H
    from .core import induced

    core = induced(H, used)
    for _ in _embed_iter(core.n, core.triples(), Hbig):
        return True
    return False


def embeds_into(H: Hypergraph3, Hbig: Hypergraph3, method: str = "auto") -> bool:
    """True iff some injective vertex map carries every edge of ``H`` onto an edge of ``Hbig``.

    Isolated vertices of ``H`` are ignored (``H`` is padded to ``Hbig``'s order).
    ``method`` is ``"auto"`` (use star/clique-union fast paths) or ``"generic"``.
    """
    used = H.support()
    if used.bit_count() > Hbig.n or H.m > Hbig.m:
        return False
    if not H.edges:
        return True
    if method == "generic":
        return _embeds_generic(H, Hbig)
    kind, sizes = _target_shape(Hbig)
    if kind == "star":
        return common_vertex(H) is not None
    if kind == "cliques":
        return _pack(_nontrivial_parts(H), [s for s in sizes if s >= 3])
    return _embeds_generic(H, Hbig)


def dedupe(family: Iterable[Hypergraph3]) -> list[Hypergraph3]:
    """One representative per isomorphism class, sorted by canonical form."""
    reps: dict[CanonicalForm, Hypergraph3] = {}
    for H in family:
        cf = canonical_form(H)
        if cf not in reps:
            reps[cf] = H
    return [reps[k] for k in sorted(reps)]


def brute_force_isomorphic(H1: Hypergraph3, H2: Hypergraph3) -> bool:
    """Reference check over all vertex permutations (small ``n`` only)."""
    if H1.n != H2.n or H1.m != H2.m:
        return False
    target = H2.edges
    for p in permutations(range(H1.n)):
        if H1.relabel(p).edges == target:
            return True
    return False
