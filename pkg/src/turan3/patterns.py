"""Catalog of small 3-graphs, containment detectors and extremal constructions."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations, permutations
from math import comb, perm
from typing import Iterator, Sequence

from .core import (
    TRIPLE_VMASK,
    TRIPLES,
    Hypergraph3,
    disjoint_union,
    members,
    rank_triple,
    star_mask,
)

__all__ = [
    "Pattern",
    "CATALOG_NAMES",
    "catalog",
    "contains",
    "embeddings",
    "count_copies",
    "is_intersecting",
    "common_vertex",
    "ConstructionSpec",
    "construct",
    "star",
    "comet",
    "clique_union",
    "h0",
    "complete",
    "copies_in_complete",
]

Triple = tuple[int, int, int]


@dataclass(frozen=True)
class Pattern:
    name: str
    vertices: int
    edges: tuple[Triple, ...]

    @cached_property
    def graph(self) -> Hypergraph3:
        return Hypergraph3.from_edges(self.vertices, self.edges)

    @cached_property
    def automorphism_count(self) -> int:
        edge_set = {tuple(sorted(e)) for e in self.edges}
        count = 0
        for p in permutations(range(self.vertices)):
            if all(tuple(sorted((p[a], p[b], p[c]))) in edge_set for a, b, c in self.edges):
                count += 1
        return count

    def __repr__(self) -> str:
        return f"Pattern({self.name})"


_CATALOG_EDGES: dict[str, tuple[int, tuple[Triple, ...]]] = {
    "P": (7, ((0, 1, 2), (2, 3, 4), (4, 5, 6))),
    "C": (6, ((0, 1, 2), (2, 3, 4), (0, 4, 5))),
    "M": (6, ((0, 1, 2), (3, 4, 5))),
    "P2": (5, ((0, 1, 2), (2, 3, 4))),
    "P2uK3": (8, ((0, 1, 2), (2, 3, 4), (5, 6, 7))),
}
for _k in range(1, 7):
    _CATALOG_EDGES[f"K{_k}"] = (_k, tuple(combinations(range(_k), 3)))

CATALOG_NAMES = tuple(_CATALOG_EDGES)


@lru_cache(maxsize=None)
def catalog(name: str) -> Pattern:
    """The named pattern: P, C, M, P2, P2uK3 or K1..K6."""
    key = name.strip()
    if key.startswith("K(") and key.endswith(")"):
        key = "K" + key[2:-1]
    if key not in _CATALOG_EDGES:
        raise KeyError(f"unknown pattern {name!r}; known: {', '.join(CATALOG_NAMES)}")
    v, edges = _CATALOG_EDGES[key]
    return Pattern(key, v, edges)


def as_pattern(p: Pattern | str) -> Pattern:
    return catalog(p) if isinstance(p, str) else p


# --- generic backtracking embedder -------------------------------------------


def _connected_order(edges: Sequence[Triple]) -> list[Triple]:
    """Edges reordered so each one meets an earlier one whenever possible."""
    rest = list(edges)
    order: list[Triple] = []
    seen: set[int] = set()
    while rest:
        idx = next((i for i, e in enumerate(rest) if seen & set(e)), 0)
        e = rest.pop(idx)
        order.append(e)
        seen.update(e)
    return order


def _embed_iter(
    pn: int, pedges: Sequence[Triple], H: Hypergraph3
) -> Iterator[tuple[int, ...]]:
    """Injective maps of the pattern's edge-covered vertices carrying every edge into ``H``.

    Yields a tuple indexed by pattern vertex with ``-1`` for vertices on no edge.
    """
    order = _connected_order(pedges)
    pdeg = [0] * pn
    for e in pedges:
        for x in e:
            pdeg[x] += 1
    hdeg = H.degrees()
    htriples = H.triples()
    inc: list[list[Triple]] = [[] for _ in range(H.n)]
    for t in htriples:
        for x in t:
            inc[x].append(t)
    image = [-1] * pn
    used = [False] * H.n
    k = len(order)

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == k:
            yield tuple(image)
            return
        pe = order[i]
        anchor = next((x for x in pe if image[x] >= 0), None)
        cands = htriples if anchor is None else inc[image[anchor]]
        for he in cands:
            # mapped pattern vertices must land inside he
            free_slots = list(he)
            ok = True
            for x in pe:
                if image[x] >= 0:
                    if image[x] in free_slots:
                        free_slots.remove(image[x])
                    else:
                        ok = False
                        break
            if not ok:
                continue
            todo = [x for x in pe if image[x] < 0]
            if any(used[y] for y in free_slots):
                continue
            for assign in permutations(free_slots):
                if any(pdeg[x] > hdeg[y] for x, y in zip(todo, assign)):
                    continue
                for x, y in zip(todo, assign):
                    image[x] = y
                    used[y] = True
                yield from rec(i + 1)
                for x, y in zip(todo, assign):
                    image[x] = -1
                    used[y] = False

    yield from rec(0)


def embeddings(H: Hypergraph3, pattern: Pattern | str) -> Iterator[tuple[int, ...]]:
    """All injective vertex maps of ``pattern`` into ``H`` carrying every pattern edge."""
    p = as_pattern(pattern)
    if p.vertices > H.n:
        return
    for img in _embed_iter(p.vertices, p.edges, H):
        loose = [x for x in range(p.vertices) if img[x] < 0]
        spare = [v for v in range(H.n) if v not in img]
        for choice in permutations(spare, len(loose)):
            full = list(img)
            for x, y in zip(loose, choice):
                full[x] = y
            yield tuple(full)


def _complete_witness(p: Pattern, img: tuple[int, ...], n: int) -> tuple[int, ...]:
    full = list(img)
    spare = iter(v for v in range(n) if v not in img)
    for x in range(p.vertices):
        if full[x] < 0:
            full[x] = next(spare)
    return tuple(full)


def _find_generic(H: Hypergraph3, p: Pattern) -> tuple[int, ...] | None:
    for img in _embed_iter(p.vertices, p.edges, H):
        return _complete_witness(p, img, H.n)
    return None


def _find_m(H: Hypergraph3) -> tuple[int, ...] | None:
    vms = H.edge_vmasks()
    for i, e in enumerate(vms):
        for f in vms[i + 1:]:
            if not e & f:
                return tuple(members(e)) + tuple(members(f))
    return None


def _find_p(H: Hypergraph3) -> tuple[int, ...] | None:
    vms = H.edge_vmasks()
    for f in vms:
        fv = list(members(f))
        for p in fv:
            ep = [e for e in vms if e & f == 1 << p]
            if not ep:
                continue
            for q in fv:
                if q == p:
                    continue
                gq = [g for g in vms if g & f == 1 << q]
                for e in ep:
                    for g in gq:
                        if not e & g:
                            a, b = members(e & ~f)
                            mid = next(x for x in fv if x != p and x != q)
                            c, d = members(g & ~f)
                            return (a, b, p, mid, q, c, d)
    return None


_FAST = {"M": _find_m, "P": _find_p}


def contains(H: Hypergraph3, pattern: Pattern | str, method: str = "auto") -> tuple[int, ...] | None:
    """A witness map of ``pattern`` into ``H`` (indexed by pattern vertex), or ``None``.

    ``method`` is ``"auto"`` (fast path when one exists), ``"generic"`` or ``"fast"``.
    """
    p = as_pattern(pattern)
    if p.vertices > H.n:
        return None
    if method not in ("auto", "generic", "fast"):
        raise ValueError(f"unknown method {method!r}")
    if method != "generic" and p.name in _FAST and p.edges == _CATALOG_EDGES[p.name][1]:
        return _FAST[p.name](H)
    if method == "fast":
        raise ValueError(f"no fast detector for {p.name}")
    return _find_generic(H, p)


def check_witness(H: Hypergraph3, pattern: Pattern | str, witness: Sequence[int]) -> bool:
    p = as_pattern(pattern)
    if len(witness) != p.vertices or len(set(witness)) != p.vertices:
        return False
    if any(not 0 <= v < H.n for v in witness):
        return False
    return all(H.has_edge(witness[a], witness[b], witness[c]) for a, b, c in p.edges)


def count_embeddings(H: Hypergraph3, pattern: Pattern | str) -> int:
    p = as_pattern(pattern)
    if p.vertices > H.n:
        return 0
    loose = p.vertices - len({x for e in p.edges for x in e})
    total = 0
    for img in _embed_iter(p.vertices, p.edges, H):
        total += perm(H.n - (p.vertices - loose), loose)
    return total


def count_copies(H: Hypergraph3, pattern: Pattern | str) -> int:
    """Number of distinct sub-3-graphs of ``H`` isomorphic to ``pattern``."""
    p = as_pattern(pattern)
    return count_embeddings(H, p) // p.automorphism_count


@lru_cache(maxsize=None)
def _local_copies(name: str) -> tuple[tuple[int, ...], ...]:
    """Edge sets (as colex ranks) of all copies of the pattern inside ``K_v``."""
    p = catalog(name)
    K = Hypergraph3.complete(p.vertices)
    seen = set()
    for img in _embed_iter(p.vertices, p.edges, K):
        seen.add(tuple(sorted(rank_triple(img[a], img[b], img[c]) for a, b, c in p.edges)))
    return tuple(sorted(seen))


@lru_cache(maxsize=32)
def copies_in_complete(n: int, name: str) -> tuple[tuple[int, ...], ...]:
    """Every copy of a catalog pattern in ``K_n`` as a sorted tuple of triple ranks."""
    p = catalog(name)
    if p.vertices > n or not p.edges:
        return ()
    local = _local_copies(name)
    local_triples = [[TRIPLES[r] for r in cp] for cp in local]
    out = set()
    for S in combinations(range(n), p.vertices):
        for cp in local_triples:
            out.add(tuple(sorted(rank_triple(S[a], S[b], S[c]) for a, b, c in cp)))
    return tuple(sorted(out))


# --- structural predicates --------------------------------------------------


def is_intersecting(H: Hypergraph3) -> bool:
    return _find_m(H) is None


def common_vertex(H: Hypergraph3) -> int | None:
    """Smallest vertex lying on every edge, or ``None`` (also ``None`` for an edgeless graph)."""
    if not H.edges:
        return None
    inter = (1 << H.n) - 1
    for vm in H.edge_vmasks():
        inter &= vm
        if not inter:
            return None
    return (inter & -inter).bit_length() - 1


# --- constructions ----------------------------------------------------------


@dataclass(frozen=True)
class ConstructionSpec:
    kind: str
    n: int = 0
    sizes: tuple[int, ...] = field(default_factory=tuple)

    KINDS = ("star", "comet", "cliqueunion", "h0", "complete")

    @classmethod
    def parse(cls, kind: str, n: int | None = None, sizes: Sequence[int] = ()) -> ConstructionSpec:
        k = kind.lower().replace("_", "").replace("-", "")
        if k not in cls.KINDS:
            raise ValueError(f"unknown construction {kind!r}; known: {', '.join(cls.KINDS)}")
        if k == "cliqueunion":
            return cls(k, sum(sizes), tuple(sizes))
        if n is None:
            raise ValueError(f"construction {kind!r} needs n")
        return cls(k, n)


def star(n: int) -> Hypergraph3:
    """Full star centered at vertex 0."""
    if n < 1:
        raise ValueError("star needs n >= 1")
    return Hypergraph3(n, star_mask(n, 0))


def comet(n: int) -> Hypergraph3:
    """``K4`` on ``{0,1,2,3}`` plus every triple ``{0,a,b}`` with ``4 <= a < b < n``."""
    if n < 5:
        raise ValueError("comet needs n >= 5")
    edges = list(combinations(range(4), 3))
    edges += [(0, a, b) for a, b in combinations(range(4, n), 2)]
    return Hypergraph3.from_edges(n, edges)


def clique_union(sizes: Sequence[int]) -> Hypergraph3:
    """Vertex-disjoint complete 3-graphs on consecutive vertex blocks."""
    if any(s < 0 for s in sizes) or sum(sizes) > 32:
        raise ValueError(f"bad clique sizes {sizes}")
    H = Hypergraph3(0)
    for s in sizes:
        H = disjoint_union(H, Hypergraph3.complete(s))
    return H


def h0(n: int) -> Hypergraph3:
    """All triples containing the pair ``{0,1}`` or the pair ``{2,3}``."""
    if n < 6:
        raise ValueError("h0 needs n >= 6")
    mask = 0
    for i in range(comb(n, 3)):
        vm = TRIPLE_VMASK[i]
        if vm & 0b11 == 0b11 or vm & 0b1100 == 0b1100:
            mask |= 1 << i
    return Hypergraph3(n, mask)


def complete(n: int) -> Hypergraph3:
    return Hypergraph3.complete(n)


def construct(spec: ConstructionSpec) -> Hypergraph3:
    if spec.kind == "star":
        return star(spec.n)
    if spec.kind == "comet":
        return comet(spec.n)
    if spec.kind == "cliqueunion":
        return clique_union(spec.sizes)
    if spec.kind == "h0":
        return h0(spec.n)
    if spec.kind == "complete":
        return complete(spec.n)
    raise ValueError(f"unknown construction kind {spec.kind!r}")
