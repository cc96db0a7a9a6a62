"""Labeled 3-uniform hypergraphs stored as bit masks over colex-ranked triples.

A triple ``{a, b, c}`` with ``a < b < c`` has rank ``C(a,1) + C(b,2) + C(c,3)``.
The rank does not depend on the vertex count, so the triples of an
``n``-vertex graph are exactly the ranks below ``C(n, 3)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, TextIO

MAX_VERTICES = 32

__all__ = [
    "MAX_VERTICES",
    "Hypergraph3",
    "Link",
    "rank_triple",
    "unrank_triple",
    "triple_count",
    "vertex_set",
    "members",
    "edit",
    "degree",
    "link",
    "induced",
    "delete_vertex",
    "disjoint_union",
    "is_connected",
    "cross_edges",
    "format_hg3",
    "parse_hg3",
    "read_hg3",
    "write_hg3",
]


def triple_count(n: int) -> int:
    return comb(n, 3)


def _build_tables() -> tuple[list[tuple[int, int, int]], list[int]]:
    triples: list[tuple[int, int, int]] = []
    for c in range(2, MAX_VERTICES):
        for b in range(1, c):
            for a in range(b):
                triples.append((a, b, c))
    masks = [(1 << a) | (1 << b) | (1 << c) for a, b, c in triples]
    return triples, masks


# TRIPLES[i] is the triple of rank i; TRIPLE_VMASK[i] its vertex mask.
TRIPLES, TRIPLE_VMASK = _build_tables()


def rank_triple(a: int, b: int, c: int) -> int:
    """Colex rank of the triple ``{a, b, c}`` (any argument order)."""
    a, b, c = sorted((a, b, c))
    if a < 0 or c >= MAX_VERTICES:
        raise ValueError(f"vertex out of range: {(a, b, c)}")
    if a == b or b == c:
        raise ValueError(f"triple has repeated vertices: {(a, b, c)}")
    return a + b * (b - 1) // 2 + c * (c - 1) * (c - 2) // 6


def unrank_triple(rank: int, n: int = MAX_VERTICES) -> tuple[int, int, int]:
    if not 0 <= rank < comb(n, 3):
        raise ValueError(f"triple id {rank} out of range for n={n}")
    return TRIPLES[rank]


def vertex_set(vertices: Iterable[int]) -> int:
    """Vertex mask of an iterable of vertex indices."""
    mask = 0
    for v in vertices:
        if not 0 <= v < MAX_VERTICES:
            raise ValueError(f"vertex out of range: {v}")
        mask |= 1 << v
    return mask


def members(mask: int) -> Iterator[int]:
    """Set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _edge_mask_of(triples: Iterable[Iterable[int]]) -> int:
    mask = 0
    for t in triples:
        mask |= 1 << rank_triple(*t)
    return mask


@dataclass(frozen=True)
class Hypergraph3:
    """An ``n``-vertex 3-graph; bit ``i`` of ``edges`` marks the triple of rank ``i``."""

    n: int
    edges: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count must be in 0..{MAX_VERTICES}, got {self.n}")
        if self.edges < 0 or self.edges >> comb(self.n, 3):
            raise ValueError(f"edge mask has bits outside the {comb(self.n, 3)} triples of n={self.n}")

    @classmethod
    def from_edges(cls, n: int, triples: Iterable[Iterable[int]]) -> Hypergraph3:
        triples = [tuple(t) for t in triples]
        for t in triples:
            if len(t) != 3 or max(t) >= n:
                raise ValueError(f"bad triple {t} for n={n}")
        return cls(n, _edge_mask_of(triples))

    @classmethod
    def complete(cls, n: int) -> Hypergraph3:
        return cls(n, (1 << comb(n, 3)) - 1)

    @property
    def m(self) -> int:
        return self.edges.bit_count()

    def __len__(self) -> int:
        return self.m

    def edge_ids(self) -> list[int]:
        return list(members(self.edges))

    def triples(self) -> list[tuple[int, int, int]]:
        return [TRIPLES[i] for i in members(self.edges)]

    def edge_vmasks(self) -> list[int]:
        return [TRIPLE_VMASK[i] for i in members(self.edges)]

    def has_edge(self, a: int, b: int, c: int) -> bool:
        return bool(self.edges >> rank_triple(a, b, c) & 1)

    def support(self) -> int:
        """Mask of non-isolated vertices."""
        s = 0
        for vm in self.edge_vmasks():
            s |= vm
        return s

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for a, b, c in self.triples():
            deg[a] += 1
            deg[b] += 1
            deg[c] += 1
        return deg

    def relabel(self, perm: list[int] | tuple[int, ...]) -> Hypergraph3:
        """Image under the vertex map ``v -> perm[v]`` (a permutation of ``0..n-1``)."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of range(n)")
        mask = 0
        for a, b, c in self.triples():
            mask |= 1 << rank_triple(perm[a], perm[b], perm[c])
        return Hypergraph3(self.n, mask)

    def __repr__(self) -> str:
        return f"Hypergraph3(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Link:
    vertex: int
    pairs: frozenset[tuple[int, int]]

    def __len__(self) -> int:
        return len(self.pairs)


def _check_vertex(H: Hypergraph3, v: int) -> None:
    if not 0 <= v < H.n:
        raise ValueError(f"vertex {v} out of range for n={H.n}")


def edit(H: Hypergraph3, triple_id: int, present: bool) -> Hypergraph3:
    if not 0 <= triple_id < comb(H.n, 3):
        raise ValueError(f"triple id {triple_id} out of range for n={H.n}")
    bit = 1 << triple_id
    return Hypergraph3(H.n, H.edges | bit if present else H.edges & ~bit)


def star_mask(n: int, v: int) -> int:
    """Edge mask of all triples of ``K_n`` through ``v``."""
    return _star_mask(n, v)


_STAR_CACHE: dict[tuple[int, int], int] = {}


def _star_mask(n: int, v: int) -> int:
    key = (n, v)
    m = _STAR_CACHE.get(key)
    if m is None:
        m = 0
        bit = 1 << v
        for i in range(comb(n, 3)):
            if TRIPLE_VMASK[i] & bit:
                m |= 1 << i
        _STAR_CACHE[key] = m
    return m


def degree(H: Hypergraph3, v: int) -> int:
    _check_vertex(H, v)
    return (H.edges & _star_mask(H.n, v)).bit_count()


def link(H: Hypergraph3, v: int) -> Link:
    _check_vertex(H, v)
    pairs = set()
    for t in members(H.edges & _star_mask(H.n, v)):
        a, b, c = TRIPLES[t]
        pairs.add(tuple(x for x in (a, b, c) if x != v))
    return Link(v, frozenset(pairs))


def induced(H: Hypergraph3, S: int) -> Hypergraph3:
    """Sub-3-graph induced on the vertex mask ``S``, relabeled to ``0..|S|-1``."""
    if S >> H.n:
        raise ValueError(f"vertex set {S:#x} not inside 0..{H.n - 1}")
    keep = list(members(S))
    new = {v: i for i, v in enumerate(keep)}
    mask = 0
    for t in members(H.edges):
        if TRIPLE_VMASK[t] & ~S == 0:
            a, b, c = TRIPLES[t]
            mask |= 1 << rank_triple(new[a], new[b], new[c])
    return Hypergraph3(len(keep), mask)


def delete_vertex(H: Hypergraph3, v: int) -> Hypergraph3:
    _check_vertex(H, v)
    return induced(H, ((1 << H.n) - 1) & ~(1 << v))


def disjoint_union(H1: Hypergraph3, H2: Hypergraph3) -> Hypergraph3:
    n = H1.n + H2.n
    if n > MAX_VERTICES:
        raise ValueError(f"union needs {n} vertices, capacity is {MAX_VERTICES}")
    s = H1.n
    mask = H1.edges
    for a, b, c in H2.triples():
        mask |= 1 << rank_triple(a + s, b + s, c + s)
    return Hypergraph3(n, mask)


def components(H: Hypergraph3) -> list[int]:
    """Vertex masks of the connected components; isolated vertices are singletons."""
    parent = list(range(H.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, c in H.triples():
        ra, rb, rc = find(a), find(b), find(c)
        parent[rb] = ra
        parent[rc] = ra
    comp: dict[int, int] = {}
    for v in range(H.n):
        r = find(v)
        comp[r] = comp.get(r, 0) | (1 << v)
    return sorted(comp.values(), key=lambda m: (m & -m))


def is_connected(H: Hypergraph3) -> bool:
    """True iff no bipartition of the vertices into nonempty parts is crossed by no edge."""
    if H.n < 1:
        raise ValueError("connectivity needs at least one vertex")
    full = (1 << H.n) - 1
    reached = 1
    vmasks = H.edge_vmasks()
    grew = True
    while grew:
        grew = False
        rest = []
        for vm in vmasks:
            if vm & reached:
                if vm & ~reached:
                    reached |= vm
                    grew = True
            else:
                rest.append(vm)
        vmasks = rest
    return reached == full


def cross_edges(n: int, U: int, W: int) -> Hypergraph3:
    """All triples of ``K_n`` meeting both parts of the partition ``U, W``."""
    full = (1 << n) - 1
    if U & W or (U | W) != full or not U or not W:
        raise ValueError("U and W must partition the vertex set into nonempty parts")
    mask = 0
    for i in range(comb(n, 3)):
        vm = TRIPLE_VMASK[i]
        if vm & U and vm & W:
            mask |= 1 << i
    return Hypergraph3(n, mask)


# --- .hg3 text format -------------------------------------------------------

_HEADER = re.compile(r"^hg3\s+n=(\d+)\s+m=(\d+)\s*$")


def format_hg3(H: Hypergraph3) -> str:
    lines = [f"hg3 n={H.n} m={H.m}"]
    lines.extend(f"{a} {b} {c}" for a, b, c in H.triples())
    return "\n".join(lines) + "\n"


def parse_hg3(text: str) -> Hypergraph3:
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln and not ln.startswith("#")]
    if not rows:
        raise ValueError("empty .hg3 input")
    head = _HEADER.match(rows[0])
    if head is None:
        raise ValueError(f"bad .hg3 header: {rows[0]!r}")
    n, m = int(head.group(1)), int(head.group(2))
    if len(rows) - 1 != m:
        raise ValueError(f"header announces {m} edges, found {len(rows) - 1}")
    prev = -1
    mask = 0
    for ln in rows[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise ValueError(f"bad edge line: {ln!r}")
        u, v, w = map(int, parts)
        if not 0 <= u < v < w < n:
            raise ValueError(f"edge line must satisfy 0 <= u < v < w < {n}: {ln!r}")
        r = rank_triple(u, v, w)
        if r <= prev:
            raise ValueError(f"edge lines not in strictly increasing colex order at {ln!r}")
        prev = r
        mask |= 1 << r
    return Hypergraph3(n, mask)


def read_hg3(source: str | TextIO) -> Hypergraph3:
    if isinstance(source, str):
        with open(source) as fh:
            return parse_hg3(fh.read())
    return parse_hg3(source.read())


def write_hg3(H: Hypergraph3, target: str | TextIO) -> None:
    if isinstance(target, str):
        with open(target, "w") as fh:
            fh.write(format_hg3(H))
    else:
        target.write(format_hg3(H))


def all_triples(vertices: Iterable[int]) -> list[tuple[int, int, int]]:
    return list(combinations(sorted(vertices), 3))
