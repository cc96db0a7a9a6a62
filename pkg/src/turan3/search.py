"""Exact branch-and-bound edge maximization over constrained n-vertex 3-graphs.

Triples are decided in colex order. The state of a node is two integer
masks: the included triples and the *free* triples (undecided and still
addable without completing a forbidden copy). Including a triple removes
from the free mask every triple that would now complete a copy, so no undo
bookkeeping is needed and the cardinality bound is
``included + popcount(free)``.

Constraints that can only become true as edges are added (connectivity,
no common vertex, excluded supergraphs) are tracked until the included
part satisfies them; until then a subtree is cut as soon as even
``included | free`` fails them.
"""

from __future__ import annotations

import enum
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from math import comb
from typing import Sequence

from .core import TRIPLE_VMASK, TRIPLES, Hypergraph3, induced, is_connected, members, rank_triple, star_mask
from .iso import _nontrivial_parts, _pack, _target_shape, canonical_form, dedupe, embeds_into
from .patterns import (
    Pattern,
    as_pattern,
    catalog,
    common_vertex,
    contains,
    copies_in_complete,
    is_intersecting,
)

log = logging.getLogger(__name__)

__all__ = [
    "FLAGS",
    "ConstraintSet",
    "SearchConfig",
    "Status",
    "SearchOutcome",
    "Decision",
    "max_edges",
    "decide_exists",
    "satisfies",
]

FLAGS = frozenset({"connected", "intersecting", "no_common_vertex"})


@dataclass(frozen=True)
class ConstraintSet:
    forbidden: tuple[str, ...] = ()
    required: str | Pattern | Hypergraph3 | None = None
    excluded_supergraphs: tuple[Hypergraph3, ...] = ()
    flags: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "forbidden", tuple(as_pattern(f).name for f in self.forbidden))
        object.__setattr__(self, "excluded_supergraphs", tuple(self.excluded_supergraphs))
        object.__setattr__(self, "flags", frozenset(self.flags))
        bad = self.flags - FLAGS
        if bad:
            raise ValueError(f"unknown flags {sorted(bad)}; known: {sorted(FLAGS)}")

    def required_graph(self) -> Hypergraph3 | None:
        r = self.required
        if r is None or isinstance(r, Hypergraph3):
            return r
        return as_pattern(r).graph

    def describe(self) -> dict:
        req = self.required
        if isinstance(req, Hypergraph3):
            req = f"graph(n={req.n},m={req.m})"
        elif isinstance(req, Pattern):
            req = req.name
        return {
            "forbid": list(self.forbidden),
            "require": req,
            "exclude": [f"graph(n={g.n},m={g.m})" for g in self.excluded_supergraphs],
            "flags": sorted(self.flags),
        }


@dataclass(frozen=True)
class SearchConfig:
    time_limit: float | None = None
    enumerate_all: bool = False
    worker_count: int = 1
    node_limit: int | None = None
    witness_limit: int = 200
    branching: str = "colex"
    bound: str = "matching"
    symmetry_breaking: bool = True

    def __post_init__(self) -> None:
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")
        if self.node_limit is not None and self.node_limit <= 0:
            raise ValueError("node_limit must be positive")
        if self.worker_count < 1 or self.witness_limit < 1:
            raise ValueError("worker_count and witness_limit must be positive")
        if self.branching not in ("colex", "constrained"):
            raise ValueError(f"unknown branching {self.branching!r}")
        if self.bound not in ("simple", "matching"):
            raise ValueError(f"unknown bound {self.bound!r}")


class Status(str, enum.Enum):
    EXACT = "Exact"
    LOWER_BOUND_ONLY = "LowerBoundOnly"
    INFEASIBLE = "Infeasible"
    NOT_DEFINED = "NotDefined"


@dataclass
class SearchOutcome:
    status: Status
    value: int | None
    witnesses: list[Hypergraph3] = field(default_factory=list)
    nodes_explored: int = 0
    elapsed: float = 0.0
    witnesses_truncated: bool = False

    def to_record(self, query: dict | None = None) -> dict:
        return {
            "query": query or {},
            "status": self.status.value,
            "value": self.value,
            "witness_count": len(self.witnesses),
            "witnesses": [[list(t) for t in w.triples()] for w in self.witnesses],
            "witnesses_truncated": self.witnesses_truncated,
            "nodes": self.nodes_explored,
            "elapsed_ms": round(self.elapsed * 1000),
        }


def satisfies(H: Hypergraph3, constraints: ConstraintSet) -> bool:
    """Independent check of every constraint with the detectors, not search state."""
    for name in constraints.forbidden:
        if contains(H, name) is not None:
            return False
    req = constraints.required
    if req is not None:
        if isinstance(req, Hypergraph3):
            if not embeds_into(req, H):
                return False
        elif contains(H, req) is None:
            return False
    for big in constraints.excluded_supergraphs:
        if embeds_into(H, big):
            return False
    flags = constraints.flags
    if "connected" in flags and not is_connected(H):
        return False
    if "intersecting" in flags and not is_intersecting(H):
        return False
    if "no_common_vertex" in flags and (not H.edges or common_vertex(H) is not None):
        return False
    return True


class _Abort(Exception):
    pass


class _Stop(Exception):
    pass


class _Collector:
    """Incumbent and optimum leaves, shared by the engines of one exploration."""

    def __init__(self, cfg: SearchConfig, floor: int, stop_at: int | None) -> None:
        self.cfg = cfg
        self.floor = floor
        self.stop_at = stop_at
        self.best = -1
        self.leaves: list[int] = []
        self.forms: dict = {}
        self.truncated = False
        self.nodes = 0
        self.deadline = None if cfg.time_limit is None else time.monotonic() + cfg.time_limit

    def prunes(self, bound: int) -> bool:
        if bound <= self.floor:
            return True
        if self.cfg.enumerate_all:
            return bound < self.best
        return bound <= self.best

    def leaf(self, n: int, inc: int, value: int) -> None:
        if value <= self.floor or value < self.best:
            return
        if value > self.best:
            self.best = value
            self.leaves = [inc]
            self.forms = {}
            self.truncated = False
            if self.cfg.enumerate_all:
                self._remember(n, inc)
        elif self.cfg.enumerate_all:
            self._remember(n, inc)
        if self.stop_at is not None and value >= self.stop_at:
            raise _Stop

    def _remember(self, n: int, inc: int) -> None:
        cf = canonical_form(Hypergraph3(n, inc))
        if cf in self.forms:
            return
        if len(self.forms) >= self.cfg.witness_limit:
            self.truncated = True
            return
        self.forms[cf] = inc

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes & 1023 == 0 and self.deadline is not None and time.monotonic() > self.deadline:
            raise _Abort
        if self.cfg.node_limit is not None and self.nodes > self.cfg.node_limit:
            raise _Abort

    def result(self, status: str) -> tuple:
        leaves = list(self.forms.values()) if self.cfg.enumerate_all else self.leaves[:1]
        return status, self.best, leaves, self.nodes, self.truncated


class _Engine:
    """Precomputed conflict structure for one (n, constraint set) pair."""

    def __init__(self, n: int, cons: ConstraintSet, cfg: SearchConfig) -> None:
        self.n = n
        self.cons = cons
        self.cfg = cfg
        self.N = comb(n, 3)
        N = self.N
        # pair conflicts: both triples present completes a copy
        self.partner = [0] * N
        # triple conflicts: pairmask[t][u] = triples w with {t,u,w} a copy
        self.pairmask: list[dict[int, int]] = [dict() for _ in range(N)]
        self.nbr = [0] * N
        # larger copies, tested by mask
        self.big: list[list[int]] = [[] for _ in range(N)]
        self.empty_forbidden = False
        names = set(cons.forbidden)
        if "intersecting" in cons.flags:
            names.add("M")
        for name in sorted(names):
            p = catalog(name)
            if not p.edges:
                if p.vertices <= n:
                    self.empty_forbidden = True
                continue
            for cp in copies_in_complete(n, name):
                if len(cp) == 1:
                    self.partner[cp[0]] |= 1 << cp[0]
                elif len(cp) == 2:
                    a, b = cp
                    self.partner[a] |= 1 << b
                    self.partner[b] |= 1 << a
                elif len(cp) == 3:
                    a, b, c = cp
                    for x, y, z in ((a, b, c), (b, a, c), (c, a, b)):
                        d = self.pairmask[x]
                        d[y] = d.get(y, 0) | 1 << z
                        d[z] = d.get(z, 0) | 1 << y
                        self.nbr[x] |= (1 << y) | (1 << z)
                else:
                    full = 0
                    for t in cp:
                        full |= 1 << t
                    for t in cp:
                        self.big[t].append(full & ~(1 << t))
        self.star = [star_mask(n, v) for v in range(n)]
        self.excluded = list(cons.excluded_supergraphs)
        self.excluded_shapes = [_target_shape(g) for g in self.excluded]
        self.col: _Collector | None = None

    # --- incremental forbidden-copy bookkeeping ---------------------------

    def include(self, t: int, inc: int, free: int) -> tuple[int, int]:
        """Include free triple ``t``; return the new (included, free) masks."""
        inc |= 1 << t
        free &= ~(1 << t)
        blocked = self.partner[t]
        pm = self.pairmask[t]
        common = inc & self.nbr[t]
        while common:
            low = common & -common
            blocked |= pm[low.bit_length() - 1]
            common ^= low
        for rest in self.big[t]:
            left = rest & ~inc
            if left & (left - 1) == 0:
                blocked |= left
        return inc, free & ~blocked

    def addable(self, t: int, inc: int) -> bool:
        if self.partner[t] & (inc | 1 << t):
            return False
        pm = self.pairmask[t]
        common = inc & self.nbr[t]
        while common:
            low = common & -common
            if pm[low.bit_length() - 1] & inc:
                return False
            common ^= low
        return all(rest & ~inc for rest in self.big[t])

    def initial_free(self, inc: int) -> int:
        free = 0
        for t in range(self.N):
            if not inc >> t & 1 and self.addable(t, inc):
                free |= 1 << t
        return free

    # --- upward-closed side constraints -----------------------------------

    def _connected(self, mask: int) -> bool:
        if self.n <= 1:
            return True
        vms = [TRIPLE_VMASK[t] for t in members(mask)]
        reached = vms[0] if vms else 1
        grew = True
        while grew:
            grew = False
            rest = []
            for vm in vms:
                if vm & reached:
                    if vm & ~reached:
                        reached |= vm
                        grew = True
                else:
                    rest.append(vm)
            vms = rest
        return reached == (1 << self.n) - 1

    def _sub_star(self, mask: int) -> bool:
        return any(mask & ~s == 0 for s in self.star)

    def _embeds_excluded(self, mask: int, i: int) -> bool:
        kind, sizes = self.excluded_shapes[i]
        if kind == "star":
            return self._sub_star(mask)
        if not mask:
            return True
        H = Hypergraph3(self.n, mask)
        if kind == "cliques":
            return _pack(_nontrivial_parts(H), [s for s in sizes if s >= 3])
        return embeds_into(H, self.excluded[i])

    def pending_ok(self, which: str, mask: int) -> bool:
        """Does the graph ``mask`` satisfy the upward-closed constraint ``which``?"""
        if which == "connected":
            return self._connected(mask)
        if which == "no_common_vertex":
            return mask != 0 and not self._sub_star(mask)
        return not self._embeds_excluded(mask, int(which[1:]))

    def initial_pending(self) -> tuple[str, ...]:
        out = [f for f in ("connected", "no_common_vertex") if f in self.cons.flags]
        out += [f"x{i}" for i in range(len(self.excluded))]
        return tuple(out)

    # --- bounds -------------------------------------------------------------

    def matching_bound(self, inc: int, free: int) -> int:
        """``popcount(free)`` minus a greedy matching of mutually exclusive free pairs."""
        loss = 0
        avail = free
        while avail:
            low = avail & -avail
            u = low.bit_length() - 1
            avail ^= low
            conf = self.partner[u]
            pm = self.pairmask[u]
            common = inc & self.nbr[u]
            while common:
                lw = common & -common
                conf |= pm[lw.bit_length() - 1]
                common ^= lw
            conf &= avail
            if conf:
                avail &= ~(conf & -conf)
                loss += 1
        return free.bit_count() - loss

    # --- search -------------------------------------------------------------

    def pick(self, inc: int, free: int) -> int:
        if self.cfg.branching == "colex":
            return (free & -free).bit_length() - 1
        # most constrained: the free triple whose vertices carry most included edges
        deg = [0] * self.n
        for t in members(inc):
            for v in TRIPLES[t]:
                deg[v] += 1
        best_t, best_key = -1, -1
        for t in members(free):
            a, b, c = TRIPLES[t]
            key = deg[a] + deg[b] + deg[c]
            if key > best_key:
                best_t, best_key = t, key
        return best_t

    def dfs(self, inc: int, free: int, count: int, pending: tuple[str, ...]) -> None:
        col = self.col
        col.tick()
        if pending:
            still = tuple(p for p in pending if not self.pending_ok(p, inc))
            if still:
                upper = inc | free
                if not all(self.pending_ok(p, upper) for p in still):
                    return
            pending = still
        if not free:
            if not pending:
                col.leaf(self.n, inc, count)
            return
        if col.prunes(count + free.bit_count()):
            return
        if self.cfg.bound == "matching" and col.prunes(count + self.matching_bound(inc, free)):
            return
        t = self.pick(inc, free)
        inc2, free2 = self.include(t, inc, free)
        self.dfs(inc2, free2, count + 1, pending)
        self.dfs(inc, free & ~(1 << t), count, pending)

    def start(self, pinned: Sequence[int]) -> tuple[int, int, int] | None:
        inc, free = 0, self.initial_free(0)
        for t in pinned:
            if not free >> t & 1:
                return None
            inc, free = self.include(t, inc, free)
        return inc, free, len(pinned)


# Minimal graphs with no common vertex, up to isomorphism: two disjoint
# edges, the two pairwise-intersecting triples of edges, and K4 (any three
# of its edges share a vertex, all four do not; four is the most a minimal
# intersecting family can have).
_NON_STAR_ROOTS = (
    ((0, 1, 2), (3, 4, 5)),
    ((0, 1, 2), (0, 3, 4), (1, 3, 5)),
    ((0, 1, 2), (0, 1, 3), (2, 3, 4)),
    ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)),
)


_EMPTY: list[int] = []  # plan marker: the edgeless graph alone


def _needs_non_star(cons: ConstraintSet) -> bool:
    if "no_common_vertex" in cons.flags:
        return True
    return any(_target_shape(g)[0] == "star" and g.m for g in cons.excluded_supergraphs)


def _plans(n: int, cons: ConstraintSet, cfg: SearchConfig) -> list[tuple[ConstraintSet, list[int] | None]]:
    """Root plans ``(constraints, pinned triples)``; together they cover every feasible graph up to isomorphism.

    ``None`` pins nothing (no symmetry breaking) and ``_EMPTY`` stands for
    the edgeless graph alone. All constraints are
    isomorphism invariant, so a required graph may be placed on the first
    vertices, and otherwise any nonempty graph may be assumed to contain
    ``{0,1,2}``. Graphs that are not sub-stars contain two disjoint edges or,
    being intersecting, one of the minimal intersecting non-star families.
    """
    req = cons.required_graph()
    if req is not None:
        if req.support().bit_count() > n:
            return []
        core = induced(req, req.support())
        return [(cons, [rank_triple(*t) for t in core.triples()])]
    if not cfg.symmetry_breaking or n < 3:
        return [(cons, None)]
    if _needs_non_star(cons):
        plans = []
        for i, edges in enumerate(_NON_STAR_ROOTS):
            if max(max(e) for e in edges) >= n:
                continue
            pinned = [rank_triple(*e) for e in edges]
            if i == 0:
                plans.append((cons, pinned))
            else:
                flags = cons.flags | {"intersecting"}
                plans.append((replace(cons, flags=flags), pinned))
        return plans
    return [(cons, _EMPTY), (cons, [0])]


def _not_defined(n: int, cons: ConstraintSet) -> bool:
    full = comb(n, 3)
    return any(g.n == n and g.m == full for g in cons.excluded_supergraphs)


def _explore(args: tuple) -> tuple:
    n, cfg, jobs, floor, stop_at = args
    col = _Collector(cfg, floor, stop_at)
    engines: dict[ConstraintSet, _Engine] = {}
    status = "done"
    try:
        for cons, inc, free, count in jobs:
            eng = engines.get(cons)
            if eng is None:
                eng = engines[cons] = _Engine(n, cons, cfg)
                eng.col = col
            eng.dfs(inc, free, count, eng.initial_pending())
    except _Abort:
        status = "abort"
    except _Stop:
        status = "stop"
    return col.result(status)


def _split(eng: _Engine, state: tuple[int, int, int], pieces: int) -> list[tuple[int, int, int]]:
    """Expand one start state level by level, keeping DFS order, into about ``pieces`` states."""
    frontier = [state]
    for _ in range(12):
        if len(frontier) >= pieces:
            break
        nxt = []
        for inc, free, count in frontier:
            if not free:
                nxt.append((inc, free, count))
                continue
            t = eng.pick(inc, free)
            inc2, free2 = eng.include(t, inc, free)
            nxt.append((inc2, free2, count + 1))
            nxt.append((inc, free & ~(1 << t), count))
        frontier = nxt
    return frontier


def max_edges(
    n: int,
    constraints: ConstraintSet | None = None,
    config: SearchConfig | None = None,
    *,
    lower_bound: int | None = None,
    stop_at: int | None = None,
) -> SearchOutcome:
    """Maximum edge count of an ``n``-vertex 3-graph satisfying ``constraints``.

    ``lower_bound`` must be certified (a feasible graph with that many edges
    exists); it lets every worker prune from the start without changing the
    result. ``stop_at`` ends the search at the first feasible graph that large.
    """
    cons = constraints or ConstraintSet()
    cfg = config or SearchConfig()
    t0 = time.monotonic()
    if not 1 <= n <= 32:
        raise ValueError(f"n must be in 1..32, got {n}")
    if _not_defined(n, cons):
        return SearchOutcome(Status.NOT_DEFINED, None, elapsed=time.monotonic() - t0)
    floor = -1 if lower_bound is None else lower_bound - 1
    if stop_at is not None:
        floor = max(floor, stop_at - 1)

    jobs = []
    engines: dict[ConstraintSet, _Engine] = {}
    for pcons, pinned in _plans(n, cons, cfg):
        eng = engines.get(pcons)
        if eng is None:
            eng = engines[pcons] = _Engine(n, pcons, cfg)
        if eng.empty_forbidden:
            continue
        if pinned is None:
            jobs.append((pcons, 0, eng.initial_free(0), 0))
            continue
        if pinned is _EMPTY:
            jobs.append((pcons, 0, 0, 0))
            continue
        st = eng.start(pinned)
        if st is None:
            continue
        if cfg.worker_count > 1:
            jobs.extend((pcons, *s) for s in _split(eng, st, 4 * cfg.worker_count))
        else:
            jobs.append((pcons, *st))

    if cfg.worker_count > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.worker_count) as ex:
            results = list(ex.map(_explore, [(n, cfg, [j], floor, stop_at) for j in jobs]))
    else:
        results = [_explore((n, cfg, jobs, floor, stop_at))]
    return _merge(n, cons, cfg, results, time.monotonic() - t0)


def _merge(n: int, cons: ConstraintSet, cfg: SearchConfig, results: list[tuple], elapsed: float) -> SearchOutcome:
    nodes = sum(r[3] for r in results)
    best = max(r[1] for r in results)
    aborted = any(r[0] == "abort" for r in results)
    stopped = any(r[0] == "stop" for r in results)
    leaves: list[int] = []
    truncated = False
    for _, val, lv, _, trunc in results:
        if val == best and lv:
            if cfg.enumerate_all:
                leaves.extend(lv)
                truncated |= trunc
            elif not leaves:
                leaves = lv[:1]
    if not leaves:
        status = Status.LOWER_BOUND_ONLY if aborted else Status.INFEASIBLE
        return SearchOutcome(status, None, [], nodes, elapsed)
    graphs = [Hypergraph3(n, m) for m in leaves]
    for g in graphs:
        if g.m != best or not satisfies(g, cons):
            raise AssertionError(f"search produced an invalid witness {g.triples()}")
    if cfg.enumerate_all:
        graphs = dedupe(graphs)
        if len(graphs) > cfg.witness_limit:
            graphs = graphs[: cfg.witness_limit]
            truncated = True
    status = Status.LOWER_BOUND_ONLY if aborted or stopped else Status.EXACT
    return SearchOutcome(status, best, graphs, nodes, elapsed, truncated)


class Decision(str, enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


def decide_exists(
    n: int, constraints: ConstraintSet, target_m: int, config: SearchConfig | None = None
) -> tuple[Decision, Hypergraph3 | None]:
    """Is there a constrained ``n``-vertex graph with at least ``target_m`` edges?"""
    if target_m > comb(n, 3):
        raise ValueError(f"target {target_m} exceeds C({n},3)")
    cfg = replace(config or SearchConfig(), enumerate_all=False)
    out = max_edges(n, constraints, cfg, stop_at=max(target_m, 0))
    if out.witnesses:
        return Decision.YES, out.witnesses[0]
    if out.status == Status.LOWER_BOUND_ONLY:
        return Decision.UNKNOWN, None
    return Decision.NO, None
