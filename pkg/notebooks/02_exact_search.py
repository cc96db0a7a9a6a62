# %% [markdown]
# # Exact search for Turán numbers
#
# `max_edges` runs a branch and bound over triples in colex order. Each
# result carries a status: `Exact` only when the whole tree was explored.

# %%
import time

from turan3.iso import are_isomorphic
from turan3.patterns import clique_union, complete, star
from turan3.search import ConstraintSet, SearchConfig, decide_exists, max_edges

enum = SearchConfig(enumerate_all=True)

# %% [markdown]
# Forbidding the path: at n = 6 and 7 the extremal graphs are cliques, from
# n = 8 on the full star takes over.

# %%
for n in range(5, 10):
    t = time.perf_counter()
    out = max_edges(n, ConstraintSet(("P",)), enum)
    shapes = []
    for w in out.witnesses:
        for label, g in [("K_n", complete(n)), ("K6+K1", clique_union([6, 1]) if n == 7 else None),
                         ("star", star(n))]:
            if g is not None and are_isomorphic(w, g):
                shapes.append(label)
    print(f"n={n} {out.status.value} value={out.value} witnesses={len(out.witnesses)} {shapes}"
          f" nodes={out.nodes_explored} {time.perf_counter() - t:.2f}s")

# %% [markdown]
# Side constraints: connectivity, intersecting families, no common vertex.

# %%
flags = frozenset({"intersecting", "no_common_vertex"})
for n in range(6, 10):
    out = max_edges(n, ConstraintSet(("M",), flags=flags))
    print(n, out.value, 3 * n - 8)

# %% [markdown]
# Decision form: is there a P-free graph on 8 vertices with 22 edges?

# %%
print(decide_exists(8, ConstraintSet(("P",)), 22)[0])
print(decide_exists(8, ConstraintSet(("P",)), 21)[0])

# %% [markdown]
# Budgets. A node limit turns the answer into a lower bound.

# %%
out = max_edges(11, ConstraintSet(("P",)), SearchConfig(node_limit=2000))
print(out.status.value, out.value)
