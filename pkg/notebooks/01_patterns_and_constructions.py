# %% [markdown]
# # Patterns and constructions
#
# 3-graphs are stored as bitmasks over triples in colex order. This notebook
# builds the named extremal constructions and checks which small patterns
# they avoid.

# %%
from turan3.core import format_hg3, rank_triple
from turan3.patterns import catalog, clique_union, comet, contains, count_copies, complete, h0, star

# %% [markdown]
# Triple ranks do not depend on the number of vertices, so a mask built for
# a small graph stays valid after adding vertices.

# %%
print(rank_triple(0, 1, 2), rank_triple(0, 1, 3), rank_triple(10, 11, 12))

# %% [markdown]
# The pattern catalog: `P` is the linear path with three edges, `C` the
# linear triangle, `M` two disjoint edges.

# %%
for name in ("P", "C", "M", "P2", "P2uK3"):
    p = catalog(name)
    print(f"{name:6s} vertices={p.vertices} edges={len(p.edges)} automorphisms={p.automorphism_count}")

print("copies of P in K7:", count_copies(complete(7), "P"))

# %% [markdown]
# Constructions and their sizes for a range of n.

# %%
print(" n  star  comet  h0  K6+K(n-6)")
for n in range(7, 15):
    print(f"{n:2d} {star(n).m:5d} {comet(n).m:6d} {h0(n).m:3d} {clique_union([6, n - 6]).m:6d}")

# %% [markdown]
# Freeness checks. A witness is a map from pattern vertices to graph vertices.

# %%
for label, H in [("star(12)", star(12)), ("comet(12)", comet(12)), ("h0(12)", h0(12)),
                 ("K6+K6", clique_union([6, 6])), ("K6+K7", clique_union([6, 7]))]:
    found = {name: contains(H, name) for name in ("P", "C", "M")}
    print(label, {k: ("free" if v is None else v) for k, v in found.items()})

# %%
print(format_hg3(comet(6)))
