# %% [markdown]
# # Higher-order and conditional Turán numbers
#
# The order-2 number forbids, on top of the pattern, every graph that
# embeds into a first-order extremal graph. Conditional numbers require a
# copy of a given graph instead.

# %%
from turan3.iso import are_isomorphic
from turan3.patterns import clique_union, comet, star
from turan3.turan import TABLES, conditional_turan, lookup, reproduce_table, turan_order

# %%
for n in (6, 7, 8, 9, 10):
    cv = turan_order(n, ["P"], 2)
    print(n, cv.status.value, cv.levels, len(cv.witnesses))

# %%
cv = turan_order(7, ["P"], 2)
print("unique level-2 graph at n=7 is the star:", are_isomorphic(cv.witnesses[0], star(7)))

# %% [markdown]
# Requiring two disjoint edges while forbidding the path and the triangle.

# %%
for n in range(6, 11):
    cv = conditional_turan(n, ["P", "C"], "M")
    print(n, cv.value, [w.m for w in cv.witnesses])

cv = conditional_turan(10, ["P", "C"], "M")
print("K5+K5 among optima:", any(are_isomorphic(w, clique_union([5, 5])) for w in cv.witnesses))

# %% [markdown]
# Tables of certified values: each row compares the closed formula with a
# verified construction, and optionally with a fresh search.

# %%
for name in TABLES:
    print(name, TABLES[name].title)

for row in reproduce_table("ex2", search_max_n=10, ns=range(7, 15)):
    print(row)

# %%
print(lookup("ex3", 12).to_record())
print(comet(12).m)
