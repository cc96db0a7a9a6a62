# %% [markdown]
# # Ramsey numbers of the path
#
# An upper bound for the r-color Ramsey number of P comes from a short
# chain of checkable steps. Each step is data and is checked on its own.

# %%
import json

from turan3.ramsey import check_coloring, r6_partition_check, search_coloring, verify_deduction

# %%
for r in range(2, 8):
    proof = verify_deduction(r)
    print(f"r={r} n={proof.n} valid={proof.valid}")
    for step in proof.steps:
        print("   ", step.kind, "-", step.detail)

# %% [markdown]
# The six-color case leans on an exhaustive count over two-clique covers
# of K12 split into halves.

# %%
rep = r6_partition_check()
print(json.dumps({k: v for k, v in rep.items() if k != "disjoint_witness"}, indent=1))

# %% [markdown]
# Lower bounds need explicit colorings. Two colors on K7 avoid a
# monochromatic P; on K8 they cannot.

# %%
verdict, col = search_coloring(7, 2, "P")
print(verdict.value, [col.color_class(c).m for c in range(2)], check_coloring(col, "P"))
print(search_coloring(8, 2, "P")[0].value)
