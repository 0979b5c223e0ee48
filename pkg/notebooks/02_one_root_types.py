# %% [markdown]
# # One simple root at a time
#
# Every one-root datum in the catalog is classified from three invariants:
# the rank of the root, whether its coroot space kills g_alpha, and the
# alpha-string read off a height-3 build.

# %%
from qkm import catalog, classify

for name in catalog.ONE_ROOT_ENTRIES:
    e = catalog.get(name)
    rt = classify.classify_one_root(e.datum)
    mark = "" if rt.tag == e.root_type else "   <-- mismatch"
    print(f"{name:18} rk {rt.rank}  string {list(rt.shape)!s:8} {rt.tag}{mark}")

# %% [markdown]
# Sinks never act on their neighbours. Glue an he(0) root next to q(2) and
# look at the connectivity matrix.

# %%
from qkm.catalog import direct_sum

d = direct_sum(catalog.get("he0").datum, catalog.get("q2").datum, "he0+q2")
print(classify.connectivity_audit(d))
