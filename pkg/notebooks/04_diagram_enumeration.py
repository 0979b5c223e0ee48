# %% [markdown]
# # Uncoupled diagrams of finite growth
#
# All vertices are Tak(sl(2)) open diamonds. Candidates run through three
# filters: no induced 3-star, (-1, -1) on both edges at the middle of an induced
# path, and a Theta-image of finite or affine type.

# %%
from qkm import classify

ok, excluded = classify.candidate_labels()
print("admissible labels:", ok)
for lab, why in sorted(excluded.items()):
    print("  ", lab, why)

# %%
en = classify.enumerate_uncoupled_fg_diagrams(5)
for D in en:
    print(f"{D.family:10} {D.text()}")
print({k: len(v) for k, v in en.rejected.items()})

# %% [markdown]
# The affine A(2)^(1) datum from the odd affinization of psq(3) has the same
# root system as the even Kac-Moody algebra of its Cartan matrix.

# %%
from qkm import catalog, engine

t = engine.build(catalog.get("affine-a2").datum, 5)
print(classify.root_system_audit(t))
print("delta:", t.sdim((1, 1, 1)), " 2 delta:", t.sdim((2, 2, 2)) if (2, 2, 2) in t.spaces else "beyond cutoff")
