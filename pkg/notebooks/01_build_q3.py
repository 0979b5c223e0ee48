# %% [markdown]
# # Building q(3) from its Cartan datum
#
# The datum holds the diagonal Cartan subalgebra of q(3) and the two simple root
# modules, each of superdimension (1|1). The engine rebuilds every root space
# degree by degree and we compare the result with block matrices.

# %%
from qkm import catalog, engine

e = catalog.get("q3")
d = e.datum
print(d)
print("t:", d.h.t_names, "odd:", d.h.odd_names)

# %%
t = engine.build(d, 3)
print(engine.export(t))

# %% [markdown]
# Nothing survives at height 3: [e1, [e1, e2]] lies in the maximal ideal.

# %%
print("dim g_(2,1) =", t.dim((2, 1)), " dim g_(1,2) =", t.dim((1, 2)))
print(engine.serre_check(t))

# %%
rep = engine.compare_with_oracle(t, e.oracle, e.genmap)
print(rep)
print(engine.verify_structure(t))
print(engine.chevalley_report(t))

# %% [markdown]
# The even center is spanned by the identity matrix, which is also the common
# kernel of the simple roots.

# %%
even, odd, kerA = engine.center(t)
print(even, kerA)
