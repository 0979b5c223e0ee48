# %% [markdown]
# # Coupling and growth
#
# Canonical generators give the X, Y and Cartan matrices. The coupling audit
# places every connected pair in one of four cases.

# %%
from qkm import catalog, classify, engine
from qkm.datum import canonical_generators, xy_matrices

for name in ("q4", "takiff-sl3-T", "a22+", "a22-", "xc1", "xc2", "xc3"):
    g = canonical_generators(catalog.get(name).datum)
    m = xy_matrices(g)
    a = classify.coupling_theorem_audit(g, m)
    print(f"{name:14} {a.tag:22} cases {a.cases} {a.notes}")

# %% [markdown]
# q(2,2): the imaginary roots k delta carry (2|2) and the real roots (1|1).

# %%
t = engine.build(catalog.get("a22+").datum, 10)
for k in range(1, 6):
    print(k, t.sdim((k, k)), t.sdim((k + 1, k)), t.sdim((k, k + 1)))
print(engine.growth_profile(t))

# %% [markdown]
# The first X-coupled pair grows boundedly. The other two do not: ad g_alpha2 is
# not locally nilpotent on g_alpha1, so these data are not integrable and the
# per-height dimensions take off.

# %%
for name in ("xc1", "xc2", "xc3"):
    t = engine.build(catalog.get(name).datum, 6)
    print(name, engine.growth_profile(t))
    bad = {k: v for k, v in engine.integrability_check(t, 5).items() if not isinstance(v, int)}
    print("   non-nilpotent directions:", bad)
