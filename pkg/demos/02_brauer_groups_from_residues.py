# ---
# jupyter:
#   jupytext:
#     formats: ipynb,py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
#       format_version: '1.3'
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # Br([X/G]) from a configuration
#
# A configuration lists the curve orbits with nontrivial inertia and the
# point orbits where they meet. Each branch of a curve over a point gets an
# unknown ramification value; the constraints are reciprocity on each curve
# and a weighted sum at each point.

# %%
from equicohom.brauer import brute_force, build_system, solve
from equicohom.config import parse
from equicohom.suite import fixture_dir, load_fixtures

# %% [markdown]
# Two curves with inertia of order 3 meeting in three G-fixed points:

# %%
doc = {
    "group": {"abelian": [3, 3]},
    "has_fixed_point": True,
    "curves": [{"id": "E1", "d": 3, "g_quotient": 0}, {"id": "E2", "d": 3, "g_quotient": 0}],
    "points": [{"id": f"p{k}"} for k in (1, 2, 3)],
    "incidences": [[f"p{k}", e, 1] for e in ("E1", "E2") for k in (1, 2, 3)],
}
s = build_system(parse(doc))
for c in s.constraints:
    print(c.kind, c.owner, "mod", c.modulus, dict(c.coefficients))

# %%
res = solve(s)
print(res.group)
for g in res.generators:
    print(g.order, g.residues)

# %% [markdown]
# Enumerating all 3^6 tuples gives the same group.

# %%
print(brute_force(s))

# %% [markdown]
# ## The bundled fixtures

# %%
print(fixture_dir())
for name, c in load_fixtures().items():
    print(f"{name:<14} Br = {solve(build_system(c)).group}")
