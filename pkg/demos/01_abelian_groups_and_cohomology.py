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
# # Finite abelian groups and H^i(G, k^x)
#
# Every answer the package produces is a `FinAbGroup` in invariant-factor
# form. Here we build a few, then compare the closed-form cohomology tables
# with the cochain oracle.

# %%
import numpy as np

from equicohom.finabelian import FinAbGroup, IntMatrixHom, cokernel, image, kernel, snf
from equicohom.groupcoh import abelian, bar_oracle, cohomology, named

# %%
G = FinAbGroup.from_orders([2, 3, 4])
print(G, G.invariant_factors, G.primary_decomposition())

# %% [markdown]
# Smith normal form comes with its unimodular transforms.

# %%
m = [[2, 4], [6, 8]]
diag, left, right = snf(m)
print(diag)
print(np.array(left) @ np.array(m) @ np.array(right))

# %% [markdown]
# A homomorphism of finite abelian groups is an integer matrix plus the
# moduli on both sides. Multiplication by 2 on Z/6:

# %%
h = IntMatrixHom([[2]], [6], [6])
ker, gens = kernel(h)
print("kernel", ker, "generated by", gens.generators)
print("image", image(h), "cokernel", cokernel(h))

# %% [markdown]
# ## Cohomology with k^x coefficients

# %%
for g in [abelian(6), abelian(4, 6), abelian(3, 3, 3), named("D8")]:
    t = cohomology(g)
    print(f"{str(g):<18} H1 = {t.h1}   H2 = {t.h2}   H3 = {t.h3}")

# %% [markdown]
# The oracle recomputes the same groups from cochains: the bar complex when
# it is small enough, else the tensor product of periodic resolutions.

# %%
for g, i in [(abelian(2, 2), 3), (named("D8"), 2), (abelian(2, 2, 2, 2), 3)]:
    print(g, i, bar_oracle(g, i), cohomology(g)[i])
