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
# # H^1(G, Pic X) and incompressible symbols
#
# With a fixed point, H^2(G, k^x) injects into Br([X/G]) and H^1(G, Pic X)
# is the quotient. Without one, a known value of H^1 can still certify that
# the next map in the sequence is nonzero.

# %%
from equicohom.burnside import compare_inc, compare_nfca, inc_class, nfca
from equicohom.config import parse
from equicohom.finabelian import FinAbGroup
from equicohom.report import compute_report
from equicohom.suite import generate_dj, load_fixtures

fx = load_fixtures()

# %%
for name in ["case_2_6", "case_3_33_1", "case_D8"]:
    rep = compute_report(fx[name])
    print(f"{name:<12} Br = {rep.brauer}  H2 = {rep.h2}  H1(Pic) = {rep.h1_pic.group}")

# %%
rep = compute_report(fx["case_3_333"], known_h1=FinAbGroup.from_orders([3]))
print(rep.h1_pic)
print(rep.delta3)

# %% [markdown]
# ## de Jonquieres family
#
# `generate_dj` writes the configuration; the rank of H^1 depends on r and
# the number of fixed points of the generator on the hyperelliptic curve.

# %%
for fixed, r in [(4, 4), (2, 3), (0, 2)]:
    c = parse(generate_dj(2, r, fixed))
    print(fixed, r, compute_report(c).h1_pic.group)

# %% [markdown]
# ## Symbols
#
# The two order-4 actions below share their incompressible symbols and
# their NFCA, although the embeddings are not conjugate.

# %%
a, b = fx["iota"], fx["iota_prime"]
print(inc_class(a).to_json())
print(compare_inc(inc_class(a), inc_class(b)), compare_nfca(nfca(a), nfca(b)))
print(nfca(fx["case_2_6"]).to_json())
