# %% [markdown]
# # GF(16) and the two Hermitian codes
#
# Field elements are 4-bit integers in the polynomial basis of x^4 + x + 1.

# %%
import numpy as np

from agibtc import galois as gf
from agibtc.hermitian import build_code, encode, enumerate_points, hard_decode, monomials

print("alpha^4 =", gf.GF.exp_table[4])          # x + 1
print("2 * 3 =", gf.mul(2, 3), " 8 * 2 =", gf.mul(8, 2))
print("inverse of 2 =", gf.inv(2))

# %% [markdown]
# The curve y^4 + y = x^5 has 64 affine points over GF(16).  A code is
# spanned by the monomials x^a y^b of pole order 4a + 5b <= m.

# %%
curve = enumerate_points()
print(len(curve.points), "points, genus", curve.genus)
print("first monomials of L(54 P):", [(mo.a, mo.b) for mo in monomials(54)[:8]])

for k in (49, 44):
    code = build_code(k)
    print(f"{code.name}: m={code.m} d*={code.designed_distance} t={code.t} rate={code.rate:.4f}")

# %% [markdown]
# Systematic encoding and bounded-distance decoding.  AG(64,44) corrects
# up to four symbol errors.

# %%
rng = np.random.default_rng(0)
code = build_code(44)
info = rng.integers(0, 16, code.k, dtype=np.uint8)
cw = encode(code, info)
rx = cw.copy()
pos = rng.choice(64, 4, replace=False)
rx[pos] ^= rng.integers(1, 16, 4, dtype=np.uint8)
fixed = hard_decode(code, rx)
print("errors at", sorted(pos.tolist()), "-> recovered:", bool((fixed == cw).all()))
print("info symbols intact:", bool((fixed[code.info_positions] == info).all()))
