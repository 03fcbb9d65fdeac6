# %% [markdown]
# # Soft-in soft-out Chase decoding of one codeword
#
# Soft information is a 16-entry log-likelihood vector per symbol.  We push
# two symbols slightly towards wrong values, which is beyond the t = 1
# radius of AG(64,49), and let the Chase search repair them.

# %%
import numpy as np

from agibtc.hermitian import build_code, encode, hard_decode_batch
from agibtc.siso import ChaseConfig, chase_decode, hard_decision, one_hot

rng = np.random.default_rng(1)
code = build_code(49)
cw = encode(code, rng.integers(0, 16, 49, dtype=np.uint8))

soft = one_hot(cw, strength=6.0)
for pos in (5, 33):
    soft[pos, cw[pos] ^ 3] = 0.3

hard = hard_decision(soft)
print("hard-decision errors:", int((hard != cw).sum()))
print("plain hard decoding succeeds:", bool(hard_decode_batch(code, hard[None])[1][0]))

res = chase_decode(code, soft, ChaseConfig(p=4, s=2))
print("Chase decision correct:", bool((res.decision == cw).all()))
print("test patterns decoded:", res.n_candidates)

# %% [markdown]
# The extrinsic output is what the decoder learned about each symbol beyond
# its own input.  At the repaired positions it points to the true value.

# %%
for pos in (5, 33):
    ext = res.extrinsic[pos]
    print(pos, "true", cw[pos], "extrinsic favours", int(ext.argmax()),
          "margin over the wrong value", round(float(ext[cw[pos]] - ext[cw[pos] ^ 3]), 3))
