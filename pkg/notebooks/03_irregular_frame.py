# %% [markdown]
# # One irregular frame, end to end
#
# With the (64,49) code and 980 information symbols, 85% of the symbols
# are repeated twice, 10% three times and 5% nine times.  The repeated
# stream is interleaved, cut into 49 blocks and each block is encoded; only
# the original symbols and the parity are sent.

# %%
import numpy as np

from agibtc import modem
from agibtc.channel import ChannelParams, transmit
from agibtc.hermitian import build_code
from agibtc.ibtc import DecoderState, decode_frame, encode_frame, make_interleaver, resolve_profile

code = build_code(49)
prof = resolve_profile(((2, 0.85), (3, 0.10), (9, 0.05)), 980, code)
lay = prof.layout
print("group sizes", prof.counts, "repeated", lay.ht, "codewords", lay.codewords,
      "parity", lay.pt, "rate", lay.rate)

# %% [markdown]
# Send the frame over Rayleigh fast fading with 16QAM and decode it.

# %%
rng = np.random.default_rng(5)
info = rng.integers(0, 16, lay.kt, dtype=np.uint8)
il = make_interleaver(lay.ht, master_seed=5, frame_index=0)
tx = encode_frame(info, prof, code, il)

const = modem.constellation("16qam")
bits = modem.symbols_to_bits(tx.symbols)
params = ChannelParams(ebn0_db=17.0, code_rate=float(lay.rate), bits_per_symbol=4)
obs = transmit(modem.modulate(const, bits), params, rng)
llr = modem.demodulate(const, obs.y, obs.h, params.n0)
rel = modem.bits_to_symbol_reliability(llr.reshape(-1, 4))

print("symbol errors before decoding:", int((rel[: lay.kt].argmax(-1) != info).sum()))
state = DecoderState.from_channel(rel[: lay.kt], rel[lay.kt:], prof, il)
est, diag = decode_frame(state, code, prof, il, iters=8)
for it, dec in enumerate(diag.decisions):
    print(f"after iteration {it + 1}: {int((dec != info).sum())} symbol errors, "
          f"{diag.chase_failures[it]} Chase failures")
