"""Algebraic-geometry (Hermitian) block turbo codes over GF(16): regular
product codes and irregular repeat-interleave-encode codes, with a Monte
Carlo BER simulator for Rayleigh fast fading."""

__version__ = "0.1.0"

from .btc import decode_product, encode_product
from .hermitian import AgCode, DecodingFailure, build_code, code_from_id, encode, hard_decode
from .ibtc import decode_frame, encode_frame, resolve_profile
from .siso import ChaseConfig, chase_decode
from .sim import SimConfig, gain_at_ber, run_point, run_sweep

__all__ = [
    "AgCode", "ChaseConfig", "DecodingFailure", "SimConfig", "build_code", "chase_decode",
    "code_from_id", "decode_frame", "decode_product", "encode", "encode_frame",
    "encode_product", "gain_at_ber", "hard_decode", "resolve_profile", "run_point", "run_sweep",
]
