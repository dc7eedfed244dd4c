"""Clustered set reconciliation.

Two hosts holding sets of n-bit strings whose symmetric difference
forms up to t clusters of at most h strings, pairwise within Hamming
distance ell, exchange fixed-size syndrome digests in a single round
and each recovers the exact difference locally.
"""

from .bits import BitVector, hamming, place, project, weight
from .bounds import (
    asymptotic_rates,
    baseline_bits,
    chromatic_bounds,
    entropy_q,
    sphere_size,
)
from .codes import (
    BchCode,
    BhSequence,
    RsCode,
    Syndrome,
    bch_build,
    bh_sequence,
    decode_syndrome,
    rs_code,
    syndrome,
)
from .errors import (
    DecodingError,
    FrameError,
    InconsistentDigests,
    LinAlgError,
    ParamMismatch,
    ParamsError,
    ThlreconError,
)
from .gf2 import FieldElement, FieldSpec, ff_frob, ff_inv, ff_make, ff_mul
from .linalg import BinaryMatrix, full_rank_completion, mat_solve
from .maps_t import f_inverse, f_sum_decompose, gamma, map_E, map_M, map_f
from .oracle import gen_instance, oracle_is_thl, oracle_symdiff
from .params import Params, cond4_violation_prob, params_build, params_from_text
from .protocol import (
    MemoryTransport,
    SessionStats,
    TcpTransport,
    parse_digest,
    serialize_digest,
    session_run,
)
from .recon1 import Digest1, decode1, digest1_cost_bits, encode1, indicator
from .recont import DigestT, decode_t, digestT_cost_bits, encode_t

__version__ = "0.1.0"

__all__ = [
    "BitVector", "hamming", "weight", "project", "place",
    "FieldSpec", "FieldElement", "ff_make", "ff_mul", "ff_inv", "ff_frob",
    "BinaryMatrix", "mat_solve", "full_rank_completion",
    "BchCode", "RsCode", "BhSequence", "Syndrome",
    "bch_build", "rs_code", "bh_sequence", "syndrome", "decode_syndrome",
    "Params", "params_build", "params_from_text", "cond4_violation_prob",
    "Digest1", "encode1", "decode1", "digest1_cost_bits", "indicator",
    "DigestT", "encode_t", "decode_t", "digestT_cost_bits",
    "map_M", "map_E", "map_f", "f_inverse", "f_sum_decompose", "gamma",
    "sphere_size", "entropy_q", "chromatic_bounds", "asymptotic_rates",
    "baseline_bits",
    "serialize_digest", "parse_digest", "session_run",
    "MemoryTransport", "TcpTransport", "SessionStats",
    "oracle_symdiff", "oracle_is_thl", "gen_instance",
    "ThlreconError", "ParamsError", "LinAlgError", "DecodingError",
    "InconsistentDigests", "ParamMismatch", "FrameError",
]
