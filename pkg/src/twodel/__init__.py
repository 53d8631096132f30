"""Codes and sketches that correct two deletions in binary strings."""

from .codec import decode_codeword, decode_payload, encode_message, encode_payload, layout, redundancy_report
from .core import (complement, delete, from_rank_sequence, insert, is_subsequence, rank_sequence,
                   run_count, subsequences, supersequences)
from .decode1 import decode_run1, decode_vt
from .decode2_list import decode_list2
from .decode2_unique import decode_unique2, disambiguate_blocks, localize, pseudorank_profile
from .errors import DecodeFailure, InvariantViolation, RegularityViolation
from .oracle import brute_decode, check_grid, greedy_code, lcs_bits, lcs_dp, verify_code
from .regular import RegularCodebook, count_no_00, is_regular, reg_dec, reg_enc
from .sketch import (CodeParams, SketchBundle, block_sketches, bundle, count_sketch, position_sketch,
                     run_sketch)

__version__ = "0.1.0"
