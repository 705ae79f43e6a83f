"""2D quantum subsystem codes from classical codes.

Construct Bravyi-Bacon-Shor codes and their 2D-local augmented variants
from any pair of classical linear codes, build hypergraph product codes,
verify gauge-fixing relations between them, and simulate error
correction with a classical flip decoder driving the induced quantum
decoder.
"""

from .bbs import AbbsCode, BbsCode, abbs_from_matrix, bbs_from_codes, bbs_from_matrix, minimize_weight_q
from .classical import (
    INF,
    LinearCode,
    code_from_checks,
    hamming_code,
    min_distance_bruteforce,
    repetition_code,
    transpose_code,
)
from .expander import BipartiteGraph, expansion_profile, random_bipartite, tanner_code
from .f2 import BitMatrix
from .flip import FlipDecoder, decode_flip, flip_guarantee
from .gaugefix import bbs_fixing_of_abbs, hgp_fixings_of_abbs, is_gauge_fixing
from .hgp import HgpCode, hgp_code, hgp_distance, surface_code, toric_code
from .pauli import CssGroup, CssPauli, QubitLayout, SubsystemCode, dressed_distance_bruteforce
from .sim import NoiseModel, effective_probs, run_trials

__version__ = "0.1.0"

__all__ = [
    "AbbsCode",
    "BbsCode",
    "BipartiteGraph",
    "BitMatrix",
    "CssGroup",
    "CssPauli",
    "FlipDecoder",
    "HgpCode",
    "INF",
    "LinearCode",
    "NoiseModel",
    "QubitLayout",
    "SubsystemCode",
    "abbs_from_matrix",
    "bbs_fixing_of_abbs",
    "bbs_from_codes",
    "bbs_from_matrix",
    "code_from_checks",
    "decode_flip",
    "dressed_distance_bruteforce",
    "effective_probs",
    "expansion_profile",
    "flip_guarantee",
    "hamming_code",
    "hgp_code",
    "hgp_distance",
    "hgp_fixings_of_abbs",
    "is_gauge_fixing",
    "min_distance_bruteforce",
    "minimize_weight_q",
    "random_bipartite",
    "repetition_code",
    "run_trials",
    "surface_code",
    "tanner_code",
    "toric_code",
    "transpose_code",
]
