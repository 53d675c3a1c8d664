"""Associative one-way function candidates built from witness relations.

Constructions, finite-universe property checkers and protocol simulations.
"""

from .constructions import (build_sigma, build_tau, choose_trashbin, counterexample_triple,
                            decide_via_inverter, totalize)
from .core import BOTTOM, extend_eval, lex_min, pair_decode, pair_encode, rank, unrank
from .kernels import BACKEND
from .relations import MockRelation, SubsetSumInstance, SubsetSumRelation, gen_subset_sum

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BOTTOM", "MockRelation", "SubsetSumInstance", "SubsetSumRelation",
    "build_sigma", "build_tau", "choose_trashbin", "counterexample_triple",
    "decide_via_inverter", "extend_eval", "gen_subset_sum", "lex_min", "pair_decode",
    "pair_encode", "rank", "totalize", "unrank",
]
