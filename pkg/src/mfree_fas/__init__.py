"""Certified feedback arc sets for digraphs without short directed cycles."""
from .digraph import (CycleWitness, Digraph, DuplicateEdge, LoopEdge, OverlappingSets,
                      VertexOutOfRange, check_m_free, edges_between, gamma, girth, induced,
                      is_acyclic, missing_between, trim)
from .exact import TooLarge, brute_force_check, exact_fas_edges, exact_fas_size
from .layers import Side, in_layers, out_layers, p_layer, rprime_layer, s_surrogate, t_surrogate
from .pathstats import ExactRatio, NotMFree, enumerate_sips, min_alpha_beta, triple_stats
from .solver import FasResult, UnsupportedM, select_candidate, solve, split, verify_certificate

__version__ = "0.1.0"

__all__ = [
    "CycleWitness", "Digraph", "DuplicateEdge", "LoopEdge", "OverlappingSets", "VertexOutOfRange",
    "check_m_free", "edges_between", "gamma", "girth", "induced", "is_acyclic", "missing_between",
    "trim", "TooLarge", "brute_force_check", "exact_fas_edges", "exact_fas_size", "Side",
    "in_layers", "out_layers", "p_layer", "rprime_layer", "s_surrogate", "t_surrogate",
    "ExactRatio", "NotMFree", "enumerate_sips", "min_alpha_beta", "triple_stats", "FasResult",
    "UnsupportedM", "select_candidate", "solve", "split", "verify_certificate",
]
