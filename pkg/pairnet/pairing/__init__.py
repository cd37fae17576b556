"""Optimal ate and Tate pairings via elliptic nets, with Miller-loop oracles."""

from pairnet.pairing.final_exp import cyclotomic_value, final_exp, frobenius_multi_pow, hard_part_digits
from pairnet.pairing.miller import divisor_check, line_value, miller, vertical_value
from pairnet.pairing.optimal_ate import (
    bn_line_intermediates,
    kss_line_intermediates,
    optimal_ate,
    optimal_ate_bls,
    optimal_ate_bn,
    optimal_ate_kss16,
    optimal_ate_miller,
    pairing_context,
    twist_frobenius,
    twisted_g1,
)
from pairnet.pairing.output import BNLineIntermediates, DegenerateLineError, KSSLineIntermediates, PairingOutput
from pairnet.pairing.tate import TateForm, tate_miller, tate_net

__all__ = [
    "BNLineIntermediates",
    "DegenerateLineError",
    "KSSLineIntermediates",
    "PairingOutput",
    "TateForm",
    "bn_line_intermediates",
    "cyclotomic_value",
    "divisor_check",
    "final_exp",
    "frobenius_multi_pow",
    "hard_part_digits",
    "kss_line_intermediates",
    "line_value",
    "miller",
    "optimal_ate",
    "optimal_ate_bls",
    "optimal_ate_bn",
    "optimal_ate_kss16",
    "optimal_ate_miller",
    "pairing_context",
    "tate_miller",
    "tate_net",
    "twist_frobenius",
    "twisted_g1",
    "vertical_value",
]
