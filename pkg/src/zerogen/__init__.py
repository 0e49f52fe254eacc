"""Deciding 0-generacy of integer vectors, with certificates.

A positive integer vector is 0-generating when the recursion that
repeatedly sums admissible tuples and zeroes one coordinate eventually
produces the zero vector.  This package decides the question with dense
fixpoint engines, emits independently checkable certificates for both
verdicts, locates the extremal thresholds s_inf and the harmonic-mean
threshold, and carries the analytic growth machinery (integer and real
threshold functions, Lambert W bounds, the weight method) that explains
where the thresholds sit.
"""

from .analysis import (BoundInterval, CrucialReport, PhiEval, PsiMax,
                       WeightParams, crucial_inequality_check,
                       lambert_w, lambert_w_bounds, lambert_w_series,
                       ln_factorial_bounds, phi_asymptotic_bounds,
                       phi_floor, phi_real, psi_max, varphi_int,
                       varphi_int_argmax, weight, weight_params, x_crit,
                       xi, zeta)
from .certificates import (VerifyResult, generate_phi_witness,
                           load_certificate, save_certificate,
                           verify_certificate, verify_const_witness,
                           verify_general_witness, verify_nongen_invariant)
from .engine import (Budget, BudgetExceeded, Decision, TierRefused,
                     decide, decide_const, decide_general, job_tier)
from .extremal import (FrontierCapError, FrontierSet, NetReport,
                       SInfResult, defect_bound, minimal_frontier,
                       one_plus_floor_phi, s1_lower_bound, s_inf,
                       suggest_net, table1, table2, verify_net)
from .nvec import harmonic_mean, parse_vector, sorted_form

__version__ = "0.1.0"

__all__ = [
    "Budget", "BudgetExceeded", "BoundInterval", "CrucialReport",
    "Decision", "FrontierCapError", "FrontierSet", "NetReport", "PhiEval",
    "PsiMax", "SInfResult", "TierRefused", "VerifyResult", "WeightParams",
    "crucial_inequality_check", "decide", "decide_const", "decide_general",
    "defect_bound", "generate_phi_witness", "harmonic_mean", "job_tier",
    "lambert_w", "lambert_w_bounds", "lambert_w_series",
    "ln_factorial_bounds", "load_certificate", "minimal_frontier",
    "one_plus_floor_phi", "parse_vector", "phi_asymptotic_bounds",
    "phi_floor", "phi_real", "psi_max", "s1_lower_bound", "s_inf",
    "save_certificate", "sorted_form", "suggest_net", "table1", "table2",
    "varphi_int", "varphi_int_argmax", "verify_certificate",
    "verify_const_witness", "verify_general_witness", "verify_net",
    "verify_nongen_invariant", "weight", "weight_params", "x_crit", "xi",
    "zeta", "__version__",
]
