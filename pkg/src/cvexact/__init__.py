"""Exact compilation of continuous-variable quadrature-monomial gates.

Compiles e^{itH}, with H a product of position/momentum powers, into the
universal set {Fourier, e^{itX}, e^{itX²}, e^{itX³}, e^{iτX_jX_k}} through
exact operator identities, plus symbolic/numeric verifiers and Trotter and
group-commutator baselines for comparison.
"""

from .algebra import (Basis, NOPoly, NonTerminatingSeries, QuadLabel,
                      adjoint_series, commutator, max_coeff_diff, poly_mul)
from .baseline import (commutator_approx, commutator_repeats,
                       estimate_commutator_count, target_from_poly,
                       trotter_suzuki)
from .circuit import (Gate, GateSeq, heisenberg_conjugate, zassenhaus_split)
from .circuit_tools import (DecompReport, SchemaViolation, count_gates,
                            deserialize, optimize, serialize, serialize_json)
from .decompose import (CoeffSolution, EligibilityVerdict, Ineligible,
                        NoUnitCentralMode, TargetGate, check_eligibility,
                        compile, decompose_poly_power, decompose_pp_xn,
                        decompose_px2, decompose_px_n, decompose_single_even,
                        decompose_single_odd3, decompose_x2x2,
                        expand_general_d, solve_pascal_coeffs)
from .verify import (DimensionTooLarge, FockContext, fock_matrices,
                     heisenberg_action, verify_numeric, verify_symbolic)

__version__ = "0.1.0"

__all__ = [
    "Basis", "NOPoly", "NonTerminatingSeries", "QuadLabel", "adjoint_series",
    "commutator", "max_coeff_diff", "poly_mul",
    "commutator_approx", "commutator_repeats", "estimate_commutator_count",
    "target_from_poly", "trotter_suzuki",
    "Gate", "GateSeq", "heisenberg_conjugate", "zassenhaus_split",
    "DecompReport", "SchemaViolation", "count_gates", "deserialize",
    "optimize", "serialize", "serialize_json",
    "CoeffSolution", "EligibilityVerdict", "Ineligible", "NoUnitCentralMode",
    "TargetGate", "check_eligibility", "compile", "decompose_poly_power",
    "decompose_pp_xn", "decompose_px2", "decompose_px_n",
    "decompose_single_even", "decompose_single_odd3", "decompose_x2x2",
    "expand_general_d", "solve_pascal_coeffs",
    "DimensionTooLarge", "FockContext", "fock_matrices", "heisenberg_action",
    "verify_numeric", "verify_symbolic",
]
