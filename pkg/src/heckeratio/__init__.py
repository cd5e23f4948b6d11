"""Critical-value ratios of algebraic Hecke characters, with the exact field arithmetic they need."""
__version__ = "0.1.0"

from .chartypes import (CriticalSet, InfinityType, analytic_type, base_change, cm_type, combinatorial_window,
                        critical_set, is_base_change, purity_check, signature, signature_product, width)
from .lseries import EvalResult, RatioResult, completed, dirichlet_sum, euler_product, linf_factor, ratio
from .numfield import (NumberFieldTower, SurdValue, abs_discriminant, build_field, embeddings, galois_closure,
                       get_field, maximal_subfields, rel_discriminant)
from .qi import HeckeCharacterSpec, coefficients, primes_up_to
from .verify import (counterexample_pipeline, discriminant_identity_check, recognize_rational,
                     reciprocity_table)

__all__ = [
    "CriticalSet", "EvalResult", "HeckeCharacterSpec", "InfinityType", "NumberFieldTower", "RatioResult",
    "SurdValue", "abs_discriminant", "analytic_type", "base_change", "build_field", "cm_type",
    "coefficients", "combinatorial_window", "completed", "counterexample_pipeline", "critical_set",
    "dirichlet_sum", "discriminant_identity_check", "embeddings", "euler_product", "galois_closure",
    "get_field", "is_base_change", "linf_factor", "maximal_subfields", "primes_up_to", "purity_check",
    "ratio", "recognize_rational", "reciprocity_table", "rel_discriminant", "signature",
    "signature_product", "width",
]
