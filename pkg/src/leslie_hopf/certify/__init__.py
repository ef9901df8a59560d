"""Exact certificates for the cyclicity and stability claims about the model."""
from .certificate import Certificate, Step, Verdict, jsonable
from .cyclicity import (DEFAULT_CERT_WIDTH, certify_first_equilibrium,
                        certify_simultaneous_hopf, certify_third_equilibrium,
                        certify_unique_cyclicity, recover_phi3)
from .origin import OriginPortrait, OriginRegime, classify_origin
from .stability import (StabilityCondition, StabilityRegime, b1_star, b2_star,
                        dulac_divergence, dulac_grid_check, dulac_polynomial,
                        global_stability_certificate, lyapunov_derivative, lyapunov_grid_check,
                        threshold_ordering_samples)

__all__ = [
    "Certificate", "Step", "Verdict", "jsonable", "DEFAULT_CERT_WIDTH",
    "certify_unique_cyclicity", "certify_first_equilibrium", "certify_third_equilibrium",
    "certify_simultaneous_hopf", "recover_phi3",
    "OriginPortrait", "OriginRegime", "classify_origin",
    "StabilityCondition", "StabilityRegime", "b1_star", "b2_star", "dulac_divergence",
    "dulac_grid_check", "dulac_polynomial", "global_stability_certificate",
    "lyapunov_derivative", "lyapunov_grid_check", "threshold_ordering_samples",
]
