"""Exact Hopf-cyclicity certificates and limit-cycle simulation for a reduced
Leslie predator-prey model with simplified Holling IV functional response.

Subpackages: ``algebra`` (exact polynomials, resultants, Sturm sequences,
root isolation), ``lyapunov`` (focal values), ``certify`` (replayable
certificates) and ``dynamics`` (integration and cycle detection).
"""
__version__ = "0.1.0"

from .model import (AlphaBetaParams, Equilibrium, EquilibriumClass, Form, ModelParams,
                    find_positive_equilibria, hopf_thresholds, simultaneous_hopf_params)

__all__ = ["__version__", "AlphaBetaParams", "Equilibrium", "EquilibriumClass", "Form",
           "ModelParams", "find_positive_equilibria", "hopf_thresholds",
           "simultaneous_hopf_params"]
