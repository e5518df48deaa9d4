"""Schrödinger-type operators on weighted discrete graphs: spectra, heat kernels
and the eigenvalue-sum comparison identity."""

from .analysis import (ComparisonReport, ConvergenceStudy, Verdict, ambarzumian_check,
                       convergence_study, hadamard_derivative, hadamard_fd_oracle,
                       local_weyl_check, spectral_comparison)
from .eigensolve import Spectrum, eigendecompose, eigenvalue_counting
from .graph import (PAPER_PATH, Graph, GraphFamily, TruncationFlavor, degree,
                    generate_paper_path, truncate, truncate_potential, validate,
                    weighted_inner_product)
from .heat import HeatKernel, kernel, kernel_via_indicators, semigroup_apply
from .operator import OperatorMatrix, apply, assemble, quadratic_form
from .rules import PowerRule, parse_rule

__all__ = [
    "ComparisonReport", "ConvergenceStudy", "Verdict", "ambarzumian_check",
    "convergence_study", "hadamard_derivative", "hadamard_fd_oracle", "local_weyl_check",
    "spectral_comparison", "Spectrum", "eigendecompose", "eigenvalue_counting", "PAPER_PATH",
    "Graph", "GraphFamily", "TruncationFlavor", "degree", "generate_paper_path", "truncate",
    "truncate_potential", "validate", "weighted_inner_product", "HeatKernel", "kernel",
    "kernel_via_indicators", "semigroup_apply", "OperatorMatrix", "apply", "assemble",
    "quadratic_form", "PowerRule", "parse_rule",
]
