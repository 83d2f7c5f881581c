"""Numeric verification of the potential-function inequalities and constants."""

from .appendix import mainlemma2_threshold, verify_mainlemma1, verify_mainlemma2, verify_mainlemma2_derivative
from .cases import case_threshold, verify_case_lemma
from .potentials import (
    DERIVATIVE_BREAKEVEN,
    PaperConstants,
    mainlemma2_derivative,
    paper_constants,
    phi_t253,
    phi_t334,
    phi_t334_derivative,
    psi_derivative_numerator,
    psi_transform,
)
from .report import VERIFY_TOL, LemmaReport
from .suite import LEMMA_IDS, resolve, run_lemma, run_lemma_suite, threshold
from .triangles import verify_claim6, verify_constants, verify_posofc, verify_t253, verify_t334

__all__ = [
    "DERIVATIVE_BREAKEVEN", "LEMMA_IDS", "LemmaReport", "PaperConstants", "VERIFY_TOL",
    "case_threshold", "mainlemma2_derivative", "mainlemma2_threshold", "paper_constants",
    "phi_t253", "phi_t334", "phi_t334_derivative", "psi_derivative_numerator", "psi_transform",
    "resolve", "run_lemma", "run_lemma_suite", "threshold", "verify_case_lemma",
    "verify_claim6", "verify_constants", "verify_mainlemma1", "verify_mainlemma2",
    "verify_mainlemma2_derivative", "verify_posofc", "verify_t253", "verify_t334",
]
