"""Independent confirmation: grid search for the supremum and sampled sign checks."""

from .appendix import CASES, SUITE_CASES, GridSpec, appendix_margin, appendix_terms, sweep_appendix
from .lemmas import LEMMA_IDS, REGISTRY, check_lemma, objective_gap, techlemstat_margin
from .optimizer import OptimizerConfig, brute_force_sup
from .report import Claim, LemmaCheckReport, Sample

__all__ = [
    "CASES",
    "SUITE_CASES",
    "GridSpec",
    "appendix_margin",
    "appendix_terms",
    "sweep_appendix",
    "LEMMA_IDS",
    "REGISTRY",
    "check_lemma",
    "objective_gap",
    "techlemstat_margin",
    "OptimizerConfig",
    "brute_force_sup",
    "Claim",
    "LemmaCheckReport",
    "Sample",
]
