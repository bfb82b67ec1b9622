"""Exact-arithmetic toolkit for residual finiteness growth of concrete groups.

The package measures how large a finite quotient must be to detect a given
element of a finitely generated group, and how that size grows with word
length.  Everything numeric is exact (arbitrary-precision integers); floats
appear only in the final log-log exponent fits.

The headline objects are re-exported here; the submodules carry the full
API (arith, matgrp, chevalley, growth, numring, counterexamples, cli).
"""

from .chevalley import CheckResult, GroupSpec
from .growth import (
    CandidateSeq,
    candidate_D_analytic,
    farb_growth,
    fit_exponent,
    short_unipotent_word,
    sl2_st,
)
from .matgrp import DetectionResult, brute_force_D, congruence_D
from .numring import NumberRing, detect_split, min_detecting_ideal

__version__ = "0.1.0"

__all__ = [
    "CandidateSeq",
    "CheckResult",
    "DetectionResult",
    "GroupSpec",
    "NumberRing",
    "brute_force_D",
    "candidate_D_analytic",
    "congruence_D",
    "detect_split",
    "farb_growth",
    "fit_exponent",
    "min_detecting_ideal",
    "short_unipotent_word",
    "sl2_st",
]
