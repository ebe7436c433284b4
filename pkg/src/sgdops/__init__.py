"""Exact graded pieces of rings of differential operators on affine semigroup rings."""

from .dops import (DivergenceReport, GradedPiece, OperatorRing, QuotientPiece, Which,
                   compare_JD_DRJ, gorenstein_probe, graded_D, graded_DRJ, graded_idealizer,
                   graded_JD, quotient_piece)
from .errors import SgdopsError
from .lattice import ConeData, check_lattice_and_pointed, facets, face_lattice
from .notation import Notation
from .oracle import brute_vanishing_ideal, verify_piece
from .semigroup import MonomialIdeal, Semigroup, interior_ideal
from .theta import FactoredGenerator, LinearForm, ThetaIdeal, ThetaPoly, descending_factorial

__version__ = "0.1.0"

__all__ = [
    "ConeData", "DivergenceReport", "FactoredGenerator", "GradedPiece", "LinearForm",
    "MonomialIdeal", "Notation", "OperatorRing", "QuotientPiece", "Semigroup", "SgdopsError",
    "ThetaIdeal", "ThetaPoly", "Which", "brute_vanishing_ideal", "check_lattice_and_pointed",
    "compare_JD_DRJ", "descending_factorial", "face_lattice", "facets", "gorenstein_probe",
    "graded_D", "graded_DRJ", "graded_JD", "graded_idealizer", "interior_ideal",
    "quotient_piece", "verify_piece",
]
