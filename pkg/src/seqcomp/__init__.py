"""Complementary sequence sets, Z-complementary code sets and complete
complementary codes, with an exact correlation verifier."""

from .core import (
    Alphabet,
    CyclotomicSum,
    ResidueSequence,
    SequenceSet,
    SetFamily,
    cyc_add,
    cyc_conjugate,
    cyc_is_zero,
    cyc_to_complex,
    cyclotomic_polynomial,
)
from .correlation import (
    ClassificationReport,
    accf,
    classify,
    is_css,
    is_escss,
    set_accf,
    zcz_width,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "ClassificationReport",
    "CyclotomicSum",
    "ResidueSequence",
    "SequenceSet",
    "SetFamily",
    "accf",
    "classify",
    "cyc_add",
    "cyc_conjugate",
    "cyc_is_zero",
    "cyc_to_complex",
    "cyclotomic_polynomial",
    "is_css",
    "is_escss",
    "set_accf",
    "zcz_width",
]
