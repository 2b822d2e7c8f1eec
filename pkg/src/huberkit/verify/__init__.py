"""Numerical verification: prime geodesic tables, Chebyshev sums and lemma checks."""

from .lemmas import (
    BumpTransform,
    LemmaReport,
    bump_constants,
    certification_report,
    karamata_check,
    lemma_suite,
)
from .pgt import (
    COLUMN_NAMES,
    HuberEstimate,
    PgtRow,
    chebyshev,
    empirical_huber,
    main_term,
    pgt_csv,
    pgt_rows,
    pgt_table,
)

__all__ = [
    "BumpTransform", "COLUMN_NAMES", "HuberEstimate", "LemmaReport", "PgtRow",
    "bump_constants", "certification_report", "chebyshev", "empirical_huber",
    "karamata_check", "lemma_suite", "main_term", "pgt_csv", "pgt_rows", "pgt_table",
]
