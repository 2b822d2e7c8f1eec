"""Explicit constants and numerical checks for the prime geodesic theorem.

Modules
-------
numerics  extended-precision special functions and quadrature
qforms    indefinite binary quadratic forms, Pell units, narrow class numbers
spectrum  length spectra of PSL(2, Z) and of Gamma(N)
huber     constant ledgers for the spectral counting and Huber constants
verify    prime geodesic tables, Chebyshev sums, lemma checks
cli       command-line front end
"""

from .numerics import DEFAULT_PREC, DomainError, QuadratureError, context

__version__ = "0.1.0"

__all__ = ["DEFAULT_PREC", "DomainError", "QuadratureError", "context", "__version__"]
