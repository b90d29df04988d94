"""pinchcert: exact pinching-threshold certificates for quadratic curvature functionals.

The package has three layers:

* :mod:`pinchcert.algebra` -- exact polynomials and rational functions over
  the fixed variable set ``(a1, a2, b1, b2, b3, t, n, eps, s)``.
* :mod:`pinchcert.proof` / :mod:`pinchcert.certificates` -- the coefficient
  quadratic forms, the optimal pinching threshold, and machine-checkable
  positivity certificates.
* :mod:`pinchcert.tensors` / :mod:`pinchcert.models` /
  :mod:`pinchcert.inequalities` -- numeric curvature tensors, closed-form
  model geometries, and randomized checks of the curvature inequalities.
"""

from .algebra import Poly, RationalFunc, parse_poly, parse_rf, poly_to_text, rf_to_text

__version__ = "0.1.0"

__all__ = [
    "Poly",
    "RationalFunc",
    "parse_poly",
    "parse_rf",
    "poly_to_text",
    "rf_to_text",
    "__version__",
]
