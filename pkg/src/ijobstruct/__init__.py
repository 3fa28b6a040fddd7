"""Exact computations around Delsarte hypersurfaces and their obstructions.

Subpackages:
  intlinalg    Smith normal form, torus kernels (exact integers)
  delsarte     exponent matrices, symmetries, smoothness
  hodge        Hodge numbers and diagonal characters via the Jacobian ring
  obstruction  the certificate-producing rule engine and its verifier
  rh_oracle    brute-force group actions on Riemann surfaces
  search       enumeration and ranking of candidate hypersurfaces
  cli          command-line front end (`ijobstruct ...`)
"""

__version__ = "0.1.0"
