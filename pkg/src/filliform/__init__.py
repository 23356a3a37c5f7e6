"""Exact tools for bounding the intersection forms of 4-manifolds that fill 3-manifolds.

Subpackages:

- ``linalg``: integer and rational matrix algebra (Smith form, kernels, signature)
- ``lattice``: integral forms, shadows, root systems, isometry
- ``surgery``: homology of integral surgeries from linking matrices
- ``coeff``: Laurent polynomials, Tor over group rings, graded ranks
- ``ledger``: correction-term table, filling verdicts, even-form enumeration
"""

from . import coeff, lattice, ledger, linalg, surgery
from .errors import DomainError, InconsistencyError

__version__ = "0.1.0"

__all__ = ["DomainError", "InconsistencyError", "coeff", "lattice", "ledger", "linalg", "surgery"]
