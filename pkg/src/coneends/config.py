"""Default tolerances, exposed so callers can tighten or relax them."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # closed-form matrix/scalar identities
    identity: float = 1e-10
    # projective comparisons of PSL(2,C) elements
    projective: float = 1e-10
    # self-adjointness / symmetry of per-sample matrices
    symmetry: float = 1e-8
    # homomorphism / trace audits of holonomy representations
    holonomy: float = 1e-8
    # general positivity guard
    positivity: float = 1e-12


DEFAULT_TOL = Tolerances()
