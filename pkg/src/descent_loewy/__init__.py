"""Descent algebras of finite Coxeter groups via the face semigroup of the
reflection arrangement: exact quivers, radical filtrations, Loewy lengths."""

__version__ = "0.1.0"

from .arrangement import (FaceSemigroup, IntersectionLattice,
                          build_face_semigroup)
from .coxeter import (CoxeterSystem, GroupTooLargeError, SignedPermutation,
                      build_coxeter_system)
from .descent import (descent_algebra, loewy_length_descent,
                      verify_anti_isomorphism, verify_direct_idempotents)
from .exactalg import FiniteDimAlgebra
from .facealg import (face_algebra, invariant_algebra, orbit_idempotents,
                      support_idempotents)
from .quiverphi import (Quiver, build_quiver, certify_typeD, invariant_quiver,
                        phi, quiver_dot, verify_phi)

__all__ = [
    "CoxeterSystem",
    "FaceSemigroup",
    "FiniteDimAlgebra",
    "GroupTooLargeError",
    "IntersectionLattice",
    "Quiver",
    "SignedPermutation",
    "build_coxeter_system",
    "build_face_semigroup",
    "build_quiver",
    "certify_typeD",
    "descent_algebra",
    "face_algebra",
    "invariant_algebra",
    "invariant_quiver",
    "loewy_length_descent",
    "orbit_idempotents",
    "phi",
    "quiver_dot",
    "support_idempotents",
    "verify_anti_isomorphism",
    "verify_direct_idempotents",
    "verify_phi",
]
