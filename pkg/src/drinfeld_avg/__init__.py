"""Exact arithmetic and averaging experiments for rank-2 Drinfeld modules over F_q[T].

The package computes, in exact arithmetic only: Frobenius characteristic
polynomials of rank-2 Drinfeld modules over A/pA, class numbers of orders
in imaginary quadratic extensions of F_q(T) via finite L-sums, the mass
H_p counting isomorphism classes with a prescribed charpoly, the constant
in front of the q^(x/2)/x main term, and desk-scale averages comparing the
empirical box count against the class-number route.
"""

from .backend import active_backend, use_backend
from .constants import TruncationParams, c_avr, c_infinity, constant_C, kappa, main_term
from .drinfeld import (CharPolyFrob, FiniteDrinfeldModule, enumerate_iso_classes,
                       frobenius_charpoly, iso_equivalent, phi_image)
from .experiment import (BoxSpec, ExperimentConfig, classnumber_S, empirical_S,
                         exact_identity_check, run_experiment)
from .gf import GF, FqContext
from .halfpow import HalfPower
from .poly import Poly, format_poly, parse_poly
from .primes import count_primes_in_ap, enumerate_primes, is_irreducible
from .quadratic import (ClassNumberCache, chi, class_number, hurwitz_mass,
                        is_imaginary_discriminant, l_value_at_one)
from .residue import ResidueField, residue_field

__version__ = "0.1.0"

__all__ = [
    "GF", "FqContext", "Poly", "format_poly", "parse_poly",
    "enumerate_primes", "is_irreducible", "count_primes_in_ap",
    "ResidueField", "residue_field",
    "FiniteDrinfeldModule", "CharPolyFrob", "frobenius_charpoly", "phi_image",
    "iso_equivalent", "enumerate_iso_classes",
    "is_imaginary_discriminant", "chi", "l_value_at_one", "class_number",
    "hurwitz_mass", "ClassNumberCache",
    "TruncationParams", "kappa", "c_avr", "c_infinity", "constant_C", "main_term",
    "HalfPower",
    "BoxSpec", "ExperimentConfig", "empirical_S", "classnumber_S",
    "exact_identity_check", "run_experiment",
    "active_backend", "use_backend",
    "__version__",
]
