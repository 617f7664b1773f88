"""Genus theory and the factorization of Hilbert class polynomials over F_p."""

from .classpoly import ClassPolynomial, hilbert_class_poly, j_invariant
from .discriminant import FundamentalDiscriminant, PrimeStarFactor, make_fundamental
from .errors import (
    ClassLawError,
    DomainError,
    IntegrityError,
    PrecisionError,
    ResourceError,
    ValidationError,
)
from .ffpoly import FpPoly, ddf, is_squarefree, reduce_mod, roots
from .genus import (
    Prediction,
    SplittingPattern,
    predict,
    stankewicz_criterion,
    symbol_product_identity,
    theoretical_density,
)
from .lawcheck import (
    ClassPolyCache,
    DensityReport,
    VerificationReport,
    density_experiment,
    sweep,
    verify_one,
)
from .numtheory import factorize, is_prime, kronecker, primes_in_range, sqrt_mod
from .quadforms import ClassGroup, QuadForm, class_group, class_number, compose, prime_form

__version__ = "0.1.0"
