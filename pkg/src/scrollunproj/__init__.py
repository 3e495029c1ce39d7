"""Rational normal scrolls, their generalised unprojection rings, and exact
checks of the accompanying algebraic and intersection-theoretic statements."""

from .poly import (
    GF,
    INHOMOGENEOUS,
    QQ,
    GREVLEX,
    LEX,
    MonomialOrder,
    Polynomial,
    PolynomialRing,
    RingMap,
    apply_map,
    block_order,
    field_from_spec,
    polynomial_ring,
)
from .ideal import (
    GroebnerBasis,
    GroebnerBudgetExceeded,
    HilbertTable,
    IdealPresentation,
    contains,
    eliminate,
    groebner,
    hilbert_function,
    ideal_equal,
    krull_dimension,
    normal_form,
)

__version__ = "0.1.0"
