"""Lie conformal algebras, the M_n family and (Hom-)GD algebra checks."""
from .polyd import Element, PolyD
from .module import (
    CheckResult,
    ConformalModule,
    build_Mn,
    check_antisymmetry,
    check_jacobi,
    distinctness,
    nth_product,
)
from .algebra import (
    FiniteAlgebra,
    check_gd,
    check_hom_gd,
    check_twist_identities,
    commutator_bracket,
    is_gd_morphism,
    lambda_bracket_from_gd,
    yau_twist,
)
from .io import parse_algebra, parse_module, render_algebra, render_module
