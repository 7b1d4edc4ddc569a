"""Gröbner bases for operads, with conformal-algebra checks."""
from .errors import OperadError
from .tree import Generator, Leaf, Node, corolla
from .order import OrderSpec, PATH_LEX, compare
from .poly import TreePolynomial, leading, normal_form
from .presentations import Presentation, builtin, shuffle_expand
from .parser import parse_presentation, render_presentation
from .groebner import (
    buchberger,
    count_normal_monomials,
    find_ambiguities,
    is_confluent,
    koszul_report,
    s_polynomial,
)

__version__ = "0.1.0"
