"""Finite-dimensional GD and Hom-GD algebras given by structure constants.

Vectors are tuples of Fractions.  ``circ[i][j]`` and ``bracket[i][j]`` are the
coordinate vectors of e_i∘e_j and [e_i, e_j]; ``alpha[i]`` is the image α(e_i).

Identities (1)-(5) are those of a right GD algebra (left-symmetric and
right-commutative product).  ``convention="left"`` evaluates them on the
opposite product x∘'y = y∘x.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ..errors import DimensionMismatch, MissingAlpha, NotAMorphism, NotHomNovikov
from .module import ConformalModule
from .polyd import Element, PolyD

Vec = tuple


def _zero(d: int) -> Vec:
    return (Fraction(0),) * d


def _table(rows, d: int, name: str):
    if rows is None:
        return tuple(tuple(_zero(d) for _ in range(d)) for _ in range(d))
    if len(rows) != d or any(len(r) != d or any(len(v) != d for v in r) for r in rows):
        raise DimensionMismatch(f"{name} must be {d}x{d}x{d}")
    return tuple(tuple(tuple(Fraction(x) for x in v) for v in r) for r in rows)


def _matrix(rows, d: int) -> tuple:
    if len(rows) != d or any(len(v) != d for v in rows):
        raise DimensionMismatch(f"alpha must be {d}x{d}")
    return tuple(tuple(Fraction(x) for x in v) for v in rows)


@dataclass(frozen=True)
class FiniteAlgebra:
    dim: int
    circ: tuple = None
    bracket: tuple = None
    alpha: tuple | None = None
    names: tuple | None = None

    def __post_init__(self):
        d = self.dim
        object.__setattr__(self, "circ", _table(self.circ, d, "circ"))
        object.__setattr__(self, "bracket", _table(self.bracket, d, "bracket"))
        if self.alpha is not None:
            object.__setattr__(self, "alpha", _matrix(self.alpha, d))
        names = tuple(self.names) if self.names else tuple(f"e{i}" for i in range(d))
        if len(names) != d:
            raise DimensionMismatch("one name per basis vector")
        object.__setattr__(self, "names", names)

    @classmethod
    def from_entries(cls, dim, circ=None, bracket=None, alpha=None, names=None):
        """Build from sparse dicts {(i, j): {s: coef}} and {i: {s: coef}}."""
        def dense(entries):
            t = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
            for (i, j), v in (entries or {}).items():
                for s, c in v.items():
                    t[i][j][s] = Fraction(c)
            return t

        a = None
        if alpha is not None:
            a = [[Fraction(0)] * dim for _ in range(dim)]
            for i, v in alpha.items():
                for s, c in v.items():
                    a[i][s] = Fraction(c)
        return cls(dim, dense(circ), dense(bracket), a, names)

    def basis(self, i: int) -> Vec:
        return tuple(Fraction(int(s == i)) for s in range(self.dim))

    def o(self, u: Vec, v: Vec) -> Vec:
        return _bilinear(self.circ, u, v)

    def br(self, u: Vec, v: Vec) -> Vec:
        return _bilinear(self.bracket, u, v)

    def a(self, u: Vec) -> Vec:
        if self.alpha is None:
            raise MissingAlpha("algebra has no twisting map")
        return _linear(self.alpha, u)

    def with_alpha(self, alpha) -> FiniteAlgebra:
        return FiniteAlgebra(self.dim, self.circ, self.bracket, alpha, self.names)

    def opposite(self) -> FiniteAlgebra:
        """Same algebra with x∘y replaced by y∘x."""
        d = self.dim
        circ = tuple(tuple(self.circ[j][i] for j in range(d)) for i in range(d))
        return FiniteAlgebra(d, circ, self.bracket, self.alpha, self.names)


def _bilinear(table, u, v) -> Vec:
    d = len(u)
    out = [Fraction(0)] * d
    for i, x in enumerate(u):
        if not x:
            continue
        for j, y in enumerate(v):
            if not y:
                continue
            xy = x * y
            for s, c in enumerate(table[i][j]):
                if c:
                    out[s] += xy * c
    return tuple(out)


def _linear(matrix, u) -> Vec:
    d = len(u)
    out = [Fraction(0)] * d
    for i, x in enumerate(u):
        if x:
            for s, c in enumerate(matrix[i]):
                out[s] += x * c
    return tuple(out)


def add(*vs) -> Vec:
    return tuple(sum(xs, Fraction(0)) for xs in zip(*vs))


def neg(v) -> Vec:
    return tuple(-x for x in v)


def _is_zero(v) -> bool:
    return not any(v)


def _identities(A: FiniteAlgebra, twisted: bool):
    """Defects of (1)-(5), or of their α-twisted forms, as functions of a, b, c."""
    o, br = A.o, A.br
    al = A.a if twisted else (lambda x: x)
    return [
        lambda a, b, c: add(o(o(a, b), al(c)), neg(o(al(a), o(b, c))),
                            neg(o(o(b, a), al(c))), o(al(b), o(a, c))),
        lambda a, b, c: add(o(o(a, b), al(c)), neg(o(o(a, c), al(b)))),
        lambda a, b, c: add(br(a, b), br(b, a)),
        lambda a, b, c: add(br(br(a, b), al(c)), br(br(c, a), al(b)), br(br(b, c), al(a))),
        lambda a, b, c: add(br(o(c, a), al(b)), neg(br(o(c, b), al(a))), o(br(c, a), al(b)),
                            neg(o(br(c, b), al(a))), neg(o(al(c), br(a, b)))),
    ]


def _verdicts(A: FiniteAlgebra, twisted: bool) -> list[bool]:
    ids = _identities(A, twisted)
    e = [A.basis(i) for i in range(A.dim)]
    out = []
    for f in ids:
        out.append(all(_is_zero(f(a, b, c)) for a, b, c in itertools.product(e, repeat=3)))
    return out


def check_gd(A: FiniteAlgebra, convention: str = "right") -> list[bool]:
    """Verdicts for identities (1)-(5) on all basis triples."""
    if convention not in ("right", "left"):
        raise ValueError("convention must be 'right' or 'left'")
    return _verdicts(A.opposite() if convention == "left" else A, False)


def check_hom_gd(A: FiniteAlgebra) -> list[bool]:
    """Verdicts for the α-twisted identities (1*)-(5*)."""
    if A.alpha is None:
        raise MissingAlpha("Hom-GD identities need alpha")
    return _verdicts(A, True)


def _compose(alpha, table, d):
    return tuple(tuple(_linear(alpha, table[i][j]) for j in range(d)) for i in range(d))


def yau_twist(A: FiniteAlgebra, alpha) -> FiniteAlgebra:
    """a∘'b = α(a∘b), [a,b]' = α([a,b]), α carried along."""
    alpha = _matrix(alpha, A.dim)
    return FiniteAlgebra(A.dim, _compose(alpha, A.circ, A.dim), _compose(alpha, A.bracket, A.dim),
                         alpha, A.names)


def is_gd_morphism(A: FiniteAlgebra, alpha) -> bool:
    alpha = _matrix(alpha, A.dim)
    e = [A.basis(i) for i in range(A.dim)]
    for a, b in itertools.product(e, repeat=2):
        if _linear(alpha, A.o(a, b)) != A.o(_linear(alpha, a), _linear(alpha, b)):
            return False
        if _linear(alpha, A.br(a, b)) != A.br(_linear(alpha, a), _linear(alpha, b)):
            return False
    return True


def commutator_bracket(A: FiniteAlgebra) -> FiniteAlgebra:
    """Hom-Novikov (A, ∘, α) with the bracket [a,b] = a∘b - b∘a."""
    if A.alpha is None:
        raise MissingAlpha("commutator construction needs alpha")
    v = _verdicts(A, True)
    if not (v[0] and v[1]):
        raise NotHomNovikov(f"(1*) {v[0]}, (2*) {v[1]}: product is not Hom-Novikov")
    d = A.dim
    br = tuple(tuple(add(A.circ[i][j], neg(A.circ[j][i])) for j in range(d)) for i in range(d))
    return FiniteAlgebra(d, A.circ, br, A.alpha, A.names)


def check_twist_identities(A: FiniteAlgebra, alpha) -> list[bool]:
    """The four identities behind Yau twisting of GD algebras, on all basis triples.

    1. (a∘'b)∘'α(c) = α²((a∘b)∘c)
    2. [[a,b]', α(c)]' = α²([[a,b],c])
    3. [a,b]'∘'α(c) = α²([a,b]∘c)
    4. [a∘'b, α(c)]' = α²([a∘b, c])
    """
    if not is_gd_morphism(A, alpha):
        raise NotAMorphism("alpha is not a GD morphism of A")
    T = yau_twist(A, alpha)
    al = T.a

    def a2(v):
        return al(al(v))

    checks = [
        lambda a, b, c: (T.o(T.o(a, b), al(c)), a2(A.o(A.o(a, b), c))),
        lambda a, b, c: (T.br(T.br(a, b), al(c)), a2(A.br(A.br(a, b), c))),
        lambda a, b, c: (T.o(T.br(a, b), al(c)), a2(A.o(A.br(a, b), c))),
        lambda a, b, c: (T.br(T.o(a, b), al(c)), a2(A.br(A.o(a, b), c))),
    ]
    e = [A.basis(i) for i in range(A.dim)]
    return [all(l == r for l, r in (f(a, b, c) for a, b, c in itertools.product(e, repeat=3)))
            for f in checks]


def _vec_element(v: Vec, shift: int = 0) -> Element:
    return Element({s: PolyD.d_power(shift, c) for s, c in enumerate(v) if c})


def lambda_bracket_from_gd(A: FiniteAlgebra, convention: str = "right") -> ConformalModule:
    """Conformal structure on ℚ[∂]⊗A from a GD algebra.

    a_(1) b = a∘b + b∘a in both conventions; a_(0) b = [a,b] + ∂(b∘a) for the
    right convention and [a,b] + ∂(a∘b) for the left one.
    """
    if convention not in ("right", "left"):
        raise ValueError("convention must be 'right' or 'left'")
    prods = {}
    for i in range(A.dim):
        for j in range(A.dim):
            ei, ej = A.basis(i), A.basis(j)
            dterm = A.o(ej, ei) if convention == "right" else A.o(ei, ej)
            zero = _vec_element(A.br(ei, ej)) + _vec_element(dterm, 1)
            one = _vec_element(add(A.o(ei, ej), A.o(ej, ei)))
            prods[(i, j, 0)] = zero
            prods[(i, j, 1)] = one
    return ConformalModule(list(A.names), 1, prods, name="gd")
