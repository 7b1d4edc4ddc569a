"""Polynomials in the derivation ∂ and vectors over ℚ[∂]."""
from __future__ import annotations

from fractions import Fraction
from math import factorial


class PolyD:
    """c0 + c1 ∂ + c2 ∂² + ... with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if type(c) is Fraction else Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c) -> PolyD:
        return cls((c,))

    @classmethod
    def d_power(cls, p: int, c=1) -> PolyD:
        return cls([0] * p + [c])

    @classmethod
    def divided_power(cls, j: int) -> PolyD:
        """∂^(j) = ∂^j / j!."""
        return cls.d_power(j, Fraction(1, factorial(j)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, PolyD):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == PolyD.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return PolyD(x + y for x, y in zip(a, b))

    def __neg__(self):
        return PolyD(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PolyD):
            return PolyD(c * Fraction(other) for c in self.coeffs)
        if not self or not other:
            return PolyD()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolyD(out)

    __rmul__ = __mul__

    def __repr__(self):
        return f"PolyD({render_polyd(self)})"


def _coef_text(c: Fraction, body: str) -> str:
    if not body:
        return str(c)
    if c == 1:
        return body
    if c == -1:
        return f"-{body}"
    return f"{c}*{body}"


def render_polyd(p: PolyD, var: str = "d") -> str:
    if not p:
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        body = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        parts.append(_coef_text(c, body))
    return " + ".join(parts).replace("+ -", "- ")


class Element:
    """A vector of the free ℚ[∂]-module: basis index -> PolyD, zeros dropped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        items = coeffs.items() if isinstance(coeffs, dict) else (coeffs or ())
        out: dict = {}
        for i, p in items:
            p = p if isinstance(p, PolyD) else PolyD.const(p)
            q = out.get(i, PolyD()) + p
            if q:
                out[i] = q
            else:
                out.pop(i, None)
        self.coeffs = out

    @classmethod
    def basis(cls, i: int, p: PolyD | None = None) -> Element:
        return cls({i: p if p is not None else PolyD.const(1)})

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.coeffs == other.coeffs
        if other == 0:
            return not self.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        return Element(list(self.coeffs.items()) + list(other.coeffs.items()))

    def __neg__(self):
        return Element({i: -p for i, p in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> Element:
        return Element({i: p * Fraction(c) for i, p in self.coeffs.items()})

    def apply(self, q: PolyD) -> Element:
        """Multiply every coordinate by the polynomial ``q`` in ∂."""
        return Element({i: p * q for i, p in self.coeffs.items()})

    def d(self, times: int = 1) -> Element:
        return self.apply(PolyD.d_power(times))

    def render(self, names=None) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in sorted(self.coeffs):
            name = names[i] if names else f"e{i}"
            p = self.coeffs[i]
            for k in range(p.degree, -1, -1):
                if p.coeffs[k]:
                    body = name if k == 0 else (f"d*{name}" if k == 1 else f"d^{k}*{name}")
                    parts.append(_coef_text(p.coeffs[k], body))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Element({self.render()})"
