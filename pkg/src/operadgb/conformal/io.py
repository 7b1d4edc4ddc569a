"""Text format for conformal modules and finite algebras.

Module::

    conformal M1
    basis a b c
    k 1
    prod a b 1 = c
    prod b a 0 = d*c

Algebra::

    algebra nilpotent
    basis e1 e2
    circ e1 e1 = e2
    bracket e1 e2 = 1/2*e1 - e2
    alpha e1 = 2*e1

Values are sums of ``[coef*][d^p*]name`` terms; ``d`` stands for ∂.
Only nonzero entries are listed.
"""
from __future__ import annotations

import re
from fractions import Fraction

from ..errors import PresentationSyntaxError
from .algebra import FiniteAlgebra
from .module import ConformalModule
from .polyd import Element, PolyD

_TERM = re.compile(
    r"\s*(?P<sign>[-+])?\s*(?:(?P<coef>\d+(?:/\d+)?)\s*\*\s*)?"
    r"(?:(?P<d>d)(?:\^(?P<pow>\d+))?\s*\*\s*)?(?P<name>[A-Za-z_][A-Za-z0-9_']*)\s*")


def parse_value(text: str, names, line=None, source=None) -> Element:
    text = text.strip()
    if text == "0":
        return Element()
    pos, out, first = 0, {}, True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (not first and not m.group("sign")):
            raise PresentationSyntaxError(f"cannot read value near {text[pos:]!r}", line, pos + 1, source)
        name = m.group("name")
        if name not in names:
            raise PresentationSyntaxError(f"unknown basis element {name!r}", line, m.start("name") + 1, source)
        c = Fraction(m.group("coef") or 1) * (-1 if m.group("sign") == "-" else 1)
        p = int(m.group("pow") or 1) if m.group("d") else 0
        i = names.index(name)
        out[i] = out.get(i, PolyD()) + PolyD.d_power(p, c)
        pos, first = m.end(), False
    return Element(out)


def _lines(text):
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield ln, line


def parse_module(text: str, source=None) -> ConformalModule:
    name, basis, k, prods = "module", None, None, {}
    for ln, line in _lines(text):
        head, _, rest = line.partition(" ")
        if head == "conformal":
            name = rest.strip() or name
        elif head == "basis":
            basis = rest.split()
        elif head == "k":
            k = int(rest)
        elif head == "prod":
            lhs, eq, rhs = rest.partition("=")
            parts = lhs.split()
            if not eq or len(parts) != 3 or basis is None:
                raise PresentationSyntaxError("expected: prod X Y N = VALUE (after basis)", ln, 1, source)
            x, y, n = parts
            for s in (x, y):
                if s not in basis:
                    raise PresentationSyntaxError(f"unknown basis element {s!r}", ln, 1, source)
            prods[(basis.index(x), basis.index(y), int(n))] = parse_value(rhs, basis, ln, source)
        else:
            raise PresentationSyntaxError(f"unknown directive {head!r}", ln, 1, source)
    if basis is None or k is None:
        raise PresentationSyntaxError("module needs 'basis' and 'k' lines", None, None, source)
    return ConformalModule(basis, k, prods, name=name)


def render_module(M: ConformalModule) -> str:
    lines = [f"conformal {M.name}", "basis " + " ".join(M.basis), f"k {M.k}"]
    for (i, j, n) in sorted(M.products):
        lines.append(f"prod {M.basis[i]} {M.basis[j]} {n} = {M.render(M.products[(i, j, n)])}")
    return "\n".join(lines) + "\n"


def parse_algebra(text: str, source=None) -> FiniteAlgebra:
    basis, circ, bracket, alpha, name = None, {}, {}, None, None
    for ln, line in _lines(text):
        head, _, rest = line.partition(" ")
        if head == "algebra":
            name = rest.strip()
        elif head == "basis":
            basis = rest.split()
        elif head in ("circ", "bracket", "alpha"):
            if basis is None:
                raise PresentationSyntaxError("'basis' must come first", ln, 1, source)
            lhs, eq, rhs = rest.partition("=")
            parts = lhs.split()
            want = 1 if head == "alpha" else 2
            if not eq or len(parts) != want or any(p not in basis for p in parts):
                raise PresentationSyntaxError(f"expected: {head} {'X' if want == 1 else 'X Y'} = VALUE",
                                              ln, 1, source)
            v = parse_value(rhs, basis, ln, source)
            if any(p.degree > 0 for p in v.coeffs.values()):
                raise PresentationSyntaxError("algebra entries cannot contain d", ln, 1, source)
            vec = {s: p.coeffs[0] for s, p in v.coeffs.items()}
            idx = tuple(basis.index(p) for p in parts)
            if head == "alpha":
                alpha = alpha or {}
                alpha[idx[0]] = vec
            else:
                (circ if head == "circ" else bracket)[idx] = vec
        else:
            raise PresentationSyntaxError(f"unknown directive {head!r}", ln, 1, source)
    if basis is None:
        raise PresentationSyntaxError("algebra needs a 'basis' line", None, None, source)
    if alpha is not None:
        alpha = {i: alpha.get(i, {}) for i in range(len(basis))}
    return FiniteAlgebra.from_entries(len(basis), circ, bracket, alpha, basis)


def _vec_text(v, names) -> str:
    return Element({s: PolyD.const(c) for s, c in enumerate(v) if c}).render(names)


def render_algebra(A: FiniteAlgebra, name: str = "algebra") -> str:
    lines = [f"algebra {name}", "basis " + " ".join(A.names)]
    for label, table in (("circ", A.circ), ("bracket", A.bracket)):
        for i in range(A.dim):
            for j in range(A.dim):
                if any(table[i][j]):
                    lines.append(f"{label} {A.names[i]} {A.names[j]} = {_vec_text(table[i][j], A.names)}")
    if A.alpha is not None:
        for i in range(A.dim):
            lines.append(f"alpha {A.names[i]} = {_vec_text(A.alpha[i], A.names) if any(A.alpha[i]) else 0}")
    return "\n".join(lines) + "\n"
