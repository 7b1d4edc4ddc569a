"""Tree-polynomials with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from . import tree as T
from .compose import divides, substitute
from .errors import ArityMismatch, NotDivisible, ZeroPolynomial
from .order import PATH_LEX, OrderSpec


class TreePolynomial:
    """Finite combination of tree-monomials of one arity; zero terms are never stored."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, c in items:
            c = Fraction(c)
            if c:
                acc[mono] = acc.get(mono, 0) + c
        self.terms = {m: c for m, c in acc.items() if c}
        arities = {m.arity for m in self.terms}
        if len(arities) > 1:
            raise ArityMismatch(f"mixed arities {sorted(arities)} in one polynomial")
        self._hash = None

    @classmethod
    def monomial(cls, t, c=1):
        return cls({t: c})

    @property
    def arity(self) -> int | None:
        for m in self.terms:
            return m.arity
        return None

    @property
    def degrees(self) -> set[int]:
        return {m.degree for m in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __eq__(self, other):
        if isinstance(other, TreePolynomial):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return TreePolynomial(out)

    def __neg__(self):
        return TreePolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> TreePolynomial:
        c = Fraction(c)
        return TreePolynomial({m: c * v for m, v in self.terms.items()})

    __rmul__ = scale

    def coefficient(self, t) -> Fraction:
        return self.terms.get(t, Fraction(0))

    def sorted_terms(self, spec: OrderSpec | None = PATH_LEX):
        if spec is None:
            # no signature order available: a stable structural order
            return sorted(self.terms.items(), key=lambda mc: (mc[0].degree, T.render(mc[0])), reverse=True)
        return sorted(self.terms.items(), key=lambda mc: spec.key(mc[0]), reverse=True)

    def map_monomials(self, fn) -> TreePolynomial:
        out: dict = {}
        for m, c in self.terms.items():
            n = fn(m)
            out[n] = out.get(n, 0) + c
        return TreePolynomial(out)

    def render(self, spec: OrderSpec | None = None) -> str:
        return render(self, spec)

    def __repr__(self):
        return f"TreePolynomial({render(self)})"

    __str__ = render


def render(f: TreePolynomial, spec: OrderSpec | None = None) -> str:
    if not f.terms:
        return "0"
    parts = []
    for k, (m, c) in enumerate(f.sorted_terms(spec)):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        coef = "" if a == 1 else f"{a}*"
        body = f"{coef}{T.render(m)}"
        if k == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def leading(f: TreePolynomial, spec: OrderSpec = PATH_LEX):
    if not f.terms:
        raise ZeroPolynomial("zero polynomial has no leading term")
    m = max(f.terms, key=spec.key)
    return m, f.terms[m]


def monic(f: TreePolynomial, spec: OrderSpec = PATH_LEX) -> TreePolynomial:
    _, c = leading(f, spec)
    return f.scale(1 / c)


def substitute_poly(e, g: TreePolynomial) -> TreePolynomial:
    """Apply the composition pattern of ``e`` to every term of ``g``."""
    return g.map_monomials(lambda z: substitute(e, z))


def reduce_once(f: TreePolynomial, g: TreePolynomial, spec: OrderSpec = PATH_LEX) -> TreePolynomial:
    fm, fc = leading(f, spec)
    gm, gc = leading(g, spec)
    embs = divides(gm, fm)
    if not embs:
        raise NotDivisible(f"{T.render(gm)} does not divide {T.render(fm)}")
    return f - substitute_poly(embs[0], g).scale(fc / gc)


class Reducer:
    """Full reduction modulo a list of polynomials.

    Leading terms are indexed by root generator so that only plausible anchors
    are tried.
    """

    def __init__(self, basis: Iterable[TreePolynomial], spec: OrderSpec = PATH_LEX):
        self.spec = spec
        self.basis = [g for g in basis if g]
        self.leads = [leading(g, spec) for g in self.basis]
        self.by_root: dict = {}
        for idx, (m, _) in enumerate(self.leads):
            self.by_root.setdefault(m.gen, []).append(idx)
        self._cache: dict = {}

    def find(self, t):
        """First (basis index, embedding) dividing ``t``, scanning anchors in path order."""
        hit = self._cache.get(t, False)
        if hit is not False:
            return hit
        from .compose import embedding_at

        found = None
        for p in T.node_paths(t):
            s = T.subtree(t, p)
            for idx in self.by_root.get(s.gen, ()):
                m = self.leads[idx][0]
                if m.degree > s.degree:
                    continue
                e = embedding_at(m, t, p)
                if e is not None:
                    found = (idx, e)
                    break
            if found:
                break
        self._cache[t] = found
        return found

    def normal_form(self, f: TreePolynomial) -> TreePolynomial:
        terms = dict(f.terms)
        while True:
            target = None
            for m in sorted(terms, key=self.spec.key, reverse=True):
                hit = self.find(m)
                if hit is not None:
                    target = (m, hit)
                    break
            if target is None:
                return TreePolynomial(terms)
            m, (idx, e) = target
            c = terms[m] / self.leads[idx][1]
            for z, gc in self.basis[idx].terms.items():
                n = substitute(e, z)
                v = terms.get(n, 0) - c * gc
                if v:
                    terms[n] = v
                else:
                    terms.pop(n, None)

    def is_normal(self, t) -> bool:
        return self.find(t) is None


def normal_form(f: TreePolynomial, G: Iterable[TreePolynomial], spec: OrderSpec = PATH_LEX):
    return Reducer(G, spec).normal_form(f)
