"""Lie conformal algebras on free ℚ[∂]-modules of finite rank."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial

from ..errors import NegativeIndex
from .polyd import Element, PolyD


def _falling(n: int, p: int) -> int:
    """n (n-1) ... (n-p+1)."""
    return factorial(n) // factorial(n - p) if p <= n else 0


@dataclass
class ConformalModule:
    """Basis names, truncation ``k`` and the nonzero basis products.

    ``products[(i, j, n)]`` is e_i (n) e_j; anything absent is zero and every
    product with n > k is zero (axiom (c1) by truncation).
    """

    basis: list
    k: int
    products: dict = field(default_factory=dict)
    name: str = "module"
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        self.basis = list(self.basis)
        clean = {}
        for (i, j, n), v in self.products.items():
            if n < 0:
                raise NegativeIndex(f"product index {n} < 0")
            if n > self.k:
                raise ValueError(f"product index {n} exceeds truncation k={self.k}")
            v = v if isinstance(v, Element) else Element(v)
            if v:
                clean[(i, j, n)] = v
        self.products = clean

    @property
    def rank(self) -> int:
        return len(self.basis)

    def index(self, x) -> int:
        return x if isinstance(x, int) else self.basis.index(x)

    def gen(self, x) -> Element:
        return Element.basis(self.index(x))

    def max_d_degree(self) -> int:
        return max((p.degree for v in self.products.values() for p in v.coeffs.values()), default=0)

    def basis_product(self, i: int, j: int, n: int) -> Element:
        return self.products.get((i, j, n), Element())

    def render(self, x: Element) -> str:
        return x.render(self.basis)


def _monomial_product(M: ConformalModule, i, p, j, q, n) -> Element:
    """(∂^p e_i)_(n) (∂^q e_j) by the sesquilinearity rules.

    (∂^p a)_(n) b = (-1)^p n!/(n-p)! a_(n-p) b and
    a_(r) (∂^q b) = sum_t C(q,t) r!/(r-t)! ∂^(q-t) (a_(r-t) b).
    """
    key = (i, p, j, q, n)
    hit = M._cache.get(key)
    if hit is not None:
        return hit
    if p > n:
        M._cache[key] = Element()
        return M._cache[key]
    r = n - p
    sign = (-1) ** p * _falling(n, p)
    out = Element()
    for t in range(min(q, r) + 1):
        v = M.basis_product(i, j, r - t)
        if v:
            out = out + v.apply(PolyD.d_power(q - t, comb(q, t) * _falling(r, t)))
    M._cache[key] = out = out.scale(sign)
    return out


def nth_product(M: ConformalModule, x, y, n: int) -> Element:
    """x_(n) y for arbitrary elements, extended bilinearly from the basis products."""
    if n < 0:
        raise NegativeIndex(f"n-th product needs n >= 0, got {n}")
    if isinstance(x, (int, str)) and isinstance(y, (int, str)):
        return _monomial_product(M, M.index(x), 0, M.index(y), 0, n)
    x = x if isinstance(x, Element) else M.gen(x)
    y = y if isinstance(y, Element) else M.gen(y)
    acc: dict = {}
    for i, px in x.coeffs.items():
        for j, py in y.coeffs.items():
            for p, a in enumerate(px.coeffs):
                if not a:
                    continue
                for q, b in enumerate(py.coeffs):
                    if not b:
                        continue
                    for s, poly in _monomial_product(M, i, p, j, q, n).coeffs.items():
                        row = acc.setdefault(s, [])
                        for e, c in enumerate(poly.coeffs):
                            if e >= len(row):
                                row.extend([0] * (e + 1 - len(row)))
                            row[e] += a * b * c
    return Element({s: PolyD(row) for s, row in acc.items()})


@dataclass
class CheckResult:
    ok: bool
    violation: tuple | None = None
    checked: int = 0

    def __bool__(self):
        return self.ok


def antisymmetry_defect(M: ConformalModule, x, y, n: int) -> Element:
    """x_(n) y + sum_j (-1)^(n+j) ∂^(j) (y_(n+j) x); zero iff (c3) holds."""
    total = nth_product(M, x, y, n)
    reach = M.k + M.max_d_degree() + 2
    for j in range(0, reach + 1):
        v = nth_product(M, y, x, n + j)
        if v:
            total = total + v.apply(PolyD.divided_power(j)).scale((-1) ** (n + j))
    return total


def check_antisymmetry(M: ConformalModule) -> CheckResult:
    """Axiom (c3) on all ordered basis pairs and all n <= k."""
    checked = 0
    for i in range(M.rank):
        for j in range(M.rank):
            for n in range(M.k + 1):
                checked += 1
                d = antisymmetry_defect(M, i, j, n)
                if d:
                    return CheckResult(False, (M.basis[i], M.basis[j], n, M.render(d)), checked)
    return CheckResult(True, None, checked)


def jacobi_defect(M: ConformalModule, a, b, c, m: int, n: int) -> Element:
    lhs = nth_product(M, a, nth_product(M, b, c, n), m) - nth_product(M, b, nth_product(M, a, c, m), n)
    rhs = Element()
    for j in range(m + 1):
        ab = nth_product(M, a, b, j)
        if ab:
            rhs = rhs + nth_product(M, ab, c, m + n - j).scale(comb(m, j))
    return lhs - rhs


def jacobi_range(M: ConformalModule) -> int:
    """Largest m, n at which a (c4) term can be nonzero.

    Basis products may carry ∂-powers of degree up to D and products with
    ∂-multiples survive past k.  Both sides vanish once m or n exceeds 2k + D.
    """
    return 2 * M.k + M.max_d_degree()


def check_jacobi(M: ConformalModule, limit: int | None = None) -> CheckResult:
    """Axiom (c4) on all basis triples for 0 <= m, n <= ``limit``."""
    limit = jacobi_range(M) if limit is None else limit
    checked = 0
    for a in range(M.rank):
        for b in range(M.rank):
            for c in range(M.rank):
                for m in range(limit + 1):
                    for n in range(limit + 1):
                        checked += 1
                        d = jacobi_defect(M, a, b, c, m, n)
                        if d:
                            return CheckResult(False, (M.basis[a], M.basis[b], M.basis[c], m, n,
                                                       M.render(d)), checked)
    return CheckResult(True, None, checked)


def build_Mn(n: int, fill: str = "divided-powers") -> ConformalModule:
    """The three-generator module with a_(n) b = c and c central.

    ``b_(n-i) a = (-1)^(n+1) ∂^(i) c`` for 0 <= i <= n, the values forced by
    antisymmetry; ``fill="zero"`` instead sets b_(j) a = 0 for j < n-1.
    """
    if n < 0:
        raise NegativeIndex(f"M_n needs n >= 0, got {n}")
    if fill not in ("divided-powers", "zero"):
        raise ValueError("fill must be 'divided-powers' or 'zero'")
    a, b, c = 0, 1, 2
    sign = (-1) ** (n + 1)
    prods = {(a, b, n): Element.basis(c)}
    for i in range(n + 1):
        if fill == "zero" and i > 1:
            break
        prods[(b, a, n - i)] = Element.basis(c, PolyD.divided_power(i) * sign)
    return ConformalModule(["a", "b", "c"], n, prods, name=f"M{n}")


def distinctness(M: ConformalModule, x, y, n: int, m_max: int) -> bool:
    """True iff x_(n) y differs from ∂(x_(m) y) for every 0 <= m <= m_max."""
    if m_max < 0:
        raise ValueError("m_max must be >= 0")
    target = nth_product(M, x, y, n)
    return all(target != nth_product(M, x, y, m).d() for m in range(m_max + 1))
