"""Ambiguities, S-polynomials, degree-bounded Buchberger completion, confluence,
the quadratic-basis Koszulity certificate, and normal-monomial counting.

Degree bounds here are measured by weight, i.e. arity minus one.  For
signatures without unary generators this equals the vertex count; with a
unary generator it counts only the branching operations, so a relation such
as ``m(alpha(m(1,2)),3) - m(1,alpha(m(2,3)))`` is quadratic.  Vertex counts
are still reported and can be capped with ``max_vertices``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from . import tree as T
from .compose import Embedding, embedding_at
from .errors import BoundExceeded, BoundTooSmall
from .order import PATH_LEX, OrderSpec
from .poly import Reducer, TreePolynomial, leading, monic, substitute_poly


def weight(t) -> int:
    return t.arity - 1


# --------------------------------------------------------------------------
# monomial enumeration


def _set_partitions_by_min(labels: tuple, k: int, mode: str):
    """Split ``labels`` into ``k`` non-empty blocks listed by increasing minimum."""
    n = len(labels)
    if mode == "nonsymmetric":
        for cuts in itertools.combinations(range(1, n), k - 1):
            bounds = (0,) + cuts + (n,)
            yield [labels[bounds[i]:bounds[i + 1]] for i in range(k)]
        return

    def rec(rest, blocks):
        if not rest:
            if len(blocks) == k:
                yield [tuple(b) for b in blocks]
            return
        x, tail = rest[0], rest[1:]
        for b in blocks:
            b.append(x)
            yield from rec(tail, blocks)
            b.pop()
        if len(blocks) < k:
            blocks.append([x])
            yield from rec(tail, blocks)
            blocks.pop()

    yield from rec(labels, [])


@lru_cache(maxsize=None)
def _trees(gens: tuple, n: int, d: int, mode: str) -> tuple:
    if d == 0:
        return (T.Leaf(1),) if n == 1 else ()
    out = []
    labels = tuple(range(1, n + 1))
    for g in gens:
        k = g.arity
        if k > n:
            continue
        for blocks in _set_partitions_by_min(labels, k, mode):
            sizes = [len(b) for b in blocks]
            for split in _compositions_of(d - 1, k):
                options = [_trees(gens, s, dd, mode) for s, dd in zip(sizes, split)]
                if not all(options):
                    continue
                for kids in itertools.product(*options):
                    placed = [T._apply(c, {r + 1: b[r] for r in range(len(b))})
                              for c, b in zip(kids, blocks)]
                    out.append(T.Node(g, placed))
    return tuple(out)


def _compositions_of(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions_of(total - first, parts - 1):
            yield (first,) + rest


def enumerate_monomials(generators, arity: int, mode: str = "shuffle", degree: int | None = None):
    """All monomials of the given arity (and vertex count, when given).

    Without ``degree`` the set is finite only if no generator is unary.
    """
    gens = tuple(generators)
    if degree is None:
        if any(g.arity == 1 for g in gens):
            raise BoundExceeded("unary generators give infinitely many monomials per arity; "
                                "pass a vertex count")
        out = []
        for d in range(0, arity):
            out.extend(_trees(gens, arity, d, mode))
        return out
    return list(_trees(gens, arity, degree, mode))


# --------------------------------------------------------------------------
# ambiguities


@dataclass(frozen=True)
class Overlap:
    monomial: object
    embedding_1: Embedding
    embedding_2: Embedding
    relations: tuple[int, int]

    @property
    def weight(self) -> int:
        return weight(self.monomial)


def _placeholder_union(v1, v2, path):
    """Overlay ``v2`` with its root at ``path`` of ``v1``; leaves become placeholders.

    Returns the union tree with leaves numbered 1..n in planar order, or None
    when vertex labels clash.
    """
    counter = itertools.count(1)

    def fresh():
        return T.Leaf(next(counter))

    def copy(s):
        if s.is_leaf:
            return fresh()
        return T.Node(s.gen, [copy(c) for c in s.children])

    def overlay(a, b):
        if a.is_leaf and b.is_leaf:
            return fresh()
        if a.is_leaf:
            return copy(b)
        if b.is_leaf:
            return copy(a)
        if a.gen != b.gen:
            raise _Clash
        return T.Node(a.gen, [overlay(x, y) for x, y in zip(a.children, b.children)])

    def walk(s, p):
        if p == path:
            return overlay(s, v2)
        if s.is_leaf:
            raise _Clash
        i = path[len(p)]
        kids = [walk(c, p + (k,)) if k == i else copy(c) for k, c in enumerate(s.children)]
        return T.Node(s.gen, kids)

    try:
        return walk(v1, ())
    except _Clash:
        return None


class _Clash(Exception):
    pass


def _labelings(shape, mode):
    n = shape.arity
    if mode == "nonsymmetric":
        yield shape
        return
    for perm in itertools.permutations(range(1, n + 1)):
        if perm[0] != 1:  # the leftmost leaf is always the minimum
            continue
        t = T._apply(shape, {i + 1: perm[i] for i in range(n)})
        if T._ordered(t):
            yield t


def find_ambiguities(leading_terms, max_degree: int | None = 4, spec: OrderSpec = PATH_LEX,
                     mode: str = "shuffle", max_vertices: int | None = None) -> list[Overlap]:
    """All overlaps of weight <= ``max_degree`` between the given leading monomials.

    Self-overlaps are included; the two embeddings of an overlap always differ.
    ``max_degree=None`` lifts the bound (the set is finite regardless).
    """
    if max_degree is not None and max_degree < 2:
        raise BoundTooSmall("ambiguity search needs max_degree >= 2")
    leads = list(leading_terms)
    seen = set()
    out = []
    for i, j in itertools.product(range(len(leads)), repeat=2):
        v1, v2 = leads[i], leads[j]
        for path in T.node_paths(v1):
            if path == () and i >= j:
                continue
            shape = _placeholder_union(v1, v2, path)
            if shape is None:
                continue
            if max_degree is not None and weight(shape) > max_degree:
                continue
            if max_vertices is not None and shape.degree > max_vertices:
                continue
            for w in _labelings(shape, mode):
                e1 = embedding_at(v1, w, ())
                if e1 is None:
                    continue
                e2 = embedding_at(v2, w, path)
                if e2 is None:
                    continue
                ident = (w, frozenset({(i, ()), (j, path)}))
                if ident in seen:
                    continue
                seen.add(ident)
                out.append(Overlap(w, e1, e2, (i, j)))
    out.sort(key=lambda o: (spec.key(o.monomial), o.relations, o.embedding_2.anchor))
    return out


def s_polynomial(o: Overlap, relations, spec: OrderSpec = PATH_LEX) -> TreePolynomial:
    """Difference of the two one-step reductions of the overlap monomial."""
    g1, g2 = relations[o.relations[0]], relations[o.relations[1]]
    _, c1 = leading(g1, spec)
    _, c2 = leading(g2, spec)
    r1 = substitute_poly(o.embedding_1, g1).scale(1 / c1)
    r2 = substitute_poly(o.embedding_2, g2).scale(1 / c2)
    # (w - r1) - (w - r2)
    return r2 - r1


# --------------------------------------------------------------------------
# completion


@dataclass
class Certificate:
    overlap: Overlap
    normal_form: TreePolynomial


@dataclass
class GBResult:
    basis: list
    completed_to_degree: int
    confluent_at_bound: bool
    max_basis_degree: int
    failure_certificate: Certificate | None = None
    spec: OrderSpec = PATH_LEX
    mode: str = "shuffle"
    generators: tuple = ()
    original_size: int = 0
    added: int = 0
    complete: bool = False
    overlaps_checked: int = 0
    max_basis_vertices: int = 0
    notes: list = field(default_factory=list)

    @property
    def grew(self) -> bool:
        return self.added > 0

    @property
    def leading_terms(self):
        return [leading(g, self.spec)[0] for g in self.basis]


def _max_weight(polys):
    return max((weight(next(iter(p.terms))) for p in polys if p), default=0)


def _interreduce(basis, spec):
    basis = [monic(g, spec) for g in basis if g]
    changed = True
    while changed:
        changed = False
        basis.sort(key=lambda g: spec.key(leading(g, spec)[0]))
        for idx, g in enumerate(basis):
            others = basis[:idx] + basis[idx + 1:]
            lead = leading(g, spec)[0]
            red = Reducer(others, spec)
            if red.find(lead) is not None:
                nf = red.normal_form(g)
                basis = others + ([monic(nf, spec)] if nf else [])
                changed = True
                break
    # tails
    out = []
    for idx, g in enumerate(basis):
        others = basis[:idx] + basis[idx + 1:]
        lead, c = leading(g, spec)
        tail = TreePolynomial({m: v for m, v in g.terms.items() if m != lead})
        tail = Reducer(others, spec).normal_form(tail)
        out.append(TreePolynomial.monomial(lead, c) + tail)
    out.sort(key=lambda g: spec.key(leading(g, spec)[0]))
    return out


def buchberger(p, spec: OrderSpec | None = None, max_degree: int = 4,
               max_vertices: int | None = None, max_basis: int = 500) -> GBResult:
    """Degree-bounded completion of ``p.relations``.

    S-polynomials are processed smallest overlap monomial first.  Overlaps
    above ``max_degree`` (weight) or ``max_vertices`` are left unprocessed,
    which makes the result a Groebner basis only up to that bound unless
    ``complete`` is set.
    """
    spec = spec or p.order_spec
    rels = [g for g in p.relations if g]
    if rels and max_degree < _max_weight(rels):
        raise BoundTooSmall(f"bound {max_degree} below relation degree {_max_weight(rels)}")
    basis = _interreduce(rels, spec) if rels else []
    initial = len(basis)
    added = 0
    checked = 0
    pending: list[Overlap] = []
    done: set = set()

    def refresh():
        leads = [leading(g, spec)[0] for g in basis]
        return find_ambiguities(leads, max_degree, spec, p.mode, max_vertices) if leads else []

    notes = []
    while True:
        pending = [o for o in refresh() if _okey(o, basis, spec) not in done]
        if not pending:
            break
        progress = False
        red = Reducer(basis, spec)
        for o in pending:
            done.add(_okey(o, basis, spec))
            checked += 1
            s = s_polynomial(o, basis, spec)
            nf = red.normal_form(s)
            if nf:
                basis.append(monic(nf, spec))
                added += 1
                progress = True
                break
        if progress:
            if len(basis) > max_basis:
                notes.append(f"stopped: basis exceeded {max_basis} elements")
                break
            continue
        break
    if added:
        basis = _interreduce(basis, spec)
    leads = [leading(g, spec)[0] for g in basis]
    all_overlaps = find_ambiguities(leads, None, spec, p.mode) if leads else []
    complete = not notes and all(
        o.weight <= max_degree and (max_vertices is None or o.monomial.degree <= max_vertices)
        for o in all_overlaps)
    return GBResult(
        basis=basis,
        completed_to_degree=max_degree,
        confluent_at_bound=not notes,
        max_basis_degree=_max_weight(basis),
        spec=spec,
        mode=p.mode,
        generators=tuple(p.generators),
        original_size=initial,
        added=added,
        complete=complete,
        overlaps_checked=checked,
        max_basis_vertices=max((max(g.degrees) for g in basis), default=0),
        notes=notes,
    )


def _okey(o: Overlap, basis, spec):
    # identify an overlap by its monomial and the leading terms involved
    a = leading(basis[o.relations[0]], spec)[0]
    b = leading(basis[o.relations[1]], spec)[0]
    return (o.monomial, frozenset({(a, o.embedding_1.anchor), (b, o.embedding_2.anchor)}))


@dataclass
class ConfluenceResult:
    confluent: bool
    overlaps: int
    certificate: Certificate | None = None
    all_failures: list = field(default_factory=list)

    def __bool__(self):
        return self.confluent


def is_confluent(p, spec: OrderSpec | None = None, max_degree: int = 4,
                 max_vertices: int | None = None) -> ConfluenceResult:
    """Check that every S-polynomial of the original relations reduces to zero."""
    spec = spec or p.order_spec
    rels = [g for g in p.relations if g]
    if not rels:
        return ConfluenceResult(True, 0)
    leads = [leading(g, spec)[0] for g in rels]
    overlaps = find_ambiguities(leads, max_degree, spec, p.mode, max_vertices)
    red = Reducer(rels, spec)
    failures = []
    for o in overlaps:
        nf = red.normal_form(s_polynomial(o, rels, spec))
        if nf:
            failures.append(Certificate(o, nf))
    return ConfluenceResult(not failures, len(overlaps),
                            failures[0] if failures else None, failures)


KOSZUL = "KOSZUL-CERTIFIED"
INCONCLUSIVE = "INCONCLUSIVE-AT-BOUND"


@dataclass
class KoszulReport:
    verdict: str
    gb: GBResult
    basis_degree: int
    overlaps: int
    truncated: bool = False
    notes: list = field(default_factory=list)


def koszul_report(p, spec: OrderSpec | None = None, max_degree: int = 4,
                  max_vertices: int | None = None) -> KoszulReport:
    """Certify Koszulity through a quadratic Groebner basis; never asserts the converse."""
    spec = spec or p.order_spec
    gb = buchberger(p, spec, max_degree, max_vertices)
    degs = {weight(next(iter(g.terms))) for g in gb.basis}
    quadratic = degs <= {2}
    ok = quadratic and gb.confluent_at_bound and gb.complete
    notes = list(gb.notes)
    truncated = bool(getattr(p, "warnings", None)) or p.family_params is not None
    if not quadratic:
        notes.append(f"basis weights {sorted(degs)}: not quadratic")
    if not gb.complete:
        notes.append("overlaps beyond the bound remain unchecked")
    leads = gb.leading_terms
    n_over = len(find_ambiguities(leads, max_degree, spec, p.mode, max_vertices)) if leads else 0
    return KoszulReport(KOSZUL if ok else INCONCLUSIVE, gb, max(degs, default=0),
                        n_over, truncated, notes)


def count_normal_monomials(r: GBResult, arity: int, degree: int | None = None) -> int:
    """Number of monomials of the given arity divisible by no leading term of ``r``."""
    if not r.confluent_at_bound:
        raise BoundExceeded("basis is not confluent at its bound")
    if not r.complete and arity - 1 > r.completed_to_degree:
        raise BoundExceeded(f"arity {arity} needs a basis completed to degree {arity - 1}, "
                            f"have {r.completed_to_degree}")
    red = Reducer(r.basis, r.spec)
    return sum(1 for t in enumerate_monomials(r.generators, arity, r.mode, degree)
               if red.is_normal(t))
