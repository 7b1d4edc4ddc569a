"""Operad presentations: the data type, symmetric-to-shuffle expansion and builtins."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import tree as T
from .errors import ArityError, MissingParams, NonHomogeneousRelation, UnknownName, UnsupportedArity
from .order import PATH_LEX, OrderSpec
from .poly import TreePolynomial, leading

MODES = ("nonsymmetric", "shuffle")
SYMMETRIES = ("none", "antisymmetric", "symmetric")


@dataclass
class Presentation:
    name: str
    mode: str
    generators: tuple
    relations: tuple
    order_spec: OrderSpec = PATH_LEX
    family_params: tuple | None = None
    # symmetric-side declarations kept for rendering: name -> (arity, symmetry)
    declared: dict = field(default_factory=dict, compare=False)
    warnings: list = field(default_factory=list, compare=False)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        self.generators = tuple(self.generators)
        self.relations = tuple(self.relations)

    def generator(self, name: str) -> T.Generator:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)

    def validate(self):
        for r in self.relations:
            validate_relation(r, self.mode)
        return self

    def leading_terms(self, spec: OrderSpec | None = None):
        spec = spec or self.order_spec
        return [leading(r, spec)[0] for r in self.relations if r]


def validate_relation(r: TreePolynomial, mode: str):
    arities = {m.arity for m in r.terms}
    if len(arities) > 1:
        raise NonHomogeneousRelation(f"relation mixes arities {sorted(arities)}")
    for m in r.terms:
        if not T.is_standard(m):
            raise ArityError(f"{T.render(m)} is not a shuffle monomial")
        if mode == "nonsymmetric" and not T.is_nonsymmetric(m):
            raise ArityError(f"{T.render(m)} is not planar-ordered (nonsymmetric mode)")


# --------------------------------------------------------------------------
# symmetric relations in named variables
#
# A symbolic term is a variable name (str) or a tuple (generator_name, *args).
# A symbolic relation is a list of (coefficient, term) pairs.


@dataclass(frozen=True)
class SymGenerator:
    name: str
    arity: int
    symmetry: str = "none"

    def __post_init__(self):
        if self.symmetry not in SYMMETRIES:
            raise ValueError(f"unknown symmetry {self.symmetry!r}")
        if self.symmetry != "none" and self.arity != 2:
            raise UnsupportedArity(f"{self.name}: symmetries are only supported for binary generators")
        if self.arity > 2:
            raise UnsupportedArity(f"{self.name}: shuffle expansion supports arity <= 2")


def op_name(name: str) -> str:
    return f"{name}_op"


def shuffle_generators(sym_gens) -> list[T.Generator]:
    """Shuffle generators for a symmetric signature.

    A symmetry-free binary ``g`` yields ``g`` and ``g_op`` with
    ``g_op(x, y) = g(y, x)``; (anti)symmetric and unary generators yield one.
    """
    out = []
    for sg in sym_gens:
        out.append(T.Generator(sg.name, sg.arity))
        if sg.arity == 2 and sg.symmetry == "none":
            out.append(T.Generator(op_name(sg.name), 2))
    return out


def variables_of(term) -> list[str]:
    if isinstance(term, str):
        return [term]
    out = []
    for a in term[1:]:
        out.extend(variables_of(a))
    return out


def expand_term(term, assignment: dict, sym_gens: dict, gens: dict):
    """Shuffle monomial and sign for a symbolic term under a variable->label map."""
    if isinstance(term, str):
        return T.Leaf(assignment[term]), 1
    name, args = term[0], term[1:]
    sg = sym_gens[name]
    if len(args) != sg.arity:
        raise ArityError(f"{name} takes {sg.arity} arguments, got {len(args)}")
    parts = [expand_term(a, assignment, sym_gens, gens) for a in args]
    sign = 1
    for _, s in parts:
        sign *= s
    kids = [t for t, _ in parts]
    if sg.arity == 1:
        return T.Node(gens[name], kids), sign
    x, y = kids
    if x.min_leaf < y.min_leaf:
        return T.Node(gens[name], [x, y]), sign
    if sg.symmetry == "none":
        return T.Node(gens[op_name(name)], [y, x]), sign
    if sg.symmetry == "antisymmetric":
        return T.Node(gens[name], [y, x]), -sign
    return T.Node(gens[name], [y, x]), sign


def expand_relation(rel, assignment: dict, sym_gens, gens) -> TreePolynomial:
    sym_gens = {g.name: g for g in sym_gens} if not isinstance(sym_gens, dict) else sym_gens
    gens = {g.name: g for g in gens} if not isinstance(gens, dict) else gens
    out: dict = {}
    for c, term in rel:
        t, s = expand_term(term, assignment, sym_gens, gens)
        out[t] = out.get(t, 0) + Fraction(c) * s
    return TreePolynomial(out)


def echelon(polys, spec: OrderSpec = PATH_LEX) -> list[TreePolynomial]:
    """Reduced row echelon form of a list of polynomials (leading terms distinct, monic)."""
    rows: list[TreePolynomial] = []
    for p in polys:
        for r in rows:
            lm, lc = leading(r, spec)
            c = p.coefficient(lm)
            if c:
                p = p - r.scale(c / lc)
        if p:
            lm, lc = leading(p, spec)
            p = p.scale(1 / lc)
            new_rows = []
            for r in rows:
                c = r.coefficient(lm)
                new_rows.append(r - p.scale(c) if c else r)
            rows = new_rows + [p]
    rows.sort(key=lambda r: spec.key(leading(r, spec)[0]), reverse=True)
    return rows


def shuffle_expand(symmetric_relations, sym_gens, name: str = "expanded",
                   symbols: tuple | None = None, spec: OrderSpec | None = None) -> Presentation:
    """Rewrite relations in named variables into shuffle relations.

    Every bijection variables -> {1..n} is tried; the resulting relations are
    row-reduced so that duplicates, sign-flipped copies and tautologies
    (zero relations) disappear.
    """
    sym_gens = list(sym_gens)
    gens = shuffle_generators(sym_gens)
    if spec is None:
        spec = OrderSpec(symbols=tuple(symbols) if symbols else tuple(g.name for g in gens))
    polys = []
    for rel in symmetric_relations:
        names = []
        for _, term in rel:
            for v in variables_of(term):
                if v not in names:
                    names.append(v)
        for perm in itertools.permutations(range(1, len(names) + 1)):
            p = expand_relation(rel, dict(zip(names, perm)), sym_gens, gens)
            if p:
                polys.append(p)
    by_arity: dict = {}
    for p in polys:
        by_arity.setdefault(p.arity, []).append(p)
    rels = []
    for n in sorted(by_arity):
        rels.extend(echelon(by_arity[n], spec))
    declared = {g.name: (g.arity, g.symmetry) for g in sym_gens}
    return Presentation(name, "shuffle", gens, rels, spec, declared=declared).validate()


# --------------------------------------------------------------------------
# builtins


def _parse_rel(text, gens):
    from .parser import parse_polynomial

    return parse_polynomial(text, {g.name: g for g in gens})


M = T.Generator("m", 2)
ALPHA = T.Generator("alpha", 1)

HOM_ASS = {
    "I1": "m(m(1,2),alpha(3)) - m(alpha(1),m(2,3))",
    "I2": "m(m(1,alpha(2)),3) - m(1,m(alpha(2),3))",
    "I3": "m(m(alpha(1),2),3) - m(1,m(2,alpha(3)))",
    "II0": "m(alpha(m(1,2)),3) - m(1,alpha(m(2,3)))",
    "II1": "m(m(alpha(1),alpha(2)),3) - m(1,m(alpha(2),alpha(3)))",
    "II2": "m(m(alpha(1),2),alpha(3)) - m(alpha(1),m(2,alpha(3)))",
    "II3": "m(m(1,alpha(2)),alpha(3)) - m(alpha(1),m(alpha(2),3))",
    "III": "alpha(m(m(1,2),3)) - alpha(m(1,m(2,3)))",
    "IIIp": "m(alpha(m(1,2)),alpha(3)) - m(alpha(1),alpha(m(2,3)))",
    "IIIpp": "m(m(alpha(1),alpha(2)),alpha(3)) - m(alpha(1),m(alpha(2),alpha(3)))",
}
HOM_ASS_ORDER = OrderSpec(symbols=("alpha", "m"))

# Gelfand-Dorfman identities in the right convention; ``o`` is the Novikov product
GD_RELATIONS = {
    "left_symmetric": [(1, ("o", ("o", "a", "b"), "c")), (-1, ("o", "a", ("o", "b", "c"))),
                       (-1, ("o", ("o", "b", "a"), "c")), (1, ("o", "b", ("o", "a", "c")))],
    "right_novikov": [(1, ("o", ("o", "a", "b"), "c")), (-1, ("o", ("o", "a", "c"), "b"))],
    "jacobi": [(1, ("br", ("br", "a", "b"), "c")), (1, ("br", ("br", "c", "a"), "b")),
               (1, ("br", ("br", "b", "c"), "a"))],
    "compatibility": [(1, ("br", ("o", "c", "a"), "b")), (-1, ("br", ("o", "c", "b"), "a")),
                      (1, ("o", ("br", "c", "a"), "b")), (-1, ("o", ("br", "c", "b"), "a")),
                      (-1, ("o", "c", ("br", "a", "b")))],
}
GD_SYM = [SymGenerator("o", 2, "none"), SymGenerator("br", 2, "antisymmetric")]


def opposite(term, name="o"):
    """Swap the arguments of every ``name`` vertex (left/right convention switch)."""
    if isinstance(term, str):
        return term
    args = [opposite(a, name) for a in term[1:]]
    if term[0] == name:
        args.reverse()
    return (term[0], *args)


def gd_relations(convention: str = "right", keys=None):
    if convention not in ("right", "left"):
        raise ValueError("convention must be 'right' or 'left'")
    keys = keys or list(GD_RELATIONS)
    rels = [GD_RELATIONS[k] for k in keys]
    if convention == "left":
        rels = [[(c, opposite(t)) for c, t in r] for r in rels]
    return rels


def clie_generator(n: int, j: int) -> T.Generator:
    return T.Generator(f"b{n}_{j}", 2, (n, j), True)


CLIE_ORDER = OrderSpec(symbol_rule="clie")


def clie_presentation(k: int, N: int, J: int) -> Presentation:
    """Shuffle relations (a<b<c) for the conformal Lie family, truncated.

    For each 0 <= n, m <= N emits
      {1,{2,3}_{n,0}}_{m,0} - sum_{j<=k} (-1)^{n+j} {{1,3}_{m,0},2}_{n+j,j}
                            - sum_{j<=m} C(m,j) {{1,2}_{j,0},3}_{n+m-j,0}.
    Terms needing an index j > J are dropped and reported in ``warnings``.
    """
    if min(k, N, J) < 0:
        raise MissingParams("clie parameters must be non-negative")
    gens: dict = {}
    warnings = []

    def g(n, j):
        if (n, j) not in gens:
            gens[(n, j)] = clie_generator(n, j)
        return gens[(n, j)]

    L = T.Leaf
    rels = []
    for n in range(N + 1):
        for m in range(N + 1):
            terms: dict = {}
            t1 = T.Node(g(m, 0), [L(1), T.Node(g(n, 0), [L(2), L(3)])])
            terms[t1] = Fraction(1)
            for j in range(k + 1):
                if j > J:
                    warnings.append(f"TRUNCATED: relation (n={n}, m={m}) drops term "
                                    f"{{{{1,3}}_({m},0),2}}_({n + j},{j}) since j={j} > J={J}")
                    continue
                t2 = T.Node(g(n + j, j), [T.Node(g(m, 0), [L(1), L(3)]), L(2)])
                terms[t2] = terms.get(t2, 0) - (-1) ** (n + j)
            for j in range(m + 1):
                t3 = T.Node(g(n + m - j, 0), [T.Node(g(j, 0), [L(1), L(2)]), L(3)])
                terms[t3] = terms.get(t3, 0) - comb(m, j)
            rels.append(TreePolynomial(terms))
    order = sorted(gens.values(), key=lambda x: CLIE_ORDER.symbol(x))
    return Presentation(f"clie_k{k}_N{N}_J{J}", "shuffle", order, rels, CLIE_ORDER,
                        family_params=(k, N, J), warnings=warnings).validate()


BUILTIN_NAMES = ("magma", "ass") + tuple(f"hom_ass_{k}" for k in HOM_ASS) + (
    "lie", "novikov", "gd", "clie")


def builtin(name: str, k: int | None = None, N: int | None = None, J: int | None = None,
            convention: str = "right") -> Presentation:
    if name == "magma":
        return Presentation("magma", "nonsymmetric", (M,), (), OrderSpec(symbols=("m",)))
    if name == "ass":
        rel = _parse_rel("m(m(1,2),3) - m(1,m(2,3))", [M])
        return Presentation("ass", "nonsymmetric", (M,), (rel,), OrderSpec(symbols=("m",))).validate()
    if name.startswith("hom_ass_"):
        key = name[len("hom_ass_"):]
        if key not in HOM_ASS:
            raise UnknownName(f"unknown presentation {name!r}")
        rel = _parse_rel(HOM_ASS[key], [M, ALPHA])
        return Presentation(name, "nonsymmetric", (ALPHA, M), (rel,), HOM_ASS_ORDER).validate()
    if name == "lie":
        return shuffle_expand([GD_RELATIONS["jacobi"]], [SymGenerator("br", 2, "antisymmetric")],
                              name="lie")
    if name == "novikov":
        return shuffle_expand(gd_relations(convention, ["left_symmetric", "right_novikov"]),
                              [SymGenerator("o", 2)], name=f"novikov_{convention}",
                              symbols=("o", "o_op"))
    if name == "gd":
        return shuffle_expand(gd_relations(convention), GD_SYM, name=f"gd_{convention}",
                              symbols=("br", "o", "o_op"))
    if name == "clie":
        if k is None or N is None or J is None:
            raise MissingParams("clie needs parameters k, N, J")
        return clie_presentation(k, N, J)
    raise UnknownName(f"unknown presentation {name!r}; known: {', '.join(BUILTIN_NAMES)}")
