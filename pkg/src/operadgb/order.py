"""Admissible orderings of tree-monomials.

Both orderings are realised as sort keys so that ``max``/``sorted`` work
directly on monomials.  ``compare`` is a thin wrapper returning LT/EQ/GT.
"""
from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache

from . import tree as T
from .errors import MixedSignature


class Cmp(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def clie_rank(x: int) -> tuple[int, int]:
    """Position of an index in the order 0 < 2 < 3 < ... < 1."""
    return (1 if x == 1 else 0, x)


def clie_symbol_compare(p: tuple[int, int], q: tuple[int, int]) -> Cmp:
    """Compare conformal Lie symbols (n, j): j first, then n, both in 0<2<3<...<1."""
    kp = (clie_rank(p[1]), clie_rank(p[0]))
    kq = (clie_rank(q[1]), clie_rank(q[0]))
    return Cmp((kp > kq) - (kp < kq))


@dataclass(frozen=True)
class OrderSpec:
    kind: str = "path-lex"
    # declared symbol order, smallest first; ignored when symbol_rule == "clie"
    symbols: tuple[str, ...] = ()
    symbol_rule: str = "declared"
    word_direction: str = "left-to-right"
    permutation_rule: str = "reverse-lex"
    arity_rule: str = "smaller-arity-smaller"
    _ranks: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.kind not in ("path-lex", "forest-lex"):
            raise ValueError(f"unknown ordering kind {self.kind!r}")
        if self.symbol_rule not in ("declared", "clie"):
            raise ValueError(f"unknown symbol rule {self.symbol_rule!r}")
        if self.word_direction not in ("left-to-right", "right-to-left"):
            raise ValueError(f"unknown word direction {self.word_direction!r}")
        if self.permutation_rule not in ("reverse-lex", "lex"):
            raise ValueError(f"unknown permutation rule {self.permutation_rule!r}")
        if self.arity_rule not in ("smaller-arity-smaller", "larger-arity-smaller"):
            raise ValueError(f"unknown arity rule {self.arity_rule!r}")
        object.__setattr__(self, "symbols", tuple(self.symbols))
        object.__setattr__(self, "_ranks", {s: i for i, s in enumerate(self.symbols)})

    @property
    def experimental(self) -> bool:
        return self.kind == "forest-lex"

    def symbol(self, g: T.Generator):
        if self.symbol_rule == "clie":
            n, j = g.symbol_key
            return (clie_rank(j), clie_rank(n))
        try:
            return self._ranks[g.name]
        except KeyError:
            raise MixedSignature(f"generator {g.name!r} missing from symbol order "
                                 f"{list(self.symbols)}") from None

    def key(self, t):
        return _key(self, t)

    def header(self) -> str:
        return self.kind


PATH_LEX = OrderSpec()


@lru_cache(maxsize=1 << 18)
def _key(spec: OrderSpec, t):
    a = t.arity if spec.arity_rule == "smaller-arity-smaller" else -t.arity
    if spec.kind == "forest-lex":
        return (a, _forest_key(spec, t))
    words, perm = T.path_sequence(t)
    wkeys = []
    for w in words:
        syms = [spec.symbol(g) for g in w]
        if spec.word_direction == "right-to-left":
            syms.reverse()
        wkeys.append((len(syms), tuple(syms)))
    if spec.permutation_rule == "reverse-lex":
        pkey = tuple(-x for x in perm)
    else:
        pkey = tuple(perm)
    return (a, tuple(wkeys), pkey)


def _set_key(labels):
    # first position where i_j < i'_j makes the first set LARGER; longer prefix is larger
    return tuple(-x for x in sorted(labels))


def _forest_key(spec, t):
    labels = T.leaves(t)
    if t.is_leaf:
        return (_set_key(labels), (0,), ())
    return (_set_key(labels), (1, spec.symbol(t.gen)),
            tuple(_forest_key(spec, c) for c in t.children))


def compare(a, b, spec: OrderSpec = PATH_LEX) -> Cmp:
    ka, kb = spec.key(a), spec.key(b)
    return Cmp((ka > kb) - (ka < kb))


@dataclass
class AdmissibilityResult:
    ok: bool
    checked: int
    counterexample: tuple | None = None

    def __bool__(self):
        return self.ok


def _compositions(a, b, mode):
    from .compose import elementary_composition, enumerate_shuffles

    for i in range(1, a.arity + 1):
        if mode == "nonsymmetric":
            sigmas = [tuple(range(1, a.arity + b.arity))]
        else:
            sigmas = enumerate_shuffles(i, b.arity, a.arity)
        for s in sigmas:
            yield (i, s), elementary_composition(a, i, s, b)


def check_admissibility(spec: OrderSpec, generators, sample_budget: int = 1000,
                        max_arity: int = 4, max_degree: int = 3,
                        mode: str = "shuffle", exhaustive: bool = False,
                        seed: int = 0) -> AdmissibilityResult:
    """Search for a violation of strict monotonicity under elementary compositions.

    Strict monotonicity in each argument (a < a' => a o b < a' o b, and the
    same on the right) implies the weak two-sided condition for a total order.
    Compositions are restricted to results of arity <= ``max_arity``; factor
    monomials have at most ``max_degree`` vertices.  ``exhaustive`` checks every
    qualifying pair instead of sampling ``sample_budget`` of them.
    """
    from .groebner import enumerate_monomials

    if sample_budget <= 0:
        raise ValueError("sample_budget must be positive")
    pool: dict[int, list] = {}
    for n in range(1, max_arity + 1):
        ms = []
        for d in range(0, max_degree + 1):
            ms.extend(enumerate_monomials(generators, n, mode=mode, degree=d))
        pool[n] = sorted(ms, key=spec.key)

    triples = []
    for n, m in itertools.product(pool, repeat=2):
        if n + m - 1 > max_arity:
            continue
        A, B = pool[n], pool[m]
        for x, y in itertools.combinations(range(len(A)), 2):
            for b in B:
                triples.append(("left", A[x], A[y], b))
        for x, y in itertools.combinations(range(len(B)), 2):
            for a in A:
                triples.append(("right", B[x], B[y], a))
    if not exhaustive and len(triples) > sample_budget:
        triples = random.Random(seed).sample(triples, sample_budget)

    checked = 0
    for side, lo, hi, other in triples:
        if side == "left":
            pairs = zip(_compositions(lo, other, mode), _compositions(hi, other, mode))
        else:
            pairs = zip(_compositions(other, lo, mode), _compositions(other, hi, mode))
        for (how, small), (_, big) in pairs:
            checked += 1
            if not spec.key(small) < spec.key(big):
                return AdmissibilityResult(False, checked, (side, lo, hi, other, how))
    return AdmissibilityResult(True, checked)
