"""Elementary shuffle compositions, divisibility and substitution."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import comb

from . import tree as T
from .errors import ArityMismatch, BadPosition, NotAShuffle


def enumerate_shuffles(i: int, inner_arity: int, outer_arity: int) -> list[tuple[int, ...]]:
    """All shuffles usable in ``a o_{i,sigma} b`` with arity(b)=inner, arity(a)=outer.

    A shuffle is returned as the full permutation (sigma(1), ..., sigma(N)) of
    N = inner + outer - 1; it is the identity on 1..i.  Positions i+1..i+m-1
    belong to the remaining inputs of b, the rest to the inputs of a after i.
    """
    m, n = inner_arity, outer_arity
    if m < 1 or n < 1 or not 1 <= i <= n:
        raise BadPosition(f"no composition at position {i} of arity {n}")
    total = m + n - 1
    tail = list(range(i + 1, total + 1))
    out = []
    for chosen in itertools.combinations(tail, m - 1):
        rest = [x for x in tail if x not in chosen]
        out.append(tuple(range(1, i + 1)) + chosen + tuple(rest))
    assert len(out) == comb(m - 1 + n - i, m - 1)
    return out


def _check_shuffle(i, m, n, sigma):
    total = m + n - 1
    if len(sigma) != total or sorted(sigma) != list(range(1, total + 1)):
        raise NotAShuffle(f"{sigma} is not a permutation of 1..{total}")
    if tuple(sigma[:i]) != tuple(range(1, i + 1)):
        raise NotAShuffle(f"{sigma} must fix 1..{i}")
    b_block = sigma[i:i + m - 1]
    a_block = sigma[i + m - 1:]
    for block in (b_block, a_block):
        if any(x >= y for x, y in zip(block, block[1:])):
            raise NotAShuffle(f"{sigma} is not block-monotone at position {i}")


def elementary_composition(a, i: int, sigma, b):
    """Graft ``b`` into input ``i`` of ``a`` and relabel along the shuffle ``sigma``."""
    n, m = a.arity, b.arity
    if not 1 <= i <= n:
        raise BadPosition(f"position {i} outside 1..{n}")
    sigma = tuple(sigma)
    _check_shuffle(i, m, n, sigma)
    b_map = {1: i}
    for t in range(2, m + 1):
        b_map[t] = sigma[i + t - 2]
    a_map = {}
    for j in range(1, n + 1):
        if j < i:
            a_map[j] = j
        elif j > i:
            a_map[j] = sigma[j + m - 2]
    new_b = T._apply(b, b_map)

    def graft(s):
        if s.is_leaf:
            return new_b if s.label == i else T.Leaf(a_map[s.label])
        return T.Node(s.gen, [graft(c) for c in s.children])

    # block monotonicity keeps every vertex min-leaf ordered; re-sort defensively
    out = graft(a)
    if not T._ordered(out):
        out = T.sort_children(out)
    return out


@dataclass(frozen=True)
class ScriptStep:
    """One elementary composition; ``kind`` is "under" (acc o other) or "over" (other o acc)."""

    kind: str
    other: object
    position: int
    sigma: tuple

    def apply(self, acc):
        if self.kind == "under":
            return elementary_composition(acc, self.position, self.sigma, self.other)
        return elementary_composition(self.other, self.position, self.sigma, acc)


def _sigma_for(outer_actual, inner_actual, slot_value):
    """Shuffle realising the grafting of actual-labelled trees at the leaf ``slot_value``."""
    outer_labels = sorted(T.leaves(outer_actual))
    inner_labels = sorted(T.leaves(inner_actual))
    merged = sorted(set(outer_labels) - {slot_value} | set(inner_labels))
    rank = {x: r + 1 for r, x in enumerate(merged)}
    i = outer_labels.index(slot_value) + 1
    m, n = len(inner_labels), len(outer_labels)
    sigma = list(range(1, i + 1)) + [0] * (m + n - 1 - i)
    for t, v in enumerate(inner_labels[1:], start=2):
        sigma[i + t - 2] = rank[v]
    for j, u in enumerate(outer_labels, start=1):
        if j > i:
            sigma[j + m - 2] = rank[u]
    return i, tuple(sigma)


@dataclass(frozen=True)
class Embedding:
    """An occurrence of ``divisor`` inside ``dividend``.

    ``anchor`` is the dividend path of the divisor root; ``vertex_map`` sends
    divisor vertex paths to dividend vertex paths; ``slots[l-1]`` is the
    dividend path of the subtree hanging below divisor leaf ``l``.
    """

    divisor: object
    dividend: object
    anchor: tuple
    vertex_map: dict = field(compare=False, hash=False)
    slots: tuple = ()

    @cached_property
    def composition_script(self) -> tuple[ScriptStep, ...]:
        w = self.dividend
        steps = []
        hanging = [T.subtree(w, p) for p in self.slots]
        mins = [h.min_leaf for h in hanging]
        acc = T._apply(self.divisor, {l + 1: mins[l] for l in range(len(mins))})
        for l, h in enumerate(hanging):
            if h.is_leaf:
                continue
            i, sigma = _sigma_for(acc, h, mins[l])
            steps.append(ScriptStep("under", T.standardize(h), i, sigma))
            acc = _graft_actual(acc, mins[l], h)
        path = self.anchor
        while path:
            parent_path, c = path[:-1], path[-1]
            parent = T.subtree(w, parent_path)
            kids = list(parent.children)
            kids[c] = T.Leaf(acc.min_leaf)
            ctx = T.Node(parent.gen, kids)
            i, sigma = _sigma_for(ctx, acc, acc.min_leaf)
            steps.append(ScriptStep("over", T.standardize(ctx), i, sigma))
            acc = parent
            path = parent_path
        return tuple(steps)

    def replay(self, z):
        if z.arity != self.divisor.arity:
            raise ArityMismatch(f"substitute arity {z.arity} != divisor arity {self.divisor.arity}")
        acc = z
        for step in self.composition_script:
            acc = step.apply(acc)
        return acc


def _graft_actual(t, label, new):
    if t.is_leaf:
        return new if t.label == label else t
    return T.Node(t.gen, [_graft_actual(c, label, new) for c in t.children])


def embedding_at(v, w, anchor: tuple) -> Embedding | None:
    """The unique embedding of ``v`` with root at ``anchor`` in ``w``, if any."""
    if v.is_leaf:
        return None
    start = T.subtree(w, anchor)
    vmap: dict = {}
    slot_of: dict[int, tuple] = {}

    def match(vs, vp, ws, wp):
        if ws.is_leaf or ws.gen != vs.gen:
            return False
        vmap[vp] = wp
        for k, (vc, wc) in enumerate(zip(vs.children, ws.children)):
            if vc.is_leaf:
                slot_of[vc.label] = (wp + (k,), wc.min_leaf)
            elif not match(vc, vp + (k,), wc, wp + (k,)):
                return False
        return True

    if not match(v, (), start, anchor):
        return None
    # leaf l of v must reach the l-th smallest leaf among the hanging subtrees
    order = sorted(slot_of, key=lambda l: slot_of[l][1])
    if order != list(range(1, len(order) + 1)):
        return None
    slots = tuple(slot_of[l][0] for l in order)
    return Embedding(v, w, anchor, vmap, slots)


def divides(v, w) -> list[Embedding]:
    """All embeddings of ``v`` in ``w``, ordered by anchor path."""
    if v.is_leaf or v.degree > w.degree or v.arity > w.arity:
        return []
    out = []
    for p in T.node_paths(w):
        e = embedding_at(v, w, p)
        if e is not None:
            out.append(e)
    return out


def substitute(e: Embedding, z):
    """Replace the occurrence ``e`` of its divisor by ``z``, i.e. m_{w,v}(z)."""
    if z.arity != e.divisor.arity:
        raise ArityMismatch(f"substitute arity {z.arity} != divisor arity {e.divisor.arity}")
    hanging = [T.subtree(e.dividend, p) for p in e.slots]

    def fill(s):
        if s.is_leaf:
            return hanging[s.label - 1]
        return T.Node(s.gen, [fill(c) for c in s.children])

    return T.replace_at(e.dividend, e.anchor, fill(z))
