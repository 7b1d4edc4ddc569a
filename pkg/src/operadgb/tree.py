"""Generators and tree-monomials of free shuffle / nonsymmetric operads.

A tree-monomial is a planar rooted tree whose internal vertices carry
generators and whose leaves carry distinct positive integer labels.  The
planar order is canonical: at every vertex the children are sorted by the
smallest leaf reachable through them.  Nonsymmetric monomials are the special
case where leaves read left to right are 1, 2, ..., n.

Trees are immutable and hashable; equality is structural.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .errors import (
    ArityMismatch,
    DuplicateLabel,
    InvalidMonomial,
    NonInjectiveMap,
    NotShuffleOrdered,
)

Path = tuple  # tuple[int, ...], child indices from the root


@dataclass(frozen=True)
class Generator:
    """An operation symbol.

    ``symbol_key`` feeds the ordering; for the conformal Lie family it is the
    index pair ``(n, j)``.
    """

    name: str
    arity: int
    symbol_key: tuple = ()
    family: bool = False

    def __post_init__(self):
        if self.arity < 1:
            raise ArityMismatch(f"generator {self.name!r} must have arity >= 1")

    def __repr__(self):
        return f"{self.name}/{self.arity}"


class Leaf:
    __slots__ = ("label", "_hash")

    is_leaf = True
    degree = 0
    arity = 1

    def __init__(self, label: int):
        if label < 1:
            raise InvalidMonomial(f"leaf labels are positive, got {label}")
        self.label = label
        self._hash = hash(("L", label))

    @property
    def min_leaf(self) -> int:
        return self.label

    @property
    def key(self):
        return self.label

    def __eq__(self, other):
        return isinstance(other, Leaf) and other.label == self.label

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return str(self.label)


class Node:
    __slots__ = ("gen", "children", "arity", "degree", "min_leaf", "key", "_hash")

    is_leaf = False

    def __init__(self, gen: Generator, children: Sequence):
        children = tuple(children)
        if len(children) != gen.arity:
            raise ArityMismatch(
                f"{gen.name} takes {gen.arity} inputs, got {len(children)}")
        self.gen = gen
        self.children = children
        self.arity = sum(c.arity for c in children)
        self.degree = 1 + sum(c.degree for c in children)
        self.min_leaf = min(c.min_leaf for c in children)
        self.key = (gen.name,) + tuple(c.key for c in children)
        self._hash = hash(self.key)

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, Node) and self._hash == other._hash
                and self.key == other.key)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return render(self)


Tree = Leaf | Node  # type: ignore[operator]


def corolla(g: Generator, labels: Sequence[int]) -> Node:
    labels = list(labels)
    if len(labels) != g.arity:
        raise ArityMismatch(f"{g.name} takes {g.arity} inputs, got {len(labels)}")
    if len(set(labels)) != len(labels):
        raise DuplicateLabel(f"repeated label in {labels}")
    if any(a >= b for a, b in zip(labels, labels[1:])):
        raise NotShuffleOrdered(f"corolla labels must increase: {labels}")
    return Node(g, [Leaf(x) for x in labels])


def leaves(t) -> list[int]:
    """Leaf labels in planar (left to right) order."""
    if t.is_leaf:
        return [t.label]
    out = []
    stack = [t]
    while stack:
        s = stack.pop()
        if s.is_leaf:
            out.append(s.label)
        else:
            stack.extend(reversed(s.children))
    return out


def validate_shuffle(t) -> bool:
    labels = leaves(t)
    if len(set(labels)) != len(labels):
        return False
    return _ordered(t)


def _ordered(t) -> bool:
    if t.is_leaf:
        return True
    mins = [c.min_leaf for c in t.children]
    if any(a >= b for a, b in zip(mins, mins[1:])):
        return False
    return all(_ordered(c) for c in t.children)


def is_nonsymmetric(t) -> bool:
    return leaves(t) == list(range(1, t.arity + 1))


def is_standard(t) -> bool:
    """Labels are exactly 1..arity and the tree is shuffle-valid."""
    return validate_shuffle(t) and sorted(leaves(t)) == list(range(1, t.arity + 1))


def check_monomial(t):
    if not is_standard(t):
        raise InvalidMonomial(f"{render(t)} is not a shuffle monomial on 1..{t.arity}")
    return t


def sort_children(t):
    """Restore the min-leaf order at every vertex."""
    if t.is_leaf:
        return t
    kids = sorted((sort_children(c) for c in t.children), key=lambda c: c.min_leaf)
    return Node(t.gen, kids)


def relabel(t, f: Mapping[int, int]):
    labels = leaves(t)
    image = [f[x] for x in labels]
    if len(set(image)) != len(image):
        raise NonInjectiveMap(f"map {dict(f)} is not injective on {sorted(labels)}")
    return sort_children(_apply(t, f))


def _apply(t, f):
    if t.is_leaf:
        return Leaf(f[t.label])
    return Node(t.gen, [_apply(c, f) for c in t.children])


def standardize(t):
    """Relabel leaves to 1..n keeping their relative order."""
    ranks = {x: i + 1 for i, x in enumerate(sorted(leaves(t)))}
    return _apply(t, ranks)


def path_sequence(t) -> tuple[tuple[tuple, ...], tuple[int, ...]]:
    """Root-to-leaf generator words indexed by leaf label, plus the planar permutation."""
    check_monomial(t)
    words: dict[int, tuple] = {}

    def walk(s, prefix):
        if s.is_leaf:
            words[s.label] = prefix
            return
        here = prefix + (s.gen,)
        for c in s.children:
            walk(c, here)

    walk(t, ())
    return tuple(words[i] for i in range(1, t.arity + 1)), tuple(leaves(t))


def node_paths(t) -> list[Path]:
    """Paths of internal vertices in preorder (i.e. lexicographic path order)."""
    out = []

    def walk(s, p):
        if s.is_leaf:
            return
        out.append(p)
        for i, c in enumerate(s.children):
            walk(c, p + (i,))

    walk(t, ())
    return out


def subtree(t, path: Path):
    for i in path:
        t = t.children[i]
    return t


def replace_at(t, path: Path, new):
    if not path:
        return new
    i = path[0]
    kids = list(t.children)
    kids[i] = replace_at(kids[i], path[1:], new)
    return Node(t.gen, kids)


def generators_of(t) -> Iterator[Generator]:
    if t.is_leaf:
        return
    yield t.gen
    for c in t.children:
        yield from generators_of(c)


def render(t) -> str:
    if t.is_leaf:
        return str(t.label)
    return f"{t.gen.name}({','.join(render(c) for c in t.children)})"


def to_sexpr(t) -> str:
    if t.is_leaf:
        return str(t.label)
    return "(" + " ".join([t.gen.name] + [to_sexpr(c) for c in t.children]) + ")"
