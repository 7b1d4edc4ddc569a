import pytest
from hypothesis import given, settings, strategies as st

from conftest import ALPHA, M, tree
from oracles import monomials, to_tuple
from operadgb import tree as T
from operadgb.errors import (
    ArityMismatch,
    DuplicateLabel,
    InvalidMonomial,
    NonInjectiveMap,
    NotShuffleOrdered,
)
from operadgb.groebner import enumerate_monomials


def test_corolla():
    t = T.corolla(M, [1, 2])
    assert T.render(t) == "m(1,2)"
    assert (t.degree, t.arity) == (1, 2)
    u = T.corolla(ALPHA, [1])
    assert T.render(u) == "alpha(1)" and (u.degree, u.arity) == (1, 1)


@pytest.mark.parametrize("labels, err", [
    ([2, 1], NotShuffleOrdered),
    ([1, 1], DuplicateLabel),
    ([1, 2, 3], ArityMismatch),
])
def test_corolla_errors(labels, err):
    with pytest.raises(err):
        T.corolla(M, labels)


def test_zero_arity_generator_rejected():
    with pytest.raises(ArityMismatch):
        T.Generator("z", 0)


def test_validate_shuffle():
    assert T.validate_shuffle(tree("m(1,m(2,3))"))
    bad = T.Node(M, [T.Node(M, [T.Leaf(2), T.Leaf(3)]), T.Leaf(1)])
    assert not T.validate_shuffle(bad)
    # left-hand side of II0: alpha above the left child of the root
    assert T.validate_shuffle(tree("m(alpha(m(1,2)),3)"))
    dup = T.Node(M, [T.Leaf(1), T.Leaf(1)])
    assert not T.validate_shuffle(dup)


def test_relabel():
    assert T.render(T.relabel(tree("m(1,2)"), {1: 3, 2: 5})) == "m(3,5)"
    assert T.render(T.relabel(tree("m(1,2)"), {1: 5, 2: 3})) == "m(3,5)"
    assert T.render(T.relabel(tree("m(1,m(2,3))"), {1: 2, 2: 1, 3: 3})) == "m(m(1,3),2)"
    with pytest.raises(NonInjectiveMap):
        T.relabel(tree("m(1,2)"), {1: 4, 2: 4})


def test_path_sequence():
    words, perm = T.path_sequence(tree("m(1,2)"))
    assert words == ((M,), (M,)) and perm == (1, 2)
    words, perm = T.path_sequence(tree("m(m(1,2),3)"))
    assert words == ((M, M), (M, M), (M,)) and perm == (1, 2, 3)
    words, perm = T.path_sequence(tree("m(m(1,3),2)"))
    assert words == ((M, M), (M,), (M, M)) and perm == (1, 3, 2)
    with pytest.raises(InvalidMonomial):
        T.path_sequence(T.Node(M, [T.Leaf(1), T.Leaf(3)]))


def test_rendering_forms():
    t = tree("m(alpha(m(1,2)),3)")
    assert T.render(t) == "m(alpha(m(1,2)),3)"
    assert T.to_sexpr(t) == "(m (alpha (m 1 2)) 3)"


def test_enumeration_matches_brute_force():
    sig = {"m": 2, "alpha": 1}
    for mode in ("shuffle", "nonsymmetric"):
        for n in range(1, 5):
            for d in range(0, 5):
                ours = sorted(map(to_tuple, enumerate_monomials([M, ALPHA], n, mode, d)), key=repr)
                ref = sorted(monomials(sig, n, d, mode), key=repr)
                assert ours == ref, (mode, n, d)


C = T.Generator("c", 2)
ALL_SMALL = [t for n in range(1, 6) for t in enumerate_monomials([M, C], n)]
ALL_SMALL += [t for d in range(2, 6) for t in enumerate_monomials([M, ALPHA], 3, degree=d)]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(ALL_SMALL))
def test_relabel_identity_is_idempotent(t):
    assert T.relabel(t, {x: x for x in T.leaves(t)}) == t


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(ALL_SMALL), st.sampled_from(ALL_SMALL))
def test_path_sequence_injective(a, b):
    if a != b:
        assert T.path_sequence(a) != T.path_sequence(b)
