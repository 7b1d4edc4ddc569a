import pytest

from conftest import ALPHA, M, poly, tree
from operadgb import builtin, shuffle_expand
from operadgb import tree as T
from operadgb.errors import MissingParams, UnknownName, UnsupportedArity
from operadgb.presentations import (
    BUILTIN_NAMES,
    GD_RELATIONS,
    GD_SYM,
    HOM_ASS,
    SymGenerator,
    expand_relation,
    gd_relations,
    shuffle_generators,
)


def _terms(p):
    return {T.render(t) for t in p.terms}


def test_hom_ass_ii0():
    p = builtin("hom_ass_II0")
    assert p.mode == "nonsymmetric" and set(p.generators) == {ALPHA, M}
    (r,) = p.relations
    assert r == poly("m(alpha(m(1,2)),3) - m(1,alpha(m(2,3)))", mode="nonsymmetric")


def test_ass():
    (r,) = builtin("ass").relations
    assert _terms(r) == {"m(m(1,2),3)", "m(1,m(2,3))"}
    assert sorted(r.terms.values()) == [-1, 1]


def test_all_hom_deformations_are_single_relations():
    for key, text in HOM_ASS.items():
        p = builtin(f"hom_ass_{key}")
        assert len(p.relations) == 1 and len(p.relations[0]) == 2
        assert p.relations[0] == poly(text, mode="nonsymmetric")


def test_builtins_validate():
    for name in BUILTIN_NAMES:
        kw = dict(k=1, N=2, J=2) if name == "clie" else {}
        p = builtin(name, **kw)
        for r in p.relations:
            assert len({t.arity for t in r.terms}) == 1
            assert all(T.is_standard(t) for t in r.terms)
            if p.mode == "nonsymmetric":
                assert all(T.is_nonsymmetric(t) for t in r.terms)


def test_builtin_errors():
    with pytest.raises(UnknownName):
        builtin("nope")
    with pytest.raises(UnknownName):
        builtin("hom_ass_IV")
    with pytest.raises(MissingParams):
        builtin("clie", k=1)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_clie_relation_shapes(k):
    p = builtin("clie", k=k, N=2, J=2)
    assert p.family_params == (k, 2, 2)
    assert len(p.relations) == 9
    for idx, r in enumerate(p.relations):
        m = idx % 3
        assert len(r) == 1 + (k + 1) + (m + 1)
    assert not p.warnings


def test_clie_truncation_is_reported():
    p = builtin("clie", k=1, N=2, J=0)
    assert len(p.warnings) == 9
    assert all(w.startswith("TRUNCATED:") and "j=1 > J=0" in w for w in p.warnings)
    assert all(len(r) == 1 + 1 + (i % 3 + 1) for i, r in enumerate(p.relations))


def test_shuffle_generators():
    names = [g.name for g in shuffle_generators(GD_SYM)]
    assert names == ["o", "o_op", "br"]
    assert [g.name for g in shuffle_generators([SymGenerator("a", 1)])] == ["a"]


def test_symmetry_support_is_binary_only():
    with pytest.raises(UnsupportedArity):
        SymGenerator("t", 3, "antisymmetric")
    with pytest.raises(UnsupportedArity):
        SymGenerator("t", 3)
    with pytest.raises(UnsupportedArity):
        SymGenerator("u", 1, "symmetric")


def test_antisymmetry_tautology_is_dropped():
    br = SymGenerator("br", 2, "antisymmetric")
    gens = shuffle_generators([br])
    rel = [(1, ("br", "a", "b")), (1, ("br", "b", "a"))]
    assert not expand_relation(rel, {"a": 2, "b": 1}, [br], gens)
    assert shuffle_expand([rel], [br]).relations == ()


def test_symmetric_generator_has_no_sign():
    s = SymGenerator("s", 2, "symmetric")
    rel = [(1, ("s", "a", "b")), (-1, ("s", "b", "a"))]
    assert shuffle_expand([rel], [s]).relations == ()


def test_jacobi_expands_to_one_three_term_relation():
    p = builtin("lie")
    (r,) = p.relations
    assert _terms(r) == {"br(br(1,2),3)", "br(br(1,3),2)", "br(1,br(2,3))"}
    # signs come from antisymmetry: [[c,a],b] = -[[a,c],b] and [[b,c],a] = -[a,[b,c]]
    c = {T.render(t): v for t, v in r.terms.items()}
    assert c["br(br(1,2),3)"] == 1 and c["br(br(1,3),2)"] == -1 and c["br(1,br(2,3))"] == -1


def test_gd_compatibility_has_five_terms():
    gens = shuffle_generators(GD_SYM)
    r = expand_relation(GD_RELATIONS["compatibility"], {"a": 1, "b": 2, "c": 3}, GD_SYM, gens)
    assert len(r) == 5
    used = {g.name for t in r.terms for g in T.generators_of(t)}
    assert used == {"br", "o", "o_op"}


def test_gd_conventions_are_mirror_images():
    right, left = builtin("gd"), builtin("gd", convention="left")
    assert len(right.relations) == len(left.relations)
    assert gd_relations("left", ["right_novikov"]) == [[(1, ("o", "c", ("o", "b", "a"))),
                                                        (-1, ("o", "b", ("o", "c", "a")))]]
    with pytest.raises(ValueError):
        gd_relations("up")


def test_novikov_arity3_dimension():
    from operadgb.groebner import buchberger, count_normal_monomials

    nov = builtin("novikov")
    r = buchberger(nov, max_degree=3)
    assert count_normal_monomials(r, 3) == 6 == _oracle_dim(nov, 3)
    for conv in ("right", "left"):
        gd = builtin("gd", convention=conv)
        r = buchberger(gd, max_degree=3)
        assert [count_normal_monomials(r, n) for n in (1, 2, 3)] == [1, 3, 17]
        assert _oracle_dim(gd, 3) == 17


def _oracle_dim(p, n):
    from oracles import poly_to_dict, quotient_dim

    sig = {g.name: g.arity for g in p.generators}
    return quotient_dim(sig, [poly_to_dict(r) for r in p.relations], n, n - 1, p.mode)


def test_lie_from_expander_matches_factorials():
    from operadgb.groebner import buchberger, count_normal_monomials

    r = buchberger(builtin("lie"))
    assert [count_normal_monomials(r, n) for n in range(2, 6)] == [1, 2, 6, 24]


def test_leading_terms_use_the_presentation_order():
    p = builtin("hom_ass_II0")
    assert p.leading_terms() == [tree("m(alpha(m(1,2)),3)")]
