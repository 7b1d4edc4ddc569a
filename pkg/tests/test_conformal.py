import random
from fractions import Fraction
from math import factorial

import pytest

from oracles import c2_product
from operadgb.conformal import (
    ConformalModule,
    Element,
    FiniteAlgebra,
    PolyD,
    build_Mn,
    check_antisymmetry,
    check_gd,
    check_hom_gd,
    check_jacobi,
    check_twist_identities,
    commutator_bracket,
    distinctness,
    is_gd_morphism,
    lambda_bracket_from_gd,
    nth_product,
    parse_algebra,
    parse_module,
    render_algebra,
    render_module,
    yau_twist,
)
from operadgb.errors import (
    DimensionMismatch,
    MissingAlpha,
    NegativeIndex,
    NotAMorphism,
    NotHomNovikov,
    PresentationSyntaxError,
)

A, B, C = 0, 1, 2


def d(p, c=1):
    return PolyD.d_power(p, c)


def test_m0_and_m1_products():
    m0 = build_Mn(0)
    assert m0.products == {(A, B, 0): Element.basis(C), (B, A, 0): Element.basis(C, PolyD.const(-1))}
    m1 = build_Mn(1)
    assert nth_product(m1, "a", "b", 1) == Element.basis(C)
    assert nth_product(m1, "b", "a", 1) == Element.basis(C)
    assert nth_product(m1, "b", "a", 0) == Element.basis(C, d(1))
    assert nth_product(m1, "a", "b", 0) == 0


def test_mn_fill_uses_divided_powers():
    m3 = build_Mn(3)
    assert m3.basis_product(B, A, 0) == Element.basis(C, PolyD.divided_power(3))
    assert m3.basis_product(B, A, 1) == Element.basis(C, PolyD.divided_power(2))
    assert m3.basis_product(B, A, 3) == Element.basis(C)
    assert m3.basis_product(A, B, 2) == 0


@pytest.mark.parametrize("n", range(6))
def test_mn_is_lie_conformal(n):
    M = build_Mn(n)
    assert check_antisymmetry(M)
    assert check_jacobi(M)
    assert distinctness(M, "a", "b", n, 10)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_zero_fill_breaks_antisymmetry(n):
    r = check_antisymmetry(build_Mn(n, fill="zero"))
    assert not r.ok
    assert r.violation[:3] == ("a", "b", 0)
    # -1/n! from b_(n)a plus 1/(n-1)! from ∂(b_(n-1)a)
    assert r.violation[3] == f"{Fraction(n - 1, factorial(n))}*d^{n}*c"


def test_zero_fill_agrees_below_two():
    for n in (0, 1):
        assert build_Mn(n, fill="zero") == build_Mn(n)


def test_sign_flip_breaks_m0():
    M = ConformalModule(["a", "b", "c"], 0, {(A, B, 0): Element.basis(C), (B, A, 0): Element.basis(C)})
    r = check_antisymmetry(M)
    assert not r.ok and r.violation[:3] == ("a", "b", 0)


def test_build_mn_rejects_bad_input():
    with pytest.raises(NegativeIndex):
        build_Mn(-1)
    with pytest.raises(ValueError):
        build_Mn(1, fill="other")


def test_distinctness():
    M = build_Mn(2)
    # ∂(b_(1)a) = ∂(-∂c) = -∂²c and b_(0)a = -1/2 ∂²c: different
    assert distinctness(M, "b", "a", 0, 10)
    # a_(0)b and ∂(a_(m)b) are both zero for m != 2
    assert not distinctness(M, "a", "b", 0, 10)
    assert not distinctness(M, "c", "a", 1, 3)
    with pytest.raises(ValueError):
        distinctness(M, "a", "b", 0, -1)


def test_negative_index():
    with pytest.raises(NegativeIndex):
        nth_product(build_Mn(1), "a", "b", -1)
    with pytest.raises(NegativeIndex):
        ConformalModule(["a"], 1, {(0, 0, -1): Element.basis(0)})


def test_sesquilinearity_examples():
    M = build_Mn(1)
    da = Element.basis(A, d(1))
    assert nth_product(M, da, "b", 1) == -nth_product(M, "a", "b", 0)
    assert nth_product(M, da, "b", 2) == nth_product(M, "a", "b", 1).scale(-2)
    db = Element.basis(B, d(1))
    # a_(1)(∂b) = ∂(a_(1)b) + a_(0)b
    assert nth_product(M, "a", db, 1) == Element.basis(C, d(1))


def _oracle_products(M):
    return {key: {(s, e): c for s, p in v.coeffs.items() for e, c in enumerate(p.coeffs) if c}
            for key, v in M.products.items()}


def _nonideal_modules():
    out = [build_Mn(n) for n in range(4)]
    nil = FiniteAlgebra.from_entries(2, circ={(0, 0): {1: 1}}, bracket={(0, 1): {1: 3}, (1, 0): {1: -3}})
    out.append(lambda_bracket_from_gd(nil))
    out.append(lambda_bracket_from_gd(nil, "left"))
    return out


def test_extension_matches_recursive_oracle():
    rng = random.Random(7)
    for M in _nonideal_modules():
        table = _oracle_products(M)
        for _ in range(150):
            i, j = rng.randrange(M.rank), rng.randrange(M.rank)
            p, q, n = rng.randrange(4), rng.randrange(4), rng.randrange(8)
            got = nth_product(M, Element.basis(i, d(p)), Element.basis(j, d(q)), n)
            flat = {(s, e): c for s, pol in got.coeffs.items() for e, c in enumerate(pol.coeffs) if c}
            assert flat == c2_product(table, p, i, q, j, n), (M.name, i, p, j, q, n)


IDEM = FiniteAlgebra.from_entries(1, circ={(0, 0): {0: 1}}, names=["e"])
ZERO = FiniteAlgebra.from_entries(2)
NIL = FiniteAlgebra.from_entries(2, circ={(0, 0): {1: 1}}, names=["e1", "e2"])


def test_idempotent_module():
    M = lambda_bracket_from_gd(IDEM)
    assert nth_product(M, "e", "e", 0) == Element.basis(0, d(1))
    assert nth_product(M, "e", "e", 1) == Element.basis(0, PolyD.const(2))
    assert nth_product(M, "e", "e", 2) == 0


def test_lambda_bracket_examples():
    M = lambda_bracket_from_gd(ZERO)
    assert M.products == {}
    M = lambda_bracket_from_gd(NIL)
    assert nth_product(M, "e1", "e1", 0) == Element.basis(1, d(1))
    assert nth_product(M, "e1", "e1", 1) == Element.basis(1, PolyD.const(2))
    assert nth_product(M, "e1", "e2", 0) == 0


def test_conventions_differ_on_the_d_term():
    # e1∘e2 = e2 only: right convention puts ∂(e2∘e1) = 0 into e1_(0)e2
    A_ = FiniteAlgebra.from_entries(2, circ={(0, 1): {1: 1}})
    right, left = lambda_bracket_from_gd(A_), lambda_bracket_from_gd(A_, "left")
    assert nth_product(right, 0, 1, 0) == 0
    assert nth_product(left, 0, 1, 0) == Element.basis(1, d(1))
    assert nth_product(right, 0, 1, 1) == nth_product(left, 0, 1, 1)


@pytest.mark.parametrize("alg", [ZERO, IDEM, NIL])
@pytest.mark.parametrize("conv", ["right", "left"])
def test_gd_algebras_give_conformal_modules(alg, conv):
    assert all(check_gd(alg, conv))
    M = lambda_bracket_from_gd(alg, conv)
    assert check_antisymmetry(M) and check_jacobi(M)


def test_check_gd_examples():
    bad = FiniteAlgebra.from_entries(1, bracket={(0, 0): {0: 1}})
    v = check_gd(bad)
    assert v[2] is False
    assert v[0] and v[1]
    # x∘y = y is left-symmetric but not right-commutative; its opposite is Novikov
    proj = FiniteAlgebra.from_entries(2, circ={(i, j): {j: 1} for i in range(2) for j in range(2)})
    assert check_gd(proj)[:2] == [True, False]
    assert check_gd(proj, "left") == [True] * 5
    with pytest.raises(ValueError):
        check_gd(ZERO, "up")


def test_dimension_checks():
    with pytest.raises(DimensionMismatch):
        FiniteAlgebra(2, circ=[[[0]]])
    with pytest.raises(DimensionMismatch):
        ZERO.with_alpha([[1]])


def _perturb(alg, rng):
    n = alg.dim
    circ = [[list(v) for v in r] for r in alg.circ]
    br = [[list(v) for v in r] for r in alg.bracket]
    t = rng.choice([circ, br])
    t[rng.randrange(n)][rng.randrange(n)][rng.randrange(n)] += rng.choice([-2, -1, 1, 2, Fraction(1, 2)])
    return FiniteAlgebra(n, circ, br, None, alg.names)


@pytest.mark.parametrize("conv", ["right", "left"])
def test_breaking_gd_breaks_the_conformal_axioms(conv):
    rng = random.Random(1 if conv == "right" else 2)
    broken = agree = 0
    for _ in range(120):
        P = _perturb(rng.choice([ZERO, IDEM, NIL]), rng)
        gd = all(check_gd(P, conv))
        M = lambda_bracket_from_gd(P, conv)
        conf = check_antisymmetry(M).ok and check_jacobi(M).ok
        broken += not gd
        agree += gd == conf
    assert broken >= 10 and agree == 120


def test_check_hom_gd():
    assert check_hom_gd(NIL.with_alpha([[1, 0], [0, 1]])) == check_gd(NIL)
    with pytest.raises(MissingAlpha):
        check_hom_gd(NIL)
    with pytest.raises(MissingAlpha):
        NIL.a(NIL.basis(0))


def _novikov(dim=4):
    # e_i∘e_j = j e_(i+j), truncated
    circ = {(i - 1, j - 1): {i + j - 1: j} for i in range(1, dim + 1) for j in range(1, dim + 1)
            if i + j <= dim}
    return FiniteAlgebra.from_entries(dim, circ=circ)


def _scaling(dim, t=2):
    return [[Fraction(t) ** (i + 1) if s == i else 0 for s in range(dim)] for i in range(dim)]


def test_yau_twist():
    nov = _novikov()
    assert all(check_gd(nov))
    al = _scaling(4)
    assert is_gd_morphism(nov, al)
    tw = yau_twist(nov, al)
    assert all(check_hom_gd(tw))
    assert tw.o(tw.basis(0), tw.basis(0)) == (0, 4, 0, 0)
    ident = yau_twist(NIL, [[1, 0], [0, 1]])
    assert ident.circ == NIL.circ
    zero = yau_twist(IDEM, [[0]])
    assert zero.circ == (((0,),),) and all(check_hom_gd(zero))


def test_morphism_scalars_on_idempotent():
    assert [is_gd_morphism(IDEM, [[s]]) for s in (0, 1, 2)] == [True, True, False]


def test_non_morphism_twist_can_fail():
    D = FiniteAlgebra.from_entries(2, circ={(0, 0): {0: 1}, (1, 1): {1: 1}})
    al = [[1, 0], [1, 0]]
    assert all(check_gd(D)) and not is_gd_morphism(D, al)
    assert check_hom_gd(yau_twist(D, al)) == [False, False, True, True, True]
    with pytest.raises(NotAMorphism):
        check_twist_identities(D, al)
    swap = [[0, 1], [1, 0]]
    assert is_gd_morphism(D, swap) and all(check_twist_identities(D, swap))


def test_commutator_bracket():
    tw = yau_twist(_novikov(), _scaling(4))
    H = commutator_bracket(tw)
    e0, e1 = H.basis(0), H.basis(1)
    assert H.br(e0, e1) == tuple(x - y for x, y in zip(H.o(e0, e1), H.o(e1, e0)))
    assert check_hom_gd(H)[2:] == [True, True, True]
    with pytest.raises(MissingAlpha):
        commutator_bracket(_novikov())
    with pytest.raises(NotHomNovikov):
        commutator_bracket(FiniteAlgebra.from_entries(
            2, circ={(i, j): {j: 1} for i in range(2) for j in range(2)}, alpha={0: {0: 1}, 1: {1: 1}}))


def test_twist_identities():
    nov = _novikov()
    assert check_twist_identities(nov, _scaling(4)) == [True] * 4
    lie = FiniteAlgebra.from_entries(3, bracket={(0, 1): {2: 1}, (1, 0): {2: -1}})
    assert all(check_gd(lie))
    al = [[2, 0, 0], [0, 3, 0], [0, 0, 6]]
    assert check_twist_identities(lie, al) == [True] * 4


def test_module_round_trip():
    for M in _nonideal_modules():
        text = render_module(M)
        assert parse_module(text) == M
        assert render_module(parse_module(text)) == text


def test_module_text():
    M = parse_module("conformal M\nbasis a b c\nk 1\nprod a b 1 = c\nprod b a 1 = c\nprod b a 0 = d*c\n")
    assert M == ConformalModule(["a", "b", "c"], 1, build_Mn(1).products, name="M")
    with pytest.raises(PresentationSyntaxError) as info:
        parse_module("basis a\nk 0\nprod a a 0 = 2*q\n", source="m.cf")
    assert info.value.line == 3
    with pytest.raises(PresentationSyntaxError):
        parse_module("basis a\n")


def test_algebra_round_trip():
    A_ = FiniteAlgebra.from_entries(2, circ={(0, 0): {1: Fraction(1, 2)}}, bracket={(0, 1): {0: 1, 1: -1}},
                                    alpha={0: {0: 2}, 1: {}}, names=["x", "y"])
    text = render_algebra(A_, "t")
    assert parse_algebra(text) == A_
    assert "alpha y = 0" in text
    with pytest.raises(PresentationSyntaxError):
        parse_algebra("basis x\ncirc x x = d*x\n")
