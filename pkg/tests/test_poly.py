import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gradedproj.poly import (
    GREVLEX,
    LEX,
    IdealBasis,
    ModuleBasis,
    Polynomial,
    PolynomialSyntaxError,
    VariableMismatch,
    groebner_basis,
    module_normal_form,
    module_saturate,
    normal_form,
    parse_polynomial,
    saturate,
    solve_rational,
)

V = ("x", "y", "z")


def P(text, vars=V):
    return parse_polynomial(text, vars)


def to_sympy(p: Polynomial):
    return sympy.sympify(str(p).replace("^", "**"))


polys = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)).filter(lambda m: sum(m) <= 4),
    st.fractions(min_value=-5, max_value=5, max_denominator=3),
    max_size=4,
).map(lambda t: Polynomial(V, t))


@settings(max_examples=50, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p + q == q + p
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert p - p == Polynomial.zero(V)
    assert p * 1 == p


@settings(max_examples=50, deadline=None)
@given(polys)
def test_print_parse_round_trip(p):
    assert P(str(p)) == p


def test_arith_examples():
    x, y = P("x"), P("y")
    zero = Polynomial.zero(V)
    assert x + zero == x
    assert (x + y) * (x - y) == P("x^2 - y^2")
    assert zero * Polynomial.constant(V, 1) == zero
    assert (x + 1) ** 3 == P("x^3 + 3*x^2 + 3*x + 1")
    assert P("x/2") * 2 == x


def test_str_format():
    assert str(P("1 + x^2 - 3/2*x*y")) == "x^2 - 3/2*x*y + 1"
    assert str(Polynomial.zero(V)) == "0"
    assert str(P("-x")) == "-x"


def test_parse_errors():
    with pytest.raises(PolynomialSyntaxError) as e:
        P("x + * y")
    assert e.value.pos == 4
    with pytest.raises(PolynomialSyntaxError):
        P("w")
    with pytest.raises(PolynomialSyntaxError):
        P("x / y")
    with pytest.raises(PolynomialSyntaxError):
        P("x / 0")
    with pytest.raises(PolynomialSyntaxError):
        P("(x + y")


def test_variable_mismatch():
    with pytest.raises(VariableMismatch):
        P("x") + parse_polynomial("x", ("x",))


def test_groebner_examples():
    assert groebner_basis([P("x")]) == [P("x")]
    assert groebner_basis([P("1")]) == [P("1")]
    assert groebner_basis([P("x^2"), P("x*y + 1")]) == groebner_basis([P("x^2"), P("x*y+1")])
    I = IdealBasis([P("x - y"), P("y^2")], V)
    assert I.normal_form(P("x^2")) == 0
    assert normal_form(P("x^2"), I) == 0
    assert I.normal_form(P("x")) == P("y")


def test_groebner_unit_ideal():
    I = IdealBasis([P("x*y - 1"), P("x")], V)
    assert I.is_unit()
    assert I.groebner() == [P("1")]


def test_normal_form_basic():
    g = P("x^2 + y*z")
    assert IdealBasis([g], V).normal_form(g) == 0
    assert IdealBasis([], V).normal_form(g) == g


def _sympy_groebner(F, order):
    G = sympy.groebner([to_sympy(f) for f in F], *sympy.symbols("x y z"), order=order, domain="QQ")
    return sorted(str(sympy.expand(g)) for g in G.exprs)


def test_groebner_against_sympy():
    rng = random.Random(3)
    for _ in range(20):
        F = []
        for _ in range(rng.randint(1, 3)):
            terms = {}
            for _ in range(rng.randint(1, 3)):
                m = tuple(rng.randint(0, 2) for _ in V)
                terms[m] = rng.randint(-3, 3)
            p = Polynomial(V, terms)
            if p:
                F.append(p)
        if not F:
            continue
        for order, name in ((GREVLEX, "grevlex"), (LEX, "lex")):
            ours = sorted(str(sympy.expand(to_sympy(g))) for g in groebner_basis(F, order))
            assert ours == _sympy_groebner(F, name), (F, name)


def test_reduced_basis_shape():
    G = groebner_basis([P("x^2*y - z"), P("x*y^2 - x"), P("y*z - 1")])
    leads = [g.leading_monomial() for g in G]
    for g in G:
        assert g.leading_coefficient() == 1
    for i, a in enumerate(leads):
        for j, g in enumerate(G):
            if i != j:
                assert not any(all(x <= y for x, y in zip(a, m)) for m in g.terms)


@settings(max_examples=30, deadline=None)
@given(polys)
def test_normal_form_idempotent(p):
    I = IdealBasis([P("x^2 - y*z"), P("x*y - z")], V)
    nf = I.normal_form(p)
    assert I.normal_form(nf) == nf
    assert I.contains(p - nf)


def test_saturation():
    assert saturate(IdealBasis([P("x*y")], V), P("x")).groebner() == [P("y")]
    zero = IdealBasis([], V)
    assert saturate(zero, P("x")) is zero
    I = IdealBasis([P("x^2*y"), P("x*z^3")], V)
    assert saturate(I, P("1")) is I
    assert sorted(map(str, saturate(I, P("x")).groebner())) == ["y", "z^3"]
    with pytest.raises(ValueError):
        saturate(I, Polynomial.zero(V))


def test_saturation_against_sympy_elimination():
    I = [P("x^2*y - x*z"), P("x*y^2")]
    sat = saturate(IdealBasis(I, V), P("x"))
    t = sympy.Symbol("t")
    X, Y, Z = sympy.symbols("x y z")
    G = sympy.groebner([to_sympy(f) for f in I] + [t * X - 1], t, X, Y, Z, order="lex")
    expected = [g for g in G.exprs if not g.has(t)]
    ours = sat.groebner(LEX)
    assert sympy.groebner(expected, X, Y, Z, order="lex").exprs == \
        sympy.groebner([to_sympy(g) for g in ours], X, Y, Z, order="lex").exprs


def test_module_normal_form():
    rel = [(P("x"), P("y")), (P("z"), P("0"))]
    assert module_normal_form((P("x*z"), P("y*z")), rel) == (0, 0)
    v = (P("x + 1"), P("y"))
    assert module_normal_form(v, []) == v
    assert module_normal_form((P("x"), P("y")), rel) == (0, 0)


def test_module_rank_one_matches_ideal():
    rng = random.Random(5)
    gens = [P("x^2 - y"), P("x*y*z - z")]
    I = IdealBasis(gens, V)
    rel = [(g,) for g in gens]
    for _ in range(10):
        p = Polynomial(V, {tuple(rng.randint(0, 3) for _ in V): rng.randint(-4, 4) for _ in range(3)})
        assert module_normal_form((p,), rel)[0] == I.normal_form(p)


def test_module_saturation():
    # (x, y)/(xy * e1, x*e2): saturating at x frees e2 and kills y*e1
    M = ModuleBasis([(P("x*y"), P("0")), (P("0"), P("x"))], 2, V)
    sat = module_saturate(M, P("x"))
    assert sat.contains((P("y"), P("0")))
    assert sat.contains((P("0"), P("1")))
    assert not sat.contains((P("1"), P("0")))


def test_solve_rational():
    assert solve_rational([[1, 1], [1, -1]], [3, 1]) == [2, 1]
    assert solve_rational([[1, 1], [2, 2]], [1, 3]) is None
    sol = solve_rational([[1, 2, 3]], [Fraction(1, 2)])
    assert sol[0] + 2 * sol[1] + 3 * sol[2] == Fraction(1, 2)
