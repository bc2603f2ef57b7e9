import pytest

from gradedproj.graded import ZERO_DEGREE, GradedRing, GradingError, graded_hom
from conftest import C2, Z, p1, torsion_line


def test_monomial_degree():
    R = p1()
    assert R.monomial_degree((0, 0)) == Z.zero()
    assert R.monomial_degree((2, 1)) == Z.element([3])
    T = torsion_line()
    d = T.monomial_degree((3,))
    assert d == C2.element([1])
    assert d == C2.element([1]) + C2.element([1]) + C2.element([1])


def test_homogeneous_components():
    R = GradedRing(Z, [("x", [1])])
    parts = R.homogeneous_components(R.poly("x + x^2"))
    assert {d.coords[0]: str(e) for d, e in parts.items()} == {1: "x", 2: "x^2"}
    assert R.homogeneous_components(R.zero()) == {}
    P = p1()
    assert len(P.homogeneous_components(P.poly("x^2 + x*y"))) == 1


def test_is_homogeneous():
    R = p1()
    assert R.is_homogeneous(R.poly("x + y")) == Z.element([1])
    S = GradedRing(Z, [("x", [1]), ("y", [2])])
    assert S.is_homogeneous(S.poly("x + y")) is None
    assert R.is_homogeneous(R.zero()) is ZERO_DEGREE
    with pytest.raises(GradingError):
        R.degree_of(R.zero())


def test_ideal_must_be_homogeneous():
    with pytest.raises(GradingError):
        GradedRing(Z, [("x", [1]), ("y", [1])], ["x^2 + y"])


def test_ring_equality():
    assert p1() == p1()
    assert p1() != GradedRing(Z, [("x", [1]), ("y", [2])])
    with pytest.raises(GradingError):
        GradedRing(Z, [("x", [1]), ("x", [1])])


def test_graded_hom():
    R = p1()
    ident = graded_hom(R, R, ["x", "y"])
    assert ident(R.poly("x*y + y^2")) == R.poly("x*y + y^2")
    Q = GradedRing(Z, [("x", [1]), ("y", [1])], ["y"])
    proj = graded_hom(R, Q, ["x", "y"])
    assert proj.is_surjective_on_variables()
    assert proj(R.poly("x*y")) == 0
    with pytest.raises(GradingError):
        graded_hom(R, R, ["x^2", "y"])
    with pytest.raises(GradingError):
        graded_hom(Q, R, ["x", "y"])  # y does not map into the zero ideal
    swap = graded_hom(R, R, ["y", "x"])
    assert swap.compose(swap)(R.poly("x^2*y")) == R.poly("x^2*y")
    assert not graded_hom(R, R, ["x", "x"]).is_surjective_on_variables()


def test_quotient_reduction():
    Q = GradedRing(Z, [("x", [1]), ("y", [1])], ["x*y"])
    assert Q.is_zero(Q.poly("x^2*y"))
    assert Q.equal(Q.poly("x*y + x^2"), Q.poly("x^2"))
    assert sorted(Q.standard_monomials(Z.element([2]), 2)) == [(0, 2), (2, 0)]
