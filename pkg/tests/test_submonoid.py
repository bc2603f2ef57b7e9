import random

import pytest

from gradedproj.abelian import FgAbelianGroup, is_torsion_quotient
from gradedproj.graded import GradedRing
from gradedproj.submonoid import (
    HomogeneousSubmonoid,
    SubmonoidError,
    bar,
    deg_group,
    deg_monoid,
    is_maximally_relevant,
    is_relevant,
    product,
    trivial_submonoid,
)
from conftest import Z, Z2, p1, sub, weighted
from oracles import torsion_quotient_oracle


def test_generator_validation():
    R = p1()
    with pytest.raises(SubmonoidError):
        sub(R, "0")
    with pytest.raises(SubmonoidError):
        sub(R, "x + y^2")
    Q = GradedRing(Z, [("x", [1]), ("y", [1])], ["y"])
    with pytest.raises(SubmonoidError):
        sub(Q, "y")


def test_factorization_checked():
    R = p1()
    S = sub(R, "x^2 - y^2", factorizations=[[("x - y", 1), ("x + y", 1)]])
    assert {str(f) for f, _ in S.factorizations[0].factors} == {"x - y", "x + y"}
    assert S.warnings  # irreducibility of x - y and x + y is assumed
    with pytest.raises(SubmonoidError):
        sub(R, "x^2 - y^2", factorizations=[[("x - y", 2)]])
    with pytest.raises(SubmonoidError):
        sub(R, "x*y", factorizations=[[("x + y^2", 1)]])
    scaled = sub(R, "2*x^2 - 2*y^2", factorizations=[[("x - y", 1), ("x + y", 1)]])
    assert scaled.factorizations[0].unit == 2


def test_bar_examples():
    R = p1()
    assert [str(e) for e in bar(sub(R, "x")).divisor_generators] == ["x"]
    assert [str(e) for e in bar(sub(R, "x^2")).divisor_generators] == ["x"]
    assert [str(e) for e in bar(sub(R, "x*y")).divisor_generators] == ["x", "y"]
    declared = sub(R, "x^2", factorizations=[[("x", 2)]])
    assert [str(e) for e in bar(declared).divisor_generators] == ["x"]


def test_bar_idempotent():
    R = p1()
    S = sub(R, "x^2*y", "x*y^3")
    B = bar(S).submonoid
    assert bar(B).submonoid.gens == B.gens


def test_bar_lift_and_from_base():
    R = p1()
    S = sub(R, "x^2*y", "3*y^2")
    B = bar(S)
    unit, exps = B.from_base((1, 1))
    assert R.equal(S.element((1, 1)), B.submonoid.element(exps) * unit)
    w, cof = B.lift((3, 0))
    assert R.equal(B.submonoid.element((3, 0)) * cof, S.element(w))


def test_deg_monoid_and_group():
    W = weighted()
    assert [d.coords for d in deg_monoid(sub(W, "x"))] == [(2,)]
    assert [d.coords for d in deg_monoid(sub(W, "x", "y"))] == [(2,), (3,)]
    assert deg_monoid(trivial_submonoid(W)) == []
    assert deg_group(sub(W, "x")).generators == (Z.element([2]),)
    assert is_maximally_relevant(sub(W, "x", "y"))
    assert deg_group(trivial_submonoid(W)).generators == ()


def test_relevance_examples():
    R = p1()
    assert is_relevant(sub(R, "x")) and is_maximally_relevant(sub(R, "x"))
    W = weighted()
    assert is_relevant(sub(W, "x")) and not is_maximally_relevant(sub(W, "x"))
    R2 = GradedRing(Z2, [("x", [1, 0]), ("y", [0, 1])])
    assert not is_relevant(sub(R2, "x"))
    assert is_relevant(sub(R2, "x*y"))


def test_relevance_of_bar_submonoid():
    W = weighted()
    for gens in (["x^3"], ["x^2*y"], ["y^2"], ["x^3 + y^2"]):
        S = sub(W, *gens)
        assert is_relevant(S) == is_relevant(bar(S).submonoid)


def test_relevance_monotone():
    R2 = GradedRing(Z2, [("x", [1, 0]), ("y", [0, 1]), ("z", [1, 1])])
    S = sub(R2, "x*y")
    T = product(S, sub(R2, "z"))
    assert is_relevant(S) and is_relevant(T)


def test_product():
    R = p1()
    X, Y = sub(R, "x", name="X"), sub(R, "y", name="Y")
    assert product(X, X) == X
    assert product(X, Y).gens == (R.poly("x"), R.poly("y"))
    assert product(X, Y).name == "XY"
    assert product(X, trivial_submonoid(R)) == X
    assert set(deg_monoid(product(X, Y))) == set(deg_monoid(X)) | set(deg_monoid(Y))
    with pytest.raises(SubmonoidError):
        product(X, sub(weighted(), "x"))


def test_witnesses():
    R = p1()
    S = sub(R, "x", "x*y")
    assert S.element((2, 1)) == R.poly("x^3*y")
    assert S.degree_of((2, 1)) == Z.element([4])
    with pytest.raises(SubmonoidError):
        S.check_witness((1,))
    with pytest.raises(SubmonoidError):
        S.check_witness((1, -1))


GROUPS = [(0, (2,)), (0, (3,)), (0, (4,)), (0, (2, 4)), (1, ()), (1, (2,)), (1, (3,)), (1, (4,)), (2, ()), (2, (2,))]


def random_instance(rng):
    rank, inv = rng.choice(GROUPS)
    M = FgAbelianGroup(rank, inv)
    k = rng.randint(1, 3)
    degs = [[rng.randint(-3, 3) for _ in range(M.ngens)] for _ in range(k)]
    return M, degs


def check_instance(M, degs):
    R = GradedRing(M, [(f"v{i}", d) for i, d in enumerate(degs)])
    S = HomogeneousSubmonoid(R, ["*".join(R.vars)])
    oracle = torsion_quotient_oracle(M, [M.element(d) for d in degs])
    assert is_torsion_quotient(M, deg_group(bar(S))) == oracle
    return is_relevant(S) == oracle


def test_relevance_oracle_small():
    rng = random.Random(11)
    for _ in range(15):
        assert check_instance(*random_instance(rng))
