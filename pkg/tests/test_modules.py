
import pytest

from gradedproj.graded import GradingError
from gradedproj.modules import (
    GradedModule,
    ModuleError,
    free_module,
    is_negligible_on_family,
    make_module_element,
    module_potion_eq,
    shift,
    twist_generator,
)
from gradedproj.atlas import RelevantFamily
from gradedproj.potion import PotionError, make_element, potion_eq
from gradedproj.sampling import random_potion_element, rng_for
from conftest import Z, axes, p1, sub, weighted


def residue_field(R):
    return GradedModule(R, [[0]], [["x"], ["y"]])


def test_module_validation():
    R = p1()
    with pytest.raises(ModuleError):
        GradedModule(R, [[0], [1]], [["x", "y"]])  # x*e0 has degree 1, y*e1 degree 2
    GradedModule(R, [[0], [1]], [["x^2", "y"]])
    with pytest.raises(ModuleError):
        GradedModule(R, [[0]], [["x", "y"]])


def test_shift():
    R = p1()
    Q = residue_field(R)
    assert shift(Q, [0]) is Q
    assert shift(shift(Q, [3]), [-3]) == Q
    A1 = shift(free_module(R), [1])
    assert A1.gen_degrees == (Z.element([-1]),)
    assert A1.relations == free_module(R).relations


def test_module_potion_eq_residue():
    R = p1()
    Q = residue_field(R)
    X = sub(R, "x")
    a = make_module_element(Q, X, ["x"], [1])
    assert module_potion_eq(a, a)
    assert a.is_zero()
    assert a == make_module_element(Q, X, ["0"], [0])
    with pytest.raises(GradingError):
        make_module_element(Q, X, ["1"], [1])


def test_module_potion_eq_free_matches_potion_eq():
    R = p1()
    X = sub(R, "x")
    A = free_module(R)
    rng = rng_for(0, "free-module")
    for _ in range(10):
        a = random_potion_element(X, rng)
        b = random_potion_element(X, rng)
        if rng.random() < 0.5:
            b = a * make_element(X, "x", [1])
        ma = make_module_element(A, X, [a.num], a.witness)
        mb = make_module_element(A, X, [b.num], b.witness)
        assert module_potion_eq(ma, mb) == potion_eq(a, b)


def test_module_potion_quotient_ring():
    Q = axes()
    X = sub(Q, "x")
    A = free_module(Q)
    assert make_module_element(A, X, ["y"], [1]).is_zero()
    assert not make_module_element(A, X, ["x"], [1]).is_zero()


def test_twist_examples():
    R = p1()
    u = twist_generator(sub(R, "x"), [1], samples=5)
    assert str(u) == "x/1" and u.alpha == Z.element([1]) and u.checks["passed"]
    assert str(twist_generator(sub(R, "x"), [0], samples=5)) == "1/1"
    W = weighted()
    u = twist_generator(sub(W, "x", "y"), [1], samples=5)
    assert str(u) == "y/x" and u.checks["passed"]
    with pytest.raises(PotionError):
        twist_generator(sub(W, "x"), [1])


def test_negligibility():
    R = p1()
    F = RelevantFamily(R, [sub(R, "x"), sub(R, "y")])
    assert is_negligible_on_family(residue_field(R), F).verdict == "negligible"
    assert is_negligible_on_family(GradedModule(R, []), F).verdict == "negligible"
    assert is_negligible_on_family(free_module(R), F).verdict == "not negligible"


def test_negligibility_monotone():
    R = p1()
    members = [sub(R, "x"), sub(R, "y"), sub(R, "x*y")]
    F = RelevantFamily(R, members)
    Q = residue_field(R)
    assert is_negligible_on_family(Q, F).verdict == "negligible"
    for k in range(len(members)):
        sub_family = RelevantFamily(R, members[:k] + members[k + 1:])
        assert is_negligible_on_family(Q, sub_family).verdict == "negligible"


def test_negligibility_twisted_generator():
    # generator of degree 1 in the weighted ring; chart <x> only reaches even degrees
    W = weighted()
    F = RelevantFamily(W, [sub(W, "x")])
    r = is_negligible_on_family(GradedModule(W, [[1]]), F)
    assert r.verdict == "not negligible"  # y * e0 has degree 4, inside 2Z
