import pytest

from gradedproj.abelian import FgAbelianGroup
from gradedproj.graded import GradedRing
from gradedproj.submonoid import HomogeneousSubmonoid

Z = FgAbelianGroup(1)
Z2 = FgAbelianGroup(2)
C2 = FgAbelianGroup(0, (2,))


def p1():
    return GradedRing(Z, [("x", [1]), ("y", [1])])


def weighted():
    return GradedRing(Z, [("x", [2]), ("y", [3])])


def p1xp1():
    return GradedRing(Z2, [("x0", [1, 0]), ("x1", [1, 0]), ("y0", [0, 1]), ("y1", [0, 1])])


def torsion_line():
    return GradedRing(C2, [("x", [1])])


def axes():
    return GradedRing(Z, [("x", [1]), ("y", [1])], ["x*y"])


def sub(ring, *gens, name=None, **kw):
    return HomogeneousSubmonoid(ring, list(gens), name=name, **kw)


# (label, ring factory, generators of the chart submonoid)
EXAMPLE_CHARTS = [
    ("P1", p1, ["x"]),
    ("weighted23", weighted, ["x"]),
    ("P1xP1", p1xp1, ["x0*y0"]),
    ("Z/2 line", torsion_line, ["x"]),
    ("xy=0", axes, ["x"]),
]


@pytest.fixture
def P1():
    return p1()


@pytest.fixture
def W():
    return weighted()
