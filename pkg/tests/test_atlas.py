import pytest

from gradedproj.abelian import FgAbelianGroup
from gradedproj.atlas import (
    RelevantFamily,
    build_atlas,
    closed_immersion_check,
    composition_check,
    functoriality_map,
    image_submonoid,
    lift_homogeneous,
    product_chart_check,
    product_grading,
)
from gradedproj.graded import GradedRing, GradingError, graded_hom
from gradedproj.magic import NotRelevantError
from gradedproj.potion import make_element
from gradedproj.submonoid import trivial_submonoid
from conftest import C2, Z, Z2, p1, p1xp1, sub


def p1_family(R=None):
    R = R or p1()
    return RelevantFamily(R, [sub(R, "x", name="X"), sub(R, "y", name="Y")])


def test_family_validation():
    R2 = GradedRing(Z2, [("x", [1, 0]), ("y", [0, 1])])
    with pytest.raises(NotRelevantError):
        RelevantFamily(R2, [sub(R2, "x")])


def test_p1_atlas():
    atlas = build_atlas(p1_family(), samples=10)
    assert len(atlas.charts) == 2 and atlas.overlap_classes == 1
    assert [str(e) for e in atlas.transition(0, 1)] == ["y/x"]
    assert [str(e) for e in atlas.transition(1, 0)] == ["x/y"]
    assert atlas.passed


def test_single_member_atlas():
    R = p1()
    atlas = build_atlas(RelevantFamily(R, [sub(R, "x")]), samples=5)
    assert len(atlas.charts) == 1 and atlas.overlap_classes == 0 and atlas.passed


def test_p1xp1_atlas():
    R = p1xp1()
    F = RelevantFamily(R, [sub(R, f"x{i}*y{j}", name=f"S{i}{j}") for i in (0, 1) for j in (0, 1)])
    atlas = build_atlas(F, samples=5)
    assert len(atlas.charts) == 4 and atlas.overlap_classes == 6
    assert len(atlas.cocycle) == 24
    assert atlas.passed
    n = len(F)
    assert atlas.overlap_classes == n * (n - 1) // 2


def test_functoriality_identity():
    R = p1()
    F = p1_family(R)
    ident = graded_hom(R, R, ["x", "y"])
    report = functoriality_map(ident, F, samples=5)
    assert report.passed and not report.dropped
    X = F.members[0]
    a = make_element(X, "y", [1])
    assert report.maps["X"](a) == a


def test_functoriality_quotient():
    R = p1()
    Q = GradedRing(Z, [("x", [1]), ("y", [1])], ["y"])
    hom = graded_hom(R, Q, ["x", "y"])
    report = functoriality_map(hom, p1_family(R), samples=5)
    assert report.dropped == ["Y"]
    img = report.maps["X"](make_element(p1_family(R).members[0], "y", [1]))
    assert img.is_zero()
    assert image_submonoid(hom, sub(R, "y")) is None


def test_functoriality_compatibility_with_overlaps():
    R = p1()
    swap = graded_hom(R, R, ["y", "x"])
    report = functoriality_map(swap, p1_family(R), samples=5)
    assert report.passed and len(report.compatibility) == 2


def test_functoriality_composes():
    R = GradedRing(Z, [("x", [1]), ("y", [1]), ("z", [1])])
    B = GradedRing(Z, [("x", [1]), ("y", [1]), ("z", [1])], ["z"])
    C = GradedRing(Z, [("x", [1]), ("y", [1]), ("z", [1])], ["z", "x - y"])
    phi = graded_hom(R, B, ["x", "y", "z"])
    psi = graded_hom(B, C, ["x", "y", "z"])
    assert composition_check(phi, psi, sub(R, "x"), samples=5)["verdict"] == "pass"
    perm = graded_hom(R, R, ["y", "z", "x"])
    assert composition_check(perm, perm, sub(R, "x*y"), samples=5)["verdict"] == "pass"


def test_closed_immersion():
    R = p1()
    Q = GradedRing(Z, [("x", [1]), ("y", [1])], ["y"])
    hom = graded_hom(R, Q, ["x", "y"])
    F = p1_family(R)
    reports = [closed_immersion_check(hom, S, samples=5) for S in F.members]
    assert [r.verdict for r in reports] == ["surjective", "surjective"]
    ident = graded_hom(R, R, ["x", "y"])
    assert closed_immersion_check(ident, F.members[0], samples=5).verdict == "surjective"
    R3 = GradedRing(Z, [("x", [1]), ("y", [1]), ("z", [1])])
    Q3 = GradedRing(Z, [("x", [1]), ("y", [1]), ("z", [1])], ["z"])
    assert closed_immersion_check(graded_hom(R3, Q3, ["x", "y", "z"]), sub(R3, "x"), samples=5).verdict == "surjective"


def test_closed_immersion_needs_surjection():
    R = p1()
    with pytest.raises(GradingError):
        closed_immersion_check(graded_hom(R, R, ["x", "x"]), sub(R, "x"))


def test_closed_immersion_bound_is_inconclusive():
    R = p1()
    Q = GradedRing(Z, [("x", [1]), ("y", [1])], ["y"])
    hom = graded_hom(R, Q, ["x", "y"])
    report = closed_immersion_check(hom, sub(R, "x"), degree_bound=0, samples=5)
    assert report.verdict == "inconclusive"


def test_lift():
    R = p1()
    Q = GradedRing(Z, [("x", [1]), ("y", [1])], ["y"])
    hom = graded_hom(R, Q, ["x", "y"])
    assert lift_homogeneous(hom, Q.poly("x^2"), Z.element([2]), 4) == R.poly("x^2")
    assert lift_homogeneous(hom, Q.one(), Z.zero(), 4) == R.one()


def test_product_grading():
    A = GradedRing(Z, [("x0", [1]), ("x1", [1])])
    B = GradedRing(Z, [("y0", [1]), ("y1", [1])])
    P = product_grading(A, B)
    assert P.ring.group == Z2
    assert [d.coords for d in P.ring.degrees] == [(1, 0), (1, 0), (0, 1), (0, 1)]
    empty = GradedRing(FgAbelianGroup(0), [])
    E = product_grading(A, empty)
    assert E.ring.vars == A.vars and [d.coords for d in E.ring.degrees] == [(1,), (1,)]
    T = product_grading(GradedRing(C2, [("t", [1])]), A)
    assert T.ring.group == FgAbelianGroup(1, (2,))
    clash = product_grading(A, A)
    assert clash.renamed == {"x0": "x0_2", "x1": "x1_2"}
    Qa = GradedRing(Z, [("x", [1]), ("y", [1])], ["x*y"])
    Pq = product_grading(Qa, Qa)
    assert [str(g) for g in Pq.ring.ideal.generators] == ["x*y", "x_2*y_2"]


def test_product_chart_check():
    A = GradedRing(Z, [("x0", [1]), ("x1", [1])])
    B = GradedRing(Z, [("y0", [1]), ("y1", [1])])
    assert product_chart_check(sub(A, "x0"), sub(B, "y0"), samples=10).verdict == "pass"
    C = GradedRing(FgAbelianGroup(0, (2,)), [("t", [1])])
    assert product_chart_check(sub(A, "x0"), trivial_submonoid(C), samples=5).verdict == "pass"
    D = GradedRing(FgAbelianGroup(0), [])
    assert product_chart_check(trivial_submonoid(D), trivial_submonoid(D), samples=3).verdict == "pass"
