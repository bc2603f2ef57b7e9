"""Charts, overlaps and cocycle checks for Proj over a declared family.

Proj is never built as a space.  An atlas is the gluing datum: one potion per
member ``S``, for each pair the certificate that ``A_(S) -> A_(ST)`` is a
localization, and sample-based checks that the identifications
``D(SS) = D(S)``, ``D(ST) = D(TS)`` and the triple condition hold.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence

from .abelian import direct_sum
from .graded import GradedRing, GradedRingHom, GradingError
from .magic import NotRelevantError, OpenImmersionCertificate, open_immersion_certificate
from .poly import Polynomial, solve_rational
from .potion import (
    CertificateError,
    PotionError,
    PotionHom,
    inclusion,
    make_element,
    one,
    potion_equiv,
)
from .sampling import DEFAULT_SAMPLES, DEFAULT_SEED, sample_potion
from .submonoid import (
    Factorization,
    HomogeneousSubmonoid,
    SubmonoidError,
    is_maximally_relevant,
    is_relevant,
    product,
)

log = logging.getLogger(__name__)

DEFAULT_DEGREE_BOUND = 12


class RelevantFamily:
    """Declared members of ``F``; each must be relevant."""

    def __init__(self, ring: GradedRing, members: Sequence[HomogeneousSubmonoid], name: Optional[str] = None):
        self.ring = ring
        self.name = name
        self.members = tuple(members)
        for k, S in enumerate(self.members):
            if S.ring != ring:
                raise PotionError(f"member #{k} ({S.label()}) lives in another ring")
            if not is_relevant(S):
                raise NotRelevantError(f"member {S.label()} is not relevant")

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __repr__(self):
        return f"RelevantFamily({', '.join(S.label() for S in self.members)})"


def _agree(f, g, xs) -> int:
    return sum(1 for x in xs if f(x) == g(x))


def _check(ok: int, total: int) -> dict:
    return {"agree": f"{ok}/{total}", "verdict": "pass" if ok == total else "fail"}


@dataclass
class ChartAtlas:
    family: RelevantFamily
    charts: list = field(default_factory=list)
    overlaps: Dict[tuple, OpenImmersionCertificate] = field(default_factory=dict)
    self_overlaps: list = field(default_factory=list)
    symmetry: list = field(default_factory=list)
    cocycle: list = field(default_factory=list)

    @property
    def overlap_classes(self) -> int:
        return len({frozenset(k) for k in self.overlaps})

    def transition(self, i: int, j: int) -> list:
        """The elements ``e_t`` of ``A_(S_i)`` inverted on ``D(S_i S_j)``."""
        return list(self.overlaps[(i, j)].elements)

    @property
    def passed(self) -> bool:
        checks = self.self_overlaps + self.symmetry + self.cocycle
        return all(c["verdict"] == "pass" for c in checks) and all(
            c.verdict == "localization" for c in self.overlaps.values()
        )

    def to_dict(self) -> dict:
        members = self.family.members
        return {
            "charts": self.charts,
            "overlap_classes": self.overlap_classes,
            "overlaps": [
                {"S": members[i].label(), "T": members[j].label(), **c.to_dict()}
                for (i, j), c in sorted(self.overlaps.items())
            ],
            "self_overlaps": self.self_overlaps,
            "symmetry": self.symmetry,
            "cocycle": self.cocycle,
            "passed": self.passed,
        }


def build_atlas(F: RelevantFamily, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> ChartAtlas:
    atlas = ChartAtlas(F)
    members = F.members
    for S in members:
        atlas.charts.append({"S": S.label(), "maximally_relevant": is_maximally_relevant(S)})
        SS = product(S, S)
        eq = potion_equiv(S, SS)
        xs = sample_potion(S, samples, seed, label="self")
        ys = sample_potion(SS, samples, seed, label="self")
        ok = sum(1 for x in xs if eq.backward(eq.forward(x)) == x) + sum(
            1 for y in ys if eq.forward(eq.backward(y)) == y)
        atlas.self_overlaps.append({"S": S.label(), **_check(ok, 2 * samples)})
    for i, j in itertools.permutations(range(len(members)), 2):
        atlas.overlaps[(i, j)] = open_immersion_certificate(members[i], members[j])
    for i, j in itertools.combinations(range(len(members)), 2):
        S, T = members[i], members[j]
        ST, TS = product(S, T), product(T, S)
        eq = potion_equiv(ST, TS)
        xs = sample_potion(ST, samples, seed, label="symmetry")
        ok = sum(1 for x in xs if eq.backward(eq.forward(x)) == x)
        atlas.symmetry.append({"S": S.label(), "T": T.label(), **_check(ok, samples)})
    for i, j, k in itertools.permutations(range(len(members)), 3):
        atlas.cocycle.append(_triple_check(members[i], members[j], members[k], samples, seed))
    return atlas


def _triple_check(S, T, U, samples, seed) -> dict:
    """Both triple conditions for the ordered triple ``(S, T, U)``.

    Overlap square: ``A_(ST) -> A_(STU)`` agrees with
    ``A_(ST) = A_(TS) -> A_(TSU) = A_(STU)``.
    Cocycle: ``STU -> TSU -> UTS`` equals ``STU -> UTS`` directly.
    """
    ST, TS = product(S, T), product(T, S)
    STU, TSU = product(ST, U), product(TS, U)
    UTS = product(product(U, T), S)
    xs = sample_potion(ST, samples, seed, label="triple")
    direct = inclusion(ST, STU)
    around = potion_equiv(TSU, STU).forward.compose(inclusion(TS, TSU).compose(potion_equiv(ST, TS).forward))
    square = _agree(direct, around, xs)
    zs = sample_potion(STU, samples, seed, label="cocycle")
    phi_st = potion_equiv(STU, TSU).forward
    phi_tu = potion_equiv(TSU, UTS).forward
    phi_su = potion_equiv(STU, UTS).forward
    cocycle = _agree(phi_tu.compose(phi_st), phi_su, zs)
    ok = square + cocycle
    return {"S": S.label(), "T": T.label(), "U": U.label(),
            "square": f"{square}/{samples}", "cocycle": f"{cocycle}/{samples}",
            "verdict": "pass" if ok == 2 * samples else "fail"}


# ---------------------------------------------------------------------------
# functoriality


def image_submonoid(hom: GradedRingHom, S: HomogeneousSubmonoid) -> Optional[HomogeneousSubmonoid]:
    """``hom(S)`` with transported factorizations, or ``None`` if it contains 0."""
    images = [hom(g) for g in S.gens]
    if any(not p for p in images):
        return None
    facts = []
    for fact in S.factorizations:
        facts.append([(hom(f), m) for f, m in fact.factors] or None)
    try:
        return HomogeneousSubmonoid(hom.target, images, {k: f for k, f in enumerate(facts) if f}, name=S.name)
    except SubmonoidError:
        # a factor of some generator died; fall back to undeclared factorizations
        return HomogeneousSubmonoid(hom.target, images, name=S.name)


def induced_hom(hom: GradedRingHom, S: HomogeneousSubmonoid, target: HomogeneousSubmonoid) -> PotionHom:
    """``A_(S) -> B_(target)``, ``n/d -> hom(n)/hom(d)``; every ``hom(g)`` must be a generator of ``target``."""
    images = []
    for g in S.gens:
        k = target.index(hom(g))
        if k is None:
            raise CertificateError(f"image of {g} is not a generator of {target!r}")
        images.append(target.unit_vector(k))
    return PotionHom(S, target, images, poly_map=hom)


@dataclass
class FunctorialityReport:
    maps: dict = field(default_factory=dict)  # member label -> PotionHom
    dropped: list = field(default_factory=list)
    compatibility: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c["verdict"] == "pass" for c in self.compatibility)

    def to_dict(self) -> dict:
        return {
            "maps": [{"S": k, "image": v.target.label(), "image_generators": [str(g) for g in v.target.gens]}
                     for k, v in self.maps.items()],
            "dropped": self.dropped,
            "compatibility": self.compatibility,
            "passed": self.passed,
        }


def functoriality_map(hom: GradedRingHom, F: RelevantFamily, samples: int = DEFAULT_SAMPLES,
                      seed: int = DEFAULT_SEED) -> FunctorialityReport:
    """Per-member maps ``A_(S) -> B_(hom S)`` and their compatibility with overlaps."""
    if hom.source != F.ring:
        raise GradingError("homomorphism source is not the family's ring")
    report = FunctorialityReport()
    kept = []
    for S in F.members:
        img = image_submonoid(hom, S)
        if img is None:
            msg = f"{S.label()}: image contains 0, member dropped"
        elif not is_relevant(img):
            msg = f"{S.label()}: image {img!r} is not relevant, member dropped"
        else:
            report.maps[S.label()] = induced_hom(hom, S, img)
            kept.append((S, img))
            continue
        log.warning(msg)
        report.dropped.append(S.label())
        report.warnings.append(msg)
    for (S, PS), (T, PT) in itertools.permutations(kept, 2):
        ST, PST = product(S, T), product(PS, PT)
        top = induced_hom(hom, ST, PST).compose(inclusion(S, ST))
        bottom = inclusion(PS, PST).compose(report.maps[S.label()])
        xs = sample_potion(S, samples, seed, label="functorial")
        report.compatibility.append({"S": S.label(), "T": T.label(), **_check(_agree(top, bottom, xs), samples)})
    return report


def composition_check(phi: GradedRingHom, psi: GradedRingHom, S: HomogeneousSubmonoid,
                      samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> dict:
    """Induced map of ``psi o phi`` versus the composite of induced maps, on ``A_(S)``."""
    PS = image_submonoid(phi, S)
    if PS is None:
        raise PotionError(f"{S.label()} maps to a submonoid containing 0")
    chi = psi.compose(phi)
    QS = image_submonoid(chi, S)
    if QS is None:
        raise PotionError(f"{S.label()} maps to a submonoid containing 0")
    first = induced_hom(phi, S, PS)
    second = induced_hom(psi, PS, QS)
    direct = induced_hom(chi, S, QS)
    xs = sample_potion(S, samples, seed, label="compose")
    return {"S": S.label(), **_check(_agree(second.compose(first), direct, xs), samples)}


# ---------------------------------------------------------------------------
# closed immersions


def lift_homogeneous(hom: GradedRingHom, target_poly: Polynomial, degree, bound: int) -> Optional[Polynomial]:
    """Some ``p`` of ``degree`` with total degree <= ``bound`` and ``hom(p) == target_poly``."""
    A, B = hom.source, hom.target
    target_poly = B.reduce(target_poly)
    if not target_poly:
        return A.zero()
    monos = A.monomials_up_to(bound).get(degree, [])
    if not monos:
        return None
    images = [hom(Polynomial.monomial(A.vars, m)) for m in monos]
    rows = sorted({m for p in images for m in p.terms} | set(target_poly.terms))
    matrix = [[p.terms.get(r, 0) for p in images] for r in rows]
    rhs = [target_poly.terms.get(r, 0) for r in rows]
    sol = solve_rational(matrix, rhs)
    if sol is None:
        return None
    return Polynomial(A.vars, {m: c for m, c in zip(monos, sol) if c})


@dataclass
class ClosedImmersionReport:
    S: str
    verdict: str
    lifted: int
    total: int
    note: str = ""

    def to_dict(self) -> dict:
        out = {"S": self.S, "verdict": self.verdict, "lifted": f"{self.lifted}/{self.total}"}
        if self.note:
            out["note"] = self.note
        return out


def closed_immersion_check(hom: GradedRingHom, S: HomogeneousSubmonoid, degree_bound: int = DEFAULT_DEGREE_BOUND,
                           samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> ClosedImmersionReport:
    """Surjectivity of ``A_(S) -> B_(hom S)`` by lifting sampled elements.

    Verdict is ``"surjective"`` or ``"inconclusive"``; a failed lift only means
    the degree bound was too small.
    """
    if not hom.is_surjective_on_variables():
        raise GradingError("homomorphism is not surjective on variables")
    img = image_submonoid(hom, S)
    if img is None:
        return ClosedImmersionReport(S.label(), "surjective", 0, 0, "image contains 0: the target potion is the zero ring")
    phi = induced_hom(hom, S, img)
    zs = [one(img)] + sample_potion(img, samples, seed, label="lift")
    lifted = 0
    for z in zs:
        p = lift_homogeneous(hom, z.num, z.deg, degree_bound)
        if p is None:
            continue
        x = make_element(S, p, z.witness)
        if phi(x) == z:
            lifted += 1
    verdict = "surjective" if lifted == len(zs) else "inconclusive"
    return ClosedImmersionReport(S.label(), verdict, lifted, len(zs))


# ---------------------------------------------------------------------------
# products of gradings


@dataclass
class ProductGrading:
    ring: GradedRing
    left: GradedRing
    right: GradedRing
    left_positions: tuple
    right_positions: tuple
    renamed: dict  # original right-hand name -> new name
    embed_left_degree: object
    embed_right_degree: object

    def embed_left(self, p: Polynomial) -> Polynomial:
        return p.embed(self.ring.vars, self.left_positions)

    def embed_right(self, p: Polynomial) -> Polynomial:
        return p.embed(self.ring.vars, self.right_positions)

    def _transport(self, S: HomogeneousSubmonoid, embed) -> HomogeneousSubmonoid:
        facts = [Factorization(f.unit, tuple((embed(g), m) for g, m in f.factors), f.trusted)
                 for f in S.factorizations]
        return HomogeneousSubmonoid(self.ring, [embed(g) for g in S.gens], facts, name=S.name)

    def left_submonoid(self, S: HomogeneousSubmonoid) -> HomogeneousSubmonoid:
        return self._transport(S, self.embed_left)

    def right_submonoid(self, T: HomogeneousSubmonoid) -> HomogeneousSubmonoid:
        return self._transport(T, self.embed_right)


def product_grading(A: GradedRing, B: GradedRing) -> ProductGrading:
    """``A (x)_Q B`` graded by ``M x M'``; colliding right-hand names get a suffix."""
    G, left, right = direct_sum(A.group, B.group)
    names = list(A.vars)
    renamed = {}
    for v in B.vars:
        new, k = v, 2
        while new in names or new in B.vars and new != v:
            new = f"{v}_{k}"
            k += 1
        if new != v:
            renamed[v] = new
        names.append(new)
    n = len(A.vars)
    lpos = tuple(range(n))
    rpos = tuple(range(n, n + len(B.vars)))
    variables = [(name, left(d)) for name, d in zip(A.vars, A.degrees)]
    variables += [(name, right(d)) for name, d in zip(names[n:], B.degrees)]
    ideal = [g.embed(names, lpos) for g in A.ideal.generators]
    ideal += [g.embed(names, rpos) for g in B.ideal.generators]
    ring = GradedRing(G, variables, ideal)
    return ProductGrading(ring, A, B, lpos, rpos, renamed, left, right)


@dataclass
class ProductChartReport:
    S: str
    T: str
    verdict: str
    decomposed: int
    total: int
    left_maps: str = ""
    right_maps: str = ""

    def to_dict(self) -> dict:
        return {"S": self.S, "T": self.T, "verdict": self.verdict, "decomposed": f"{self.decomposed}/{self.total}"}


def product_chart_check(S: HomogeneousSubmonoid, T: HomogeneousSubmonoid, samples: int = DEFAULT_SAMPLES,
                        seed: int = DEFAULT_SEED, grading: Optional[ProductGrading] = None) -> ProductChartReport:
    """``(A (x) A')_(ST)`` is generated by the images of ``A_(S)`` and ``A'_(T)``.

    Each sampled ``n/(s t)`` is split term by term: a monomial ``m m'`` of the
    numerator has ``deg m = deg s`` and ``deg m' = deg t`` since the degrees
    live in separate factors of ``M x M'``, so ``n/(s t)`` is a sum of products
    ``(m/s)(m'/t)``.  The identity is then checked exactly in the product potion.
    """
    if not is_relevant(S) or not is_relevant(T):
        raise NotRelevantError("both submonoids must be relevant")
    P = grading or product_grading(S.ring, T.ring)
    SS, TT = P.left_submonoid(S), P.right_submonoid(T)
    ST = product(SS, TT)
    lmap = PotionHom(S, ST, [ST.unit_vector(ST.index(g)) for g in SS.gens], poly_map=P.embed_left)
    rmap = PotionHom(T, ST, [ST.unit_vector(ST.index(g)) for g in TT.gens], poly_map=P.embed_right)
    n = len(P.left.vars)
    zs = sample_potion(ST, samples, seed, label="product")
    ok = 0
    for z in zs:
        a = [0] * len(S)
        b = [0] * len(T)
        for k, e in enumerate(z.witness):
            if not e:
                continue
            g = ST.gens[k]
            i, j = SS.index(g), TT.index(g)
            if i is not None:
                a[i] += e
            else:
                b[j] += e
        total = None
        for m, c in z.num.terms.items():
            left = make_element(S, Polynomial.monomial(S.ring.vars, m[:n]), a)
            right = make_element(T, Polynomial.monomial(T.ring.vars, m[n:]), b)
            term = lmap(left) * rmap(right)
            term = term._build(term.num * c, term.witness)
            total = term if total is None else total + term
        if total is None:
            total = make_element(ST, P.ring.zero(), z.witness)
        if total == z:
            ok += 1
    verdict = "pass" if ok == len(zs) else "fail"
    return ProductChartReport(S.label(), T.label(), verdict, ok, len(zs))
