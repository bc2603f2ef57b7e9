"""Rings ``Q[x_1..x_n]/I`` graded by a finitely generated abelian group."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Optional, Sequence

from .abelian import FgAbelianGroup, GroupElement
from .poly import IdealBasis, Monomial, Polynomial, parse_polynomial


class GradingError(ValueError):
    """A homogeneity or degree condition is violated."""


class _AnyDegree:
    """Degree marker for the zero element, which is homogeneous of every degree."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO_DEGREE"

    def __str__(self):
        return "any"


ZERO_DEGREE = _AnyDegree()


@dataclass(frozen=True)
class HomogeneousElement:
    poly: Polynomial
    degree: GroupElement

    def __str__(self):
        return str(self.poly)


class GradedRing:
    """``Q[vars]/ideal`` with one degree in ``group`` per variable.

    Ideal generators must be homogeneous.  Equality in the ring is equality of
    grevlex normal forms.
    """

    def __init__(self, group: FgAbelianGroup, variables: Sequence, ideal: Sequence = ()):
        self.group = group
        names, degrees = [], []
        for name, deg in variables:
            if not isinstance(deg, GroupElement):
                deg = group.element(deg)
            elif deg.group != group:
                raise GradingError(f"degree of {name} is not in {group}")
            names.append(name)
            degrees.append(deg)
        if len(set(names)) != len(names):
            raise GradingError(f"variable names are not distinct: {names}")
        self.vars = tuple(names)
        self.degrees = tuple(degrees)
        gens = [g if isinstance(g, Polynomial) else parse_polynomial(g, self.vars) for g in ideal]
        for k, g in enumerate(gens):
            if self.is_homogeneous(g) is None:
                raise GradingError(f"ideal generator #{k} ({g}) is not homogeneous")
        self.ideal = IdealBasis(gens, self.vars)

    # identity -------------------------------------------------------------

    def _signature(self):
        return (self.group, self.vars, self.degrees, self.ideal.generators)

    def __eq__(self, other):
        return isinstance(other, GradedRing) and (
            other is self or other._signature() == self._signature()
        )

    def __hash__(self):
        return hash(self._signature())

    def __repr__(self):
        degs = ", ".join(f"{n}:{d}" for n, d in zip(self.vars, self.degrees))
        ideal = f" / ({', '.join(map(str, self.ideal.generators))})" if self.ideal.generators else ""
        return f"GradedRing[{self.group}]({degs}){ideal}"

    # elements -------------------------------------------------------------

    def poly(self, text) -> Polynomial:
        if isinstance(text, Polynomial):
            if text.vars != self.vars:
                raise GradingError(f"{text} is not over {self.vars}")
            return text
        return parse_polynomial(text, self.vars)

    def one(self) -> Polynomial:
        return Polynomial.constant(self.vars, 1)

    def zero(self) -> Polynomial:
        return Polynomial.zero(self.vars)

    def var(self, name: str) -> Polynomial:
        return Polynomial.variable(self.vars, name)

    def reduce(self, p: Polynomial) -> Polynomial:
        return self.ideal.normal_form(p)

    def equal(self, p: Polynomial, q: Polynomial) -> bool:
        return not self.reduce(p - q)

    def is_zero(self, p: Polynomial) -> bool:
        return not self.reduce(p)

    # grading --------------------------------------------------------------

    def monomial_degree(self, m: Monomial) -> GroupElement:
        coords = [0] * self.group.ngens
        for e, d in zip(m, self.degrees):
            if e:
                for k, x in enumerate(d.coords):
                    coords[k] += e * x
        return self.group.element(coords)

    def homogeneous_components(self, p: Polynomial) -> Dict[GroupElement, HomogeneousElement]:
        parts: Dict[GroupElement, dict] = {}
        for m, c in p.sorted_terms():
            parts.setdefault(self.monomial_degree(m), {})[m] = c
        return {d: HomogeneousElement(Polynomial(self.vars, t), d) for d, t in parts.items()}

    def is_homogeneous(self, p: Polynomial):
        """Degree of ``p``, :data:`ZERO_DEGREE` for ``p == 0``, ``None`` if inhomogeneous."""
        if not p:
            return ZERO_DEGREE
        degs = {self.monomial_degree(m) for m in p.terms}
        return degs.pop() if len(degs) == 1 else None

    def homogeneous(self, p, degree: Optional[GroupElement] = None) -> HomogeneousElement:
        """Wrap ``p`` (reduced mod the ideal) as a homogeneous element."""
        p = self.reduce(self.poly(p))
        d = self.is_homogeneous(p)
        if d is None:
            raise GradingError(f"{p} is not homogeneous")
        if d is ZERO_DEGREE:
            if degree is None:
                raise GradingError("the zero element needs an explicit degree")
            return HomogeneousElement(p, degree)
        if degree is not None and degree != d:
            raise GradingError(f"{p} has degree {d}, expected {degree}")
        return HomogeneousElement(p, d)

    def degree_of(self, p: Polynomial) -> GroupElement:
        d = self.is_homogeneous(p)
        if d is None or d is ZERO_DEGREE:
            raise GradingError(f"{p} has no well-defined degree")
        return d

    def monomials_up_to(self, max_total: int) -> Dict[GroupElement, list]:
        """Monomials of total degree <= ``max_total`` bucketed by degree."""
        cache = self.__dict__.setdefault("_monomial_cache", {})
        if max_total not in cache:
            buckets: Dict[GroupElement, list] = {}
            n = len(self.vars)
            for total in range(max_total + 1):
                for combo in itertools.combinations_with_replacement(range(n), total):
                    m = [0] * n
                    for i in combo:
                        m[i] += 1
                    m = tuple(m)
                    buckets.setdefault(self.monomial_degree(m), []).append(m)
            cache[max_total] = buckets
        return cache[max_total]

    def standard_monomials(self, degree: GroupElement, max_total: int) -> list:
        """Monomials of ``degree`` that are not leading terms of the ideal."""
        gb = self.ideal.groebner() if self.ideal.generators else []
        leads = [g.leading_monomial() for g in gb]
        out = []
        for m in self.monomials_up_to(max_total).get(degree, []):
            if not any(all(a <= b for a, b in zip(lm, m)) for lm in leads):
                out.append(m)
        return out


def monomial_degree(m: Monomial, ring: GradedRing) -> GroupElement:
    return ring.monomial_degree(m)


def homogeneous_components(p: Polynomial, ring: GradedRing):
    return ring.homogeneous_components(p)


def is_homogeneous(p: Polynomial, ring: GradedRing):
    return ring.is_homogeneous(p)


class GradedRingHom:
    """``source -> target`` determined by the images of the source variables."""

    def __init__(self, source: GradedRing, target: GradedRing, images: Sequence[Polynomial]):
        self.source = source
        self.target = target
        self.images = tuple(target.reduce(target.poly(p)) for p in images)

    def __call__(self, p: Polynomial) -> Polynomial:
        return self.target.reduce(p.substitute(self.images))

    def compose(self, first: "GradedRingHom") -> "GradedRingHom":
        """``self o first``."""
        if first.target != self.source:
            raise GradingError("cannot compose: target and source differ")
        return GradedRingHom(first.source, self.target, [self(p) for p in first.images])

    def is_surjective_on_variables(self) -> bool:
        """Every target variable is the image of some source variable."""
        images = set(self.images)
        return all(self.target.reduce(self.target.var(v)) in images for v in self.target.vars)

    def __repr__(self):
        pairs = ", ".join(f"{v}->{p}" for v, p in zip(self.source.vars, self.images))
        return f"GradedRingHom({pairs})"


def graded_hom(source: GradedRing, target: GradedRing, images: Sequence) -> GradedRingHom:
    """Validate and build a degree-preserving homomorphism."""
    if source.group != target.group:
        raise GradingError("source and target are graded by different groups")
    if len(images) != len(source.vars):
        raise GradingError(f"need {len(source.vars)} images, got {len(images)}")
    polys = [target.reduce(target.poly(p)) for p in images]
    for name, deg, img in zip(source.vars, source.degrees, polys):
        d = target.is_homogeneous(img)
        if d is None:
            raise GradingError(f"image of {name} ({img}) is not homogeneous")
        if d is not ZERO_DEGREE and d != deg:
            raise GradingError(f"image of {name} has degree {d}, expected {deg}")
    hom = GradedRingHom(source, target, polys)
    for g in source.ideal.generators:
        if not target.is_zero(g.substitute(hom.images)):
            raise GradingError(f"ideal generator {g} does not map into the target ideal")
    return hom
