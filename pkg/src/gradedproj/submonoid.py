"""Finitely generated homogeneous submonoids, their divisor closures and relevance."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from .abelian import (
    SubgroupPresentation,
    combine,
    is_torsion_quotient,
    is_trivial_quotient,
)
from .graded import ZERO_DEGREE, GradedRing, GradingError, HomogeneousElement
from .poly import IdealBasis, Polynomial, saturate

log = logging.getLogger(__name__)


class SubmonoidError(ValueError):
    pass


@dataclass(frozen=True)
class Factorization:
    """``generator == unit * prod(factor ** mult)`` with monic factors."""

    unit: Fraction
    factors: tuple
    trusted: bool = False  # irreducibility of some factor was assumed, not checked


class HomogeneousSubmonoid:
    """Submonoid of ``ring`` generated by nonzero homogeneous ``generators``.

    Elements are addressed by exponent vectors over the generators.  Each
    generator carries a verified factorization, used to build the divisor
    closure; monomial generators are factored into variables automatically.
    """

    def __init__(self, ring: GradedRing, generators: Sequence = (), factorizations=None, name: Optional[str] = None):
        self.ring = ring
        self.name = name
        self.warnings: list = []
        polys = []
        elems = []
        for k, g in enumerate(generators):
            p = ring.reduce(ring.poly(g))
            if not p:
                raise SubmonoidError(f"generator #{k} ({g}) is zero in the ring")
            d = ring.is_homogeneous(p)
            if d is None:
                raise SubmonoidError(f"generator #{k} ({p}) is not homogeneous")
            polys.append(p)
            elems.append(HomogeneousElement(p, d))
        self.gens = tuple(polys)
        self.generators = tuple(elems)
        facts = factorizations or {}
        if not isinstance(facts, dict):
            facts = dict(enumerate(facts))
        self.factorizations = tuple(self._factor(k, p, facts.get(k)) for k, p in enumerate(polys))

    def _factor(self, k, p, declared) -> Factorization:
        ring = self.ring
        if isinstance(declared, Factorization):
            return declared
        if declared is None:
            if p.is_monomial():
                lm = next(iter(p.terms))
                declared = [(ring.var(v), e) for v, e in zip(ring.vars, lm) if e]
            else:
                declared = [(p, 1)]
        factors = []
        trusted = False
        for f, mult in declared:
            f = ring.reduce(ring.poly(f))
            mult = int(mult)
            if mult < 1:
                raise SubmonoidError(f"factor multiplicity {mult} for generator #{k} must be positive")
            if not f:
                raise SubmonoidError(f"factor of generator #{k} is zero")
            if f.is_constant():
                continue
            if ring.is_homogeneous(f) is None:
                raise SubmonoidError(f"factor {f} of generator #{k} is not homogeneous")
            f = f.monic()
            if f.is_monomial():
                lm = next(iter(f.terms))
                pieces = [(ring.var(v), e * mult) for v, e in zip(ring.vars, lm) if e]
            else:
                trusted = True
                pieces = [(f, mult)]
            for f, mult in pieces:
                for i, (g, m) in enumerate(factors):
                    if g == f:
                        factors[i] = (g, m + mult)
                        break
                else:
                    factors.append((f, mult))
        prod = ring.one()
        for f, mult in factors:
            prod = ring.reduce(prod * f ** mult)
        if not prod:
            raise SubmonoidError(f"declared factors of generator #{k} multiply to zero")
        unit = p.leading_coefficient() / prod.leading_coefficient()
        if not ring.equal(p, prod * unit):
            raise SubmonoidError(f"declared factorization of generator #{k} does not multiply back to {p}")
        if trusted:
            names = ", ".join(str(f) for f, _ in factors if not f.is_monomial())
            msg = f"irreducibility assumed for {names} (generator {p})"
            log.info(msg)
            self.warnings.append(msg)
        return Factorization(unit, tuple(factors), trusted)

    # identity -------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, HomogeneousSubmonoid) and other.ring == self.ring and other.gens == self.gens

    def __hash__(self):
        return hash((self.ring, self.gens))

    def __len__(self):
        return len(self.gens)

    def __repr__(self):
        label = f"{self.name}=" if self.name else ""
        return f"{label}<{', '.join(map(str, self.gens))}>"

    def label(self) -> str:
        return self.name or f"<{', '.join(map(str, self.gens))}>"

    # elements -------------------------------------------------------------

    @property
    def degrees(self) -> tuple:
        return tuple(e.degree for e in self.generators)

    def index(self, p: Polynomial) -> Optional[int]:
        try:
            return self.gens.index(p)
        except ValueError:
            return None

    def check_witness(self, w) -> tuple:
        w = tuple(int(a) for a in w)
        if len(w) != len(self.gens) or any(a < 0 for a in w):
            raise SubmonoidError(f"witness {list(w)} is not a nonnegative vector of length {len(self.gens)}")
        return w

    def element(self, w) -> Polynomial:
        w = self.check_witness(w)
        ring = self.ring
        out = ring.one()
        for g, a in zip(self.gens, w):
            if a:
                out = ring.reduce(out * g ** a)
        return out

    def degree_of(self, w):
        return combine(self.ring.group, self.check_witness(w), self.degrees)

    def unit_vector(self, i: int) -> tuple:
        return tuple(int(i == j) for j in range(len(self.gens)))

    @cached_property
    def generator_product(self) -> Polynomial:
        return self.element((1,) * len(self.gens))

    @cached_property
    def saturated_ideal(self):
        """``I : g^oo`` for ``g`` the product of all generators (cached).

        If ``g`` is already zero in the ring the localization is the zero
        ring and the saturation is the unit ideal.
        """
        g = self.generator_product
        if not g:
            return IdealBasis([self.ring.one()], self.ring.vars)
        return saturate(self.ring.ideal, g)

    def bar(self) -> "BarSubmonoid":
        return self._bar

    @cached_property
    def _bar(self) -> "BarSubmonoid":
        return BarSubmonoid(self)


class BarSubmonoid:
    """Divisor closure of ``base``, generated by the distinct declared factors."""

    def __init__(self, base: HomogeneousSubmonoid):
        self.base = base
        ring = base.ring
        divisors: list = []
        for fact in base.factorizations:
            for f, _ in fact.factors:
                if f not in divisors:
                    divisors.append(f)
        self.divisor_generators = tuple(HomogeneousElement(f, ring.degree_of(f)) for f in divisors)
        expansions = []
        for fact in base.factorizations:
            exps = [0] * len(divisors)
            for f, m in fact.factors:
                exps[divisors.index(f)] += m
            expansions.append((fact.unit, tuple(exps)))
        self.expansions = tuple(expansions)

    @property
    def degrees(self) -> tuple:
        return tuple(e.degree for e in self.divisor_generators)

    @cached_property
    def submonoid(self) -> HomogeneousSubmonoid:
        """The divisor closure as a submonoid in its own right."""
        gens = [e.poly for e in self.divisor_generators]
        facts = [Factorization(Fraction(1), ((p, 1),), False) for p in gens]
        return HomogeneousSubmonoid(self.base.ring, gens, facts, name=f"bar({self.base.label()})")

    def from_base(self, w) -> tuple:
        """``(unit, bar_exponents)`` with ``base.element(w) == unit * bar element``."""
        w = self.base.check_witness(w)
        unit = Fraction(1)
        exps = [0] * len(self.divisor_generators)
        for a, (u, e) in zip(w, self.expansions):
            if a:
                unit *= u ** a
                for j, x in enumerate(e):
                    exps[j] += a * x
        return unit, tuple(exps)

    def lift(self, bar_w) -> tuple:
        """``(base_witness, cofactor)`` with ``bar element * cofactor == base.element(base_witness)``."""
        bar_w = tuple(int(b) for b in bar_w)
        a = [0] * len(self.base.gens)
        for j, b in enumerate(bar_w):
            if not b:
                continue
            i = next(i for i, (_, e) in enumerate(self.expansions) if e[j])
            need = -(-b // self.expansions[i][1][j])
            a[i] = max(a[i], need)
        unit, total = self.from_base(a)
        ring = self.base.ring
        cof = Polynomial.constant(ring.vars, unit)
        for e, (t, b) in zip(self.divisor_generators, zip(total, bar_w)):
            if t > b:
                cof = ring.reduce(cof * e.poly ** (t - b))
        return tuple(a), cof


def bar(S: HomogeneousSubmonoid) -> BarSubmonoid:
    return S.bar()


def deg_monoid(S: HomogeneousSubmonoid) -> list:
    return list(S.degrees)


def deg_group(S) -> SubgroupPresentation:
    """``M[S]`` presented by generator degrees; accepts a submonoid or its bar."""
    ring = S.base.ring if isinstance(S, BarSubmonoid) else S.ring
    return SubgroupPresentation(ring.group, S.degrees)


def is_relevant(S: HomogeneousSubmonoid) -> bool:
    return is_torsion_quotient(S.ring.group, deg_group(S.bar()))


def is_maximally_relevant(S: HomogeneousSubmonoid) -> bool:
    return is_trivial_quotient(S.ring.group, deg_group(S.bar()))


def product(S: HomogeneousSubmonoid, T: HomogeneousSubmonoid, name: Optional[str] = None) -> HomogeneousSubmonoid:
    """Submonoid generated by both generator lists (``S`` first, duplicates dropped)."""
    if S.ring != T.ring:
        raise SubmonoidError("submonoids live in different rings")
    gens = list(S.gens)
    facts = list(S.factorizations)
    for g, f in zip(T.gens, T.factorizations):
        if g not in gens:
            gens.append(g)
            facts.append(f)
    if name is None and S.name and T.name:
        name = S.name + T.name
    out = HomogeneousSubmonoid(S.ring, gens, facts, name=name)
    out.warnings = list(dict.fromkeys(S.warnings + T.warnings))
    return out


def trivial_submonoid(ring: GradedRing) -> HomogeneousSubmonoid:
    return HomogeneousSubmonoid(ring, (), name="1")


__all__ = [
    "BarSubmonoid",
    "Factorization",
    "GradingError",
    "HomogeneousSubmonoid",
    "SubmonoidError",
    "ZERO_DEGREE",
    "bar",
    "deg_group",
    "deg_monoid",
    "is_maximally_relevant",
    "is_relevant",
    "product",
    "trivial_submonoid",
]
