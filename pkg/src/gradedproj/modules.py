"""Finitely presented graded modules, shifts, module potions, twists, negligibility."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

from .abelian import GroupElement, combine, represent_as_difference
from .graded import ZERO_DEGREE, GradedRing, GradingError
from .poly import ModuleBasis, Polynomial, module_saturate
from .potion import PotionElement, PotionError, SubmonoidMismatch, make_element, one
from .sampling import rng_for, random_homogeneous, random_witness, sample_potion
from .submonoid import HomogeneousSubmonoid, is_maximally_relevant


class ModuleError(ValueError):
    pass


class GradedModule:
    """``A^r / relations`` with free generators of degrees ``gen_degrees``."""

    def __init__(self, ring: GradedRing, gen_degrees: Sequence, relations: Sequence = (), name: Optional[str] = None):
        self.ring = ring
        self.name = name
        G = ring.group
        self.gen_degrees = tuple(d if isinstance(d, GroupElement) else G.element(d) for d in gen_degrees)
        rels = []
        for k, r in enumerate(relations):
            if len(r) != self.rank:
                raise ModuleError(f"relation #{k} has {len(r)} entries, expected {self.rank}")
            v = tuple(ring.reduce(ring.poly(p)) for p in r)
            try:
                self.degree_of(v)
            except GradingError as e:
                raise ModuleError(f"relation #{k}: {e}") from None
            rels.append(v)
        self.relations = tuple(rels)

    @property
    def rank(self) -> int:
        return len(self.gen_degrees)

    def _signature(self):
        return (self.ring, self.gen_degrees, self.relations)

    def __eq__(self, other):
        return isinstance(other, GradedModule) and other._signature() == self._signature()

    def __hash__(self):
        return hash(self._signature())

    def __repr__(self):
        degs = ", ".join(str(d) for d in self.gen_degrees)
        return f"GradedModule(gens of degree [{degs}], {len(self.relations)} relations)"

    def vector(self, entries) -> tuple:
        if len(entries) != self.rank:
            raise ModuleError(f"expected {self.rank} entries")
        return tuple(self.ring.reduce(self.ring.poly(p)) for p in entries)

    def basis_vector(self, i: int) -> tuple:
        R = self.ring
        return tuple(R.one() if j == i else R.zero() for j in range(self.rank))

    def degree_of(self, v):
        """Common degree of the nonzero entries (shifted by generator degrees)."""
        deg = ZERO_DEGREE
        for j, p in enumerate(v):
            d = self.ring.is_homogeneous(p)
            if d is None:
                raise GradingError(f"entry {j} ({p}) is not homogeneous")
            if d is ZERO_DEGREE:
                continue
            d = d + self.gen_degrees[j]
            if deg is not ZERO_DEGREE and d != deg:
                raise GradingError(f"entries have degrees {deg} and {d}")
            deg = d
        return deg

    @cached_property
    def submodule(self) -> ModuleBasis:
        """Relations together with ``I * e_j``, as a submodule of the free polynomial module."""
        R = self.ring
        rels = list(self.relations)
        for j in range(self.rank):
            for g in R.ideal.generators:
                rels.append(tuple(g if k == j else R.zero() for k in range(self.rank)))
        return ModuleBasis(rels, self.rank, R.vars)

    def saturated(self, S: HomogeneousSubmonoid) -> ModuleBasis:
        cache = self.__dict__.setdefault("_saturations", {})
        if S not in cache:
            g = S.generator_product
            if g:
                cache[S] = module_saturate(self.submodule, g)
            else:
                cache[S] = ModuleBasis([self.basis_vector(i) for i in range(self.rank)], self.rank, self.ring.vars)
        return cache[S]


class ShiftedModule(GradedModule):
    """``Q(alpha)``: same relations, generator degrees moved by ``-alpha``."""

    def __init__(self, base: GradedModule, shift: GroupElement):
        self.base = base
        self.shift = shift
        super().__init__(base.ring, [d - shift for d in base.gen_degrees], base.relations, name=base.name)
        self.__dict__["_saturations"] = base.__dict__.setdefault("_saturations", {})


def shift(Q: GradedModule, alpha) -> GradedModule:
    G = Q.ring.group
    alpha = alpha if isinstance(alpha, GroupElement) else G.element(alpha)
    if isinstance(Q, ShiftedModule):
        total = Q.shift + alpha
        return Q.base if total.is_zero() else ShiftedModule(Q.base, total)
    return Q if alpha.is_zero() else ShiftedModule(Q, alpha)


def free_module(ring: GradedRing, rank: int = 1) -> GradedModule:
    return GradedModule(ring, [ring.group.zero()] * rank)


# ---------------------------------------------------------------------------
# module potions


class ModulePotionElement:
    """``num / den`` with ``num`` in ``Q`` and ``den`` in ``S`` of the same degree."""

    __slots__ = ("module", "submonoid", "deg", "num", "den", "witness")

    def __init__(self, module, submonoid, deg, num, den, witness):
        self.module = module
        self.submonoid = submonoid
        self.deg = deg
        self.num = num
        self.den = den
        self.witness = witness

    def _same(self, other):
        if not isinstance(other, ModulePotionElement):
            raise TypeError(f"expected a module potion element, got {type(other).__name__}")
        if other.module != self.module or other.submonoid != self.submonoid:
            raise SubmonoidMismatch("module potion elements over different data")

    def __add__(self, other):
        self._same(other)
        num = tuple(a * other.den + b * self.den for a, b in zip(self.num, other.num))
        w = [x + y for x, y in zip(self.witness, other.witness)]
        return make_module_element(self.module, self.submonoid, num, w)

    def __neg__(self):
        return ModulePotionElement(self.module, self.submonoid, self.deg, tuple(-p for p in self.num),
                                   self.den, self.witness)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, x: PotionElement) -> "ModulePotionElement":
        """Action of ``A_(S)``."""
        if x.submonoid != self.submonoid:
            raise SubmonoidMismatch("scalar from another potion")
        w = [a + b for a, b in zip(self.witness, x.witness)]
        return make_module_element(self.module, self.submonoid, tuple(p * x.num for p in self.num), w)

    def __eq__(self, other):
        if not isinstance(other, ModulePotionElement):
            return NotImplemented
        return module_potion_eq(self, other)

    __hash__ = None

    def is_zero(self) -> bool:
        nf = self.module.saturated(self.submonoid).normal_form(self.num)
        return not any(nf)

    def __str__(self):
        return f"({', '.join(map(str, self.num))})/{self.den}"


def make_module_element(Q: GradedModule, S: HomogeneousSubmonoid, num, witness) -> ModulePotionElement:
    if S.ring != Q.ring:
        raise ModuleError("submonoid and module live over different rings")
    w = S.check_witness(witness)
    v = Q.vector(num)
    deg = S.degree_of(w)
    d = Q.degree_of(v)
    if d is not ZERO_DEGREE and d != deg:
        raise GradingError(f"numerator has degree {d} but the denominator has degree {deg}")
    return ModulePotionElement(Q, S, deg, v, S.element(w), w)


def module_potion_eq(a: ModulePotionElement, b: ModulePotionElement) -> bool:
    """Cross difference annihilated by a power of the generator product."""
    a._same(b)
    z = tuple(p * b.den - q * a.den for p, q in zip(a.num, b.num))
    if not any(z):
        return True
    nf = a.module.saturated(a.submonoid).normal_form(z)
    return not any(nf)


def random_module_element(Q: GradedModule, S: HomogeneousSubmonoid, rng, slack: int = 3) -> ModulePotionElement:
    w = random_witness(S, rng)
    deg = S.degree_of(w)
    den_total = sum(a * max(g.total_degree(), 0) for a, g in zip(w, S.gens))
    j = rng.randrange(Q.rank)
    p = random_homogeneous(Q.ring, deg - Q.gen_degrees[j], rng, den_total + slack)
    num = [Q.ring.zero()] * Q.rank
    num[j] = p
    return make_module_element(Q, S, num, w)


# ---------------------------------------------------------------------------
# twists


@dataclass
class TwistGenerator:
    """``u = s / s'`` of degree ``alpha`` with ``s, s'`` in the divisor closure of ``S``."""

    submonoid: HomogeneousSubmonoid
    alpha: GroupElement
    s: tuple
    s_prime: tuple
    checks: dict = field(default_factory=dict)

    @property
    def num(self) -> Polynomial:
        return self.submonoid.bar().submonoid.element(self.s)

    @property
    def den(self) -> Polynomial:
        return self.submonoid.bar().submonoid.element(self.s_prime)

    @cached_property
    def twisted(self) -> GradedModule:
        return shift(free_module(self.submonoid.ring), self.alpha)

    def __str__(self):
        return f"{self.num}/{self.den}"

    def _lifted(self, exps):
        w, cof = self.submonoid.bar().lift(exps)
        return w, cof

    def multiply(self, x: PotionElement) -> ModulePotionElement:
        """``A_(S) -> A(alpha)_(S)``, ``x -> u x``."""
        w, cof = self._lifted(self.s_prime)
        den_w = [a + b for a, b in zip(x.witness, w)]
        return make_module_element(self.twisted, self.submonoid, [x.num * self.num * cof], den_w)

    def divide(self, y: ModulePotionElement) -> PotionElement:
        """``A(alpha)_(S) -> A_(S)``, ``y -> y / u``."""
        w, cof = self._lifted(self.s)
        den_w = [a + b for a, b in zip(y.witness, w)]
        return make_element(self.submonoid, y.num[0] * self.den * cof, den_w)

    def to_dict(self) -> dict:
        return {"S": self.submonoid.label(), "alpha": list(self.alpha.coords), "u": str(self),
                "deg_u": list(self.alpha.coords), **self.checks}


def twist_generator(S: HomogeneousSubmonoid, alpha, samples: int = 20, seed: int = 0) -> TwistGenerator:
    if not is_maximally_relevant(S):
        raise PotionError(f"{S.label()} is not maximally relevant")
    G = S.ring.group
    alpha = alpha if isinstance(alpha, GroupElement) else G.element(alpha)
    bar = S.bar()
    rep = represent_as_difference(alpha, bar.degrees)
    assert rep is not None  # maximal relevance
    s, s_prime = rep
    u = TwistGenerator(S, alpha, s, s_prime)
    barS = bar.submonoid
    if combine(G, s, bar.degrees) - combine(G, s_prime, bar.degrees) != alpha:
        raise PotionError("internal: twist generator has the wrong degree")
    inverse_ok = make_element(barS, u.num * u.den, [a + b for a, b in zip(s, s_prime)]) == one(barS)
    xs = sample_potion(S, samples, seed, label="twist")
    rng = rng_for(seed, "twist-module", S.label(), alpha)
    ys = [random_module_element(u.twisted, S, rng) for _ in range(samples)]
    left = sum(1 for x in xs if u.divide(u.multiply(x)) == x)
    right = sum(1 for y in ys if u.multiply(u.divide(y)) == y)
    u.checks = {
        "inverse_verified": inverse_ok,
        "divide_after_multiply": f"{left}/{samples}",
        "multiply_after_divide": f"{right}/{samples}",
        "passed": inverse_ok and left == samples and right == samples,
    }
    return u


# ---------------------------------------------------------------------------
# negligibility


@dataclass
class ChartVerdict:
    S: str
    verdict: str  # "zero", "nonzero", "inconclusive"
    witness: Optional[str] = None

    def to_dict(self) -> dict:
        out = {"S": self.S, "verdict": self.verdict}
        if self.witness:
            out["witness"] = self.witness
        return out


def chart_vanishes(Q: GradedModule, S: HomogeneousSubmonoid, search_total: int = 4) -> ChartVerdict:
    """Whether ``Q_(S)`` is zero.

    If every generator dies in ``Q_S`` the chart is zero.  Otherwise a surviving
    ``a * e_i`` whose degree lies in the degree group of the divisor closure
    gives a nonzero element ``a e_i s' / s`` of degree 0.
    """
    sat = Q.saturated(S)
    survivors = [i for i in range(Q.rank) if any(sat.normal_form(Q.basis_vector(i)))]
    if not survivors:
        return ChartVerdict(S.label(), "zero")
    R = Q.ring
    bar = S.bar()
    buckets = R.monomials_up_to(search_total)
    for total in range(search_total + 1):
        for i in survivors:
            for mdeg, monos in buckets.items():
                for m in monos:
                    if sum(m) != total:
                        continue
                    rep = represent_as_difference(mdeg + Q.gen_degrees[i], bar.degrees)
                    if rep is None:
                        continue
                    v = [R.zero()] * Q.rank
                    v[i] = Polynomial.monomial(R.vars, m)
                    if any(sat.normal_form(Q.vector(v))):
                        a = str(v[i])
                        s = bar.submonoid.element(rep[0])
                        sp = bar.submonoid.element(rep[1])
                        return ChartVerdict(S.label(), "nonzero", f"{a}*e{i}*({sp})/({s})")
    return ChartVerdict(S.label(), "inconclusive")


@dataclass
class NegligibilityReport:
    charts: list

    @property
    def verdict(self) -> str:
        vs = [c.verdict for c in self.charts]
        if all(v == "zero" for v in vs):
            return "negligible"
        if "nonzero" in vs:
            return "not negligible"
        return "inconclusive"

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "scope": "relative to the declared family",
                "charts": [c.to_dict() for c in self.charts]}


def is_negligible_on_family(Q: GradedModule, family, search_total: int = 4) -> NegligibilityReport:
    return NegligibilityReport([chart_vanishes(Q, S, search_total) for S in family])
