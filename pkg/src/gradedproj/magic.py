"""Localization data relating ``A_(S)`` and ``A_(ST)``.

For relevant ``S`` every generator ``t`` of ``T`` admits ``n_t > 0`` and
``s_t, s'_t`` in the divisor closure of ``S`` with
``deg(t^n_t) = deg(s_t) - deg(s'_t)``.  The degree-zero fractions
``e_t = t^n_t s'_t / s_t`` then generate a submonoid of ``A_(S)`` whose
localization is ``A_(ST)``; this module builds both directions of that
isomorphism explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Optional, Sequence

from .abelian import GroupElement, combine, represent_as_difference, torsion_exponent, INFINITY
from .graded import GradingError
from .poly import Polynomial, saturate
from .potion import (
    PotionElement,
    PotionError,
    equiv_bar_potion,
    inclusion,
    make_element,
    one,
    potion_equiv,
)
from .sampling import rng_for, random_potion_element, sample_potion
from .submonoid import HomogeneousSubmonoid, deg_group, is_relevant, product


class NotRelevantError(PotionError):
    pass


@dataclass(frozen=True)
class PotionGenEntry:
    t: Polynomial
    t_index: int
    n: int
    s: tuple  # exponents over the divisor generators of S
    s_prime: tuple
    i: GroupElement
    i_prime: GroupElement


@dataclass(frozen=True)
class PotionGen:
    S: HomogeneousSubmonoid
    T: HomogeneousSubmonoid
    entries: tuple

    def s_poly(self, entry: PotionGenEntry) -> Polynomial:
        return self.S.bar().submonoid.element(entry.s)

    def s_prime_poly(self, entry: PotionGenEntry) -> Polynomial:
        return self.S.bar().submonoid.element(entry.s_prime)

    def check(self):
        """Assert the degree equations of every entry."""
        ring = self.S.ring
        bar = self.S.bar().submonoid
        for e in self.entries:
            if e.n < 1:
                raise PotionError(f"n for {e.t} must be positive")
            if bar.degree_of(e.s) != e.i or bar.degree_of(e.s_prime) != e.i_prime:
                raise PotionError(f"degrees of s, s' for {e.t} do not match i, i'")
            if e.n * ring.degree_of(e.t) != e.i - e.i_prime:
                raise PotionError(f"deg({e.t}^{e.n}) != i - i'")
        return True

    def to_dict(self) -> dict:
        return {
            "entries": [
                {
                    "t": str(e.t),
                    "n": e.n,
                    "s": str(self.s_poly(e)),
                    "s_prime": str(self.s_prime_poly(e)),
                    "i": list(e.i.coords),
                    "i_prime": list(e.i_prime.coords),
                }
                for e in self.entries
            ]
        }


def find_potion_gen(S: HomogeneousSubmonoid, T: HomogeneousSubmonoid,
                    ns: Optional[Sequence[int]] = None) -> PotionGen:
    """Least ``n_t`` per generator of ``T`` (or the prescribed ``ns``)."""
    if S.ring != T.ring:
        raise PotionError("submonoids live in different rings")
    if not is_relevant(S):
        raise NotRelevantError(f"{S!r} is not relevant")
    M = S.ring.group
    bar = S.bar()
    degs = bar.degrees
    bound = torsion_exponent(M, deg_group(bar))
    assert bound is not INFINITY
    entries = []
    for k, (t, dt) in enumerate(zip(T.gens, T.degrees)):
        candidates = [ns[k]] if ns is not None else range(1, bound + 1)
        for n in candidates:
            rep = represent_as_difference(n * dt, degs)
            if rep is not None:
                break
        else:
            if ns is not None:
                raise PotionError(f"{ns[k]} * deg({t}) is not in the degree group of bar(S)")
            raise PotionError(f"internal: no n <= {bound} for {t} although S is relevant")
        s, s_prime = rep
        entries.append(PotionGenEntry(t, k, n, s, s_prime, combine(M, s, degs), combine(M, s_prime, degs)))
    G = PotionGen(S, T, tuple(entries))
    G.check()
    return G


@dataclass(frozen=True)
class GenSubmonoidCert:
    generators: tuple  # PotionElements e_t over S


def gen_submonoid(G: PotionGen) -> GenSubmonoidCert:
    """The fractions ``t^n s' / s`` transported from ``A_(bar S)`` to ``A_(S)``."""
    equiv = equiv_bar_potion(G.S)
    out = []
    for e in G.entries:
        num = e.t ** e.n * G.s_prime_poly(e)
        out.append(equiv.forward(make_element(equiv.bar_submonoid, num, e.s)))
    return GenSubmonoidCert(tuple(out))


# ---------------------------------------------------------------------------
# localization of a potion at finitely many elements


@dataclass(frozen=True)
class LocalizedElement:
    """``num / prod(e_t ** exps[t])``."""

    num: PotionElement
    exps: tuple

    def __str__(self):
        return f"[{self.num}] / e^{list(self.exps)}"


class PotionLocalization:
    """``A_(S)`` localized at the submonoid generated by ``elements``."""

    def __init__(self, S: HomogeneousSubmonoid, elements: Sequence[PotionElement]):
        self.submonoid = S
        self.elements = tuple(elements)

    @cached_property
    def saturated_ideal(self):
        # x = n/d in A_(S) dies after inverting the e_t iff n in I : (g * prod num(e_t))^oo
        f = self.submonoid.generator_product
        for e in self.elements:
            f = self.submonoid.ring.reduce(f * e.num)
        if not f:
            return None  # an e_t is nilpotent: the localization is the zero ring
        return saturate(self.submonoid.ring.ideal, f)

    def element(self, num: PotionElement, exps=None) -> LocalizedElement:
        exps = tuple(exps) if exps is not None else (0,) * len(self.elements)
        if len(exps) != len(self.elements) or any(c < 0 for c in exps):
            raise PotionError("bad localization exponents")
        return LocalizedElement(num, exps)

    def power_product(self, exps) -> PotionElement:
        out = one(self.submonoid)
        for e, c in zip(self.elements, exps):
            for _ in range(c):
                out = out * e
        return out

    def add(self, x: LocalizedElement, y: LocalizedElement) -> LocalizedElement:
        num = x.num * self.power_product(y.exps) + y.num * self.power_product(x.exps)
        return LocalizedElement(num, tuple(a + b for a, b in zip(x.exps, y.exps)))

    def mul(self, x: LocalizedElement, y: LocalizedElement) -> LocalizedElement:
        return LocalizedElement(x.num * y.num, tuple(a + b for a, b in zip(x.exps, y.exps)))

    def eq(self, x: LocalizedElement, y: LocalizedElement) -> bool:
        w = x.num * self.power_product(y.exps) - y.num * self.power_product(x.exps)
        sat = self.saturated_ideal
        return sat is None or not sat.normal_form(w.num)


class LocalizationEquiv:
    """``A_(S)[e_t^-1] <-> A_(ST)`` for a :class:`PotionGen`."""

    def __init__(self, G: PotionGen):
        G.check()
        self.G = G
        S, T = G.S, G.T
        self.S = S
        self.ST = product(S, T)
        self.bar_equiv = equiv_bar_potion(S)
        self.cert = gen_submonoid(G)
        self.localization = PotionLocalization(S, self.cert.generators)
        self.to_st = inclusion(S, self.ST)
        self.t_slots = [self.ST.index(e.t) for e in G.entries]

    @cached_property
    def inverses(self) -> List[PotionElement]:
        """``s_t / (t^n s'_t)`` as elements of ``A_(ST)``."""
        bar = self.S.bar()
        out = []
        for e, slot in zip(self.G.entries, self.t_slots):
            sw, cof = bar.lift(e.s_prime)
            w = list(self.to_st.map_witness(sw))
            w[slot] += e.n
            out.append(make_element(self.ST, self.G.s_poly(e) * cof, w))
        return out

    def forward(self, x: LocalizedElement) -> PotionElement:
        out = self.to_st(x.num)
        for inv, c in zip(self.inverses, x.exps):
            for _ in range(c):
                out = out * inv
        return out

    def backward(self, z: PotionElement) -> LocalizedElement:
        if z.submonoid != self.ST:
            raise PotionError("backward expects an element of A_(ST)")
        S, G = self.S, self.G
        bar = S.bar()
        ring = S.ring
        w = z.witness
        a = w[: len(S)]
        unit, bar_w = bar.from_base(a)
        bar_w = list(bar_w)
        num = z.num / unit
        ks = []
        for e, slot in zip(G.entries, self.t_slots):
            b = w[slot] if slot >= len(S) else 0
            k = -(-b // e.n)
            pad = k * e.n - b
            if pad:
                num = num * e.t ** pad
            if k:
                num = num * G.s_prime_poly(e) ** k
                bar_w = [x + k * y for x, y in zip(bar_w, e.s)]
            ks.append(k)
        elem = make_element(self.bar_equiv.bar_submonoid, ring.reduce(num), bar_w)
        return LocalizedElement(self.bar_equiv.forward(elem), tuple(ks))

    def sample_localized(self, count: int, seed: int) -> List[LocalizedElement]:
        rng = rng_for(seed, "localized", self.S.label(), self.G.T.label())
        out = []
        for _ in range(count):
            num = random_potion_element(self.S, rng)
            exps = tuple(rng.randint(0, 2) for _ in self.G.entries)
            out.append(LocalizedElement(num, exps))
        return out

    def round_trip_report(self, count: int = 20, seed: int = 0) -> dict:
        loc = self.localization
        left = self.sample_localized(count, seed)
        right = sample_potion(self.ST, count, seed, label="magic2")
        bf = sum(1 for x in left if loc.eq(self.backward(self.forward(x)), x))
        fb = sum(1 for z in right if self.forward(self.backward(z)) == z)
        return {"backward_forward": f"{bf}/{count}", "forward_backward": f"{fb}/{count}",
                "passed": bf == count and fb == count}


def localization_equiv_potion(S: HomogeneousSubmonoid, T: HomogeneousSubmonoid,
                              G: Optional[PotionGen] = None) -> LocalizationEquiv:
    return LocalizationEquiv(G if G is not None else find_potion_gen(S, T))


def localizations_agree(first: LocalizationEquiv, second: LocalizationEquiv, count: int = 20, seed: int = 0) -> bool:
    """Two PotionGens for the same ``(S, T)``: their localizations match through ``A_(ST)``."""
    for src, dst in ((first, second), (second, first)):
        for x in src.sample_localized(count, seed):
            y = dst.backward(src.forward(x))
            if not src.localization.eq(src.backward(dst.forward(y)), x):
                return False
    return True


# ---------------------------------------------------------------------------
# certificates


@dataclass
class OpenImmersionCertificate:
    S: HomogeneousSubmonoid
    T: HomogeneousSubmonoid
    potion_gen: PotionGen
    elements: tuple
    inverse_checks: list
    units_in_source: list
    verdict: str = "localization"

    @property
    def trivial(self) -> bool:
        """All ``e_t`` are already units of ``A_(S)``."""
        return all(u is True for u in self.units_in_source)

    def to_dict(self) -> dict:
        return {
            "S": self.S.label(),
            "T": self.T.label(),
            "verdict": self.verdict,
            "elements": [str(e) for e in self.elements],
            "potion_gen": self.potion_gen.to_dict(),
            "inverses_verified": all(self.inverse_checks),
            "elements_are_units_in_source": self.trivial,
        }


def _unit_in_bar(G: PotionGen, entry: PotionGenEntry) -> Optional[bool]:
    """Invert ``t^n s'/s`` inside ``A_(bar S)`` when ``t`` is a known product of divisors."""
    bar = G.S.bar()
    fact = G.T.factorizations[entry.t_index]
    divisors = [d.poly for d in bar.divisor_generators]
    tau = [0] * len(divisors)
    for f, m in fact.factors:
        if f not in divisors:
            return None
        tau[divisors.index(f)] += m
    barS = bar.submonoid
    e = make_element(barS, entry.t ** entry.n * G.s_prime_poly(entry), entry.s)
    den_w = [entry.n * a + b for a, b in zip(tau, entry.s_prime)]
    inv = make_element(barS, G.s_poly(entry) / fact.unit ** entry.n, den_w)
    return e * inv == one(barS)


def open_immersion_certificate(S: HomogeneousSubmonoid, T: HomogeneousSubmonoid) -> OpenImmersionCertificate:
    """``A_(S) -> A_(ST)`` is the localization at the explicit ``e_t``."""
    G = find_potion_gen(S, T)
    equiv = LocalizationEquiv(G)
    checks = [equiv.to_st(e) * inv == one(equiv.ST) for e, inv in zip(equiv.cert.generators, equiv.inverses)]
    units = [_unit_in_bar(G, e) for e in G.entries]
    verdict = "localization" if all(checks) else "failed"
    return OpenImmersionCertificate(S, T, G, equiv.cert.generators, checks, units, verdict)


@dataclass
class SumCoverReport:
    elements: list
    sum: Polynomial
    pairs: list = field(default_factory=list)
    certificates: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(p["verdict"] == "pass" for p in self.pairs) and all(
            c.verdict == "localization" for c in self.certificates
        )

    def to_dict(self) -> dict:
        return {
            "elements": [str(f) for f in self.elements],
            "sum": str(self.sum),
            "charts": [c.to_dict() for c in self.certificates],
            "pairs": self.pairs,
            "passed": self.passed,
        }


def sum_cover_check(ring, fs: Sequence, samples: int = 20, seed: int = 0) -> SumCoverReport:
    """Compatibility of ``A_(g) -> A_(f_i g)`` on overlaps, ``g = f_1 + ... + f_n``."""
    if not fs:
        raise PotionError("need at least one element")
    polys = [ring.reduce(ring.poly(f)) for f in fs]
    degree = None
    for f in polys:
        if not f:
            raise PotionError("elements must be nonzero")
        d = ring.is_homogeneous(f)
        if d is None:
            raise GradingError(f"{f} is not homogeneous")
        if degree is not None and d != degree:
            raise GradingError(f"{f} has degree {d}, expected {degree}")
        degree = d
    F = [HomogeneousSubmonoid(ring, [f], name=f"f{k + 1}") for k, f in enumerate(polys)]
    for Fi in F:
        if not is_relevant(Fi):
            raise NotRelevantError(f"{Fi.gens[0]} is not relevant")
    g = ring.reduce(sum(polys[1:], polys[0]))
    if not g:
        raise PotionError("the sum of the elements is zero")
    Gs = HomogeneousSubmonoid(ring, [g], name="g")
    report = SumCoverReport(polys, g)
    FG = [product(Fi, Gs) for Fi in F]
    report.certificates = [open_immersion_certificate(Fi, Gs) for Fi in F]
    xs = sample_potion(Gs, samples, seed, label="magic4")
    for i in range(len(F)):
        for j in range(i + 1, len(F)):
            Pij = product(FG[i], F[j])
            Pji = product(FG[j], F[i])
            route_i = inclusion(FG[i], Pij).compose(inclusion(Gs, FG[i]))
            route_j = inclusion(FG[j], Pji).compose(inclusion(Gs, FG[j]))
            align = potion_equiv(Pji, Pij).forward
            ok = sum(1 for x in xs if route_i(x) == align(route_j(x)))
            report.pairs.append({
                "i": i + 1,
                "j": j + 1,
                "agree": f"{ok}/{len(xs)}",
                "verdict": "pass" if ok == len(xs) else "fail",
            })
    return report
