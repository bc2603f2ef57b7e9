"""Potions ``A_(S)``: degree-zero fractions ``num/den`` with ``den`` in ``S``.

An element is a :class:`NumDenSameDeg` triple tagged with its submonoid.  No
canonical form is computed; equality is decided on demand by checking that the
cross difference lies in ``I : g^oo`` where ``g`` is the product of the
generators of ``S``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .abelian import GroupElement
from .graded import ZERO_DEGREE, GradingError
from .poly import Polynomial
from .submonoid import HomogeneousSubmonoid, SubmonoidError, product


class PotionError(ValueError):
    pass


class SubmonoidMismatch(PotionError):
    pass


class CertificateError(PotionError):
    pass


@dataclass(frozen=True)
class NumDenSameDeg:
    deg: GroupElement
    num: Polynomial
    den: Polynomial
    witness: tuple


def make_element(S: HomogeneousSubmonoid, num, witness) -> "PotionElement":
    """Validated constructor: ``den`` and ``deg`` are derived from ``witness``."""
    ring = S.ring
    w = S.check_witness(witness)
    num = ring.reduce(ring.poly(num))
    deg = S.degree_of(w)
    d = ring.is_homogeneous(num)
    if d is None:
        raise GradingError(f"numerator {num} is not homogeneous")
    if d is not ZERO_DEGREE and d != deg:
        raise GradingError(f"numerator {num} has degree {d} but the denominator has degree {deg}")
    return PotionElement(S, NumDenSameDeg(deg, num, S.element(w), w))


class PotionElement:
    __slots__ = ("submonoid", "rep")

    def __init__(self, submonoid: HomogeneousSubmonoid, rep: NumDenSameDeg):
        self.submonoid = submonoid
        self.rep = rep

    @property
    def deg(self):
        return self.rep.deg

    @property
    def num(self):
        return self.rep.num

    @property
    def den(self):
        return self.rep.den

    @property
    def witness(self):
        return self.rep.witness

    def _same(self, other):
        if not isinstance(other, PotionElement):
            raise TypeError(f"expected a potion element, got {type(other).__name__}")
        if other.submonoid is not self.submonoid and other.submonoid != self.submonoid:
            raise SubmonoidMismatch(f"{self.submonoid!r} vs {other.submonoid!r}")

    def _build(self, num, witness):
        S = self.submonoid
        ring = S.ring
        w = tuple(witness)
        return PotionElement(S, NumDenSameDeg(S.degree_of(w), ring.reduce(num), S.element(w), w))

    def __add__(self, other):
        self._same(other)
        a, b = self.rep, other.rep
        return self._build(a.num * b.den + b.num * a.den, [x + y for x, y in zip(a.witness, b.witness)])

    def __neg__(self):
        return PotionElement(self.submonoid, NumDenSameDeg(self.deg, -self.num, self.den, self.witness))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._same(other)
        a, b = self.rep, other.rep
        return self._build(a.num * b.num, [x + y for x, y in zip(a.witness, b.witness)])

    def __pow__(self, n: int):
        out = one(self.submonoid)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, PotionElement):
            return NotImplemented
        return potion_eq(self, other)

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.submonoid.saturated_ideal.normal_form(self.num)

    def to_dict(self) -> dict:
        return {
            "deg": list(self.deg.coords),
            "num": str(self.num),
            "den": str(self.den),
            "witness": list(self.witness),
        }

    def __str__(self):
        num, den = str(self.num), str(self.den)
        if len(self.num.terms) > 1:
            num = f"({num})"
        if den == "1":
            return num
        if len(self.den.terms) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"PotionElement({self}, S={self.submonoid!r})"


def zero(S: HomogeneousSubmonoid) -> PotionElement:
    return make_element(S, S.ring.zero(), (0,) * len(S))


def one(S: HomogeneousSubmonoid) -> PotionElement:
    return make_element(S, S.ring.one(), (0,) * len(S))


def potion_eq(a: PotionElement, b: PotionElement) -> bool:
    """``n/d == n'/d'`` in ``A_S``: some element of ``S`` kills ``n d' - n' d``."""
    a._same(b)
    z = a.num * b.den - b.num * a.den
    if not z:
        return True
    return not a.submonoid.saturated_ideal.normal_form(z)


class Potion:
    """Handle on the ring ``A_(S)``."""

    def __init__(self, S: HomogeneousSubmonoid):
        self.submonoid = S

    def element(self, num, witness) -> PotionElement:
        return make_element(self.submonoid, num, witness)

    def zero(self):
        return zero(self.submonoid)

    def one(self):
        return one(self.submonoid)

    def __repr__(self):
        return f"Potion({self.submonoid!r})"


# ---------------------------------------------------------------------------
# homomorphisms between potions


class PotionHom:
    """Map ``A_(S) -> B_(T)`` sending ``n/d`` to ``phi(n)/phi(d)``.

    ``witness_images[i]`` expresses ``phi(S.gens[i])`` as an element of ``T``;
    these certificates are checked by exact multiplication on construction.
    ``poly_map`` defaults to the identity on the common ring.
    """

    def __init__(self, source: HomogeneousSubmonoid, target: HomogeneousSubmonoid,
                 witness_images: Sequence[Sequence[int]], poly_map: Optional[Callable] = None):
        self.source = source
        self.target = target
        self.poly_map = poly_map
        if len(witness_images) != len(source):
            raise CertificateError("need one witness image per source generator")
        self.witness_images = tuple(target.check_witness(w) for w in witness_images)
        for g, w in zip(source.gens, self.witness_images):
            if not target.ring.equal(self._map_poly(g), target.element(w)):
                raise CertificateError(f"image of generator {g} is not the certified element of {target!r}")

    def _map_poly(self, p):
        if self.poly_map is None:
            if self.source.ring != self.target.ring:
                raise CertificateError("identity polynomial map between different rings")
            return p
        return self.poly_map(p)

    def map_witness(self, w) -> tuple:
        out = [0] * len(self.target)
        for a, img in zip(w, self.witness_images):
            if a:
                for j, x in enumerate(img):
                    out[j] += a * x
        return tuple(out)

    def __call__(self, a: PotionElement) -> PotionElement:
        if a.submonoid != self.source:
            raise SubmonoidMismatch(f"map is defined on {self.source!r}, got {a.submonoid!r}")
        return make_element(self.target, self._map_poly(a.num), self.map_witness(a.witness))

    def compose(self, first: "PotionHom") -> "PotionHom":
        """``self o first``."""
        if first.target != self.source:
            raise SubmonoidMismatch("cannot compose potion maps")
        if first.poly_map is None and self.poly_map is None:
            poly_map = None
        else:
            poly_map = lambda p: self._map_poly(first._map_poly(p))  # noqa: E731
        images = [self.map_witness(w) for w in first.witness_images]
        return PotionHom(first.source, self.target, images, poly_map)

    def __repr__(self):
        return f"PotionHom({self.source!r} -> {self.target!r})"


def inclusion(S: HomogeneousSubmonoid, target: HomogeneousSubmonoid) -> PotionHom:
    """``A_(S) -> A_(target)`` when every generator of ``S`` is a generator of ``target``."""
    images = []
    for g in S.gens:
        i = target.index(g)
        if i is None:
            raise CertificateError(f"generator {g} of {S!r} is not a generator of {target!r}")
        images.append(target.unit_vector(i))
    return PotionHom(S, target, images)


def potion_map(S: HomogeneousSubmonoid, T: HomogeneousSubmonoid) -> PotionHom:
    """The canonical map ``A_(S) -> A_(ST)``."""
    return inclusion(S, product(S, T))


@dataclass(frozen=True)
class RingEquiv:
    forward: Callable
    backward: Callable

    def round_trips(self, left_samples, right_samples) -> bool:
        return all(self.backward(self.forward(a)) == a for a in left_samples) and all(
            self.forward(self.backward(b)) == b for b in right_samples
        )


class BarPotionEquiv:
    """``A_(bar S) <-> A_(S)``; forward clears a divisor denominator by its cofactor."""

    def __init__(self, S: HomogeneousSubmonoid):
        self.submonoid = S
        self.bar = S.bar()
        self.bar_submonoid = self.bar.submonoid

    def forward(self, a: PotionElement) -> PotionElement:
        if a.submonoid != self.bar_submonoid:
            raise SubmonoidMismatch("forward expects an element of the bar potion")
        w, cof = self.bar.lift(a.witness)
        return make_element(self.submonoid, a.num * cof, w)

    def backward(self, a: PotionElement) -> PotionElement:
        if a.submonoid != self.submonoid:
            raise SubmonoidMismatch("backward expects an element of the potion of S")
        unit, e = self.bar.from_base(a.witness)
        return make_element(self.bar_submonoid, a.num / unit, e)

    def as_ring_equiv(self) -> RingEquiv:
        return RingEquiv(self.forward, self.backward)


def equiv_bar_potion(S: HomogeneousSubmonoid) -> BarPotionEquiv:
    return BarPotionEquiv(S)


@dataclass(frozen=True)
class EqualityCertificate:
    """Each generator of one submonoid written over the generators of the other."""

    s_in_t: tuple
    t_in_s: tuple


def _express(g: Polynomial, T: HomogeneousSubmonoid, max_total: int) -> Optional[tuple]:
    i = T.index(g)
    if i is not None:
        return T.unit_vector(i)
    ring = T.ring
    d = ring.degree_of(g)
    for total in range(2, max_total + 1):
        for combo in itertools.combinations_with_replacement(range(len(T)), total):
            w = [0] * len(T)
            for k in combo:
                w[k] += 1
            if T.degree_of(w) == d and ring.equal(T.element(w), g):
                return tuple(w)
    return None


def find_equality_certificate(S: HomogeneousSubmonoid, T: HomogeneousSubmonoid, max_total: int = 4) -> EqualityCertificate:
    """Search exponent vectors (total <= ``max_total``) proving ``S == T``."""
    if S.ring != T.ring:
        raise CertificateError("submonoids live in different rings")
    s_in_t, t_in_s = [], []
    for src, dst, out in ((S, T, s_in_t), (T, S, t_in_s)):
        for g in src.gens:
            w = _express(g, dst, max_total)
            if w is None:
                raise CertificateError(f"could not write {g} over the generators of {dst!r}")
            out.append(w)
    return EqualityCertificate(tuple(s_in_t), tuple(t_in_s))


def potion_equiv(S: HomogeneousSubmonoid, T: HomogeneousSubmonoid,
                 certificate: Optional[EqualityCertificate] = None) -> RingEquiv:
    """``A_(S) <-> A_(T)`` for equal submonoids, built from explicit certificates."""
    if certificate is None:
        certificate = find_equality_certificate(S, T)
    return RingEquiv(PotionHom(S, T, certificate.s_in_t), PotionHom(T, S, certificate.t_in_s))


__all__ = [
    "BarPotionEquiv",
    "CertificateError",
    "EqualityCertificate",
    "NumDenSameDeg",
    "Potion",
    "PotionElement",
    "PotionError",
    "PotionHom",
    "RingEquiv",
    "SubmonoidError",
    "SubmonoidMismatch",
    "equiv_bar_potion",
    "find_equality_certificate",
    "inclusion",
    "make_element",
    "one",
    "potion_eq",
    "potion_map",
    "potion_equiv",
    "zero",
]
