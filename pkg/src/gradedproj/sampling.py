"""Deterministic pseudo-random elements for sample-based map checks."""

from __future__ import annotations

import random
from typing import List

from .abelian import GroupElement
from .graded import GradedRing
from .poly import Polynomial
from .potion import PotionElement, make_element
from .submonoid import HomogeneousSubmonoid

DEFAULT_SEED = 0
DEFAULT_SAMPLES = 20


def rng_for(seed: int, *labels) -> random.Random:
    """Independent stream per (seed, label) so sample sets do not shift when checks are added."""
    return random.Random(f"{seed}:" + ":".join(map(str, labels)))


def random_coefficient(rng: random.Random, bound: int = 3) -> int:
    c = 0
    while c == 0:
        c = rng.randint(-bound, bound)
    return c


def random_homogeneous(ring: GradedRing, degree: GroupElement, rng: random.Random,
                       max_total: int, max_terms: int = 3) -> Polynomial:
    monos = ring.standard_monomials(degree, max_total)
    if not monos:
        return ring.zero()
    k = rng.randint(1, min(max_terms, len(monos)))
    chosen = rng.sample(monos, k)
    return Polynomial(ring.vars, {m: random_coefficient(rng) for m in chosen})


def random_witness(S: HomogeneousSubmonoid, rng: random.Random, max_exp: int = 2) -> tuple:
    return tuple(rng.randint(0, max_exp) for _ in S.gens)


def random_potion_element(S: HomogeneousSubmonoid, rng: random.Random,
                          max_exp: int = 2, max_terms: int = 3, slack: int = 2) -> PotionElement:
    w = random_witness(S, rng, max_exp)
    deg = S.degree_of(w)
    den_total = sum(a * max(g.total_degree(), 0) for a, g in zip(w, S.gens))
    num = random_homogeneous(S.ring, deg, rng, den_total + slack, max_terms)
    return make_element(S, num, w)


def sample_potion(S: HomogeneousSubmonoid, count: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                  label: str = "") -> List[PotionElement]:
    rng = rng_for(seed, "potion", label, S.label())
    return [random_potion_element(S, rng) for _ in range(count)]
