"""Buchberger's algorithm for ideals and for submodules of free modules.

One engine serves both: an element is a dict from *terms* ``(position, monomial)``
to coefficients.  Ideals are the rank-1 case (position always 0), where the
coprime-leading-monomial criterion is also enabled.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

from .polynomial import (
    GREVLEX,
    Monomial,
    MonomialOrder,
    Polynomial,
    VariableMismatch,
    elimination_order,
    monomial_divides,
    monomial_lcm,
)

Term = Tuple[int, Monomial]
Vector = Dict[Term, Fraction]


# ---------------------------------------------------------------------------
# engine


def _reduce(f: Vector, basis, key) -> Vector:
    """Full remainder of ``f`` by monic ``basis`` entries ``(lead_term, vector)``."""
    p = dict(f)
    r = {}
    while p:
        t = max(p, key=key)
        c = p[t]
        pos, mono = t
        for (gpos, gmono), g in basis:
            if gpos == pos and monomial_divides(gmono, mono):
                q = tuple(a - b for a, b in zip(mono, gmono))
                for (hpos, hmono), hc in g.items():
                    nt = (hpos, tuple(a + b for a, b in zip(hmono, q)))
                    v = p.get(nt, 0) - c * hc
                    if v:
                        p[nt] = v
                    else:
                        p.pop(nt, None)
                break
        else:
            r[t] = c
            del p[t]
    return r


def _monic(f: Vector, key) -> Tuple[Term, Vector]:
    lt = max(f, key=key)
    c = f[lt]
    return lt, {t: v / c for t, v in f.items()}


def _spoly(f, ltf, g, ltg):
    lcm = monomial_lcm(ltf[1], ltg[1])
    qf = tuple(a - b for a, b in zip(lcm, ltf[1]))
    qg = tuple(a - b for a, b in zip(lcm, ltg[1]))
    out = {}
    for (pos, m), c in f.items():
        out[(pos, tuple(a + b for a, b in zip(m, qf)))] = c
    for (pos, m), c in g.items():
        t = (pos, tuple(a + b for a, b in zip(m, qg)))
        v = out.get(t, 0) - c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def _buchberger(F: Sequence[Vector], key: Callable[[Term], tuple], ideal: bool) -> List[Tuple[Term, Vector]]:
    G: List[Tuple[Term, Vector]] = []
    pairs = set()

    def add(f):
        lt, g = _monic(f, key)
        n = len(G)
        for k, (ltk, _) in enumerate(G):
            if ltk[0] == lt[0]:
                pairs.add((k, n))
        G.append((lt, g))

    for f in F:
        if f:
            add(f)
    for lt, g in G:
        if ideal and not any(lt[1]):
            return [(lt, {lt: Fraction(1)})]

    def pair_key(p):
        i, j = p
        lcm = (G[i][0][0], monomial_lcm(G[i][0][1], G[j][0][1]))
        return (key(lcm), -j, -i)

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        lti, gi = G[i]
        ltj, gj = G[j]
        lcm = monomial_lcm(lti[1], ltj[1])
        if ideal and all(a == 0 or b == 0 for a, b in zip(lti[1], ltj[1])):
            continue
        chain = False
        for k, (ltk, _) in enumerate(G):
            if k in (i, j) or ltk[0] != lti[0] or not monomial_divides(ltk[1], lcm):
                continue
            if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                chain = True
                break
        if chain:
            continue
        h = _reduce(_spoly(gi, lti, gj, ltj), G, key)
        if h:
            add(h)
            lt = G[-1][0]
            if ideal and not any(lt[1]):
                return [(lt, {lt: Fraction(1)})]

    # minimalize
    keep = []
    for i, (lti, gi) in enumerate(G):
        redundant = False
        for j, (ltj, _) in enumerate(G):
            if j == i or ltj[0] != lti[0] or not monomial_divides(ltj[1], lti[1]):
                continue
            if ltj != lti or j < i:
                redundant = True
                break
        if not redundant:
            keep.append((lti, gi))
    # interreduce
    reduced = []
    for i, (lt, g) in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r = _reduce(g, others, key)
        reduced.append(_monic(r, key))
    reduced.sort(key=lambda e: key(e[0]), reverse=True)
    return reduced


# ---------------------------------------------------------------------------
# ideals


def _to_vector(p: Polynomial) -> Vector:
    return {(0, m): c for m, c in p.terms.items()}


def _from_vector(v: Vector, vars) -> Polynomial:
    return Polynomial(vars, {m: c for (_, m), c in v.items()})


def _ideal_key(order: MonomialOrder):
    k = order.key
    return lambda t: k(t[1])


def groebner_basis(polys: Sequence[Polynomial], order: MonomialOrder = GREVLEX, vars=None) -> List[Polynomial]:
    """Reduced Groebner basis (monic, sorted by decreasing leading monomial)."""
    polys = list(polys)
    if vars is None:
        if not polys:
            return []
        vars = polys[0].vars
    for p in polys:
        if p.vars != tuple(vars):
            raise VariableMismatch("generators live in different rings")
    F = [_to_vector(p) for p in polys if p]
    if not F:
        return []
    if any(p.is_constant() for p in polys if p):
        return [Polynomial.constant(vars, 1)]
    G = _buchberger(F, _ideal_key(order), ideal=True)
    return [_from_vector(g, vars) for _, g in G]


class IdealBasis:
    """Generators of an ideal plus write-once Groebner caches per order."""

    def __init__(self, generators: Sequence[Polynomial], vars: Sequence[str]):
        self.vars = tuple(vars)
        gens = []
        for g in generators:
            if g.vars != self.vars:
                raise VariableMismatch(f"generator {g} not over {self.vars}")
            if g:
                gens.append(g)
        self.generators = tuple(gens)
        self._cache: Dict[MonomialOrder, tuple] = {}

    def groebner(self, order: MonomialOrder = GREVLEX) -> List[Polynomial]:
        if order not in self._cache:
            basis = groebner_basis(self.generators, order, self.vars)
            key = _ideal_key(order)
            self._cache[order] = (
                tuple(basis),
                [(max(_to_vector(g), key=key), _to_vector(g)) for g in basis],
            )
        return list(self._cache[order][0])

    def normal_form(self, p: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
        if p.vars != self.vars:
            raise VariableMismatch(f"{p} not over {self.vars}")
        if not self.generators or not p:
            return p
        self.groebner(order)
        entries = self._cache[order][1]
        return _from_vector(_reduce(_to_vector(p), entries, _ideal_key(order)), self.vars)

    def contains(self, p: Polynomial) -> bool:
        return not self.normal_form(p)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return self.contains(Polynomial.constant(self.vars, 1))

    def __repr__(self):
        return f"IdealBasis([{', '.join(map(str, self.generators))}])"


def normal_form(p: Polynomial, ideal: IdealBasis, order: MonomialOrder = GREVLEX) -> Polynomial:
    return ideal.normal_form(p, order)


def _fresh(name: str, vars) -> str:
    while name in vars:
        name = name + "_"
    return name


def saturate(ideal: IdealBasis, f: Polynomial) -> IdealBasis:
    """``I : f^oo`` by adjoining ``t``, adding ``t*f - 1`` and eliminating ``t``."""
    if not f:
        raise ValueError("cannot saturate at zero")
    if f.is_constant() or ideal.is_zero():
        return ideal
    t = _fresh("_t", ideal.vars)
    big = (t,) + ideal.vars
    shift = list(range(1, len(big)))
    gens = [g.embed(big, shift) for g in ideal.generators]
    gens.append(Polynomial.variable(big, t) * f.embed(big, shift) - 1)
    basis = groebner_basis(gens, elimination_order(1), big)
    kept = []
    for g in basis:
        if all(m[0] == 0 for m in g.terms):
            kept.append(Polynomial(ideal.vars, {m[1:]: c for m, c in g.terms.items()}))
    return IdealBasis(kept, ideal.vars)


# ---------------------------------------------------------------------------
# submodules of free modules


def _vec(v: Sequence[Polynomial]) -> Vector:
    out = {}
    for pos, p in enumerate(v):
        for m, c in p.terms.items():
            out[(pos, m)] = c
    return out


def _unvec(v: Vector, rank: int, vars) -> tuple:
    comps = [dict() for _ in range(rank)]
    for (pos, m), c in v.items():
        comps[pos][m] = c
    return tuple(Polynomial(vars, d) for d in comps)


def pot_key(order: MonomialOrder = GREVLEX):
    """Position-over-term: earlier positions are larger."""
    k = order.key
    return lambda t: (-t[0],) + k(t[1])


class ModuleBasis:
    """A submodule of ``A^rank`` (A a polynomial ring) with a cached Groebner basis."""

    def __init__(self, relations: Sequence[Sequence[Polynomial]], rank: int, vars: Sequence[str], key=None):
        self.vars = tuple(vars)
        self.rank = rank
        rels = []
        for r in relations:
            r = tuple(r)
            if len(r) != rank:
                raise ValueError(f"relation of length {len(r)} in a rank-{rank} module")
            for p in r:
                if p.vars != self.vars:
                    raise VariableMismatch(f"relation entry {p} not over {self.vars}")
            if any(r):
                rels.append(r)
        self.relations = tuple(rels)
        self.key = key or pot_key()
        self._basis = None

    def groebner(self):
        if self._basis is None:
            F = [_vec(r) for r in self.relations]
            self._basis = _buchberger(F, self.key, ideal=False) if F else []
        return [_unvec(g, self.rank, self.vars) for _, g in self._basis]

    def normal_form(self, v: Sequence[Polynomial]) -> tuple:
        v = tuple(v)
        if len(v) != self.rank:
            raise ValueError("vector length does not match module rank")
        if not self.relations:
            return v
        self.groebner()
        return _unvec(_reduce(_vec(v), self._basis, self.key), self.rank, self.vars)

    def contains(self, v: Sequence[Polynomial]) -> bool:
        return not any(self.normal_form(v))


def module_normal_form(v: Sequence[Polynomial], rel: Sequence[Sequence[Polynomial]]) -> tuple:
    """Remainder of ``v`` modulo the submodule spanned by ``rel`` (POT order)."""
    v = tuple(v)
    if not v:
        return v
    return ModuleBasis(rel, len(v), v[0].vars).normal_form(v)


def module_saturate(module: ModuleBasis, f: Polynomial) -> ModuleBasis:
    """``N : f^oo`` for a submodule ``N`` of a free module, by eliminating ``t``.

    Generators ``N + (t*f - 1) A[t]^rank`` are computed under an order that
    compares ``t``-degree first, so the ``t``-free basis elements generate the
    saturation.
    """
    if not f:
        raise ValueError("cannot saturate at zero")
    if f.is_constant() or not module.relations:
        return module
    t = _fresh("_t", module.vars)
    big = (t,) + module.vars
    shift = list(range(1, len(big)))
    rank = module.rank
    gens = [tuple(p.embed(big, shift) for p in r) for r in module.relations]
    tf = Polynomial.variable(big, t) * f.embed(big, shift) - 1
    zero = Polynomial.zero(big)
    for j in range(rank):
        gens.append(tuple(tf if k == j else zero for k in range(rank)))
    g = GREVLEX.key

    def elim_key(term):
        pos, m = term
        return (m[0], -pos) + g(m[1:])

    F = [_vec(r) for r in gens]
    basis = _buchberger(F, elim_key, ideal=False)
    kept = []
    for _, v in basis:
        if all(m[0] == 0 for (_, m) in v):
            kept.append(_unvec({(pos, m[1:]): c for (pos, m), c in v.items()}, rank, module.vars))
    return ModuleBasis(kept, rank, module.vars)
