"""Sparse multivariate polynomials over Q and monomial orders."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Callable, Dict, Iterable, Sequence, Tuple

Monomial = Tuple[int, ...]


class VariableMismatch(ValueError):
    pass


class MonomialOrder:
    """A named total order on exponent tuples, realized as a sort key."""

    def __init__(self, name: str, key: Callable[[Monomial], tuple]):
        self.name = name
        self.key = key

    def __repr__(self):
        return f"MonomialOrder({self.name!r})"

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.name == self.name

    def __hash__(self):
        return hash(self.name)


def _grevlex_key(m: Monomial) -> tuple:
    return (sum(m),) + tuple(-e for e in reversed(m))


GREVLEX = MonomialOrder("grevlex", _grevlex_key)
LEX = MonomialOrder("lex", tuple)


def elimination_order(k: int) -> MonomialOrder:
    """Block order: grevlex on the first ``k`` variables, ties by grevlex on the rest."""

    def key(m):
        return _grevlex_key(m[:k]) + _grevlex_key(m[k:])

    return MonomialOrder(f"elim{k}", key)


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


class Polynomial:
    """Immutable sparse polynomial: ``vars`` names plus ``{exponents: Fraction}``."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Dict[Monomial, Fraction] | None = None):
        self.vars = tuple(vars)
        clean = {}
        if terms:
            n = len(self.vars)
            for m, c in terms.items():
                if len(m) != n:
                    raise ValueError(f"monomial {m} does not match {n} variables")
                c = _coerce(c)
                if c:
                    clean[tuple(m)] = c
        self.terms = clean
        self._hash = None

    # construction helpers -------------------------------------------------

    @classmethod
    def _raw(cls, vars, terms):
        p = cls.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, vars: Sequence[str], c=1) -> "Polynomial":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "Polynomial":
        return cls(vars)

    @classmethod
    def variable(cls, vars: Sequence[str], name: str) -> "Polynomial":
        vars = tuple(vars)
        i = vars.index(name)
        return cls(vars, {tuple(int(j == i) for j in range(len(vars))): 1})

    @classmethod
    def monomial(cls, vars: Sequence[str], exps: Monomial, c=1) -> "Polynomial":
        return cls(vars, {tuple(exps): c})

    # queries --------------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        """Terms from largest to smallest monomial."""
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX) -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient(order))

    # arithmetic -----------------------------------------------------------

    def _same(self, other: "Polynomial"):
        if self.vars != other.vars:
            raise VariableMismatch(f"variable sets differ: {self.vars} vs {other.vars}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._same(other)
            return other
        return Polynomial.constant(self.vars, _coerce(other))

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = _coerce(other)
            if not c:
                return Polynomial._raw(self.vars, {})
            return Polynomial._raw(self.vars, {m: v * c for m, v in self.terms.items()})
        self._same(other)
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial._raw(self.vars, out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / _coerce(c))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_term(self, mono: Monomial, c) -> "Polynomial":
        return Polynomial._raw(
            self.vars, {tuple(a + b for a, b in zip(m, mono)): v * c for m, v in self.terms.items()}
        )

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.vars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # variable bookkeeping ------------------------------------------------

    def embed(self, vars: Sequence[str], positions: Sequence[int]) -> "Polynomial":
        """Re-express in ``vars``; variable ``i`` of ``self`` goes to slot ``positions[i]``."""
        vars = tuple(vars)
        n = len(vars)
        out = {}
        for m, c in self.terms.items():
            e = [0] * n
            for i, k in enumerate(m):
                e[positions[i]] += k
            out[tuple(e)] = c
        return Polynomial._raw(vars, out)

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Evaluate with variable ``i`` replaced by ``images[i]``."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if not images:
            return self
        target_vars = images[0].vars
        powers = [{0: Polynomial.constant(target_vars, 1)} for _ in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = images[i] ** k
            return cache[k]

        out = Polynomial.zero(target_vars)
        for m, c in self.sorted_terms():
            term = Polynomial.constant(target_vars, c)
            for i, k in enumerate(m):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    # text -----------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            factors = []
            for name, k in zip(self.vars, m):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            mono = "*".join(factors)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Polynomial({str(self)!r}, vars={self.vars})"


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def product(polys: Iterable[Polynomial], vars: Sequence[str]) -> Polynomial:
    out = Polynomial.constant(vars, 1)
    for p in polys:
        out = out * p
    return out
