"""Finitely generated abelian groups in invariant-factor form.

A group is stored as ``Z^rank + Z/d_1 + ... + Z/d_k`` with ``d_i | d_{i+1}``.
Elements are coordinate tuples: ``rank`` free integers followed by one residue
per invariant factor.  All torsion and membership decisions go through
:func:`smith_normal_form`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

IntegerMatrix = list  # list of rows of Python ints

#: Marker returned by :func:`torsion_exponent` when the quotient has free rank.
INFINITY = math.inf


@dataclass(frozen=True)
class FgAbelianGroup:
    rank: int
    invariants: tuple = ()

    def __post_init__(self):
        invariants = tuple(int(d) for d in self.invariants)
        object.__setattr__(self, "invariants", invariants)
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        for d in invariants:
            if d < 2:
                raise ValueError(f"invariant factor {d} must be >= 2")
        for a, b in zip(invariants, invariants[1:]):
            if b % a:
                raise ValueError(f"invariant factors {invariants} do not form a divisibility chain")

    @property
    def ngens(self) -> int:
        return self.rank + len(self.invariants)

    @property
    def moduli(self) -> tuple:
        """Per-coordinate modulus, 0 for free coordinates."""
        return (0,) * self.rank + self.invariants

    @property
    def exponent(self) -> int:
        return self.invariants[-1] if self.invariants else 1

    def element(self, coords: Sequence[int]) -> "GroupElement":
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.ngens:
            raise ValueError(f"expected {self.ngens} coordinates for {self}, got {len(coords)}")
        return GroupElement(self, tuple(c % m if m else c for c, m in zip(coords, self.moduli)))

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.ngens)

    def basis(self) -> list:
        """Standard generators, one per coordinate."""
        return [self.element([int(i == j) for j in range(self.ngens)]) for i in range(self.ngens)]

    def is_torsion(self) -> bool:
        return self.rank == 0

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.invariants]
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class GroupElement:
    group: FgAbelianGroup
    coords: tuple

    @property
    def free_part(self) -> tuple:
        return self.coords[: self.group.rank]

    @property
    def torsion_part(self) -> tuple:
        return self.coords[self.group.rank:]

    def _check(self, other):
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise ValueError("group elements belong to different groups")

    def __add__(self, other):
        self._check(other)
        return self.group.element([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return self.group.element([a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return self.group.element([-a for a in self.coords])

    def __mul__(self, n: int):
        return self.group.element([n * a for a in self.coords])

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self):
        if len(self.coords) == 1:
            return str(self.coords[0])
        return "(" + ",".join(map(str, self.coords)) + ")"

    def __repr__(self):
        return f"GroupElement({list(self.coords)})"


def combine(group: FgAbelianGroup, coeffs: Sequence[int], elements: Sequence[GroupElement]) -> GroupElement:
    """Return sum(c * g) in ``group``."""
    total = [0] * group.ngens
    for c, g in zip(coeffs, elements):
        if c:
            for k, x in enumerate(g.coords):
                total[k] += c * x
    return group.element(total)


@dataclass(frozen=True)
class SubgroupPresentation:
    ambient: FgAbelianGroup
    generators: tuple

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if g.group != self.ambient:
                raise ValueError("subgroup generator outside the ambient group")


# ---------------------------------------------------------------------------
# Smith normal form


def identity_matrix(n: int) -> IntegerMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(A: IntegerMatrix, B: IntegerMatrix) -> IntegerMatrix:
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(row[k] * B[k][j] for k in range(inner)) for j in range(cols)] for row in A]


def determinant(A: IntegerMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def smith_normal_form(A: IntegerMatrix, ncols: Optional[int] = None):
    """Return ``(U, D, V)`` with ``U @ A @ V == D`` and ``U, V`` unimodular.

    ``D`` is diagonal with nonnegative entries ``d_1 | d_2 | ...``.  Pivots are
    chosen by minimal absolute value; divisibility is repaired by adding the
    offending row into the pivot row.  ``ncols`` is only needed for matrices
    with zero rows.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    D = [[int(x) for x in row] for row in A]
    U = identity_matrix(m)
    V = identity_matrix(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        for M in (D, U):
            rd, rs = M[dst], M[src]
            for k in range(len(rd)):
                rd[k] += q * rs[k]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for M in (D, V):
            for row in M:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = D[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                return U, D, V
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    clean = clean and D[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if D[t][t] < 0:
            for M in (D, U):
                M[t] = [-x for x in M[t]]
    return U, D, V


def diagonal(D: IntegerMatrix) -> list:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


# ---------------------------------------------------------------------------
# Quotients and membership


def _relation_matrix(M: FgAbelianGroup, generators: Sequence[GroupElement]) -> IntegerMatrix:
    """Columns: subgroup generators, then the torsion relations of M."""
    cols = [list(g.coords) for g in generators]
    for k, d in enumerate(M.invariants):
        col = [0] * M.ngens
        col[M.rank + k] = d
        cols.append(col)
    return [[c[r] for c in cols] for r in range(M.ngens)]


def quotient_invariants(M: FgAbelianGroup, H: SubgroupPresentation):
    """Free rank and invariant factors of ``M / H``."""
    if H.ambient != M:
        raise ValueError("subgroup does not live in the given group")
    if M.ngens == 0:
        return 0, []
    A = _relation_matrix(M, H.generators)
    if not A[0]:
        return M.ngens, []
    _, D, _ = smith_normal_form(A)
    diag = diagonal(D)
    nonzero = [d for d in diag if d]
    return M.ngens - len(nonzero), [d for d in nonzero if d > 1]


def is_torsion_quotient(M: FgAbelianGroup, H: SubgroupPresentation) -> bool:
    return quotient_invariants(M, H)[0] == 0


def is_trivial_quotient(M: FgAbelianGroup, H: SubgroupPresentation) -> bool:
    return quotient_invariants(M, H) == (0, [])


def torsion_exponent(M: FgAbelianGroup, H: SubgroupPresentation):
    """Least N with N*m in H for every m, or :data:`INFINITY`."""
    free, invariants = quotient_invariants(M, H)
    if free:
        return INFINITY
    return math.lcm(*invariants) if invariants else 1


def _l1_key(a):
    return (sum(abs(x) for x in a), tuple(a))


def represent_as_difference(target: GroupElement, monoid_gens: Sequence[GroupElement]):
    """Write ``target`` as ``sum(a_plus * g) - sum(a_minus * g)``.

    Returns ``(a_plus, a_minus)`` as nonnegative tuples, or ``None`` when the
    target is not in the group generated by ``monoid_gens``.  An integer
    solution is found via Smith normal form, then improved by a deterministic
    descent along the kernel towards small ``sum|a|``.
    """
    M = target.group
    ngen = len(monoid_gens)
    if target.is_zero():
        return (0,) * ngen, (0,) * ngen
    if ngen == 0 or M.ngens == 0:
        return None
    A = _relation_matrix(M, monoid_gens)
    U, D, V = smith_normal_form(A)
    ncols = len(A[0])
    b = [sum(U[i][k] * target.coords[k] for k in range(M.ngens)) for i in range(M.ngens)]
    diag = diagonal(D)
    r = sum(1 for d in diag if d)
    y = [0] * ncols
    for i in range(M.ngens):
        if i < r:
            if b[i] % diag[i]:
                return None
            y[i] = b[i] // diag[i]
        elif b[i]:
            return None
    x = [sum(V[i][j] * y[j] for j in range(ncols)) for i in range(ncols)]
    a = x[:ngen]

    kernel = []
    for j in range(r, ncols):
        k = tuple(V[i][j] for i in range(ngen))
        if any(k) and k not in kernel:
            kernel.append(k)
    best = _l1_key(a)
    improved = True
    steps = 0
    while improved and steps < 10_000:
        improved = False
        for k in kernel:
            for sign in (1, -1):
                cand = [ai + sign * ki for ai, ki in zip(a, k)]
                key = _l1_key(cand)
                if key < best:
                    a, best, improved = cand, key, True
        steps += 1
    a_plus = tuple(max(v, 0) for v in a)
    a_minus = tuple(max(-v, 0) for v in a)
    assert combine(M, a_plus, monoid_gens) - combine(M, a_minus, monoid_gens) == target
    return a_plus, a_minus


# ---------------------------------------------------------------------------
# Direct sums


def direct_sum(M: FgAbelianGroup, N: FgAbelianGroup):
    """Return ``(G, left, right)`` with ``G = M + N`` in invariant-factor form.

    ``left``/``right`` embed elements of ``M``/``N`` into ``G``.  When the
    concatenated torsion moduli are not already a divisibility chain, torsion
    coordinates are changed by the row transform of a Smith normal form.
    """
    moduli = list(M.invariants) + list(N.invariants)
    chain = all(b % a == 0 for a, b in zip(moduli, moduli[1:]))
    if chain:
        invariants = moduli
        transform = identity_matrix(len(moduli))
    else:
        diag = [[d if i == j else 0 for j in range(len(moduli))] for i, d in enumerate(moduli)]
        U, D, _ = smith_normal_form(diag)
        keep = [i for i, d in enumerate(diagonal(D)) if d > 1]
        invariants = [D[i][i] for i in keep]
        transform = [U[i] for i in keep]
    G = FgAbelianGroup(M.rank + N.rank, tuple(invariants))

    def build(free_m, free_n, tors):
        tors = [sum(row[k] * tors[k] for k in range(len(tors))) for row in transform]
        return G.element(list(free_m) + list(free_n) + tors)

    def left(g: GroupElement) -> GroupElement:
        return build(g.free_part, [0] * N.rank, list(g.torsion_part) + [0] * len(N.invariants))

    def right(g: GroupElement) -> GroupElement:
        return build([0] * M.rank, g.free_part, [0] * len(M.invariants) + list(g.torsion_part))

    return G, left, right
