"""Brute-force oracles independent of the Smith normal form machinery."""

import itertools
from collections import deque

from gradedproj.abelian import FgAbelianGroup

BOX = 64  # free coordinates are explored in [-BOX, BOX]
MAX_MULTIPLE = 60


def _norm(M: FgAbelianGroup, v):
    return tuple(c % m if m else c for c, m in zip(v, M.moduli))


def subgroup_ball(M: FgAbelianGroup, gens):
    """Elements of <gens> reachable by +-gen steps without leaving the box."""
    zero = (0,) * M.ngens
    seen = {zero}
    todo = deque([zero])
    steps = [g.coords for g in gens] + [tuple(-c for c in g.coords) for g in gens]
    while todo:
        v = todo.popleft()
        for s in steps:
            w = _norm(M, [a + b for a, b in zip(v, s)])
            if any(abs(c) > BOX for c in w[: M.rank]) or w in seen:
                continue
            seen.add(w)
            todo.append(w)
    return seen


def torsion_quotient_oracle(M: FgAbelianGroup, gens) -> bool:
    """Every standard generator has a multiple n <= 60 inside <gens>."""
    ball = subgroup_ball(M, gens)
    for m in M.basis():
        if not any(_norm(M, [n * c for c in m.coords]) in ball for n in range(1, MAX_MULTIPLE + 1)):
            return False
    return True


def representation_oracle(M: FgAbelianGroup, target, gens, bound: int = 6) -> bool:
    """Exhaustive search for sum(c_i g_i) == target with |c_i| <= bound."""
    for cs in itertools.product(range(-bound, bound + 1), repeat=len(gens)):
        total = [0] * M.ngens
        for c, g in zip(cs, gens):
            for k, x in enumerate(g.coords):
                total[k] += c * x
        if _norm(M, total) == target.coords:
            return True
    return False
