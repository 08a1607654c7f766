"""Tropical determinant: exact minimum permutation sum with a uniqueness certificate.

The minimum is computed by a Hungarian solver over integer-scaled exact costs
(forbidden edges for inf entries).  Uniqueness is certified by re-solving the
assignment problem once per witness edge with that edge forbidden: any re-solve
matching the optimum refutes uniqueness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional

from .tropical import INF, TropicalMatrix

_UNREACHED = float("inf")  # sentinel only; never mixed into exact arithmetic


@dataclass(frozen=True)
class AssignmentCertificate:
    """Optimal permutation value, one witness, and a uniqueness verdict.

    ``witness[i]`` is the column assigned to row i; it is None exactly when
    value is inf.  ``unique`` is True only for a finite value attained by a
    single permutation.
    """

    value: object
    witness: Optional[tuple]
    unique: bool

    @property
    def is_finite(self) -> bool:
        return self.value is not INF


def scale_to_ints(m: TropicalMatrix):
    """Return (int cost rows with None for inf, denominator) sharing one scale."""
    denoms = [v.denominator for v in m.entries if v is not INF]
    scale = lcm(*denoms) if denoms else 1
    cost = []
    for i in range(m.rows):
        cost.append(
            [
                None if v is INF else v.numerator * (scale // v.denominator)
                for v in m.row(i)
            ]
        )
    return cost, scale


def solve_min_assignment(cost, forbid=frozenset()):
    """Minimum-cost perfect matching on a square cost matrix.

    cost[i][j] is an int or None (forbidden edge).  Returns (total, perm) or
    None when no perfect matching of allowed edges exists.
    """
    n = len(cost)
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    p = [0] * (n + 1)  # p[j]: row matched to column j (1-indexed), 0 free
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [_UNREACHED] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = _UNREACHED
            j1 = -1
            row = cost[i0 - 1]
            for j in range(1, n + 1):
                if used[j]:
                    continue
                c = row[j - 1]
                if c is None or (i0 - 1, j - 1) in forbid:
                    cur = None
                else:
                    cur = c - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            if j1 < 0 or delta == _UNREACHED:
                return None  # no augmenting path through allowed edges
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                elif minv[j] != _UNREACHED:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    perm = [0] * n
    for j in range(1, n + 1):
        perm[p[j] - 1] = j - 1
    total = sum(cost[i][perm[i]] for i in range(n))
    return total, tuple(perm)


def tropical_determinant(m: TropicalMatrix) -> AssignmentCertificate:
    """Exact min over permutations of sum m[i][perm(i)], with witness and uniqueness."""
    if not m.is_square:
        raise ValueError("tropical determinant requires a square matrix")
    cost, scale = scale_to_ints(m)
    base = solve_min_assignment(cost)
    if base is None:
        return AssignmentCertificate(INF, None, False)
    total, perm = base
    unique = True
    for i in range(m.rows):
        again = solve_min_assignment(cost, forbid=frozenset({(i, perm[i])}))
        if again is not None and again[0] == total:
            unique = False
            break
    return AssignmentCertificate(Fraction(total, scale), perm, unique)


def is_nonsingular(m: TropicalMatrix) -> bool:
    """True iff the minimum permutation sum is finite and attained uniquely."""
    if not m.is_square:
        raise ValueError("nonsingularity is defined for square matrices only")
    return tropical_determinant(m).unique


def brute_force_determinant(m: TropicalMatrix):
    """Oracle: enumerate all n! permutations.  Returns (value, best perms list)."""
    if not m.is_square:
        raise ValueError("square matrices only")
    n = m.rows
    best = INF
    winners = []
    for perm in itertools.permutations(range(n)):
        total = Fraction(0)
        dead = False
        for i, j in enumerate(perm):
            v = m.entries[i * n + j]
            if v is INF:
                dead = True
                break
            total += v
        if dead:
            continue
        if best is INF or total < best:
            best = total
            winners = [perm]
        elif total == best:
            winners.append(perm)
    return best, winners


def min_perm_int(cost):
    """(value, witness, unique) for an int/None cost matrix; brute force for n <= 4.

    Internal helper for submatrix scans: identical verdicts to
    tropical_determinant, tuned for tiny sizes.
    """
    n = len(cost)
    if n <= 4:
        best = None
        witness = None
        count = 0
        for perm in itertools.permutations(range(n)):
            total = 0
            dead = False
            for i in range(n):
                c = cost[i][perm[i]]
                if c is None:
                    dead = True
                    break
                total += c
            if dead:
                continue
            if best is None or total < best:
                best, witness, count = total, perm, 1
            elif total == best:
                count += 1
        if best is None:
            return None, None, False
        return best, witness, count == 1
    base = solve_min_assignment(cost)
    if base is None:
        return None, None, False
    total, perm = base
    for i in range(n):
        again = solve_min_assignment(cost, forbid=frozenset({(i, perm[i])}))
        if again is not None and again[0] == total:
            return total, perm, False
    return total, perm, True
