"""Numerical-semigroup set arithmetic.

Models the one-dimensional local ring k[[t^S]] for a numerical semigroup
S = <g_1, ..., g_k> with gcd 1.  Monomial ideals are handled through their
exponent sets E = union of (e_i + S), which are cofinite in S; every operation
reduces to integer set arithmetic below an explicit conductor bound.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd


class Semigroup:
    """Numerical semigroup with membership table and conductor."""

    __slots__ = ("gens", "conductor", "_members")

    def __init__(self, gens):
        gens = tuple(sorted(set(int(g) for g in gens)))
        if not gens or gens[0] <= 0:
            raise ValueError("semigroup generators must be positive")
        g = 0
        for x in gens:
            g = gcd(g, x)
        if g != 1:
            raise ValueError("semigroup generators must have gcd 1")
        self.gens = gens
        self._members, self.conductor = self._close()

    def _close(self):
        # grow a membership table until a full run of min(gens) consecutive
        # members appears; everything beyond that run is in S
        step = self.gens[0]
        bound = max(self.gens) * step + 1
        while True:
            table = [False] * (bound + 1)
            table[0] = True
            for n in range(1, bound + 1):
                for g in self.gens:
                    if n >= g and table[n - g]:
                        table[n] = True
                        break
            run = 0
            for n in range(bound + 1):
                run = run + 1 if table[n] else 0
                if run == step:
                    conductor = n - step + 1
                    members = frozenset(i for i in range(conductor) if table[i])
                    return members, conductor
            bound *= 2

    def __contains__(self, n):
        if n < 0:
            return False
        return n >= self.conductor or n in self._members

    def gaps(self):
        return [n for n in range(self.conductor) if n not in self._members]

    def elements_below(self, bound):
        return [n for n in range(bound) if n in self]

    def __repr__(self):
        return f"Semigroup{self.gens}"


@lru_cache(maxsize=None)
def semigroup(gens):
    return Semigroup(gens)


# -- ideal exponent sets -----------------------------------------------------
# An ideal is a sorted tuple of generator exponents (all in S); its exponent
# set is E = union of (e + S).  The zero ideal is the empty tuple.

def ideal_conductor(sg, gens):
    """All exponents >= this bound lie in the ideal."""
    return max(gens) + sg.conductor if gens else 0


def member(sg, expo, gens):
    return any(expo - e in sg for e in gens)


def minimalize(sg, gens):
    gens = sorted(set(gens))
    out = []
    for e in gens:
        if not any(e - f in sg for f in out):
            out.append(e)
    return out


def contains(sg, big, small):
    return all(member(sg, e, big) for e in small)


def equals(sg, a, b):
    return contains(sg, a, b) and contains(sg, b, a)


def product(sg, a, b):
    return minimalize(sg, [e + f for e in a for f in b])


def power(sg, gens, n):
    if n < 0:
        raise ValueError("negative power")
    result = [0]
    for _ in range(n):
        result = product(sg, result, gens)
    return result


def sum_ideals(sg, a, b):
    return minimalize(sg, list(a) + list(b))


def _upward_closure_gens(sg, hits, bound):
    """Generators of the set (hits below bound) union (S cap [bound, oo)).

    bound is raised to the semigroup conductor so the tail is a full integer
    ray; the residues bound..bound+step-1 then generate it (step = least
    semigroup generator, and multiples of step are in S).
    """
    b = max(bound, sg.conductor)
    step = sg.gens[0]
    extra = [n for n in range(bound, b) if n in sg]
    return minimalize(sg, hits + extra + list(range(b, b + step)))


def intersect(sg, a, b):
    bound = max(ideal_conductor(sg, a), ideal_conductor(sg, b))
    hits = [n for n in sg.elements_below(bound)
            if member(sg, n, a) and member(sg, n, b)]
    return _upward_closure_gens(sg, hits, bound)


def colon(sg, a, b):
    """(I : J) = { s in S : s + f in E(I) for every generator f of J }."""
    if not b:
        raise ValueError("colon by the zero ideal")
    bound = max(ideal_conductor(sg, a) - min(b), 0)
    hits = [s for s in sg.elements_below(bound)
            if all(member(sg, s + f, a) for f in b)]
    # any s >= bound has s + f beyond the conductor of E(I), so it qualifies
    return _upward_closure_gens(sg, hits, bound)


def is_m_primary(sg, gens):
    return bool(gens) and all(e > 0 for e in gens)


def colength(sg, gens):
    """lambda(R/I) = number of semigroup elements outside the exponent set."""
    if not gens:
        raise ValueError("infinite colength: zero ideal")
    if 0 in gens:
        return 0
    bound = ideal_conductor(sg, gens)
    return sum(1 for n in sg.elements_below(bound) if not member(sg, n, gens))
