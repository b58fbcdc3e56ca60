"""Monomial-ideal staircase arithmetic.

Everything here works on plain lists/tuples of exponent vectors: the minimal
generators of a monomial ideal in a polynomial ring.  These routines are exact
and combinatorial (no Groebner bases), which is what makes the big power
computations downstream (exponents in the thousands, antichains with
thousands of corners) cheap.  Two-variable inputs get dedicated O(n log n)
staircase sweeps; other variable counts fall back to generic algorithms.

The empty list denotes the zero ideal; [(0,...,0)] denotes the unit ideal.
"""

from __future__ import annotations

from bisect import bisect_right

from ..kernel import mono_divides, mono_lcm, mono_mul


def minimalize(gens):
    """Minimal generators: drop vectors dominated componentwise by another."""
    gens = set(map(tuple, gens))
    if not gens:
        return []
    nvars = len(next(iter(gens)))
    if nvars == 2:
        out = []
        besty = None
        for g in sorted(gens):
            if besty is None or g[1] < besty:
                out.append(g)
                besty = g[1]
        return out
    ordered = sorted(gens, key=lambda e: (sum(e), e))
    out = []
    for g in ordered:
        if not any(mono_divides(h, g) for h in out):
            out.append(g)
    return out


def _corners(gens):
    """2-variable minimal generators sorted by x ascending (y descending)."""
    return minimalize(gens)


def member(expo, gens):
    """x^expo in the ideal? (one-shot; use membership_fn for repeated queries)"""
    return any(mono_divides(g, expo) for g in gens)


def membership_fn(gens):
    """Preprocessed membership test for many queries against one ideal."""
    if not gens:
        return lambda e: False
    if len(gens[0]) == 2 and len(gens) > 8:
        corners = minimalize(gens)
        return lambda e: _member_2d(e, corners)
    gens = list(gens)
    return lambda e: any(mono_divides(g, e) for g in gens)


def _member_2d(expo, corners):
    # corners sorted by x ascending, y strictly descending
    u, v = expo
    i = bisect_right(corners, (u, float("inf"))) - 1
    return i >= 0 and corners[i][1] <= v


def contains(big, small):
    """Ideal(big) >= Ideal(small)?"""
    if not small:
        return True
    if not big:
        return False
    inside = membership_fn(big)
    return all(inside(g) for g in small)


def equals(a, b):
    """Ideal equality via the uniqueness of minimal monomial generators."""
    return minimalize(a) == minimalize(b)


def product(a, b):
    return minimalize([mono_mul(g, h) for g in a for h in b])


def power(gens, n):
    if n < 0:
        raise ValueError("negative power")
    if not gens:
        raise ValueError("power of the zero ideal (handled by the caller)")
    nvars = len(gens[0])
    result = [(0,) * nvars]
    for _ in range(n):
        result = product(result, gens)
    return result


def colon_monomial(gens, m):
    """(I : x^m), computed by clamped subtraction of exponents."""
    return minimalize(
        [tuple(max(g[i] - m[i], 0) for i in range(len(g))) for g in gens]
    )


def intersect(a, b):
    """I cap J; in 2 variables by merging staircases, else pairwise lcm."""
    if not a or not b:
        return []
    if len(next(iter(a))) == 2:
        return _intersect_2d(_corners(a), _corners(b))
    return minimalize([mono_lcm(g, h) for g in a for h in b])


def _step_x(corners, y):
    """Least x with (x, y) in the ideal, or None when no corner has y_i <= y.

    corners sorted by x ascending / y strictly descending, so {i : y_i <= y}
    is a suffix and its least x sits at the suffix start.
    """
    lo, hi = 0, len(corners)
    while lo < hi:
        mid = (lo + hi) // 2
        if corners[mid][1] <= y:
            hi = mid
        else:
            lo = mid + 1
    return corners[lo][0] if lo < len(corners) else None


def _intersect_2d(a, b):
    ys = sorted({g[1] for g in a} | {g[1] for g in b})
    out = []
    for y in ys:
        xa = _step_x(a, y)
        xb = _step_x(b, y)
        if xa is None or xb is None:
            continue
        out.append((max(xa, xb), y))
    return minimalize(out)


def colon(a, b):
    """(I : J) = intersection over generators m of J of (I : m)."""
    if not b:
        raise ValueError("colon by the zero ideal")
    result = None
    for m in b:
        part = colon_monomial(a, m)
        result = part if result is None else intersect(result, part)
    return result


def sum_ideals(a, b):
    return minimalize(list(a) + list(b))


def is_m_primary(gens):
    """Finite colength test: every variable must appear as a pure power."""
    if not gens:
        return False
    nvars = len(gens[0])
    for i in range(nvars):
        if not any(g[i] > 0 and all(g[j] == 0 for j in range(nvars) if j != i)
                   for g in gens):
            return False
    return True


def pure_power_bounds(gens):
    """Least d_i with x_i^{d_i} in the ideal, per variable (m-primary input)."""
    nvars = len(gens[0])
    bounds = []
    for i in range(nvars):
        cands = [g[i] for g in gens
                 if g[i] > 0 and all(g[j] == 0 for j in range(nvars) if j != i)]
        if not cands:
            raise ValueError("ideal is not m-primary")
        bounds.append(min(cands))
    return bounds


def colength(gens):
    """Number of standard monomials (lattice points outside the staircase)."""
    gens = minimalize(gens)
    if any(sum(g) == 0 for g in gens):
        return 0  # unit ideal
    if not is_m_primary(gens):
        raise ValueError("infinite colength: ideal is not m-primary")
    nvars = len(gens[0])
    if nvars == 1:
        return min(g[0] for g in gens)
    if nvars == 2:
        return _colength_2d(gens)
    bounds = pure_power_bounds(gens)
    return _colength_box(gens, bounds)


def _colength_2d(gens):
    # minimal generators sorted by x ascending: (0,b_k), ..., (a_1,0); for
    # y in [y_{i+1}, y_i) the standard monomials have x < x_{i+1}
    total = 0
    for i in range(len(gens) - 1):
        total += gens[i + 1][0] * (gens[i][1] - gens[i + 1][1])
    return total


def _colength_box(gens, bounds):
    inside = membership_fn(gens)
    count = 0
    point = [0] * len(bounds)
    while True:
        if not inside(tuple(point)):
            count += 1
        i = 0
        while i < len(bounds):
            point[i] += 1
            if point[i] < bounds[i]:
                break
            point[i] = 0
            i += 1
        else:
            return count


def dimension_of_lt(lt_gens, nvars):
    """Krull dimension of R/(monomial ideal): largest independent variable set.

    A set S of variables is independent when no generator is supported
    entirely inside S.
    """
    if any(sum(g) == 0 for g in lt_gens):
        return -1  # unit ideal: empty ring
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in lt_gens]
    best = 0
    for mask in range(1 << nvars):
        s = frozenset(i for i in range(nvars) if mask >> i & 1)
        if len(s) <= best:
            continue
        if all(not sup <= s for sup in supports):
            best = len(s)
    return best
