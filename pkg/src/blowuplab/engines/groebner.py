"""Buchberger engine over the rationals.

Internally polynomials are primitive integer term-dicts (content 1, positive
leading coefficient); reductions are fraction-free pseudo-reductions with
periodic content stripping.  Public entry points accept and return
kernel.Polynomial values; reduced bases are returned monic, so equality of
reduced bases is ideal equality.

Pair management uses the Gebauer-Moeller criteria with sugar-first selection.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from ..kernel import (
    DEGREVLEX,
    Polynomial,
    clear_denominators,
    elimination_order,
    mono_deg,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


class _Rec:
    """Basis record: primitive integer poly with cached leading data."""

    __slots__ = ("terms", "lt", "lc", "sugar", "is_mono")

    def __init__(self, terms, order, sugar=None):
        self.terms = terms
        self.lt = max(terms, key=order.key)
        self.lc = terms[self.lt]
        self.sugar = max(mono_deg(m) for m in terms) if sugar is None else sugar
        self.is_mono = len(terms) == 1


def _strip_content(terms):
    c = 0
    for v in terms.values():
        c = gcd(c, v)
    if c > 1:
        for m in terms:
            terms[m] //= c
    return terms


def _to_int_terms(f):
    ints, _ = clear_denominators(f)
    return ints


def _reduce_terms(terms, basis, order, tail=True):
    """Fraction-free normal form of an integer term-dict against basis records.

    With tail=False only the leading term is reduced (enough for zero tests
    inside Buchberger the remainder is still fully reduced here for
    simplicity).  Returns a primitive dict (possibly empty).
    """
    work = dict(terms)
    remainder = {}
    steps = 0
    while work:
        m = max(work, key=order.key)
        c = work.pop(m)
        red = None
        for g in basis:
            if mono_divides(g.lt, m):
                red = g
                break
        if red is None:
            remainder[m] = c
            if not tail:
                remainder.update(work)
                break
            continue
        shift = mono_div(m, red.lt)
        if red.lc != 1:
            d = gcd(c, red.lc)
            scale = red.lc // d
            if scale != 1:
                for k in work:
                    work[k] *= scale
                for k in remainder:
                    remainder[k] *= scale
                c *= scale
        q = c // red.lc
        for mm, cc in red.terms.items():
            if mm == red.lt:
                continue
            key = mono_mul(mm, shift)
            s = work.get(key, 0) - q * cc
            if s:
                work[key] = s
            else:
                work.pop(key, None)
        steps += 1
        if steps % 32 == 0:
            merged = {**work, **remainder}
            c0 = 0
            for v in merged.values():
                c0 = gcd(c0, v)
            if c0 > 1:
                for k in work:
                    work[k] //= c0
                for k in remainder:
                    remainder[k] //= c0
    return _strip_content(remainder)


def _spair_terms(f, g, order):
    L = mono_lcm(f.lt, g.lt)
    sf = mono_div(L, f.lt)
    sg = mono_div(L, g.lt)
    d = gcd(f.lc, g.lc)
    cf = g.lc // d
    cg = f.lc // d
    terms = {}
    for m, c in f.terms.items():
        terms[mono_mul(m, sf)] = c * cf
    for m, c in g.terms.items():
        key = mono_mul(m, sg)
        s = terms.get(key, 0) - c * cg
        if s:
            terms[key] = s
        else:
            terms.pop(key, None)
    sugar = max(f.sugar + mono_deg(sf), g.sugar + mono_deg(sg))
    return _strip_content(terms), sugar


def _update_pairs(G, P, h, order):
    """Gebauer-Moeller pair update when record h joins basis G."""
    m = len(G)
    lth = h.lt
    lcm = mono_lcm
    # drop old pairs strictly dominated by the new lcm
    P = {
        (i, j)
        for (i, j) in P
        if not mono_divides(lth, lcm(G[i].lt, G[j].lt))
        or lcm(G[i].lt, G[j].lt) == lcm(G[i].lt, lth)
        or lcm(G[i].lt, G[j].lt) == lcm(G[j].lt, lth)
    }
    bylcm = {}
    for i in range(m):
        bylcm.setdefault(lcm(G[i].lt, lth), []).append(i)
    keep = []
    for L in sorted(bylcm, key=order.key):
        if all(not mono_divides(Lk, L) for Lk in keep):
            keep.append(L)
    newP = set()
    for L in keep:
        # product criterion: skip pairs with coprime leading terms
        if any(lcm(G[i].lt, lth) == mono_mul(G[i].lt, lth) for i in bylcm[L]):
            continue
        newP.add((min(bylcm[L]), m))
    return P | newP


def _buchberger_records(gens_terms, order):
    G = []
    P = set()
    for t in gens_terms:
        if t:
            h = _Rec(_strip_content(dict(t)), order)
            P = _update_pairs(G, P, h, order)
            G.append(h)
    while P:
        i, j = min(
            P,
            key=lambda p: (
                max(G[p[0]].sugar, G[p[1]].sugar),
                order.key(mono_lcm(G[p[0]].lt, G[p[1]].lt)),
            ),
        )
        P.remove((i, j))
        s, sugar = _spair_terms(G[i], G[j], order)
        if not s:
            continue
        r = _reduce_terms(s, G, order)
        if r:
            h = _Rec(r, order, sugar)
            P = _update_pairs(G, P, h, order)
            G.append(h)
    return G


def _interreduce(G, order):
    """Minimal + tail-reduced basis from a Groebner basis; records out."""
    Gmin = []
    for g in sorted(G, key=lambda g: order.key(g.lt)):
        if not any(mono_divides(h.lt, g.lt) for h in Gmin):
            Gmin.append(g)
    out = []
    for i, g in enumerate(Gmin):
        others = Gmin[:i] + Gmin[i + 1 :]
        r = _reduce_terms(g.terms, others, order) if others else dict(g.terms)
        out.append(_Rec(_strip_content(r), order))
    return out


def _rec_to_monic(rec):
    lc = rec.terms[rec.lt]
    return {m: Fraction(c, lc) for m, c in rec.terms.items()}


def groebner_basis(gens, order=DEGREVLEX):
    """Reduced (monic) Groebner basis of the ideal generated by `gens`.

    Returns a list of Polynomial sorted by decreasing leading monomial; the
    result is the unique reduced basis, so list equality is ideal equality.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    nvars = gens[0].nvars
    records = _buchberger_records([_to_int_terms(g) for g in gens], order)
    reduced = _interreduce(records, order)
    reduced.sort(key=lambda r: order.key(r.lt), reverse=True)
    return [Polynomial(_rec_to_monic(r), nvars) for r in reduced]


def normal_form(f, gb, order=DEGREVLEX):
    """Exact normal form of f against a (usually reduced) basis; Fractions."""
    if f.is_zero() or not gb:
        return f
    recs = [_Rec(_to_int_terms(g), order) for g in gb]
    ints, scale = clear_denominators(f)
    if not ints:
        return f
    work = dict(ints)
    mult = Fraction(1)
    remainder = {}
    while work:
        m = max(work, key=order.key)
        c = work.pop(m)
        red = None
        for g in recs:
            if mono_divides(g.lt, m):
                red = g
                break
        if red is None:
            remainder[m] = c
            continue
        shift = mono_div(m, red.lt)
        if red.lc != 1:
            d = gcd(c, red.lc)
            s = red.lc // d
            if s != 1:
                for k in work:
                    work[k] *= s
                for k in remainder:
                    remainder[k] *= s
                c *= s
                mult *= s
        q = c // red.lc
        for mm, cc in red.terms.items():
            if mm == red.lt:
                continue
            key = mono_mul(mm, shift)
            v = work.get(key, 0) - q * cc
            if v:
                work[key] = v
            else:
                work.pop(key, None)
    return Polynomial({m: Fraction(c) / (mult * scale) for m, c in remainder.items()},
                      f.nvars)


def is_member(f, gb, order=DEGREVLEX):
    if f.is_zero():
        return True
    if not gb:
        return False
    recs = [_Rec(_to_int_terms(g), order) for g in gb]
    return not _reduce_terms(_to_int_terms(f), recs, order)


def leading_ideal(gb, order=DEGREVLEX):
    return [g.leading_monomial(order) for g in gb]


# ---------------------------------------------------------------------------
# derived operations: elimination, intersection, quotients
# ---------------------------------------------------------------------------

def _prepend_var(f, count=1):
    """Embed f(x) into Q[t_1..t_count, x] with the new variables first."""
    return f.extend(f.nvars + count, shift=count)


def eliminate_first(gens, k, inner=DEGREVLEX):
    """Groebner basis of I cap Q[x_{k+1}, ...]; drops the first k variables.

    Returns polynomials over the remaining variables.  The result is the
    reduced basis of the elimination ideal.
    """
    if not gens:
        return []
    order = elimination_order(k)
    gb = groebner_basis(gens, order)
    nvars = gens[0].nvars
    out = []
    for g in gb:
        if all(all(m[i] == 0 for i in range(k)) for m in g.terms):
            out.append(Polynomial({m[k:]: c for m, c in g.terms.items()}, nvars - k))
    return out


def intersect(a_gens, b_gens, inner=DEGREVLEX):
    """I cap J via the auxiliary-variable construction t*I + (1-t)*J."""
    if not a_gens or not b_gens:
        return []
    nvars = a_gens[0].nvars
    t = Polynomial.variable(0, nvars + 1)
    one = Polynomial.constant(1, nvars + 1)
    big = [t * _prepend_var(f) for f in a_gens]
    big += [(one - t) * _prepend_var(g) for g in b_gens]
    return eliminate_first(big, 1, inner)


def exact_divide(f, h, order=DEGREVLEX):
    """Quotient f/h for f in the principal ideal (h); exact, raises otherwise."""
    q_terms = {}
    rem = f
    while not rem.is_zero():
        m = rem.leading_monomial(order)
        hlt = h.leading_monomial(order)
        if not mono_divides(hlt, m):
            raise ValueError("not divisible")
        c = rem.terms[m] / h.terms[hlt]
        shift = mono_div(m, hlt)
        q_terms[shift] = c
        rem = rem - h.mul_monomial(shift, c)
    return Polynomial(q_terms, f.nvars)


def colon_poly(a_gens, h, inner=DEGREVLEX):
    """(I : h) for a single nonzero polynomial h."""
    if h.is_zero():
        raise ValueError("colon by zero")
    meet = intersect(a_gens, [h], inner)
    return [exact_divide(g, h, inner) for g in meet]


def colon_ideal(a_gens, b_gens, inner=DEGREVLEX):
    """(I : J) = intersection of (I : h) over generators h of J."""
    b_gens = [h for h in b_gens if not h.is_zero()]
    if not b_gens:
        raise ValueError("colon by the zero ideal")
    result = None
    for h in b_gens:
        part = colon_poly(a_gens, h, inner)
        result = part if result is None else intersect(result, part, inner)
    return result
