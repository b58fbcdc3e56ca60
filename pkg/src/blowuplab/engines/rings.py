"""Ring models, ideals, and the uniform ideal-arithmetic dispatch.

Three computational models share one Ideal interface:

* ``poly``       -- Q[x_1..x_n]; monomial generator lists go to the staircase
                    backend, anything else to the Groebner engine.
* ``semigroup``  -- k[[t^S]] for a numerical semigroup S; pure set arithmetic.
* ``quotient``   -- Q[x_1..x_n]/(relations); the Groebner engine with the
                    relations adjoined to every computation.

All ring-theoretic answers are the localized ones at the distinguished
maximal ideal: every pipeline only ever compares m-primary ideals (for which
global and local equality agree) or uses Nakayama-style tests that encode the
localization directly.
"""

from __future__ import annotations

from ..kernel import DEGREVLEX, Polynomial, parse_polynomial
from . import groebner, semigroup as sgmod, staircase


class RingSpec:
    """A computational model of a local (or graded-local) ring.

    `asserted` carries user-asserted hypotheses ("cohen-macaulay",
    "gorenstein", "buchsbaum"); polynomial and semigroup models are
    Cohen-Macaulay automatically, and gorenstein implies cohen-macaulay.
    """

    __slots__ = ("kind", "varnames", "sg_gens", "relations", "asserted",
                 "_dim", "_sg", "_rel_gb")

    def __init__(self, kind, varnames=(), sg_gens=(), relations=(), asserted=()):
        flags = set(asserted)
        if kind in ("poly", "semigroup"):
            flags.add("cohen-macaulay")
        if "gorenstein" in flags:
            flags.add("cohen-macaulay")
        self.kind = kind
        self.varnames = tuple(varnames)
        self.sg_gens = tuple(sg_gens)
        self.relations = tuple(relations)
        self.asserted = frozenset(flags)
        self._dim = None
        self._sg = None
        self._rel_gb = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def poly(cls, *varnames, asserted=()):
        if not varnames:
            raise ValueError("need at least one variable")
        return cls("poly", varnames=varnames, asserted=asserted)

    @classmethod
    def semigroup(cls, *gens, asserted=()):
        spec = cls("semigroup", varnames=("t",), sg_gens=tuple(gens),
                   asserted=asserted)
        spec.sg  # validates gcd-1 eagerly
        return spec

    @classmethod
    def quotient(cls, varnames, relations, asserted=()):
        varnames = tuple(varnames)
        rels = tuple(parse_polynomial(r, varnames) if isinstance(r, str) else r
                     for r in relations)
        if any(r.is_zero() for r in rels):
            raise ValueError("zero relation")
        return cls("quotient", varnames=varnames, relations=rels,
                   asserted=asserted)

    # -- basic data -----------------------------------------------------------

    @property
    def nvars(self):
        return len(self.varnames)

    @property
    def sg(self):
        if self._sg is None:
            if self.kind != "semigroup":
                raise ValueError("not a semigroup model")
            self._sg = sgmod.semigroup(self.sg_gens)
        return self._sg

    def relation_gb(self):
        if self._rel_gb is None:
            self._rel_gb = tuple(groebner.groebner_basis(list(self.relations)))
        return self._rel_gb

    @property
    def dimension(self):
        if self._dim is None:
            if self.kind == "poly":
                self._dim = self.nvars
            elif self.kind == "semigroup":
                self._dim = 1
            else:
                lead = [g.leading_monomial() for g in self.relation_gb()]
                self._dim = staircase.dimension_of_lt(lead, self.nvars)
        return self._dim

    def is_flagged(self, flag):
        return flag in self.asserted

    def key(self):
        return (self.kind, self.varnames, self.sg_gens, self.relations,
                self.asserted)

    def __eq__(self, other):
        return isinstance(other, RingSpec) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.kind == "poly":
            return f"Q[{', '.join(self.varnames)}]"
        if self.kind == "semigroup":
            return f"k[[t^<{', '.join(map(str, self.sg_gens))}>]]"
        rels = ", ".join(str(r) for r in self.relations)
        return f"Q[{', '.join(self.varnames)}]/({rels})"

    # -- convenience ----------------------------------------------------------

    def polynomial(self, text):
        return parse_polynomial(text, self.varnames)

    def ideal(self, *gens):
        return Ideal(self, gens)

    def maximal_ideal(self):
        if self.kind == "semigroup":
            return Ideal(self, self.sg_gens)
        return Ideal(self, [Polynomial.variable(i, self.nvars)
                            for i in range(self.nvars)])

    def zero_ideal(self):
        return Ideal(self, [])

    def unit_ideal(self):
        if self.kind == "semigroup":
            return Ideal(self, [0])
        return Ideal(self, [Polynomial.constant(1, self.nvars)])


class Ideal:
    """Finitely generated ideal over a RingSpec.

    Generators are Polynomials for poly/quotient models and integer exponents
    (of t) for the semigroup model.  Monomial ideals keep their exponent
    vectors and materialize Polynomial generators only on demand (powers in
    the staircase backend can carry thousands of corners).  Instances are
    immutable and hashable.
    """

    __slots__ = ("ring", "_gens", "_expos", "_hash")

    def __init__(self, ring, gens):
        self.ring = ring
        self._hash = None
        self._gens = None
        self._expos = None
        if ring.kind == "semigroup":
            clean = []
            for g in gens:
                e = int(g)
                if e not in ring.sg:
                    raise ValueError(f"exponent {e} is not in the semigroup")
                clean.append(e)
            self._expos = tuple(sorted(set(clean)))
            return
        polys = []
        for g in gens:
            if isinstance(g, str):
                g = parse_polynomial(g, ring.varnames)
            elif isinstance(g, tuple):
                g = Polynomial.monomial(g, ring.nvars)
            if g.nvars != ring.nvars:
                raise ValueError("generator has wrong variable count")
            if not g.is_zero():
                polys.append(g)
        if all(g.is_monomial() and g.leading_coeff() == 1 for g in polys):
            self._expos = tuple(sorted({next(iter(g.terms)) for g in polys}))
        else:
            seen = set()
            uniq = []
            for g in polys:
                if g not in seen:
                    seen.add(g)
                    uniq.append(g)
            self._gens = tuple(sorted(uniq, key=_poly_sort_key))

    @classmethod
    def from_expos(cls, ring, expos):
        """Monomial ideal straight from exponent data (no Polynomial objects)."""
        self = object.__new__(cls)
        self.ring = ring
        self._hash = None
        self._gens = None
        if ring.kind == "semigroup":
            self._expos = tuple(sorted(set(int(e) for e in expos)))
        else:
            self._expos = tuple(sorted(set(map(tuple, expos))))
        return self

    @property
    def gens(self):
        if self._gens is None:
            if self.ring.kind == "semigroup":
                return self._expos
            self._gens = tuple(Polynomial.monomial(e, self.ring.nvars)
                               for e in self._expos)
        return self._gens

    def is_zero(self):
        return not (self._expos if self._gens is None else self._gens)

    def is_monomial(self):
        return self._expos is not None

    def expos(self):
        """Exponent vectors of a monomial ideal (staircase form)."""
        if self._expos is None:
            raise ValueError("not a monomial ideal")
        return list(self._expos)

    def key(self):
        if self._expos is not None:
            return (self.ring.key(), "mono", self._expos)
        return (self.ring.key(), "poly", self._gens)

    def __eq__(self, other):
        """Structural equality of generator lists (use `equals` for ideals)."""
        return isinstance(other, Ideal) and self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        if self.ring.kind == "semigroup":
            body = ", ".join(f"t^{e}" for e in self._expos)
        else:
            from ..kernel import poly_str
            if self._expos is not None and len(self._expos) > 12:
                body = f"<monomial ideal, {len(self._expos)} generators>"
            else:
                body = ", ".join(poly_str(g, self.ring.varnames)
                                 for g in self.gens)
        return f"({body})"


def _poly_sort_key(g):
    return (g.total_degree(), sorted(g.terms))


def _from_expos(ring, expos):
    return Ideal.from_expos(ring, expos)


class Session:
    """Per-session caches (powers, Groebner bases).

    Results are pure functions of the inputs; the cache is a single-writer
    convenience, so concurrent users should carry distinct sessions.
    """

    def __init__(self):
        self.powers = {}
        self.gbs = {}

    def clear(self):
        self.powers.clear()
        self.gbs.clear()


DEFAULT_SESSION = Session()


def _ses(session):
    return DEFAULT_SESSION if session is None else session


# ---------------------------------------------------------------------------
# dispatch helpers
# ---------------------------------------------------------------------------

def _check_same_ring(a, b):
    if a.ring.key() != b.ring.key():
        raise ValueError("ideals over different rings")


def _use_staircase(*ideals, backend=None):
    ring = ideals[0].ring
    if backend == "staircase":
        if ring.kind != "poly" or not all(i.is_monomial() for i in ideals):
            raise ValueError("staircase backend needs monomial ideals in a "
                             "polynomial model")
        return True
    if backend == "groebner":
        return False
    return ring.kind == "poly" and all(i.is_monomial() for i in ideals)


def ideal_gb(ideal, order=DEGREVLEX, session=None):
    """Reduced Groebner basis of the ideal plus any ring relations."""
    ses = _ses(session)
    k = (ideal.key(), order)
    if k not in ses.gbs:
        gens = list(ideal.gens) + list(ideal.ring.relations)
        ses.gbs[k] = tuple(groebner.groebner_basis(gens, order))
    return ses.gbs[k]


# ---------------------------------------------------------------------------
# the uniform operations
# ---------------------------------------------------------------------------

def krull_dimension(ring):
    return ring.dimension


def sum_ideals(a, b):
    _check_same_ring(a, b)
    ring = a.ring
    if ring.kind == "semigroup":
        return Ideal(ring, sgmod.sum_ideals(ring.sg, a.gens, b.gens))
    if _use_staircase(a, b):
        return _from_expos(ring, staircase.sum_ideals(a.expos(), b.expos()))
    return Ideal(ring, list(a.gens) + list(b.gens))


def product(a, b, backend=None):
    _check_same_ring(a, b)
    ring = a.ring
    if a.is_zero() or b.is_zero():
        return ring.zero_ideal()
    if ring.kind == "semigroup":
        return Ideal(ring, sgmod.product(ring.sg, a.gens, b.gens))
    if _use_staircase(a, b, backend=backend):
        return _from_expos(ring, staircase.product(a.expos(), b.expos()))
    gens = [f * g for f in a.gens for g in b.gens]
    if ring.kind == "quotient":
        gb = ring.relation_gb()
        gens = [groebner.normal_form(g, list(gb)) for g in gens]
    return Ideal(ring, gens)


def power(a, n, session=None, backend=None):
    if n < 0:
        raise ValueError("negative power")
    ring = a.ring
    if n == 0:
        return ring.unit_ideal()
    if a.is_zero():
        return ring.zero_ideal()
    ses = _ses(session)
    key = (a.key(), n, backend)
    if key in ses.powers:
        return ses.powers[key]
    result = power(a, n - 1, session=ses, backend=backend)
    result = product(result, a, backend=backend)
    ses.powers[key] = result
    return result


def colon(a, b, backend=None, session=None):
    _check_same_ring(a, b)
    ring = a.ring
    if b.is_zero():
        raise ValueError("colon by the zero ideal")
    if ring.kind == "semigroup":
        return Ideal(ring, sgmod.colon(ring.sg, a.gens, b.gens))
    if _use_staircase(a, b, backend=backend):
        return _from_expos(ring, staircase.colon(a.expos(), b.expos()))
    gens = list(a.gens) + list(ring.relations)
    out = groebner.colon_ideal(gens, list(b.gens))
    return Ideal(ring, out)


def intersect(a, b, backend=None):
    _check_same_ring(a, b)
    ring = a.ring
    if ring.kind == "semigroup":
        return Ideal(ring, sgmod.intersect(ring.sg, a.gens, b.gens))
    if _use_staircase(a, b, backend=backend):
        return _from_expos(ring, staircase.intersect(a.expos(), b.expos()))
    ga = list(a.gens) + list(ring.relations)
    gb = list(b.gens) + list(ring.relations)
    return Ideal(ring, groebner.intersect(ga, gb))


def member(f, a, backend=None, session=None):
    """Ideal membership (for polynomials: termwise against monomial ideals,
    normal form against a Groebner basis otherwise)."""
    ring = a.ring
    if ring.kind == "semigroup":
        e = int(f)
        return sgmod.member(ring.sg, e, a.gens)
    if isinstance(f, str):
        f = parse_polynomial(f, ring.varnames)
    if f.is_zero():
        return True
    if a.is_zero():
        return False
    if ring.kind == "poly" and a.is_monomial() and backend != "groebner":
        expos = a.expos()
        return all(staircase.member(m, expos) for m in f.terms)
    gb = ideal_gb(a, session=session)
    return groebner.is_member(f, list(gb))


def equals(a, b, backend=None, session=None):
    _check_same_ring(a, b)
    ring = a.ring
    if ring.kind == "semigroup":
        return sgmod.equals(ring.sg, a.gens, b.gens)
    if _use_staircase(a, b, backend=backend):
        return staircase.equals(a.expos(), b.expos())
    return ideal_gb(a, session=session) == ideal_gb(b, session=session)


def contains_ideal(a, b, session=None):
    """a >= b as ideals (every generator of b lies in a)."""
    _check_same_ring(a, b)
    ring = a.ring
    if ring.kind == "semigroup":
        return sgmod.contains(ring.sg, a.gens, b.gens)
    if _use_staircase(a, b):
        return staircase.contains(a.expos(), b.expos())
    gb = ideal_gb(a, session=session)
    return all(groebner.is_member(g, list(gb)) for g in b.gens)


def is_m_primary(a, backend=None, session=None):
    ring = a.ring
    if ring.kind == "semigroup":
        return sgmod.is_m_primary(ring.sg, a.gens)
    if a.is_zero():
        return False
    if _use_staircase(a, backend=backend):
        expos = staircase.minimalize(a.expos())
        return staircase.is_m_primary(expos) and all(sum(e) > 0 for e in expos)
    gb = ideal_gb(a, session=session)
    if any(g.is_constant() for g in gb):
        return False
    lead = staircase.minimalize([g.leading_monomial() for g in gb])
    return staircase.is_m_primary(lead)


def colength(a, backend=None, session=None):
    ring = a.ring
    if ring.kind == "semigroup":
        return sgmod.colength(ring.sg, a.gens)
    if _use_staircase(a, backend=backend):
        return staircase.colength(a.expos())
    gb = ideal_gb(a, session=session)
    if any(g.is_constant() for g in gb):
        return 0
    lead = [g.leading_monomial() for g in gb]
    return staircase.colength(lead)


def minimal_generators(a, session=None):
    """(minimal generating list, nu, status); status is "exact" or
    "minimality-heuristic" (quotient model, inexact local minimality)."""
    ring = a.ring
    if ring.kind == "semigroup":
        out = sgmod.minimalize(ring.sg, a.gens)
        return list(out), len(out), "exact"
    if ring.kind == "poly" and a.is_monomial():
        out = staircase.minimalize(a.expos())
        return [Polynomial.monomial(e, ring.nvars) for e in out], len(out), "exact"
    # greedy drop: g is redundant when it lies in the ideal of the others
    gens = list(a.gens)
    changed = True
    while changed:
        changed = False
        for i, g in enumerate(gens):
            rest = gens[:i] + gens[i + 1 :]
            basis = groebner.groebner_basis(rest + list(ring.relations))
            if groebner.is_member(g, basis):
                gens.pop(i)
                changed = True
                break
    nu, status = len(gens), "exact"
    if is_m_primary(a, session=session):
        # exact local count by Nakayama: nu = lambda(I/mI)
        m = ring.maximal_ideal()
        mi = [x * g for x in m.gens for g in a.gens]
        big = groebner.groebner_basis(mi + list(ring.relations))
        lam_mi = staircase.colength([g.leading_monomial() for g in big])
        lam_i = colength(a, session=session)
        nu = lam_mi - lam_i
        if nu != len(gens):
            status = "minimality-heuristic"
    elif ring.kind == "quotient":
        status = "minimality-heuristic"
    return gens, nu, status


def groebner_basis_of(a, order=DEGREVLEX, session=None):
    if a.ring.kind == "semigroup":
        raise ValueError("semigroup model has no Groebner backend "
                         "(the set-arithmetic backend is authoritative)")
    return list(ideal_gb(a, order, session))


def eliminate(a, drop, session=None):
    """I cap Q[kept variables]; returns an ideal over the smaller ring."""
    ring = a.ring
    if ring.kind != "poly":
        raise ValueError("eliminate needs a polynomial model")
    drop = [d for d in drop]
    for d in drop:
        if d not in ring.varnames:
            raise ValueError(f"unknown variable {d!r}")
    if not drop:
        return a
    keep = [v for v in ring.varnames if v not in drop]
    perm = [ring.varnames.index(d) for d in drop] + \
           [ring.varnames.index(v) for v in keep]
    k = len(drop)

    def permute(f):
        return Polynomial({tuple(m[i] for i in perm): c
                           for m, c in f.terms.items()}, ring.nvars)

    rearranged = [permute(g) for g in a.gens]
    out = groebner.eliminate_first(rearranged, k)
    small = RingSpec.poly(*keep)
    return Ideal(small, out)
