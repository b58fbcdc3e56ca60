"""Ratliff-Rush closures, superficial elements, reductions, and independence.

All "relative to M" computations use the cyclic-module identification: for
M = R/K, the submodule I^n M corresponds to the ideal I^n + K, and the colon
I^n M :_M J to ((I^n + K) : J), which contains K.

Module-level equalities J·I^n·M = I^{n+1}·M are decided by the Nakayama
criterion (images of the candidate generators must span
I^{n+1}M / m·I^{n+1}M): this encodes equality of the localizations at m, which
is the statement the theory is about, and stays exact for generic
(non-monomial) reduction candidates whose global loci pick up points away
from the origin.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import engines
from .engines import Ideal
from .engines import groebner, staircase
from .engines import semigroup as sgm
from .engines.rings import _ses
from .errors import ConsistencyError, HorizonExhausted, HypothesisError
from .kernel import Polynomial, mono_mul

CONFIRM_WINDOW = 3  # consecutive equal colon-chain steps demanded before trust
DEFAULT_HORIZON = 25


def default_horizon(ring_dim, nu, r=None):
    """max(2(d + nu), 2r + 10) when a reduction number is known, else 25."""
    if r is None:
        return DEFAULT_HORIZON
    return max(2 * (ring_dim + nu), 2 * r + 10)


# ---------------------------------------------------------------------------
# cyclic modules
# ---------------------------------------------------------------------------

class CyclicModule:
    """M = R/K for an ideal K; K = 0 encodes M = R."""

    __slots__ = ("ring", "K", "asserted", "_dim")

    def __init__(self, ring, K=None, asserted=()):
        if K is None:
            K = ring.zero_ideal()
        if K.ring.key() != ring.key():
            raise ValueError("defining ideal lives over a different ring")
        self.ring = ring
        self.K = K
        self.asserted = frozenset(asserted)
        self._dim = None

    @classmethod
    def free(cls, ring):
        return cls(ring)

    def is_free(self):
        return self.K.is_zero()

    @property
    def dimension(self):
        if self._dim is None:
            ring = self.ring
            if self.K.is_zero():
                self._dim = ring.dimension
            elif ring.kind == "semigroup":
                self._dim = 0
            else:
                gens = list(self.K.gens) + list(ring.relations)
                gb = groebner.groebner_basis(gens)
                if any(g.is_constant() for g in gb):
                    self._dim = -1
                else:
                    lead = [g.leading_monomial() for g in gb]
                    self._dim = staircase.dimension_of_lt(lead, ring.nvars)
        return self._dim

    def is_cohen_macaulay(self):
        if self.is_free():
            return self.ring.is_flagged("cohen-macaulay")
        return "cohen-macaulay" in self.asserted

    def quotient_by(self, elems):
        """M/(elems)M as a cyclic module (asserted flags are not inherited)."""
        extra = Ideal(self.ring, list(self.K.gens) + list(elems))
        return CyclicModule(self.ring, extra, asserted=self.asserted)

    def __repr__(self):
        return "R" if self.is_free() else f"R/{self.K!r}"


def module_ideal(I_power, M):
    """Ideal representing (I^n)M inside M = R/K."""
    if M.K.is_zero():
        return I_power
    return engines.sum_ideals(I_power, M.K)


def power_module(I, n, M, session=None):
    return module_ideal(engines.power(I, n, session=session), M)


# ---------------------------------------------------------------------------
# exact sparse linear algebra over Q (for Nakayama spanning tests)
# ---------------------------------------------------------------------------

def _row_reduce_insert(echelon, row):
    """Reduce `row` (dict mono->Fraction) against echelon rows in place;
    returns the reduced row (possibly empty)."""
    for pivot, prow in echelon.items():
        c = row.get(pivot)
        if c:
            for m, v in prow.items():
                s = row.get(m, 0) - c * v
                if s:
                    row[m] = s
                else:
                    row.pop(m, None)
    return row


def _echelon_add(echelon, row):
    row = _row_reduce_insert(echelon, dict(row))
    if not row:
        return False
    pivot = max(row, key=lambda m: (sum(m), m))
    inv = row[pivot]
    echelon[pivot] = {m: v / inv for m, v in row.items()}
    return True


def span_contains(rows_a, rows_b):
    """Is every row of rows_b in the Q-span of rows_a?"""
    echelon = {}
    for r in rows_a:
        _echelon_add(echelon, r)
    for r in rows_b:
        if _row_reduce_insert(echelon, dict(r)):
            return False
    return True


# ---------------------------------------------------------------------------
# the Nakayama test for J * I^n M = I^{n+1} M
# ---------------------------------------------------------------------------

def _nakayama_rows_monomial(J_expos, In_expos, In1_expos, W_expos):
    # every monomial of I^{n+1} outside W = m*I^{n+1} + K is a minimal
    # generator of I^{n+1}, so the spanning test is a set inclusion
    in_w = staircase.membership_fn(W_expos)
    basis_set = {v for v in In1_expos if not in_w(v)}
    covered = set()
    for e in J_expos:
        for u in In_expos:
            w = mono_mul(e, u)
            if w in basis_set:
                covered.add(w)
    return basis_set <= covered


def module_product_equals(J, I, n, M, session=None):
    """J * I^n M == I^{n+1} M (localized at m), by the Nakayama criterion."""
    ses = _ses(session)
    ring = I.ring
    In = engines.power(I, n, session=ses)
    In1 = engines.power(I, n + 1, session=ses)
    m_ideal = ring.maximal_ideal()

    if ring.kind == "semigroup":
        sgr = ring.sg
        W = sgm.sum_ideals(sgr, sgm.product(sgr, m_ideal.gens, In1.gens),
                           M.K.gens)
        basis = {v for v in In1.gens if not sgm.member(sgr, v, W)}
        covered = set()
        for e in J.gens:
            for u in In.gens:
                if (e + u) in basis:
                    covered.add(e + u)
        return basis <= covered

    all_monomial = (J.is_monomial() and I.is_monomial() and M.K.is_monomial()
                    and ring.kind == "poly")
    if all_monomial:
        W = staircase.sum_ideals(
            staircase.product(m_ideal.expos(), In1.expos()), M.K.expos())
        return _nakayama_rows_monomial(J.expos(), In.expos(), In1.expos(), W)

    # general path: normal-form coordinates against GB(m*I^{n+1} + K + rels)
    W_ideal = engines.sum_ideals(engines.product(m_ideal, In1), M.K)
    gb = engines.ideal_gb(W_ideal, session=ses)
    rows_j = []
    for a in J.gens:
        for u in In.gens:
            nf = groebner.normal_form(a * u, list(gb))
            if not nf.is_zero():
                rows_j.append(nf.terms)
    rows_t = []
    for v in In1.gens:
        nf = groebner.normal_form(v, list(gb))
        if not nf.is_zero():
            rows_t.append(nf.terms)
    return span_contains(rows_j, rows_t)


# ---------------------------------------------------------------------------
# colon-equality tests against a single element (length identity)
# ---------------------------------------------------------------------------

def colon_elem_equals(A, x, B, session=None):
    """(A : x) == B, for m-primary ideals A, B with B*x <= A already known.

    Uses lambda(R/(A:x)) = lambda(R/A) - lambda(R/(A + (x))) (multiplication
    by the regular element x), so only colengths are needed.
    """
    ses = _ses(session)
    lam_a = engines.colength(A, session=ses)
    ax = engines.sum_ideals(A, Ideal(A.ring, [x]))
    lam_ax = engines.colength(ax, session=ses)
    lam_b = engines.colength(B, session=ses)
    return lam_a - lam_ax == lam_b


def _contains_ideal(A, B, session=None):
    """B <= A by generator membership."""
    return engines.contains_ideal(A, B, session=session)


# ---------------------------------------------------------------------------
# regular elements
# ---------------------------------------------------------------------------

def is_regular_on(x, M, session=None):
    """x a non-zero-divisor on M = R/K: (K : x) == K."""
    ring = M.ring
    if ring.kind == "semigroup":
        # the ring is a domain; over R/K with K != 0 (dim 0) every non-unit
        # kills something
        return M.K.is_zero() or int(x) == 0
    if M.K.is_zero() and ring.kind == "poly":
        return not x.is_zero()
    K_gens = list(M.K.gens) + list(ring.relations)
    if not K_gens:
        return not x.is_zero()
    q = groebner.colon_poly(K_gens, x)
    gb_k = engines.ideal_gb(M.K, session=session)
    gb_q = tuple(groebner.groebner_basis(q))
    return gb_q == gb_k


def find_regular_generator(I, M, session=None):
    for g in I.gens:
        if is_regular_on(g, M, session=session):
            return g
    return None


# ---------------------------------------------------------------------------
# Ratliff-Rush closure
# ---------------------------------------------------------------------------

@dataclass
class RRResult:
    ideal: Ideal
    module: CyclicModule
    n: int
    closure: Ideal           # represents the closure of I^n in M, plus K
    stabilization_index: int
    status: str              # "certified" | "horizon-verified"
    horizon: int
    notes: tuple = ()

    def proper(self, session=None):
        """Does the closure strictly exceed I^n M?"""
        base = power_module(self.ideal, self.n, self.module, session)
        return not engines.equals(self.closure, base, session=session)


def ratliff_rush(I, M=None, n=1, horizon=None, window=CONFIRM_WINDOW,
                 session=None):
    """Stable value of the chain (I^{n+j} M :_M I^j), j = 1, 2, ...

    Certification: the chain must repeat for `window` consecutive steps and
    the independent product check closure * I^k <= I^{n+k} M must pass for
    k up to the horizon; otherwise the result is labeled horizon-verified.
    """
    ses = _ses(session)
    ring = I.ring
    if M is None:
        M = CyclicModule.free(ring)
    if horizon is None:
        horizon = default_horizon(ring.dimension, len(I.gens))
    if find_regular_generator(I, M, session=ses) is None:
        raise HypothesisError("no generator of I is regular on M")
    if engines.equals(module_ideal(I, M), ring.unit_ideal(), session=ses):
        raise HypothesisError("IM = M: the closure is not defined")

    prev = None
    stable_at = None
    run = 0
    value = None
    for j in range(1, horizon + 1):
        top = power_module(I, n + j, M, session=ses)
        cj = engines.colon(top, engines.power(I, j, session=ses), session=ses)
        if prev is not None and engines.equals(cj, prev, session=ses):
            run += 1
            if run >= window:
                value = cj
                break
        else:
            run = 0
            stable_at = j
        prev = cj
    if value is None:
        raise HorizonExhausted(
            f"Ratliff-Rush chain still growing at horizon {horizon}")

    # independent consistency check through the product/membership machinery
    # (cheap backends run it to the horizon; Groebner-backed models to a
    # shorter window, which still cross-checks the colon path)
    cheap = ring.kind == "semigroup" or (ring.kind == "poly"
                                         and I.is_monomial()
                                         and M.K.is_monomial())
    depth = horizon if cheap else min(horizon, stable_at + window + 2)
    certified = True
    acc = value
    for k in range(1, depth + 1):
        acc = engines.product(acc, I)
        target = power_module(I, n + k, M, session=ses)
        if not _contains_ideal(target, acc, session=ses):
            certified = False
            break
    status = "certified" if certified else "horizon-verified"
    return RRResult(I, M, n, value, stable_at, status, horizon)


# ---------------------------------------------------------------------------
# superficial elements
# ---------------------------------------------------------------------------

@dataclass
class SuperficialCheck:
    element: object
    ok: bool
    start: int | None        # first index of the trailing all-equal run
    failures: tuple
    horizon: int
    status: str = "horizon-verified"


def check_superficial(x, I, M=None, horizon=None, session=None):
    """Window check of I^n M :_M x = I^{n-1} M for n = 1..horizon.

    Passes when the equality holds on a nonempty trailing run (the defining
    quantifier is "for all n >> 0", so the verdict is horizon-verified).
    """
    ses = _ses(session)
    ring = I.ring
    if M is None:
        M = CyclicModule.free(ring)
    if horizon is None:
        horizon = default_horizon(ring.dimension, len(I.gens))
    if ring.kind == "semigroup":
        if not engines.member(x, I):
            raise HypothesisError("element not in the ideal")
    else:
        if isinstance(x, str):
            x = ring.polynomial(x)
        if not engines.member(x, I, session=ses):
            raise HypothesisError("element not in the ideal")
    if not is_regular_on(x if not isinstance(x, int) else x, M, session=ses):
        raise HypothesisError("element is a zero-divisor on M")

    failures = []
    for n in range(1, horizon + 1):
        A = power_module(I, n, M, ses)
        B = power_module(I, n - 1, M, ses)
        if ring.kind == "semigroup":
            C = engines.colon(A, Ideal(ring, [x]), session=ses)
            ok = engines.equals(C, B, session=ses)
        else:
            ok = colon_elem_equals(A, x, B, session=ses)
        if not ok:
            failures.append(n)
    ok = not failures or failures[-1] < horizon
    start = (failures[-1] + 1) if failures else 1
    return SuperficialCheck(x, ok, start if ok else None, tuple(failures),
                            horizon)


def _generic_combinations(I, count, seed, bound=100):
    """Seeded generic rational combinations of the minimal generators."""
    gens, nu, _ = engines.minimal_generators(I)
    ring = I.ring
    rng = random.Random(seed)
    if ring.kind == "semigroup":
        raise ValueError("semigroup model: generic combinations are not "
                         "representable (monomial generators only)")
    for _ in range(64):
        rows = [[rng.randrange(1, bound + 1) for _ in gens]
                for _ in range(count)]
        if _matrix_rank(rows) == count:
            elems = []
            for row in rows:
                f = Polynomial.zero(ring.nvars)
                for c, g in zip(row, gens):
                    f = f + g.scale(c)
                elems.append(f)
            return elems, rows
    raise ConsistencyError("could not draw independent coefficient rows")


def _matrix_rank(rows):
    rows = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c]
        rows[r] = [v / inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        rank += 1
    return rank


def find_superficial(I, M=None, horizon=None, seed=0, session=None):
    """A verified (window-checked) M-superficial element of I, or None.

    Monomial generator candidates are tried first (cheap).  Seeded generic
    combinations are only attempted when the Groebner colengths they require
    stay small; otherwise None is returned and callers report the missing
    cross-check instead of stalling.
    """
    ses = _ses(session)
    ring = I.ring
    if M is None:
        M = CyclicModule.free(ring)
    if horizon is None:
        horizon = default_horizon(ring.dimension, len(I.gens))
    if ring.kind == "semigroup":
        candidates = [min(I.gens)]
    else:
        candidates = [g for g in I.gens if g.is_monomial()]
    for x in candidates:
        try:
            chk = check_superficial(x, I, M, horizon, session=ses)
        except HypothesisError:
            continue
        if chk.ok:
            return chk
    if ring.kind == "semigroup":
        return None
    maxdeg = max(g.total_degree() for g in I.gens)
    if maxdeg * horizon > 800:
        return None
    for attempt in range(2):
        elems, _ = _generic_combinations(I, 1, seed + 17 * attempt)
        try:
            chk = check_superficial(elems[0], I, M, horizon, session=ses)
        except HypothesisError:
            continue
        if chk.ok:
            return chk
    return None


# ---------------------------------------------------------------------------
# s*(I, M)
# ---------------------------------------------------------------------------

@dataclass
class SStarResult:
    value: int
    method: str
    status: str
    failure_witnesses: tuple
    horizon: int
    cross_checked: bool = False


def sstar(I, M=None, horizon=None, session=None, cross_check=True):
    """Least m >= 1 with I^{n+1} M :_M I = I^n M for all m <= n <= horizon.

    Cross-checked against the superficial-element characterization
    I^{n+1} M :_M x = I^n M when a verified superficial element exists; a
    disagreement raises ConsistencyError.
    """
    ses = _ses(session)
    ring = I.ring
    if M is None:
        M = CyclicModule.free(ring)
    if horizon is None:
        horizon = default_horizon(ring.dimension, len(I.gens))
    if find_regular_generator(I, M, session=ses) is None:
        raise HypothesisError("no generator of I is regular on M")

    failures = []
    for n in range(1, horizon + 1):
        A = power_module(I, n + 1, M, ses)
        B = power_module(I, n, M, ses)
        C = engines.colon(A, I, session=ses)
        if not engines.equals(C, B, session=ses):
            failures.append(n)
    if failures and failures[-1] >= horizon:
        raise HorizonExhausted(
            f"colon condition still failing at horizon {horizon}")
    value = (failures[-1] + 1) if failures else 1

    crossed = False
    if cross_check:
        chk = find_superficial(I, M, horizon, session=ses)
        if chk is not None and chk.ok:
            x = chk.element
            fail2 = []
            for n in range(1, horizon + 1):
                A = power_module(I, n + 1, M, ses)
                B = power_module(I, n, M, ses)
                if ring.kind == "semigroup":
                    ok = engines.equals(
                        engines.colon(A, Ideal(ring, [x]), session=ses), B,
                        session=ses)
                else:
                    ok = colon_elem_equals(A, x, B, session=ses)
                if not ok:
                    fail2.append(n)
            value2 = (fail2[-1] + 1) if fail2 else 1
            if value2 != value:
                raise ConsistencyError(
                    f"s* methods disagree: colon-chain {value}, "
                    f"superficial {value2}")
            crossed = True

    return SStarResult(value, "colon-chain", "horizon-verified",
                       tuple(failures), horizon, crossed)


# ---------------------------------------------------------------------------
# reductions
# ---------------------------------------------------------------------------

@dataclass
class ReductionResult:
    J: Ideal
    I: Ideal
    module: CyclicModule
    r: int
    witness: int
    minimal: bool
    coefficients: tuple = ()
    seed: int | None = None


def reduction_number(J, I, M=None, horizon=None, session=None, minimal=None):
    """r_J(I, M): least n with J I^n M = I^{n+1} M; exact once found.

    The found value certifies itself (the equality persists after
    multiplying by I), so no horizon label is attached.
    """
    ses = _ses(session)
    ring = I.ring
    if M is None:
        M = CyclicModule.free(ring)
    if horizon is None:
        horizon = default_horizon(ring.dimension, len(I.gens))
    for g in J.gens:
        if not engines.member(g, I, session=ses):
            raise HypothesisError("J is not contained in I")
    for n in range(0, horizon + 1):
        if module_product_equals(J, I, n, M, session=ses):
            if minimal is None:
                s = M.dimension
                _, nu_j, _ = engines.minimal_generators(J, session=ses)
                minimal = (nu_j == s)
            return ReductionResult(J, I, M, n, n, bool(minimal))
    raise HorizonExhausted(
        f"not a reduction up to horizon {horizon} (relative to {M!r})")


def find_minimal_reduction(I, M=None, seed=0, horizon=None, session=None,
                           max_retries=8, coeff_bound=100):
    """Generic minimal reduction relative to M (dim M generators).

    Polynomial/quotient models: seeded generic combinations of the minimal
    generators.  Semigroup model: the principal ideal on the least-valuation
    generator (every principal reduction there shares its reduction number,
    since multiplicity equals valuation).
    """
    ses = _ses(session)
    ring = I.ring
    if M is None:
        M = CyclicModule.free(ring)
    if not engines.is_m_primary(I, session=ses):
        raise HypothesisError("I is not m-primary")
    s = M.dimension
    if s < 1:
        raise HypothesisError("dim M must be positive")

    if ring.kind == "semigroup":
        e = min(engines.minimal_generators(I)[0])
        J = Ideal(ring, [e])
        res = reduction_number(J, I, M, horizon, session=ses, minimal=True)
        res.seed = seed
        return res

    failures = []
    for attempt in range(max_retries):
        elems, rows = _generic_combinations(I, s, seed + 1009 * attempt,
                                            coeff_bound)
        J = Ideal(ring, elems)
        try:
            res = reduction_number(J, I, M, horizon, session=ses, minimal=True)
            res.coefficients = tuple(tuple(r) for r in rows)
            res.seed = seed + 1009 * attempt
            return res
        except HorizonExhausted:
            failures.append(rows)
    raise HorizonExhausted(
        f"no generic reduction found after {max_retries} attempts; "
        f"failing coefficient rows: {failures}")


# ---------------------------------------------------------------------------
# independence probe
# ---------------------------------------------------------------------------

@dataclass
class ProbeReport:
    I: Ideal
    module: CyclicModule
    r_values: tuple
    independent: bool
    certification: str       # "mafi-route" | "hoa-route" | "valuation" | "none"
    details: dict = field(default_factory=dict)


def verify_mafi_hypotheses(I, M, J_result, horizon=None, session=None):
    """Check the arbitrary-dimension hypotheses: J generated by a verified
    M-superficial sequence and the closure of I^r over each successive
    quotient M_j equal to I^r M_j (j <= s-1).

    Returns (ok, details); statuses of the Ratliff-Rush closures are listed.
    The superficiality window defaults to a short run past r (the check is
    window-evidence either way; full horizons get expensive off the monomial
    fast paths).
    """
    ses = _ses(session)
    r = J_result.r
    s = M.dimension
    if horizon is None:
        horizon = r + CONFIRM_WINDOW + 3
    details = {"r": r, "s": s, "superficial": [], "rr_status": []}
    if r == 0:
        details["branch"] = "r=0"
        return True, details
    details["branch"] = "r>=1"
    elems = list(J_result.J.gens)
    Mj = M
    for j, x in enumerate(elems, start=1):
        chk = check_superficial(x, I, Mj, horizon, session=ses)
        details["superficial"].append((j, chk.ok, chk.failures))
        if not chk.ok:
            return False, details
        if j <= s - 1:
            rr = ratliff_rush(I, Mj, n=r, horizon=max(horizon, 8), session=ses)
            base = power_module(I, r, Mj, ses)
            closed = engines.equals(rr.closure, base, session=ses)
            details["rr_status"].append((j, closed, rr.status))
            if not closed:
                return False, details
        Mj = Mj.quotient_by([x])
    return True, details


def independence_probe(I, M=None, trials=5, seed=0, horizon=None,
                       session=None):
    """Sample generic minimal reductions; report the multiset of r_J values.

    Certification routes: the arbitrary-dimension theorem hypotheses (r = 0,
    or closures over the successive superficial quotients), the dimension-2
    postulation criterion rho(I) != s*(I) - 1, or the valuation argument in
    the semigroup model.
    """
    ses = _ses(session)
    ring = I.ring
    if M is None:
        M = CyclicModule.free(ring)
    if not engines.is_m_primary(I, session=ses):
        raise HypothesisError("I is not m-primary")

    if ring.kind == "semigroup":
        res = find_minimal_reduction(I, M, seed=seed, horizon=horizon,
                                     session=ses)
        rs = tuple([res.r] * trials)
        details = {"note": "all principal reductions share the minimal "
                           "valuation, hence one reduction number"}
        if M.dimension == 1 and M.is_cohen_macaulay():
            cert = "mafi-route"  # s = 1: hypotheses are vacuous
            details["branch"] = "s=1 (vacuous hypotheses)"
        else:
            cert = "valuation"
        return ProbeReport(I, M, rs, True, cert, details)

    rs = []
    first = None
    for k in range(trials):
        res = find_minimal_reduction(I, M, seed=seed + k, horizon=horizon,
                                     session=ses)
        if first is None:
            first = res
        rs.append(res.r)
    independent = len(set(rs)) == 1

    cert = "none"
    details = {}
    if independent and M.is_cohen_macaulay() and M.dimension >= 1:
        ok, det = verify_mafi_hypotheses(I, M, first, horizon, session=ses)
        details.update(det)
        if ok:
            cert = "mafi-route"
    if cert == "none" and M.is_free() and ring.dimension == 2 \
            and ring.is_flagged("cohen-macaulay"):
        from . import hilbert as _hilbert
        try:
            summary = _hilbert.fit_hilbert_polynomial(I, session=ses)
            rho = _hilbert.postulation_number(I, summary=summary,
                                              session=ses)[0]
            sval = sstar(I, M, horizon, session=ses).value
            details["rho"] = rho
            details["sstar"] = sval
            if rho != sval - 1 and independent:
                cert = "hoa-route"
        except (HorizonExhausted, HypothesisError):
            pass
    return ProbeReport(I, M, tuple(rs), independent, cert, details)
