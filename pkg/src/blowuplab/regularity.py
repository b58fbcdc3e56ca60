"""Castelnuovo-Mumford regularity of Rees modules, by equivalent routes.

Regularity here always means the common value reg R(I, M) = reg G(I, M); it
is never computed cohomologically.  Four characterizations are implemented:

* max-formula     -- dimension 2: reg = max{r_J(I), s*(I)};
* quotient-closure -- reg = r_J(I, M) once the closure of I^r over each
                      successive superficial quotient of M equals I^r there
                      (vacuous when r = 0 or dim M = 1);
* colon-criterion -- the filter-regular colon characterization through a
                      reduction generated by an M-sequence, with the one-shot
                      certificate condition that seals all larger exponents;
* postulation     -- dimension 2, grade-zero case: reg = max{r_J, rho + 1}.

The orchestrator runs every applicable route and demands agreement; a
disagreement is a hard failure carrying the route transcript, never a silent
choice.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import engines, hilbert
from .blowup import (
    CONFIRM_WINDOW,
    CyclicModule,
    check_superficial,
    colon_elem_equals,
    default_horizon,
    find_minimal_reduction,
    is_regular_on,
    module_ideal,
    power_module,
    ratliff_rush,
    reduction_number,
    sstar,
    verify_mafi_hypotheses,
)
from .engines import Ideal, groebner
from .engines.rings import _ses
from .errors import ConsistencyError, HorizonExhausted, HypothesisError


@dataclass
class RouteResult:
    name: str
    value: int
    status: str
    hypotheses: tuple = ()
    note: str = ""


@dataclass
class RegularityReport:
    ideal: object
    module: object
    reg: int
    r_j: int
    routes: list
    consistent: bool
    skipped: list = field(default_factory=list)
    notes: tuple = ("local-transfer: m-primary",)


def _is_parameter(I, session=None):
    """m-primary I is a parameter ideal iff nu(I) = dim R."""
    _, nu, _ = engines.minimal_generators(I, session=session)
    return nu == I.ring.dimension


def _cm_or_buchsbaum(ring):
    return ring.is_flagged("cohen-macaulay") or ring.is_flagged("buchsbaum")


# ---------------------------------------------------------------------------
# route 1: the two-dimensional max formula
# ---------------------------------------------------------------------------

def reg_via_max_formula(I, J_result, horizon=None, session=None):
    """reg = max{r_J(I), s*(I)} (dimension 2, CM or asserted Buchsbaum with
    positive depth, m-primary non-parameter I, verified minimal reduction)."""
    ses = _ses(session)
    ring = I.ring
    if ring.dimension != 2:
        raise HypothesisError("max formula needs a two-dimensional ring")
    if not _cm_or_buchsbaum(ring):
        raise HypothesisError("max formula needs the cohen-macaulay or "
                              "buchsbaum flag")
    if not engines.is_m_primary(I, session=ses):
        raise HypothesisError("I must be m-primary")
    if _is_parameter(I, session=ses):
        raise HypothesisError("I must not be a parameter ideal")
    if not J_result.minimal:
        raise HypothesisError("J must be a verified minimal reduction")
    if horizon is None:
        horizon = default_horizon(2, len(I.gens), J_result.r)
    ss = sstar(I, horizon=horizon, session=ses)
    value = max(J_result.r, ss.value)
    return RouteResult(
        "max-formula", value, ss.status,
        hypotheses=("dim 2", "flags", "non-parameter", "minimal reduction"),
        note=f"r_J = {J_result.r}, s* = {ss.value}")


# ---------------------------------------------------------------------------
# route 2: reg = r_J under quotient Ratliff-Rush closure hypotheses
# ---------------------------------------------------------------------------

def reg_via_quotient_closure(I, J_result, M=None, horizon=None, session=None):
    """reg = r_J(I, M) when r = 0 or the closures of I^r over the successive
    superficial quotients of M agree with I^r (any dimension >= 1)."""
    ses = _ses(session)
    if M is None:
        M = CyclicModule.free(I.ring)
    if not M.is_cohen_macaulay():
        raise HypothesisError("M must be Cohen-Macaulay (flagged)")
    if M.dimension < 1:
        raise HypothesisError("dim M must be >= 1")
    ok, details = verify_mafi_hypotheses(I, M, J_result, horizon=horizon,
                                         session=ses)
    if not ok:
        raise HypothesisError(
            f"quotient-closure hypotheses failed: {details}")
    if details["branch"] == "r=0":
        status = "certified"
    else:
        rr_ok = all(st == "certified" for (_, _, st) in details["rr_status"]) \
            if details["rr_status"] else True
        status = "certified" if rr_ok else "horizon-verified"
    return RouteResult(
        "quotient-closure", J_result.r, status,
        hypotheses=("cohen-macaulay module", f"dim M = {details['s']}",
                    details["branch"]),
        note=f"superficial checks: {details['superficial']}")


# ---------------------------------------------------------------------------
# route 3: filter-regular colon criterion
# ---------------------------------------------------------------------------

def _ideal_on(ring, elems):
    return Ideal(ring, list(elems))


def _is_m_sequence(elems, M, session=None):
    """x_1, ..., x_s an M-sequence: each x_i regular on M/(x_1..x_{i-1})M."""
    Mj = M
    for x in elems:
        if not is_regular_on(x, Mj, session=session):
            return False
        Mj = Mj.quotient_by([x])
    return True


def _strong_condition(elems, I, ell, M, session=None):
    """[(x_1..x_{i-1})M : x_i] cap I^{l+1}M = (x_1..x_{i-1}) I^l M for all i.

    For M = R and an R-sequence pair this collapses to (I^{l+1} : x_1) = I^l,
    decided by the length identity; the general shape runs through Groebner
    colon and intersection.
    """
    ses = _ses(session)
    ring = I.ring
    s = len(elems)
    if M.is_free() and ring.kind == "poly" and s == 2:
        A = engines.power(I, ell + 1, session=ses)
        B = engines.power(I, ell, session=ses)
        return colon_elem_equals(A, elems[0], B, session=ses)
    for i in range(1, s + 1):
        prior = elems[: i - 1]
        A = engines.sum_ideals(_ideal_on(ring, prior), M.K) if prior \
            else M.K
        if A.is_zero():
            colon_part = ring.zero_ideal()
        else:
            colon_part = engines.colon(A, _ideal_on(ring, [elems[i - 1]]),
                                       session=ses)
        lhs = engines.intersect(colon_part,
                                power_module(I, ell + 1, M, ses)) \
            if not colon_part.is_zero() else ring.zero_ideal()
        rhs_gens = []
        Il = engines.power(I, ell, session=ses)
        for p in prior:
            for u in Il.gens:
                rhs_gens.append(p * u)
        rhs = engines.sum_ideals(_ideal_on(ring, rhs_gens), M.K) \
            if rhs_gens or not M.K.is_zero() else ring.zero_ideal()
        lhs_full = engines.sum_ideals(lhs, M.K) if not M.K.is_zero() else lhs
        if not engines.equals(lhs_full, rhs, session=ses):
            return False
    return True


def _gpv_equality(elems, I, n, M, session=None):
    """[(x_1..x_{i-1}) I^n M : x_i] cap I^n M = (x_1..x_{i-1}) I^{n-1} M
    for i = 1..s (the filter-regular displayed equalities at exponent n)."""
    ses = _ses(session)
    ring = I.ring
    s = len(elems)
    In = engines.power(I, n, session=ses)
    In_1 = engines.power(I, n - 1, session=ses)
    for i in range(1, s + 1):
        prior = elems[: i - 1]
        x = elems[i - 1]
        gens = [p * u for p in prior for u in In.gens]
        A = engines.sum_ideals(_ideal_on(ring, gens), M.K) \
            if gens or not M.K.is_zero() else ring.zero_ideal()
        if A.is_zero():
            # [0 : x] cap I^n M = 0 for x regular on M
            if not is_regular_on(x, M, session=ses):
                return False
            continue
        colon_part = engines.colon(A, _ideal_on(ring, [x]), session=ses)
        lhs = engines.intersect(colon_part, module_ideal(In, M))
        rhs_gens = [p * u for p in prior for u in In_1.gens]
        rhs = engines.sum_ideals(_ideal_on(ring, rhs_gens), M.K) \
            if rhs_gens or not M.K.is_zero() else ring.zero_ideal()
        lhs_full = engines.sum_ideals(lhs, M.K) if not M.K.is_zero() else lhs
        if not engines.equals(lhs_full, rhs, session=ses):
            return False
    return True


def reg_via_colon_criterion(I, J_result, M=None, horizon=None, session=None):
    """Least l >= r_J with the filter-regular equalities for all n >= l+1.

    The scan finds the least level where the one-shot certificate condition
    holds (it propagates upward, sealing the infinite tail) and checks the
    displayed equalities honestly on the finite gap below it; if no
    certificate appears by the horizon the whole window is checked and the
    answer is horizon-verified.
    """
    ses = _ses(session)
    ring = I.ring
    if M is None:
        M = CyclicModule.free(ring)
    elems = list(J_result.J.gens)
    if not _is_m_sequence(elems, M, session=ses):
        raise HypothesisError("reduction generators fail the M-sequence check")
    r = J_result.r
    if ring.kind != "semigroup" \
            and not all(g.is_monomial() for g in elems):
        est = max(g.total_degree() for g in I.gens) * (r + CONFIRM_WINDOW + 2)
        if est > 800:
            raise HypothesisError(
                "generic-reduction colon scan too large at this degree; "
                "supply a monomial M-sequence reduction")
    if horizon is None:
        horizon = default_horizon(ring.dimension, len(I.gens), r)

    ell0 = None
    for ell in range(r, horizon + 1):
        if _strong_condition(elems, I, ell, M, session=ses):
            ell0 = ell
            break

    if ell0 is not None:
        failures = [n for n in range(r + 1, ell0 + 1)
                    if not _gpv_equality(elems, I, n, M, session=ses)]
        value = max([r] + failures)
        status = "certified"
        note = f"certificate level {ell0}"
    else:
        failures = [n for n in range(r + 1, horizon + 1)
                    if not _gpv_equality(elems, I, n, M, session=ses)]
        value = max([r] + failures)
        status = "horizon-verified"
        note = f"no certificate level up to {horizon}"
    return RouteResult("colon-criterion", value, status,
                       hypotheses=("M-sequence reduction",), note=note)


# ---------------------------------------------------------------------------
# route 4: postulation formula in the grade-zero case
# ---------------------------------------------------------------------------

def reg_via_postulation(I, J_result, horizon=None, session=None):
    """reg = max{r_J, rho + 1} (dimension 2, CM, grade G(I)_+ = 0, i.e.
    some power of I is not Ratliff-Rush closed)."""
    ses = _ses(session)
    ring = I.ring
    if ring.dimension != 2 or not ring.is_flagged("cohen-macaulay"):
        raise HypothesisError("postulation route needs a 2-dimensional "
                              "Cohen-Macaulay model")
    if horizon is None:
        horizon = default_horizon(2, len(I.gens), J_result.r)
    ss = sstar(I, horizon=horizon, session=ses, cross_check=False)
    if ss.value == 1:
        raise HypothesisError(
            "grade G(I)_+ >= 1 (all powers Ratliff-Rush closed): "
            "postulation route inapplicable")
    window = max(ring.dimension + 3, 2 * J_result.r + 4, ss.value + 3)
    summary = hilbert.fit_hilbert_polynomial(I, window=window, session=ses)
    rho, rho_status = hilbert.postulation_number(I, summary=summary,
                                                 session=ses, certify=False)
    value = max(J_result.r, rho + 1)
    return RouteResult("postulation", value, rho_status,
                       hypotheses=("dim 2", "cohen-macaulay", "grade 0"),
                       note=f"r_J = {J_result.r}, rho = {rho}")


# ---------------------------------------------------------------------------
# the orchestrator
# ---------------------------------------------------------------------------

def regularity(I, M=None, J_result=None, horizon=None, seed=0, session=None):
    """Run every applicable route, demand agreement, return the report.

    Routes whose hypotheses fail are recorded as skipped; value disagreement
    between routes that did run raises ConsistencyError with the transcript.
    """
    ses = _ses(session)
    ring = I.ring
    if M is None:
        M = CyclicModule.free(ring)
    if not engines.is_m_primary(I, session=ses):
        raise HypothesisError("regularity needs an m-primary ideal")
    if J_result is None:
        J_result = find_minimal_reduction(I, M, seed=seed, horizon=horizon,
                                          session=ses)
    routes = []
    skipped = []
    for fn, args in (
        (reg_via_max_formula, (I, J_result)),
        (reg_via_quotient_closure, (I, J_result, M)),
        (reg_via_colon_criterion, (I, J_result, M)),
        (reg_via_postulation, (I, J_result)),
    ):
        if fn is reg_via_max_formula and not M.is_free():
            skipped.append((fn.__name__, "module-relative input"))
            continue
        if fn is reg_via_postulation and not M.is_free():
            skipped.append((fn.__name__, "module-relative input"))
            continue
        try:
            routes.append(fn(*args, horizon=horizon, session=ses))
        except HypothesisError as e:
            skipped.append((fn.__name__, str(e)))
        except HorizonExhausted as e:
            skipped.append((fn.__name__, f"horizon exhausted: {e}"))
    if not routes:
        raise HypothesisError(
            f"no regularity route applicable; skipped: {skipped}")
    values = {rt.value for rt in routes}
    consistent = len(values) == 1
    if not consistent:
        transcript = "; ".join(f"{rt.name}={rt.value}({rt.status})"
                               for rt in routes)
        raise ConsistencyError(
            f"regularity routes disagree: {transcript}; skipped: {skipped}")
    reg = values.pop()
    if J_result.r > reg:
        raise ConsistencyError(
            f"r_J = {J_result.r} exceeds computed regularity {reg}")
    return RegularityReport(I, M, reg, J_result.r, routes, consistent,
                            skipped)


# ---------------------------------------------------------------------------
# evidence harnesses
# ---------------------------------------------------------------------------

def rtt_probe(I, J_result=None, horizon=None, seed=0, session=None):
    """Two-dimensional evidence report: r_J, s*, reg (max formula), the
    min-colon characterization, and the open-question record s* <= r_J + 1.

    The min-colon value min{n >= r_J : I^{m+1}:I = I^m for all m >= n} is
    checked against reg; the question evidence is reported and never
    assumed.
    """
    ses = _ses(session)
    ring = I.ring
    if ring.dimension != 2 or not _cm_or_buchsbaum(ring):
        raise HypothesisError("probe needs a 2-dimensional CM/Buchsbaum model")
    if not engines.is_m_primary(I, session=ses):
        raise HypothesisError("I must be m-primary")
    if _is_parameter(I, session=ses):
        raise HypothesisError("I must not be a parameter ideal")
    if J_result is None:
        J_result = find_minimal_reduction(I, M=None, seed=seed,
                                          horizon=horizon, session=ses)
    r = J_result.r
    if horizon is None:
        horizon = default_horizon(2, len(I.gens), r)
    ss = sstar(I, horizon=horizon, session=ses)
    reg = max(r, ss.value)
    min_colon = max([r] + [n + 1 for n in ss.failure_witnesses if n + 1 > r])
    if ss.value == r + 1:
        question = "equality attained (s* = r_J + 1)"
    elif ss.value <= r:
        question = "strict (s* <= r_J)"
    else:
        question = "VIOLATED (s* > r_J + 1): counterexample candidate"
    closure_r = ratliff_rush(I, n=r, horizon=horizon, session=ses) \
        if r >= 1 else None
    rr_closed = (closure_r is None
                 or not closure_r.proper(session=ses))
    return {
        "r_J": r,
        "sstar": ss.value,
        "reg_max_formula": reg,
        "min_colon_value": min_colon,
        "min_colon_equals_reg": min_colon == reg,
        "corollary_a": ss.value <= r + 1,
        "corollary_b": ring.is_flagged("cohen-macaulay") and rr_closed,
        "question_evidence": question,
        "status": ss.status,
        "horizon": horizon,
    }


def section_compare(I, x, M, horizon=None, seed=0, session=None):
    """Hyperplane-section comparison, conclusion-level evidence only.

    Computes the reduction number and the regularity on both sides (M, and
    M/xM which is one-dimensional so the quotient-closure route applies with
    vacuous hypotheses) and reports whether they agree.  The initial-form
    hypothesis of the underlying statement is not machine-checkable and is
    deliberately not assumed.
    """
    ses = _ses(session)
    ring = I.ring
    if isinstance(x, str):
        x = ring.polynomial(x)
    if M.dimension != 2 or not M.is_cohen_macaulay():
        raise HypothesisError("section comparison needs dim M = 2 and the "
                              "cohen-macaulay flag")
    if engines.member(x, I, session=ses):
        raise HypothesisError("x must lie outside I")
    if not is_regular_on(x, M, session=ses):
        raise HypothesisError("x must be regular on M")
    side1 = find_minimal_reduction(I, M, seed=seed, horizon=horizon,
                                   session=ses)
    M2 = M.quotient_by([x])
    side2 = find_minimal_reduction(I, M2, seed=seed, horizon=horizon,
                                   session=ses)
    reg1 = None
    try:
        reg1 = reg_via_quotient_closure(I, side1, M, horizon=horizon,
                                        session=ses).value
    except HypothesisError:
        pass
    reg2 = reg_via_quotient_closure(I, side2, M2, horizon=horizon,
                                    session=ses).value
    return {
        "r_M": side1.r,
        "r_section": side2.r,
        "r_agree": side1.r == side2.r,
        "reg_M": reg1,
        "reg_section": reg2,
        "reg_agree": (reg1 == reg2) if reg1 is not None else None,
        "label": "conclusion-level evidence",
    }
