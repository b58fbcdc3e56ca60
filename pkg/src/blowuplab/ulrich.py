"""Ulrich-ideal certification and its closed-form consequences.

An m-primary ideal I of a Cohen-Macaulay local model (dim d >= 1) with a
parameter reduction J is Ulrich when r_J(I) <= 1 and I/I^2 is a free
R/I-module.  Freeness is decided by the length criterion
lambda(I/I^2) = nu(I) * lambda(R/I): a module over the Artinian ring R/I
generated by nu elements is free exactly when its length is nu times the
ring's length, so no module presentations are needed.

The closed forms implemented here (Hilbert-Samuel coefficients, postulation
number, regularity <= 1) are those valid for Ulrich ideals; each is
cross-checked against the general machinery in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import engines, hilbert
from .blowup import (
    CyclicModule,
    find_minimal_reduction,
    ratliff_rush,
    reduction_number,
    sstar,
)
from .engines.rings import _ses
from .errors import ConsistencyError, HorizonExhausted, HypothesisError
from .kernel import binomial_poly

DEFAULT_SEED = 0


@dataclass
class UlrichReport:
    ideal: object
    J: object                # ReductionResult or None (fast rejection)
    r: int | None
    nu: int
    lam: int                 # lambda(R/I)
    lam_i_i2: int            # lambda(I/I^2)
    free: bool
    verdict: str             # "ulrich" | "not-ulrich"
    reason: str
    is_parameter: bool
    dimension: int
    powers_closed_window: int | None = None


def _require_cm(ring):
    if not ring.is_flagged("cohen-macaulay"):
        raise HypothesisError(
            "Ulrich certification needs a Cohen-Macaulay model (polynomial "
            "and semigroup models qualify automatically; quotient models "
            "need the asserted flag)")


def is_ulrich(I, J_result=None, seed=DEFAULT_SEED, horizon=None,
              session=None):
    """Certify or refute the Ulrich property; see the module docstring.

    Fast rejection: a single power that is not Ratliff-Rush closed already
    refutes (Ulrich forces every power closed), so the closure of I itself
    is tested before any reduction search.
    """
    ses = _ses(session)
    ring = I.ring
    _require_cm(ring)
    d = ring.dimension
    if d < 1:
        raise HypothesisError("dim R must be positive")
    if not engines.is_m_primary(I, session=ses):
        raise HypothesisError("I must be m-primary")

    _, nu, _ = engines.minimal_generators(I, session=ses)
    lam = engines.colength(I, session=ses)
    lam2 = engines.colength(engines.power(I, 2, session=ses), session=ses)
    lam_i_i2 = lam2 - lam
    free = lam_i_i2 == nu * lam
    is_param = nu == d

    rr1 = ratliff_rush(I, n=1, horizon=horizon, session=ses)
    if rr1.proper(session=ses):
        r = None
        if J_result is not None:
            r = J_result.r
        return UlrichReport(I, J_result, r, nu, lam, lam_i_i2, free,
                            "not-ulrich",
                            "I is not Ratliff-Rush closed", is_param, d)

    if J_result is None:
        J_result = find_minimal_reduction(I, seed=seed, horizon=horizon,
                                          session=ses)
    r = J_result.r
    if not J_result.minimal:
        raise HypothesisError("J must be a verified minimal (parameter) "
                              "reduction")
    if r > 1:
        return UlrichReport(I, J_result, r, nu, lam, lam_i_i2, free,
                            "not-ulrich", f"r_J(I) = {r} > 1", is_param, d)
    if not free:
        return UlrichReport(I, J_result, r, nu, lam, lam_i_i2, free,
                            "not-ulrich",
                            f"I/I^2 not free: lambda(I/I^2) = {lam_i_i2} != "
                            f"nu*lambda = {nu * lam}", is_param, d)

    # positive verdict: record the window on which all powers verify closed
    window = 5 if ring.kind == "quotient" else 8
    ss = sstar(I, horizon=window, session=ses, cross_check=False)
    if ss.value != 1:
        raise ConsistencyError(
            "Ulrich verdict contradicts an unclosed power: s* window gave "
            f"{ss.value}")
    return UlrichReport(I, J_result, r, nu, lam, lam_i_i2, free, "ulrich",
                        "r_J <= 1 and I/I^2 free", is_param, d,
                        powers_closed_window=window)


def ulrich_regularity(I, report=None, session=None, cross_check=True,
                      seed=DEFAULT_SEED):
    """(reg, is_parameter): 0 for parameter ideals, else 1.

    Cross-checked against the route orchestrator unless disabled.
    """
    ses = _ses(session)
    if report is None:
        report = is_ulrich(I, seed=seed, session=ses)
    if report.verdict != "ulrich":
        raise HypothesisError(f"not Ulrich: {report.reason}")
    value = 0 if report.is_parameter else 1
    if cross_check:
        from .regularity import regularity
        rep = regularity(I, J_result=report.J, session=ses)
        if rep.reg != value:
            raise ConsistencyError(
                f"closed form gives {value}, routes give {rep.reg}")
    return value, report.is_parameter


def ulrich_hilbert_closed_form(d, lam, nu):
    """Closed-form Hilbert data of an Ulrich ideal:

    coefficients (e_0, ..., e_d) = (lam*(nu-d+1), lam*(nu-d), 0, ..., 0),
    rho = -d for parameter ideals and 1-d otherwise, and an exact evaluator
    P(n) = lam[(nu-d+1) C(n+d-1, d) - (nu-d) C(n+d-2, d-1)].
    """
    if d < 1 or lam < 1:
        raise HypothesisError("need d >= 1 and lam >= 1")
    if nu < d:
        raise HypothesisError("nu >= d is forced for m-primary ideals")
    coeffs = (lam * (nu - d + 1), lam * (nu - d)) + (0,) * (d - 1)
    rho = -d if nu == d else 1 - d

    def evaluate(n):
        val = lam * ((nu - d + 1) * binomial_poly(n + d - 1, d)
                     - (nu - d) * binomial_poly(n + d - 2, d - 1))
        if val.denominator != 1:
            raise ConsistencyError("closed form not integer-valued")
        return int(val)

    return coeffs, rho, evaluate


def ulrich_gorenstein_form(d, lam, n):
    """Gorenstein closed form lam/d! * (2n+d-2) * n(n+1)...(n+d-2),
    valid for n >= 2-d (where it agrees with the Hilbert-Samuel function)."""
    if d < 1 or lam < 1:
        raise HypothesisError("need d >= 1 and lam >= 1")
    if n < 2 - d:
        raise HypothesisError(
            f"n = {n} < 2-d: outside the validity range of this form")
    fact = 1
    for k in range(2, d + 1):
        fact *= k
    rising = Fraction(1)
    for k in range(d - 1):
        rising *= n + k
    val = Fraction(lam) * (2 * n + d - 2) * rising / fact
    if val.denominator != 1:
        raise ConsistencyError("Gorenstein form not integer-valued")
    return int(val)


def genitoh_check(I, J_result=None, seed=DEFAULT_SEED, horizon=None,
                  session=None):
    """Equivalence report in dimension 2 with I Ratliff-Rush closed:

    (a) r_J(I) <= 2;
    (b) H(n) = P(n) for all n >= 1  (tested as rho <= 0);
    (c) H(n) = P(n) for n = 1, 2.

    The three booleans are evaluated independently; a non-constant vector is
    a consistency failure upstream, so the report carries the full vector.
    """
    ses = _ses(session)
    ring = I.ring
    if ring.dimension != 2 or not ring.is_flagged("cohen-macaulay"):
        raise HypothesisError("equivalence needs a 2-dimensional "
                              "Cohen-Macaulay model")
    rr1 = ratliff_rush(I, n=1, horizon=horizon, session=ses)
    if rr1.proper(session=ses):
        raise HypothesisError("hypothesis fails: I is not Ratliff-Rush closed")
    if J_result is None:
        J_result = find_minimal_reduction(I, seed=seed, horizon=horizon,
                                          session=ses)
    r = J_result.r
    window = max(ring.dimension + 3, 2 * r + 4)
    summary = hilbert.fit_hilbert_polynomial(I, window=window, session=ses)
    rho, _ = hilbert.postulation_number(I, summary=summary, session=ses,
                                        certify=False)
    a = r <= 2
    b = rho <= 0
    c = all(summary.values[n] == summary.polynomial_value(n) for n in (1, 2))
    return {
        "r_J": r,
        "rho": rho,
        "assertions": (a, b, c),
        "constant": a == b == c,
        "coefficients": summary.coefficients,
    }
