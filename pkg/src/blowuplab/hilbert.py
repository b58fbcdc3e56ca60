"""Hilbert-Samuel functions, binomial-basis fitting, postulation numbers.

H(n) = lambda(R/I^n) for n >= 1 and 0 for n <= 0.  The polynomial P agreeing
with H for large n is written in the binomial basis

    P(n) = sum_{i=0}^{d} (-1)^i e_i C(n+d-i-1, d-i),

and evaluated at arbitrary integers through the polynomial extension of the
binomial coefficients, so the postulation number (the largest disagreement,
often negative) is computed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import engines
from .blowup import CyclicModule, independence_probe, sstar
from .engines.rings import _ses
from .errors import ConsistencyError, HorizonExhausted, HypothesisError
from .kernel import binomial_poly


def hilbert_function(I, n, session=None):
    """lambda(R/I^n); zero for n <= 0."""
    if n <= 0:
        return 0
    if not engines.is_m_primary(I, session=session):
        raise HypothesisError("Hilbert-Samuel function needs an m-primary ideal")
    return engines.colength(engines.power(I, n, session=session),
                            session=session)


def evaluate_fit(coeffs, n):
    """P(n) from binomial-basis coefficients (e_0, ..., e_d); exact."""
    d = len(coeffs) - 1
    total = Fraction(0)
    for i, e in enumerate(coeffs):
        total += (-1) ** i * e * binomial_poly(n + d - i - 1, d - i)
    if total.denominator != 1:
        raise ConsistencyError("Hilbert polynomial not integer-valued")
    return int(total)


def _solve_coeffs(points, d):
    """Solve for (e_0..e_d) from d+1 (n, H(n)) pairs; exact Fractions."""
    rows = []
    for n, h in points:
        rows.append([(-1) ** i * binomial_poly(n + d - i - 1, d - i)
                     for i in range(d + 1)] + [Fraction(h)])
    m = d + 1
    for c in range(m):
        piv = next((r for r in range(c, m) if rows[r][c]), None)
        if piv is None:
            raise ConsistencyError("singular fit system")
        rows[c], rows[piv] = rows[piv], rows[c]
        inv = rows[c][c]
        rows[c] = [v / inv for v in rows[c]]
        for r in range(m):
            if r != c and rows[r][c]:
                f = rows[r][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[c])]
    return tuple(rows[i][m] for i in range(m))


@dataclass
class HilbertSummary:
    ideal: object
    d: int
    window: int
    values: dict            # n -> H(n) on 1..window
    coefficients: tuple     # (e_0, ..., e_d) as ints
    status: str

    def polynomial_value(self, n):
        return evaluate_fit(self.coefficients, n)


def fit_hilbert_polynomial(I, window=None, session=None):
    """Fit e_0..e_d from the top of the window and confirm stability.

    The top d+1 values determine a candidate; the fit shifted down by one
    must reproduce the same coefficients (so the polynomial is confirmed on
    d+2 consecutive points).  Disagreement or a non-integer solution means
    the window is too small: enlarge it.
    """
    ses = _ses(session)
    d = I.ring.dimension
    if window is None:
        window = d + 3
    if window < d + 3:
        raise HypothesisError(f"window must be at least d+3 = {d + 3}")
    values = {n: hilbert_function(I, n, session=ses)
              for n in range(1, window + 1)}
    top = [(n, values[n]) for n in range(window - d, window + 1)]
    shifted = [(n, values[n]) for n in range(window - d - 1, window)]
    coeffs = _solve_coeffs(top, d)
    coeffs2 = _solve_coeffs(shifted, d)
    if coeffs != coeffs2:
        raise HorizonExhausted(
            f"fit not stable at window {window}: enlarge the window")
    if any(c.denominator != 1 for c in coeffs):
        raise HorizonExhausted(
            f"non-integer Hilbert coefficients at window {window}: "
            "enlarge the window")
    coeffs = tuple(int(c) for c in coeffs)
    if coeffs[0] <= 0:
        raise ConsistencyError("leading coefficient e_0 must be positive")
    return HilbertSummary(I, d, window, values, coeffs, "horizon-verified")


def postulation_number(I, summary=None, window=None, session=None,
                       certify=True):
    """(rho, status): the largest integer n with H(n) != P(n).

    Scans down from the window; H vanishes for n <= 0 while P has finitely
    many integer roots, so the scan terminates.  status is "certified" when
    the dimension-2 grade-zero relation rho = r(I) - d verifies (all powers
    Ratliff-Rush closed), else "horizon-verified".
    """
    ses = _ses(session)
    if summary is None:
        summary = fit_hilbert_polynomial(I, window=window, session=ses)
    rho = None
    n = summary.window
    floor = -(10 * summary.d + 200)
    while n > floor:
        h = summary.values.get(n, 0) if n >= 1 else 0
        if h != summary.polynomial_value(n):
            rho = n
            break
        n -= 1
    if rho is None:
        raise ConsistencyError("no disagreement found above the root floor")

    status = "horizon-verified"
    if certify and I.ring.dimension == 2 \
            and I.ring.is_flagged("cohen-macaulay"):
        try:
            ss = sstar(I, horizon=10, session=ses, cross_check=False)
            if ss.value == 1:
                probe = independence_probe(I, trials=1, seed=0, session=ses)
                if probe.independent and probe.certification != "none" \
                        and rho == probe.r_values[0] - 2:
                    status = "certified"
        except (HorizonExhausted, HypothesisError):
            pass
    return rho, status


def marley_check(I, session=None, trials=3, seed=0):
    """Verify r(I) = rho(I) + d when grade G(I)_+ >= d-1 holds verifiably.

    d = 1: the grade condition is vacuous.  d = 2: tested as s*(I) = 1 (all
    powers Ratliff-Rush closed).  d >= 3: no certificate is available here.
    """
    ses = _ses(session)
    ring = I.ring
    d = ring.dimension
    if not ring.is_flagged("cohen-macaulay"):
        raise HypothesisError("marley relation needs a Cohen-Macaulay ring")
    if d == 1:
        grade_ok, grade_note = True, "vacuous (d = 1)"
    elif d == 2:
        ss = sstar(I, session=ses, cross_check=False)
        grade_ok = ss.value == 1
        grade_note = f"s*(I) = {ss.value}"
        if not grade_ok:
            raise HypothesisError(
                f"grade condition fails: s*(I) = {ss.value} > 1")
    else:
        raise HypothesisError(
            "no machine certificate for the grade condition when d >= 3")
    probe = independence_probe(I, trials=trials, seed=seed, session=ses)
    if not probe.independent:
        raise ConsistencyError(
            f"sampled reduction numbers disagree: {probe.r_values}")
    r = probe.r_values[0]
    window = max(d + 3, 2 * r + 4)
    summary = fit_hilbert_polynomial(I, window=window, session=ses)
    rho, rho_status = postulation_number(I, summary=summary, session=ses)
    return {
        "d": d,
        "r": r,
        "rho": rho,
        "rho_status": rho_status,
        "grade_note": grade_note,
        "equal": r == rho + d,
        "coefficients": summary.coefficients,
    }
