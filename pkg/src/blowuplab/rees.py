"""Rees-algebra presentations by elimination, and linear-type testing.

For I = (f_1, ..., f_nu) the defining ideal of the blowup algebra is the
kernel of x_i -> x_i, T_j -> f_j t; it is computed by eliminating t from
(T_1 - f_1 t, ..., T_nu - f_nu t) plus any ring relations.  The base
variables sit in degree 0 and the T_j in degree 1, so the kernel is
homogeneous in the T-grading and its reduced basis splits by T-degree.

I is of linear type exactly when the kernel is generated by its linear part
(the T-degree <= 1 slice).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import engines
from .blowup import independence_probe
from .engines import Ideal, RingSpec, groebner
from .engines.rings import _ses
from .errors import ConsistencyError, HypothesisError
from .kernel import Polynomial


@dataclass
class ReesPresentation:
    base_ideal: object
    generators: tuple        # ordered f_1, ..., f_nu over the base ring
    ambient: RingSpec        # Q[base vars, T1..Tnu]
    defining: Ideal          # the kernel, as an ambient ideal (reduced basis)
    linear_part: Ideal       # relations + T-degree-1 elements
    t_degrees: tuple         # T-degree of each reduced-basis generator

    def t_variable_names(self):
        return self.ambient.varnames[len(self.base_ideal.ring.varnames):]


def _t_degree(poly, base_n):
    degs = {sum(m[base_n:]) for m in poly.terms}
    if len(degs) > 1:
        raise ConsistencyError("kernel generator not T-homogeneous")
    return degs.pop() if degs else 0


def rees_presentation(I, session=None):
    """Present the blowup algebra of I by generators and relations."""
    ses = _ses(session)
    ring = I.ring
    if ring.kind not in ("poly", "quotient"):
        raise HypothesisError("presentation needs a polynomial or quotient "
                              "model")
    gens = list(I.gens)
    if not gens:
        raise HypothesisError("zero ideal has no blowup presentation")
    nu = len(gens)
    base_n = ring.nvars
    tnames = tuple(f"T{j + 1}" for j in range(nu))
    ambient = RingSpec.poly(*(ring.varnames + tnames))
    # elimination ring: [t | base vars | T vars]
    big_n = 1 + base_n + nu
    elim_gens = []
    t = Polynomial.variable(0, big_n)
    for j, f in enumerate(gens):
        Tj = Polynomial.variable(1 + base_n + j, big_n)
        f_big = f.extend(big_n, shift=1)
        elim_gens.append(Tj - f_big * t)
    for rel in ring.relations:
        elim_gens.append(rel.extend(big_n, shift=1))
    kernel_polys = groebner.eliminate_first(elim_gens, 1)
    kernel = Ideal(ambient, kernel_polys)
    reduced = engines.groebner_basis_of(kernel, session=ses)
    tdegs = tuple(_t_degree(g, base_n) for g in reduced)
    linear = [g for g, d in zip(reduced, tdegs) if d <= 1]
    return ReesPresentation(I, tuple(gens), ambient, Ideal(ambient, reduced),
                            Ideal(ambient, linear), tdegs)


def substitution_check(pres, session=None):
    """Every kernel generator must vanish under T_j -> f_j * t."""
    ring = pres.base_ideal.ring
    base_n = ring.nvars
    nu = len(pres.generators)
    small_n = base_n + 1  # base vars + t
    images = [Polynomial.variable(i, small_n) for i in range(base_n)]
    t = Polynomial.variable(base_n, small_n)
    t_images = [f.extend(small_n) * t for f in pres.generators]
    rel_gb = [r.extend(small_n) for r in ring.relations]
    basis = groebner.groebner_basis(rel_gb) if rel_gb else []
    for g in pres.defining.gens:
        val = g.substitute(images + t_images)
        if basis:
            if not groebner.is_member(val, basis):
                return False
        elif not val.is_zero():
            return False
    return True


def linear_type_test(I, pres=None, session=None):
    """I is of linear type iff the kernel equals its linear part."""
    ses = _ses(session)
    if pres is None:
        pres = rees_presentation(I, session=ses)
    if pres.linear_part.is_zero():
        return all(d == 0 for d in pres.t_degrees) or pres.defining.is_zero()
    gb = engines.ideal_gb(pres.linear_part, session=ses)
    return all(groebner.is_member(g, list(gb)) for g in pres.defining.gens)


def lintype_from_rednum(I, seed=0, trials=3, horizon=None, session=None):
    """Report r(I) (independence-sampled) and the linear-type verdict; the
    implication r = 0 => linear type is asserted for zero-dimensional ideals
    of a polynomial model."""
    ses = _ses(session)
    if I.ring.kind != "poly":
        raise HypothesisError("linear-type reduction test needs a polynomial "
                              "model")
    if not engines.is_m_primary(I, session=ses):
        raise HypothesisError("I must be m-primary")
    probe = independence_probe(I, trials=trials, seed=seed, horizon=horizon,
                               session=ses)
    if not probe.independent:
        raise ConsistencyError(
            f"sampled reduction numbers disagree: {probe.r_values}")
    r = probe.r_values[0]
    pres = rees_presentation(I, session=ses)
    lt = linear_type_test(I, pres=pres, session=ses)
    if r == 0 and not lt:
        raise ConsistencyError(
            "r(I) = 0 but the kernel exceeds its linear part")
    return {
        "r": r,
        "linear_type": lt,
        "certification": probe.certification,
        "t_degrees": pres.t_degrees,
        "implication": "r=0 => linear type holds" if r == 0
        else "vacuous (r > 0)",
    }
