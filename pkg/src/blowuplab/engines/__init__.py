"""Ideal arithmetic over three interchangeable ring models."""

from .rings import (
    DEFAULT_SESSION,
    Ideal,
    RingSpec,
    Session,
    colength,
    colon,
    contains_ideal,
    eliminate,
    equals,
    groebner_basis_of,
    ideal_gb,
    intersect,
    is_m_primary,
    krull_dimension,
    member,
    minimal_generators,
    power,
    product,
    sum_ideals,
)

__all__ = [
    "DEFAULT_SESSION",
    "Ideal",
    "RingSpec",
    "Session",
    "colength",
    "colon",
    "contains_ideal",
    "eliminate",
    "equals",
    "groebner_basis_of",
    "ideal_gb",
    "intersect",
    "is_m_primary",
    "krull_dimension",
    "member",
    "minimal_generators",
    "power",
    "product",
    "sum_ideals",
]
