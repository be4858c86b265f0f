"""Shared fixtures-in-spirit: seeded generators and exact oracles."""

from __future__ import annotations

import random
from fractions import Fraction

from scatterpoly.poly_algebra import BivariatePoly, ComplexRational
from scatterpoly.scattering import PQIndex


def random_poly(
    rng: random.Random,
    max_terms: int = 6,
    max_exponent: int = 4,
    max_numerator: int = 5,
) -> BivariatePoly:
    """Small random polynomial with exact rational coefficients."""
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        a = rng.randint(0, max_exponent)
        b = rng.randint(0, max_exponent)
        coeff = ComplexRational(
            Fraction(rng.randint(-max_numerator, max_numerator), rng.randint(1, 3)),
            Fraction(rng.randint(-max_numerator, max_numerator), rng.randint(1, 3)),
        )
        terms[(a, b)] = coeff
    return BivariatePoly(terms)


def random_point(rng: random.Random, radius: float = 0.95) -> complex:
    """Uniformish point inside the disk of the given radius."""
    while True:
        z = complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius))
        if abs(z) <= radius:
            return z


def exact_norm_fraction(idx: PQIndex) -> Fraction:
    """The closed-form squared norm as a multiple of pi."""
    return Fraction(idx.p, idx.q * (idx.p + idx.q))
