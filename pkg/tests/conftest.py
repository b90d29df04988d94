"""Shared helpers for the test suite: seeded random algebra objects."""

import random
from fractions import Fraction

from pinchcert.algebra import Poly, RationalFunc


def rand_fraction(rng, max_num=9, max_den=9):
    num = rng.randint(-max_num, max_num)
    den = rng.randint(1, max_den)
    return Fraction(num, den)


def rand_poly(rng, names=("a1", "a2", "t"), max_terms=4, max_exp=3):
    """Small random polynomial in the given variables."""
    p = Poly.zero()
    for _ in range(rng.randint(1, max_terms)):
        term = Poly.const(rand_fraction(rng))
        for name in names:
            e = rng.randint(0, max_exp)
            if e:
                term = term * Poly.var(name) ** e
        p = p + term
    return p


def rand_pole_free_rf(rng, names=("a1", "a2", "t")):
    """Random rational function whose denominator is positive on all of R^k."""
    num = rand_poly(rng, names)
    den = Poly.one()
    for name in names:
        den = den + Poly.var(name) ** 2 * Fraction(rng.randint(1, 3))
    return RationalFunc(num, den)


def rand_point(rng, names=("a1", "a2", "t"), max_num=6, max_den=6):
    return {name: rand_fraction(rng, max_num, max_den) for name in names}
