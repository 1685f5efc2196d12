"""Seeded random elements for property checks."""
from __future__ import annotations

import random
from typing import Dict, Optional, Sequence

from sympy.polys.domains import QQ

from quivers.graph import MultiDegree
from .grassmann import GrassmannElement, check_generator_count
from .polynomial import CoordinateRing, Polynomial, Variable, add_into, canonicalize


def random_coefficient(rng: random.Random, bound: int = 3):
    value = 0
    while not value:
        value = rng.randint(-bound, bound)
    return QQ(value)


def random_monomial_polynomial(ring: CoordinateRing, degree: MultiDegree, rng: random.Random) -> Polynomial:
    """A single random monomial of the given multidegree (zero if odd ones collide)."""
    word = []
    for edge_id, count in zip(degree.edges, degree.values):
        variables = ring.edge_variables(edge_id)
        if count and not variables:
            return ring.zero
        word.extend((rng.choice(variables), 1) for _ in range(count))
    rng.shuffle(word)
    canonical = canonicalize(word)
    if canonical is None:
        return ring.zero
    sign, monomial = canonical
    return ring.monomial(monomial, sign)


def random_homogeneous_polynomial(
    ring: CoordinateRing,
    degree: MultiDegree,
    rng: random.Random,
    terms: int = 3,
    parity: Optional[int] = None,
) -> Polynomial:
    """Random multihomogeneous polynomial; ``parity`` keeps only monomials of that parity."""
    collected: Dict = {}
    for _ in range(terms * 4):
        candidate = random_monomial_polynomial(ring, degree, rng)
        if not candidate:
            continue
        if parity is not None and candidate.parity != parity:
            continue
        add_into(collected, candidate, random_coefficient(rng))
        if len(collected) >= terms:
            break
    return Polynomial(ring, collected)


def random_grassmann_element(k: int, rng: random.Random, parity: int, density: float = 0.5, bound: int = 2) -> GrassmannElement:
    coeffs = {}
    for mask in range(1 << k):
        if mask.bit_count() % 2 != parity:
            continue
        if rng.random() < density:
            coeffs[mask] = QQ(rng.randint(-bound, bound))
    return GrassmannElement(k, coeffs)


def random_invertible_even(k: int, rng: random.Random) -> GrassmannElement:
    element = random_grassmann_element(k, rng, 0)
    body = random_coefficient(rng)
    return element - element.body + body


def random_grassmann_point(
    ring: CoordinateRing,
    k: int,
    rng: random.Random,
    variables: Optional[Sequence[Variable]] = None,
) -> Dict[Variable, GrassmannElement]:
    check_generator_count(k)
    return {
        var: random_grassmann_element(k, rng, var.parity)
        for var in (variables if variables is not None else ring.variables)
    }
