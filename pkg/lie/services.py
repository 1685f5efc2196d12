"""The gl/sl action on the coordinate ring as superderivations."""
from __future__ import annotations

import logging
from typing import Dict, Mapping, Optional, Tuple, Union

from core.exceptions import DimensionMismatchError, ZeroPolynomialError
from superalgebra.grassmann import GrassmannElement, GrassmannPoint, evaluate_grassmann
from superalgebra.localization import EvenFraction
from superalgebra.polynomial import CoordinateRing, Derivation, Polynomial, Variable, add_into
from supermatrices.services import (
    evaluate_matrix,
    generic_matrix,
    grassmann_berezinian,
    grassmann_inverse,
    random_invertible_supermatrix,
)
from supermatrices.supermatrix import SuperFormat, SuperMatrix
from .basis import LieBasis, LieBasisElement, LieCombination, Weight, gl_basis

logger = logging.getLogger(__name__)

GroupPoint = Mapping[str, SuperMatrix]


def action_images(ring: CoordinateRing, element: LieBasisElement) -> Dict[Variable, Polynomial]:
    """Images of the generators under E_kl at its vertex.

    Head side (h(e) = a) acts on rows: x_kj(e) gets x_lj(e). Tail side
    (t(e) = a) acts on columns: x_il(e) gets -(-1)^(|E|*|x_ik(e)|) x_ik(e).
    Loops take both.
    """
    vertex, k, l, parity = element.vertex, element.k, element.l, element.parity
    terms: Dict[Variable, Dict] = {}
    for edge in ring.quiver.edges:
        if edge.head == vertex:
            for j in range(1, ring.alpha.total(edge.tail) + 1):
                target = ring.variable(edge.id, k, j)
                add_into(terms.setdefault(target, {}), ring.x(edge.id, l, j))
        if edge.tail == vertex:
            for i in range(1, ring.alpha.total(edge.head) + 1):
                target = ring.variable(edge.id, i, l)
                source = ring.variable(edge.id, i, k)
                sign = 1 if parity * source.parity else -1
                add_into(terms.setdefault(target, {}), ring.gen(source), sign)
    return {var: Polynomial(ring, image) for var, image in terms.items() if image}


def combination_images(ring: CoordinateRing, combination: LieCombination) -> Dict[Variable, Polynomial]:
    terms: Dict[Variable, Dict] = {}
    for element, coeff in combination.terms:
        for var, image in action_images(ring, element).items():
            add_into(terms.setdefault(var, {}), image, coeff)
    return {var: Polynomial(ring, image) for var, image in terms.items() if image}


def derivation_for(ring: CoordinateRing, generator: Union[LieBasisElement, LieCombination]) -> Derivation:
    if isinstance(generator, LieBasisElement):
        generator = LieCombination.single(generator)
    ring.quiver.vertex_index(generator.vertex)
    return Derivation(combination_images(ring, generator), generator.parity)


def commutator_images(first: Derivation, second: Derivation, ring: CoordinateRing) -> Dict[Variable, Polynomial]:
    """Generator images of D1 D2 - (-1)^(|D1||D2|) D2 D1."""
    sign = -1 if first.parity * second.parity else 1
    images = {}
    for var in ring.variables:
        gen = ring.gen(var)
        image = first(second(gen)) - second(first(gen)) * sign
        if image:
            images[var] = image
    return images


def bracket(first: LieBasisElement, second: LieBasisElement, alpha) -> Optional[LieCombination]:
    """Supercommutator [E1, E2] as a combination, ``None`` when it vanishes."""
    if first.vertex != second.vertex:
        return None
    sign = -1 if first.parity * second.parity else 1
    coefficients: Dict[Tuple[int, int], int] = {}
    if first.l == second.k:
        key = (first.k, second.l)
        coefficients[key] = coefficients.get(key, 0) + 1
    if second.l == first.k:
        key = (second.k, first.l)
        coefficients[key] = coefficients.get(key, 0) - sign
    terms = tuple(
        (LieBasisElement.build(alpha, first.vertex, k, l), coeff)
        for (k, l), coeff in sorted(coefficients.items())
        if coeff
    )
    return LieCombination(terms) if terms else None


# -- invariance ----------------------------------------------------------


def find_violation(
    f: Polynomial,
    basis: LieBasis,
    weight: Optional[Weight] = None,
) -> Optional[Tuple[LieCombination, Polynomial]]:
    """First generator D with D f != w(a) str(D) f, with its residual."""
    for generator in basis:
        expected = f * (weight[generator.vertex] * generator.supertrace) if weight is not None else f.ring.zero
        residual = derivation_for(f.ring, generator)(f) - expected
        if residual:
            logger.debug("%s fails at %s", f, generator)
            return generator, residual
    return None


def is_sl_invariant(f: Polynomial, basis: LieBasis) -> bool:
    return find_violation(f, basis) is None


def check_weight(f: Polynomial, weight: Weight, basis: Optional[LieBasis] = None) -> bool:
    if not f:
        raise ZeroPolynomialError("The zero polynomial has every weight.")
    return find_violation(f, basis or gl_basis(f.ring), weight) is None


def format_failure(generator: LieCombination, residual: Polynomial) -> str:
    return f"FAIL gen={generator} residual={residual}"


def invariance_report(f: Polynomial, basis: Optional[LieBasis] = None) -> str:
    violation = find_violation(f, basis or gl_basis(f.ring), Weight.zero(f.ring.quiver))
    return "INVARIANT" if violation is None else format_failure(*violation)


def weight_report(f: Polynomial, weight: Weight) -> str:
    if not f:
        raise ZeroPolynomialError("The zero polynomial has every weight.")
    violation = find_violation(f, gl_basis(f.ring), weight)
    if violation is not None:
        return format_failure(*violation)
    return "INVARIANT" if weight.is_zero() else f"WEIGHT {weight}"


# -- group points --------------------------------------------------------


def vertex_format(ring: CoordinateRing, vertex: str) -> SuperFormat:
    twist = ring.parity[vertex]
    return SuperFormat(ring.alpha[vertex], ring.alpha[vertex], twist, twist)


def random_group_point(ring: CoordinateRing, k: int, rng) -> Dict[str, SuperMatrix]:
    return {vertex: random_invertible_supermatrix(vertex_format(ring, vertex), k, rng) for vertex in ring.quiver.vertices}


def act_on_point(ring: CoordinateRing, g: GroupPoint, point: GrassmannPoint, k: int) -> Dict[Variable, GrassmannElement]:
    """(g.x)(e) = g(h(e)) x(e) g(t(e))^-1 at every edge."""
    inverses = {vertex: grassmann_inverse(matrix) for vertex, matrix in g.items()}
    moved: Dict[Variable, GrassmannElement] = {}
    for edge in ring.quiver.edges:
        values = evaluate_matrix(generic_matrix(ring, edge.id), point, k)
        transformed = g[edge.head] @ values @ inverses[edge.tail]
        for var in ring.edge_variables(edge.id):
            moved[var] = transformed[var.i - 1, var.j - 1]
    for var in ring.variables:
        if not var.graded:
            moved[var] = point[var]
    return moved


def group_point_test(
    f: Union[Polynomial, EvenFraction],
    weight: Weight,
    g: GroupPoint,
    point: GrassmannPoint,
    k: int,
) -> bool:
    """f(g.x) == prod_a Ber(g(a))^w(a) f(x), exactly."""
    ring = f.ring
    for vertex in ring.quiver.vertices:
        if vertex not in g:
            raise DimensionMismatchError(f"The group point has no component at {vertex}.")
        if g[vertex].format != vertex_format(ring, vertex):
            raise DimensionMismatchError(f"The group component at {vertex} has format {g[vertex].format}.")

    def value(at: GrassmannPoint) -> GrassmannElement:
        if isinstance(f, EvenFraction):
            return f.evaluate(at, k)
        return evaluate_grassmann(f, at, k)

    character = GrassmannElement.one(k)
    for vertex in ring.quiver.vertices:
        exponent = weight[vertex]
        if exponent:
            character = character * grassmann_berezinian(g[vertex]) ** exponent
    return value(act_on_point(ring, g, point, k)) == character * value(point)
