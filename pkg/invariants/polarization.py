"""Polarization operators and the linearize-then-restitute identity."""
from __future__ import annotations

from math import factorial, prod
from typing import Dict, Iterable, Tuple

from core.exceptions import PolarizationError
from quivers.graph import MultiDegree
from quivers.services import polarize_quiver, polarized_edge
from superalgebra.polynomial import CoordinateRing, Monomial, Polynomial, Variable, substitute


def polarized_ring(ring: CoordinateRing, degree: MultiDegree) -> CoordinateRing:
    return CoordinateRing(polarize_quiver(ring.quiver, degree), ring.alpha, ring.parity)


def _check_degree(f: Polynomial, degree: MultiDegree) -> None:
    actual = f.multidegree()
    if actual is None:
        raise PolarizationError("Polarization needs a multihomogeneous polynomial.")
    if f and actual != degree:
        raise PolarizationError(f"Polynomial has multidegree {actual}, not {degree}.")


def polarize(f: Polynomial, degree: MultiDegree, refined: MultiDegree) -> Polynomial:
    """Coefficient of prod t(e_i)^s(e_i) after X(e) -> sum_i t(e_i) X(e_i)."""
    _check_degree(f, degree)
    base = polarized_ring(f.ring, degree)
    if refined.edges != base.edge_ids:
        raise PolarizationError("The refined multidegree must live on the polarized quiver.")
    for edge_id, count in zip(degree.edges, degree.values):
        copies = sum(refined[polarized_edge(edge_id, copy)] for copy in range(1, count + 1))
        if copies != count:
            raise PolarizationError(f"Copies of {edge_id} carry degree {copies}, expected {count}.")
    ring = base.with_parameters(base.edge_ids)
    images: Dict[Variable, Polynomial] = {}
    for var in f.ring.variables:
        if not var.graded:
            continue
        image = ring.zero
        for copy in range(1, degree[var.edge] + 1):
            name = polarized_edge(var.edge, copy)
            image = image + ring.par(name) * ring.x(name, var.i, var.j)
        images[var] = image
    expanded = substitute(f, images, ring)
    key = Monomial(
        sorted((ring.parameter(name), value) for name, value in zip(refined.edges, refined.values) if value)
    )
    return expanded.coefficient_in_parameters().get(key, base.zero)


def restitute(g: Polynomial, target: CoordinateRing) -> Polynomial:
    """Send every copy X(e_i) back to X(e)."""
    images = {
        var: target.x(g.ring.quiver.edge(var.edge).origin, var.i, var.j)
        for var in g.ring.variables
        if var.graded
    }
    return substitute(g, images, target)


def partial_linearization(f: Polynomial, linearized: Iterable[str]) -> Tuple[Polynomial, int]:
    """P_T f on Q(n) and the factor prod_{e in T} n_e!."""
    degree = f.multidegree()
    if degree is None:
        raise PolarizationError("Linearization needs a multihomogeneous polynomial.")
    linearized = set(linearized)
    for edge_id in linearized:
        f.ring.quiver.edge_index(edge_id)
    refined: Dict[str, int] = {}
    for edge_id, count in zip(degree.edges, degree.values):
        for copy in range(1, count + 1):
            if edge_id in linearized:
                refined[polarized_edge(edge_id, copy)] = 1
            else:
                refined[polarized_edge(edge_id, copy)] = count if copy == 1 else 0
    base = polarized_ring(f.ring, degree)
    refined_degree = MultiDegree.build(base.quiver, refined)
    factor = prod(factorial(degree[edge_id]) for edge_id in linearized)
    return polarize(f, degree, refined_degree), factor


def linearize_and_restitute_check(f: Polynomial, linearized: Iterable[str]) -> bool:
    linear, factor = partial_linearization(f, linearized)
    return restitute(linear, f.ring) == f * factor
