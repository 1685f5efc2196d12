from __future__ import annotations

import logging
from typing import Dict, List, Mapping, Optional, Tuple

from sympy.polys.domains import QQ

from core.exceptions import FormatError, PathError, QuiverError, ReductionError, ZeroPolynomialError
from lie.basis import LieBasisElement, Weight
from lie.services import check_weight, derivation_for
from quivers.graph import Path
from quivers.services import enumerate_closed_paths
from superalgebra.localization import EvenFraction
from superalgebra.polynomial import CoordinateRing, Polynomial, Variable, substitute
from supermatrices.services import berezinian, generic_matrix, path_product, supertrace
from supermatrices.supermatrix import SuperFormat, SuperMatrix

logger = logging.getLogger(__name__)


def strace_invariant(ring: CoordinateRing, path: Path) -> Polynomial:
    if not path.closed:
        raise PathError(f"Path {path} is not closed.")
    return supertrace(path_product(ring, path))


def closed_path_invariants(ring: CoordinateRing, max_len: int) -> List[Tuple[Path, Polynomial]]:
    return [(path, strace_invariant(ring, path)) for path in enumerate_closed_paths(ring.quiver, max_len)]


def weight_of(f: Polynomial) -> Optional[Weight]:
    """Weight read off the diagonal generators, or ``None`` if f is not semi-invariant."""
    if not f:
        raise ZeroPolynomialError("The zero polynomial has no well-defined weight.")
    ring = f.ring
    reference, reference_coeff = next(iter(f))
    exponents: Dict[str, int] = {}
    for vertex in ring.quiver.vertices:
        exponent = None
        for k in range(1, ring.alpha.total(vertex) + 1):
            element = LieBasisElement.build(ring.alpha, vertex, k, k)
            image = derivation_for(ring, element)(f)
            ratio = image.terms.get(reference, QQ.zero) / reference_coeff * element.supertrace
            if ratio.denominator != 1 or exponent not in (None, ratio):
                return None
            exponent = ratio
        exponents[vertex] = int(exponent.numerator) if exponent is not None else 0
    weight = Weight.build(ring.quiver, exponents)
    return weight if check_weight(f, weight) else None


def reduce_normalized(f: Polynomial, edge_id: str, size: int, target: CoordinateRing) -> Polynomial:
    """Send X(e(a)) to the identity and read the other variables over ``target``."""
    ring = f.ring
    try:
        edge = ring.quiver.edge(edge_id)
    except QuiverError as exc:
        raise ReductionError(str(exc)) from exc
    vertex = edge.head
    even, odd = ring.alpha[vertex]
    if even * odd:
        raise ReductionError(f"Vertex {vertex} is ordinary; the reduction needs an extremal vertex.")
    if ring.alpha[edge.tail] != ring.alpha[vertex] or size != even + odd:
        raise ReductionError(f"X({edge_id}) is not a square matrix of size {size}.")
    images: Dict[Variable, Polynomial] = {
        var: target.one if var.i == var.j else target.zero for var in ring.edge_variables(edge_id)
    }
    return substitute(f, images, target)


# -- rational semi-invariant of the Kronecker quiver ---------------------


def kronecker_edges(ring: CoordinateRing) -> Tuple[str, str, str, str]:
    quiver = ring.quiver
    if len(quiver.edges) != 2:
        raise QuiverError("The Kronecker construction needs exactly two edges.")
    first, second = quiver.edges
    if (first.tail, first.head) != (second.tail, second.head) or first.tail == first.head:
        raise QuiverError("The two edges must be parallel between distinct vertices.")
    return first.id, second.id, first.tail, first.head


def random_kronecker_coefficients(s: int, l: int, rng, bound: int = 5) -> Dict[Tuple[int, int], Tuple[object, object]]:
    return {
        (i, j): (QQ(rng.randint(-bound, bound)), QQ(rng.randint(-bound, bound)))
        for i in range(1, s + 1)
        for j in range(1, l + 1)
    }


def kronecker_matrix(
    ring: CoordinateRing,
    s: int,
    l: int,
    coefficients: Mapping[Tuple[int, int], Tuple[object, object]],
) -> SuperMatrix:
    """s x l blocks beta X(e1) + gamma X(e2), rows and columns sorted even part first."""
    first, second, source, sink = kronecker_edges(ring)
    alpha = ring.alpha
    (m, n), (p, q) = alpha[source], alpha[sink]
    if (s * p, s * q) != (l * m, l * n):
        raise FormatError(f"{s} x ({p}|{q}) rows do not match {l} x ({m}|{n}) columns.")
    if ring.parity[source] != ring.parity[sink]:
        raise FormatError("Both vertices need the same parity twist.")
    x1, x2 = generic_matrix(ring, first), generic_matrix(ring, second)
    rows_order = [(block, r) for block in range(s) for r in range(p)] + [(block, r) for block in range(s) for r in range(p, p + q)]
    cols_order = [(block, c) for block in range(l) for c in range(m)] + [(block, c) for block in range(l) for c in range(m, m + n)]
    entries = []
    for i_block, r in rows_order:
        row = []
        for j_block, c in cols_order:
            beta, gamma = coefficients[i_block + 1, j_block + 1]
            row.append(x1[r, c] * beta + x2[r, c] * gamma)
        entries.append(row)
    twist = ring.parity[sink]
    return SuperMatrix.build(SuperFormat((s * p, s * q), (l * m, l * n), twist, twist), entries, ring.zero)


def kronecker_berezinian(
    ring: CoordinateRing,
    s: int,
    l: int,
    coefficients: Mapping[Tuple[int, int], Tuple[object, object]],
) -> Tuple[EvenFraction, Weight]:
    """Berezinian of the Kronecker block matrix and its weight (source -l, sink +s)."""
    _, _, source, sink = kronecker_edges(ring)
    value = berezinian(kronecker_matrix(ring, s, l, coefficients))
    logger.info("Kronecker Berezinian with s=%s l=%s has %s denominator factors", s, l, len(value.denominator_factors))
    return value, Weight.build(ring.quiver, {source: -l, sink: s})
