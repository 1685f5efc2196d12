"""Generic matrices, path products, supertrace, determinant and Berezinian."""
from __future__ import annotations

import logging
from typing import Dict, List, Sequence

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError
from sympy.polys.rings import ring as polynomial_ring

from core.conf import setting
from core.exceptions import FormatError, NonInvertibleError, OddEntryError, SingularBlockError
from quivers.graph import Path
from superalgebra.grassmann import GrassmannElement, GrassmannPoint, check_generator_count, evaluate_grassmann
from superalgebra.localization import EvenFraction
from superalgebra.polynomial import CoordinateRing, Monomial, Polynomial
from superalgebra.sampling import random_coefficient, random_grassmann_element
from .supermatrix import SuperFormat, SuperMatrix, multiply_entries

logger = logging.getLogger(__name__)


def generic_matrix(ring: CoordinateRing, edge_id: str) -> SuperMatrix:
    edge = ring.quiver.edge(edge_id)
    alpha, parity = ring.alpha, ring.parity
    fmt = SuperFormat(alpha[edge.head], alpha[edge.tail], parity[edge.head], parity[edge.tail])
    rows, cols = fmt.shape
    return SuperMatrix(
        fmt,
        tuple(tuple(ring.x(edge_id, i, j) for j in range(1, cols + 1)) for i in range(1, rows + 1)),
        ring.zero,
    )


def path_product(ring: CoordinateRing, path: Path) -> SuperMatrix:
    """X(e1) X(e2) ... X(ek): format alpha(h(e1)) x alpha(t(ek))."""
    path = Path.build(ring.quiver, path.edges)
    product = generic_matrix(ring, path.edges[0])
    for edge_id in path.edges[1:]:
        product = product @ generic_matrix(ring, edge_id)
    return product


def supertrace(m: SuperMatrix):
    if not m.format.is_square:
        raise FormatError(f"Supertrace needs a square super-format, got {m.format}.")
    even = m.format.rows[0]
    total = m.zero
    for i in range(m.shape[0]):
        total = total + m[i, i] if i < even else total - m[i, i]
    return total


# -- determinants --------------------------------------------------------


def _one_like(zero):
    return zero + 1


def _check_even_square(rows: Sequence[Sequence[object]]) -> None:
    size = len(rows)
    if any(len(row) != size for row in rows):
        raise FormatError("Determinant needs a square array.")
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            if value.parity != 0:
                raise OddEntryError(f"Entry ({i + 1},{j + 1}) is not even.")


def _laplace(rows: Sequence[Sequence[object]], zero):
    """Cofactor expansion along rows, memoized on the set of unused columns."""
    size = len(rows)
    one = _one_like(zero)
    memo: Dict[int, object] = {}

    def minor(mask: int):
        row = size - mask.bit_count()
        if row == size:
            return one
        if mask in memo:
            return memo[mask]
        total = zero
        sign = 1
        for column in range(size):
            if not mask >> column & 1:
                continue
            entry = rows[row][column]
            if entry:
                term = entry * minor(mask & ~(1 << column))
                total = total + term if sign > 0 else total - term
            sign = -sign
        memo[mask] = total
        return total

    return minor((1 << size) - 1)


def _bareiss(rows: Sequence[Sequence[Polynomial]], ring: CoordinateRing) -> Polynomial:
    variables = sorted({var for row in rows for entry in row for var in entry.variables()})
    size = len(rows)
    if not variables:
        matrix = DomainMatrix([[entry.constant_term() for entry in row] for row in rows], (size, size), QQ)
        return ring.constant(matrix.det())
    sym_ring = polynomial_ring([f"v{index}" for index in range(len(variables))], QQ)[0]
    position = {var: index for index, var in enumerate(variables)}

    def lift(entry: Polynomial):
        terms = {}
        for monomial, coeff in entry.terms.items():
            exponents = [0] * len(variables)
            for var, exp in monomial:
                exponents[position[var]] = exp
            terms[tuple(exponents)] = coeff
        return sym_ring.from_dict(terms)

    matrix = DomainMatrix([[lift(entry) for entry in row] for row in rows], (size, size), sym_ring.to_domain())
    logger.debug("Fraction-free determinant of size %s in %s variables", size, len(variables))
    terms = {}
    for exponents, coeff in matrix.det().terms():
        monomial = Monomial((variables[index], exp) for index, exp in enumerate(exponents) if exp)
        terms[monomial] = coeff
    return Polynomial(ring, terms)


def determinant_of(rows: Sequence[Sequence[object]], zero):
    """Determinant of a square array of even elements of a commutative subring."""
    _check_even_square(rows)
    if not rows:
        return _one_like(zero)
    if (
        len(rows) >= setting("SUPERQUIVER_BAREISS_THRESHOLD")
        and isinstance(zero, Polynomial)
        and not any(entry.has_odd_variables() for row in rows for entry in row)
    ):
        return _bareiss(rows, zero.ring)
    return _laplace(rows, zero)


def determinant(m: SuperMatrix):
    return determinant_of(m.rows(), m.zero)


def adjugate(rows: Sequence[Sequence[object]], zero) -> List[List[object]]:
    size = len(rows)
    if size == 1:
        return [[_one_like(zero)]]
    adj = [[zero] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            minor = [[rows[r][c] for c in range(size) if c != j] for r in range(size) if r != i]
            cofactor = determinant_of(minor, zero)
            adj[j][i] = cofactor if (i + j) % 2 == 0 else -cofactor
    return adj


# -- Berezinian ----------------------------------------------------------


def _check_ber_format(m: SuperMatrix) -> None:
    if not m.format.is_square or m.format.row_shift != m.format.col_shift:
        raise FormatError(f"Berezinian needs a square super-format, got {m.format}.")


def _as_polynomial_rows(m: SuperMatrix) -> List[List[Polynomial]]:
    rows = []
    for row in m.entries:
        converted = []
        for value in row:
            if isinstance(value, EvenFraction):
                value = value.to_polynomial()
            if not isinstance(value, Polynomial):
                raise FormatError("Symbolic Berezinian needs polynomial entries.")
            converted.append(value)
        rows.append(converted)
    return rows


def berezinian(m: SuperMatrix) -> EvenFraction:
    """det(X00 - X01 X11^-1 X10) det(X11)^-1 as det(M) / det(X11)^(m+1).

    Here M = det(X11) X00 - X01 adj(X11) X10, so only det(X11) is ever
    registered as a denominator.
    """
    _check_ber_format(m)
    rows = _as_polynomial_rows(m)
    even, odd = m.format.rows
    ring = m.zero.ring
    zero = ring.zero
    if not odd:
        return EvenFraction.from_polynomial(determinant_of(rows, zero))
    x00 = [row[:even] for row in rows[:even]]
    x01 = [row[even:] for row in rows[:even]]
    x10 = [row[:even] for row in rows[even:]]
    x11 = [row[even:] for row in rows[even:]]
    d = determinant_of(x11, zero)
    if not d:
        raise SingularBlockError("det(X11) is the zero polynomial.")
    if not even:
        return EvenFraction.from_polynomial(ring.one).divide(d)
    if not determinant_of(x00, zero):
        raise SingularBlockError("det(X00) is the zero polynomial.")
    correction = multiply_entries(multiply_entries(x01, adjugate(x11, zero), zero), x10, zero)
    schur = [[d * x00[i][j] - correction[i][j] for j in range(even)] for i in range(even)]
    return EvenFraction.from_polynomial(determinant_of(schur, zero)).divide(d, even + 1)


# -- Grassmann points ----------------------------------------------------


def evaluate_matrix(m: SuperMatrix, point: GrassmannPoint, k: int) -> SuperMatrix:
    def value_at(entry):
        if isinstance(entry, EvenFraction):
            return entry.evaluate(point, k)
        return evaluate_grassmann(entry, point, k)

    return m.map(value_at, zero=GrassmannElement.zero(k))


def grassmann_matrix(fmt: SuperFormat, entries: Sequence[Sequence[object]], k: int) -> SuperMatrix:
    """Wrap scalars or Grassmann elements into a supermatrix over Lambda_k."""
    check_generator_count(k)
    zero = GrassmannElement.zero(k)
    return SuperMatrix.build(fmt, [[zero + value for value in row] for row in entries], zero)


def grassmann_inverse(g: SuperMatrix) -> SuperMatrix:
    """Inverse over Lambda_k: invert the body, then sum the nilpotent series."""
    if not g.format.is_square:
        raise FormatError(f"Only square super-formats are invertible, got {g.format}.")
    size = g.shape[0]
    zero = g.zero
    if not size:
        return g
    body = DomainMatrix([[QQ.convert(entry.body) for entry in row] for row in g.entries], (size, size), QQ)
    try:
        body_inverse = body.inv().to_list()
    except DMNonInvertibleMatrixError:
        raise NonInvertibleError("The body of the supermatrix is singular.") from None
    base = [[zero + value for value in row] for row in body_inverse]
    nilpotent = [[entry - entry.body for entry in row] for row in g.entries]
    step = [[-value for value in row] for row in multiply_entries(base, nilpotent, zero)]
    total = [list(row) for row in base]
    term = base
    for _ in range(zero.k + 1):
        term = multiply_entries(step, term, zero)
        if not any(value for row in term for value in row):
            break
        total = [[a + b for a, b in zip(left, right)] for left, right in zip(total, term)]
    return SuperMatrix.build(g.format.transposed(), total, zero)


def grassmann_berezinian(g: SuperMatrix) -> GrassmannElement:
    _check_ber_format(g)
    zero = g.zero
    even, odd = g.format.rows
    if not odd:
        return determinant(g)
    d_inverse = grassmann_inverse(g.block(1, 1))
    d_factor = determinant(g.block(1, 1)).inverse()
    if not even:
        return d_factor
    schur = g.block(0, 0) - g.block(0, 1) @ d_inverse @ g.block(1, 0)
    return determinant_of(schur.rows(), zero) * d_factor


def random_invertible_supermatrix(fmt: SuperFormat, k: int, rng) -> SuperMatrix:
    """Random point of GL over Lambda_k whose body is unitriangular up to a diagonal."""
    if not fmt.is_square:
        raise FormatError(f"Only square super-formats are invertible, got {fmt}.")
    size = fmt.shape[0]
    entries = []
    for i in range(size):
        row = []
        for j in range(size):
            parity = fmt.entry_parity(i, j)
            element = random_grassmann_element(k, rng, parity)
            if parity == 0:
                element = element - element.body
                if i == j:
                    element = element + random_coefficient(rng)
                elif i < j:
                    element = element + rng.randint(-2, 2)
            row.append(element)
        entries.append(row)
    return grassmann_matrix(fmt, entries, k)
