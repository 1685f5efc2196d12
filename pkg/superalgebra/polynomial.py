"""Supercommutative polynomial ring in the generators x_ij(e) of a quiver.

Coefficients live in sympy's ``QQ``. A monomial is a tuple of
``(Variable, exponent)`` pairs sorted by the global variable order
``(edge index, i, j)``; odd variables appear with exponent one. Every
reordering of odd factors contributes its Koszul sign to the coefficient.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from sympy.polys.domains import QQ
from sympy.polys.polyerrors import CoercionFailed

from core.exceptions import (
    DimensionMismatchError,
    ParityError,
    RingMismatchError,
    UnknownEdgeError,
)
from quivers.graph import MultiDegree, ParityVector, Quiver, SuperDimVector

@dataclass(frozen=True, order=True)
class Variable:
    order: Tuple[int, int, int]
    edge: str
    i: int
    j: int
    parity: int = field(compare=False)
    # Parameters are even central indeterminates without a multidegree.
    graded: bool = field(default=True, compare=False)

    @property
    def is_parameter(self) -> bool:
        return not self.graded

    def __str__(self):
        if not self.graded:
            return f"par[{self.edge}]"
        return f"x[{self.edge},{self.i},{self.j}]"


class Monomial(tuple):
    """Canonical monomial: sorted ``(Variable, exponent)`` pairs."""

    __slots__ = ()

    @property
    def parity(self) -> int:
        return sum(var.parity * exp for var, exp in self) % 2

    @property
    def odd_part(self) -> Tuple[Variable, ...]:
        return tuple(var for var, _ in self if var.parity)

    @property
    def even_part(self) -> Dict[Variable, int]:
        return {var: exp for var, exp in self if not var.parity}

    @property
    def degree(self) -> int:
        return sum(exp for _, exp in self)


ONE = Monomial()


def koszul_sign(sequence: Iterable[Variable]) -> int:
    """Sign of sorting odd variables: (-1) to the number of inversions."""
    odd = [var for var in sequence if var.parity]
    inversions = sum(1 for a in range(len(odd)) for b in range(a + 1, len(odd)) if odd[a] > odd[b])
    return -1 if inversions % 2 else 1


def canonicalize(factors: Iterable[Tuple[Variable, int]]) -> Optional[Tuple[int, Monomial]]:
    """Bring a word of factors into canonical order.

    Returns ``(sign, monomial)``, or ``None`` when an odd variable repeats.
    """
    word = [(var, exp) for var, exp in factors if exp]
    odd = [var for var, exp in word if var.parity for _ in range(exp)]
    if len(set(odd)) != len(odd):
        return None
    merged: Dict[Variable, int] = {}
    for var, exp in word:
        merged[var] = merged.get(var, 0) + exp
    return koszul_sign(odd), Monomial(sorted(merged.items()))


def monomial_mul(left: Monomial, right: Monomial) -> Optional[Tuple[int, Monomial]]:
    if not left:
        return 1, right
    if not right:
        return 1, left
    left_odd = left.odd_part
    swaps = 0
    for var in right.odd_part:
        position = bisect_right(left_odd, var)
        if position and left_odd[position - 1] == var:
            return None
        swaps += len(left_odd) - position
    merged = dict(left)
    for var, exp in right:
        merged[var] = merged.get(var, 0) + exp
    return (-1 if swaps % 2 else 1), Monomial(sorted(merged.items()))


@dataclass(frozen=True)
class CoordinateRing:
    """Coordinate superalgebra of SRep over (quiver, alpha, parity twist)."""

    quiver: Quiver
    alpha: SuperDimVector
    parity: ParityVector
    parameters: Tuple[str, ...] = ()

    def __post_init__(self):
        self.alpha.check_on(self.quiver)
        self.parity.check_on(self.quiver)
        object.__setattr__(self, "parameters", tuple(self.parameters))
        if len(set(self.parameters)) != len(self.parameters):
            raise DimensionMismatchError("Parameter names must be unique.")

    # -- variables -------------------------------------------------------

    def block(self, vertex: str, index: int) -> int:
        """Unshifted block parity of a 1-based row/column index at ``vertex``."""
        return 0 if index <= self.alpha.even(vertex) else 1

    def variable_parity(self, edge_id: str, i: int, j: int) -> int:
        edge = self.quiver.edge(edge_id)
        return (
            self.block(edge.head, i)
            + self.block(edge.tail, j)
            + self.parity[edge.head]
            + self.parity[edge.tail]
        ) % 2

    @cached_property
    def variables(self) -> Tuple[Variable, ...]:
        found: List[Variable] = []
        for index, edge in enumerate(self.quiver.edges):
            for i in range(1, self.alpha.total(edge.head) + 1):
                for j in range(1, self.alpha.total(edge.tail) + 1):
                    found.append(Variable((index, i, j), edge.id, i, j, self.variable_parity(edge.id, i, j)))
        offset = len(self.quiver.edges)
        for position, name in enumerate(self.parameters):
            found.append(Variable((offset + position, 0, 0), name, 0, 0, 0, graded=False))
        return tuple(found)

    @cached_property
    def _lookup(self) -> Dict[Tuple[str, int, int], Variable]:
        return {(var.edge, var.i, var.j): var for var in self.variables}

    @property
    def edge_ids(self) -> Tuple[str, ...]:
        return tuple(edge.id for edge in self.quiver.edges)

    def variable(self, edge_id: str, i: int, j: int) -> Variable:
        try:
            return self._lookup[(edge_id, i, j)]
        except KeyError:
            self.quiver.edge_index(edge_id)
            raise DimensionMismatchError(f"x[{edge_id},{i},{j}] is outside the format of edge {edge_id}.") from None

    def parameter(self, name: str) -> Variable:
        try:
            return self._lookup[(name, 0, 0)]
        except KeyError:
            raise UnknownEdgeError(f"Unknown parameter {name}.") from None

    def edge_variables(self, edge_id: str) -> Tuple[Variable, ...]:
        self.quiver.edge_index(edge_id)
        return tuple(var for var in self.variables if var.graded and var.edge == edge_id)

    def owns(self, var: Variable) -> bool:
        key = (var.edge, var.i, var.j)
        return self._lookup.get(key) == var and self._lookup[key].parity == var.parity

    # -- elements --------------------------------------------------------

    def constant(self, value) -> "Polynomial":
        value = QQ.convert(value)
        return Polynomial(self, {ONE: value} if value else {})

    @cached_property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @cached_property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def gen(self, var: Variable) -> "Polynomial":
        return Polynomial(self, {Monomial(((var, 1),)): QQ.one})

    def x(self, edge_id: str, i: int, j: int) -> "Polynomial":
        return self.gen(self.variable(edge_id, i, j))

    def par(self, name: str) -> "Polynomial":
        return self.gen(self.parameter(name))

    def monomial(self, monomial: Monomial, coefficient=1) -> "Polynomial":
        return Polynomial(self, {monomial: QQ.convert(coefficient)})

    # -- grading ---------------------------------------------------------

    def degree_of(self, monomial: Monomial) -> Tuple[int, ...]:
        values = [0] * len(self.quiver.edges)
        for var, exp in monomial:
            if var.graded:
                values[var.order[0]] += exp
        return tuple(values)

    def multidegree(self, values: Tuple[int, ...]) -> MultiDegree:
        return MultiDegree(self.edge_ids, tuple(values))

    # -- derived rings ---------------------------------------------------

    def with_parameters(self, names: Iterable[str]) -> "CoordinateRing":
        return CoordinateRing(self.quiver, self.alpha, self.parity, tuple(names))

    def without_parameters(self) -> "CoordinateRing":
        if not self.parameters:
            return self
        return CoordinateRing(self.quiver, self.alpha, self.parity)


class Polynomial:
    """Finite ``Monomial -> QQ`` mapping with nonzero coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: CoordinateRing, terms: Optional[Mapping[Monomial, object]] = None):
        self.ring = ring
        self.terms: Dict[Monomial, object] = {m: c for m, c in (terms or {}).items() if c}

    # -- helpers ---------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatchError("Polynomials belong to different coordinate rings.")
            return other
        return self.ring.constant(other)

    def _same_ring(self, other: "Polynomial") -> None:
        self._coerce(other)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except CoercionFailed:
            return NotImplemented
        terms = dict(self.terms)
        for monomial, coeff in other.terms.items():
            terms[monomial] = terms.get(monomial, QQ.zero) + coeff
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except CoercionFailed:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            try:
                scalar = QQ.convert(other)
            except CoercionFailed:
                return NotImplemented
            return Polynomial(self.ring, {m: c * scalar for m, c in self.terms.items()})
        self._same_ring(other)
        terms: Dict[Monomial, object] = {}
        for left, left_coeff in self.terms.items():
            for right, right_coeff in other.terms.items():
                product = monomial_mul(left, right)
                if product is None:
                    continue
                sign, monomial = product
                value = left_coeff * right_coeff
                terms[monomial] = terms.get(monomial, QQ.zero) + (value if sign > 0 else -value)
        return Polynomial(self.ring, terms)

    def __rmul__(self, other) -> "Polynomial":
        # scalars are central
        return self.__mul__(other)

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("Polynomials only take nonnegative powers.")
        result, base = self.ring.one, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- comparison ------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return (other.ring is self.ring or other.ring == self.ring) and self.terms == other.terms
        try:
            return self.terms == self.ring.constant(other).terms
        except CoercionFailed:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant_term(self):
        return self.terms.get(ONE, QQ.zero)

    def __iter__(self) -> Iterator[Tuple[Monomial, object]]:
        return iter(sorted(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    # -- structure -------------------------------------------------------

    @property
    def parity(self) -> Optional[int]:
        """0 or 1 when homogeneous (zero counts as even), otherwise ``None``."""
        parities = {m.parity for m in self.terms}
        if not parities:
            return 0
        return parities.pop() if len(parities) == 1 else None

    def variables(self) -> Tuple[Variable, ...]:
        return tuple(sorted({var for m in self.terms for var, _ in m}))

    def has_odd_variables(self) -> bool:
        return any(var.parity for m in self.terms for var, _ in m)

    def multidegree(self) -> Optional[MultiDegree]:
        degrees = {self.ring.degree_of(m) for m in self.terms}
        if len(degrees) > 1:
            return None
        values = degrees.pop() if degrees else tuple(0 for _ in self.ring.edge_ids)
        return self.ring.multidegree(values)

    def homogeneous_components(self) -> Dict[MultiDegree, "Polynomial"]:
        """Components keyed by multidegree, ordered lexicographically."""
        grouped: Dict[Tuple[int, ...], Dict[Monomial, object]] = {}
        for monomial, coeff in self.terms.items():
            grouped.setdefault(self.ring.degree_of(monomial), {})[monomial] = coeff
        return {
            self.ring.multidegree(values): Polynomial(self.ring, grouped[values])
            for values in sorted(grouped)
        }

    def coefficient_in_parameters(self) -> Dict[Monomial, "Polynomial"]:
        """Split off the parameter monomials; coefficients live in the base ring."""
        base = self.ring.without_parameters()
        grouped: Dict[Monomial, Dict[Monomial, object]] = {}
        for monomial, coeff in self.terms.items():
            # parameters are even and sort after every edge variable
            params = Monomial((var, exp) for var, exp in monomial if not var.graded)
            rest = Monomial((var, exp) for var, exp in monomial if var.graded)
            grouped.setdefault(params, {})[rest] = coeff
        return {key: Polynomial(base, grouped[key]) for key in sorted(grouped)}

    def rehome(self, ring: CoordinateRing) -> "Polynomial":
        """The same terms viewed in ``ring``; every variable must belong to it."""
        for var in self.variables():
            if not ring.owns(var):
                raise RingMismatchError(f"{var} does not belong to the target ring.")
        return Polynomial(ring, self.terms)

    def __str__(self):
        from .textformat import format_polynomial

        return format_polynomial(self)

    def __repr__(self):
        return f"<Polynomial {self}>"


class Derivation:
    """Superderivation determined by its images on generators.

    On a canonical monomial v1...vl it returns
    sum_i (-1)^(parity * (|v1|+...+|v_{i-1}|)) v1...D(v_i)...vl.
    Generators without an image are sent to zero.
    """

    def __init__(self, images: Mapping[Variable, Polynomial], parity: int):
        self.parity = parity % 2
        self.images: Dict[Variable, Polynomial] = {}
        for var, image in images.items():
            if not image:
                continue
            if image.parity != (var.parity + self.parity) % 2:
                raise ParityError(f"Image of {var} has the wrong parity for a derivation of parity {self.parity}.")
            self.images[var] = image

    def __call__(self, f: Polynomial) -> Polynomial:
        terms: Dict[Monomial, object] = {}
        for monomial, coeff in f.terms.items():
            add_into(terms, self.apply_monomial(f.ring, monomial), coeff)
        return Polynomial(f.ring, terms)

    def apply_monomial(self, ring: CoordinateRing, monomial: Monomial) -> Polynomial:
        terms: Dict[Monomial, object] = {}
        left_parity = 0
        for position, (var, exp) in enumerate(monomial):
            image = self.images.get(var)
            if image is not None:
                sign = -1 if self.parity and left_parity else 1
                left = list(monomial[:position])
                if var.parity:
                    coeff = sign
                else:
                    coeff = sign * exp
                    if exp > 1:
                        left.append((var, exp - 1))
                right = Monomial(monomial[position + 1:])
                add_into(terms, ring.monomial(Monomial(left), coeff) * image * ring.monomial(right))
            left_parity = (left_parity + var.parity * exp) % 2
        return Polynomial(ring, terms)


def derivation_apply(images: Mapping[Variable, Polynomial], d_parity: int, f: Polynomial) -> Polynomial:
    return Derivation(images, d_parity)(f)


def substitute(f: Polynomial, images: Mapping[Variable, Polynomial], target: CoordinateRing) -> Polynomial:
    """Apply the ring homomorphism fixed by ``images`` on generators.

    Variables without an image go to the variable of the same name in
    ``target``; images must keep the parity of their variable.
    """
    resolved: Dict[Variable, Polynomial] = {}

    def image_of(var: Variable) -> Polynomial:
        if var in resolved:
            return resolved[var]
        if var in images:
            image = images[var]
            if image.ring is not target and image.ring != target:
                raise RingMismatchError(f"Image of {var} lives in a different ring.")
            if image and image.parity != var.parity:
                raise ParityError(f"Image of {var} does not preserve parity.")
        else:
            twin = target.variable(var.edge, var.i, var.j) if var.graded else target.parameter(var.edge)
            if twin.parity != var.parity:
                raise ParityError(f"{var} changes parity in the target ring.")
            image = target.gen(twin)
        resolved[var] = image
        return image

    terms: Dict[Monomial, object] = {}
    for monomial, coeff in f.terms.items():
        term = target.constant(coeff)
        for var, exp in monomial:
            term = term * (image_of(var) ** exp)
            if not term:
                break
        add_into(terms, term)
    return Polynomial(target, terms)


def add_into(terms: Dict[Monomial, object], poly: Polynomial, scale=1) -> None:
    """Accumulate ``scale * poly`` into a mutable term dictionary."""
    for monomial, coeff in poly.terms.items():
        value = terms.get(monomial, QQ.zero) + coeff * scale
        if value:
            terms[monomial] = value
        else:
            terms.pop(monomial, None)
