"""Fractions whose denominators are registered even polynomials.

Denominators are formal products of factors with positive powers. No gcd is
ever computed: a factor cancels only against a syntactically identical
numerator factor.
"""
from __future__ import annotations

from typing import Dict, Iterable, List, Tuple

from sympy.polys.domains import QQ

from core.exceptions import OddDenominatorError, RingMismatchError, ZeroPolynomialError
from .grassmann import GrassmannElement, GrassmannPoint, evaluate_grassmann
from .polynomial import CoordinateRing, Polynomial

Factors = Tuple[Tuple[Polynomial, int], ...]


def _merge(factors: Iterable[Tuple[Polynomial, int]]) -> Dict[Polynomial, int]:
    merged: Dict[Polynomial, int] = {}
    for factor, power in factors:
        if power:
            merged[factor] = merged.get(factor, 0) + power
    return merged


def _product(ring: CoordinateRing, factors: Iterable[Tuple[Polynomial, int]]) -> Polynomial:
    result = ring.one
    for factor, power in factors:
        result = result * factor ** power
    return result


def _check_denominator(ring: CoordinateRing, factor: Polynomial) -> None:
    if factor.ring != ring:
        raise RingMismatchError("Denominator belongs to a different coordinate ring.")
    if factor.has_odd_variables():
        raise OddDenominatorError("Denominators must be polynomials in even variables only.")
    if not factor:
        raise ZeroPolynomialError("Cannot register the zero polynomial as a denominator.")


class EvenFraction:
    __slots__ = ("ring", "numerator_factors", "denominator_factors")

    def __init__(self, ring: CoordinateRing, numerator: Iterable[Tuple[Polynomial, int]] = (), denominator: Iterable[Tuple[Polynomial, int]] = ()):
        self.ring = ring
        num = _merge(numerator)
        den = _merge(denominator)
        for factor in den:
            _check_denominator(ring, factor)
        scale = QQ.one
        for factor in list(den):
            if factor.is_constant():
                scale = scale / factor.constant_term() ** den.pop(factor)
        for factor in list(num):
            if factor in den:
                common = min(num[factor], den[factor])
                num[factor] -= common
                den[factor] -= common
                if not num[factor]:
                    del num[factor]
                if not den[factor]:
                    del den[factor]
        if any(not factor for factor in num):
            num, den = {ring.zero: 1}, {}
        elif scale != 1:
            num[ring.constant(scale)] = num.get(ring.constant(scale), 0) + 1
        self.numerator_factors: Factors = tuple(num.items())
        self.denominator_factors: Factors = tuple(den.items())

    @classmethod
    def from_polynomial(cls, f: Polynomial) -> "EvenFraction":
        return cls(f.ring, ((f, 1),))

    def _coerce(self, other) -> "EvenFraction":
        if isinstance(other, EvenFraction):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatchError("Fractions belong to different coordinate rings.")
            return other
        if isinstance(other, Polynomial):
            return EvenFraction.from_polynomial(self.ring.zero + other)
        return EvenFraction.from_polynomial(self.ring.constant(other))

    # -- pieces ----------------------------------------------------------

    @property
    def numerator(self) -> Polynomial:
        return _product(self.ring, self.numerator_factors)

    @property
    def denominator(self) -> Polynomial:
        return _product(self.ring, self.denominator_factors)

    @property
    def parity(self):
        return self.numerator.parity

    def is_polynomial(self) -> bool:
        return not self.denominator_factors

    def is_zero(self) -> bool:
        return not self.numerator

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic ------------------------------------------------------

    def divide(self, factor: Polynomial, power: int = 1) -> "EvenFraction":
        """Register ``factor`` as an invertible denominator and divide by it."""
        return EvenFraction(self.ring, self.numerator_factors, self.denominator_factors + ((factor, power),))

    def __mul__(self, other) -> "EvenFraction":
        other = self._coerce(other)
        return EvenFraction(
            self.ring,
            self.numerator_factors + other.numerator_factors,
            self.denominator_factors + other.denominator_factors,
        )

    __rmul__ = __mul__

    def __add__(self, other) -> "EvenFraction":
        other = self._coerce(other)
        mine = dict(self.denominator_factors)
        theirs = dict(other.denominator_factors)
        common = {factor: max(mine.get(factor, 0), theirs.get(factor, 0)) for factor in {**mine, **theirs}}
        mine_lift = [(factor, power - mine.get(factor, 0)) for factor, power in common.items()]
        theirs_lift = [(factor, power - theirs.get(factor, 0)) for factor, power in common.items()]
        numerator = self.numerator * _product(self.ring, mine_lift) + other.numerator * _product(self.ring, theirs_lift)
        return EvenFraction(self.ring, ((numerator, 1),), tuple(common.items()))

    __radd__ = __add__

    def __neg__(self) -> "EvenFraction":
        return EvenFraction(self.ring, self.numerator_factors + ((self.ring.constant(-1), 1),), self.denominator_factors)

    def __sub__(self, other) -> "EvenFraction":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "EvenFraction":
        return self._coerce(other) - self

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except RingMismatchError:
            return False
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __hash__(self):
        # equal fractions may have different representations
        return hash(self.ring)

    def to_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise OddDenominatorError("The fraction still has a denominator.")
        return self.numerator

    def evaluate(self, point: GrassmannPoint, k: int) -> GrassmannElement:
        value = evaluate_grassmann(self.numerator, point, k)
        for factor, power in self.denominator_factors:
            value = value * evaluate_grassmann(factor, point, k).inverse() ** power
        return value

    def __str__(self):
        numerator = str(self.numerator)
        if self.is_polynomial():
            return numerator
        parts: List[str] = []
        for factor, power in self.denominator_factors:
            parts.append(f"({factor})" + (f"^{power}" if power > 1 else ""))
        return f"({numerator}) / {' * '.join(parts)}"

    def __repr__(self):
        return f"<EvenFraction {self}>"


def fraction_arith(a: EvenFraction, b: EvenFraction, op: str) -> EvenFraction:
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op in ("*", "x", "×"):
        return a * b
    raise ValueError(f"Unsupported fraction operation {op!r}.")
