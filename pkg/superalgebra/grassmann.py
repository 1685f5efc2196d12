"""Finite Grassmann algebras used as test points for super-functions.

An element of the algebra on k generators is a mapping from subsets of
{1..k} (stored as bit masks) to rationals. Products merge subsets and pick up
the sign of the inversions between the two factors.
"""
from __future__ import annotations

from typing import Dict, Mapping, Optional

from sympy.polys.domains import QQ
from sympy.polys.polyerrors import CoercionFailed

from core.conf import setting
from core.exceptions import NonInvertibleError, ParityError, ResourceCapExceeded, RingMismatchError
from .polynomial import Polynomial, Variable


def check_generator_count(k: int) -> int:
    cap = setting("SUPERQUIVER_GRASSMANN_MAX_GENERATORS")
    if k < 0:
        raise ValueError("Generator count must be nonnegative.")
    if k > cap:
        raise ResourceCapExceeded(f"Grassmann algebra with {k} generators exceeds the cap of {cap}.")
    return k


def _merge_sign(left: int, right: int) -> int:
    swaps = 0
    mask = right
    while mask:
        low = mask & -mask
        swaps += (left & ~((low << 1) - 1)).bit_count()
        mask ^= low
    return -1 if swaps % 2 else 1


class GrassmannElement:
    __slots__ = ("k", "coeffs")

    def __init__(self, k: int, coeffs: Optional[Mapping[int, object]] = None):
        self.k = k
        self.coeffs: Dict[int, object] = {mask: c for mask, c in (coeffs or {}).items() if c}

    @classmethod
    def scalar(cls, k: int, value) -> "GrassmannElement":
        check_generator_count(k)
        value = QQ.convert(value)
        return cls(k, {0: value})

    @classmethod
    def zero(cls, k: int) -> "GrassmannElement":
        check_generator_count(k)
        return cls(k)

    @classmethod
    def one(cls, k: int) -> "GrassmannElement":
        return cls.scalar(k, 1)

    @classmethod
    def generator(cls, k: int, index: int) -> "GrassmannElement":
        """The generator theta_index, 1-based."""
        check_generator_count(k)
        if not 1 <= index <= k:
            raise ValueError(f"Generator index {index} outside 1..{k}.")
        return cls(k, {1 << (index - 1): QQ.one})

    @classmethod
    def monomial(cls, k: int, indices, coefficient=1) -> "GrassmannElement":
        element = cls.scalar(k, coefficient)
        for index in indices:
            element = element * cls.generator(k, index)
        return element

    def _coerce(self, other) -> "GrassmannElement":
        if isinstance(other, GrassmannElement):
            if other.k != self.k:
                raise RingMismatchError("Grassmann elements over different generator counts.")
            return other
        return GrassmannElement(self.k, {0: QQ.convert(other)})

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except CoercionFailed:
            return NotImplemented
        coeffs = dict(self.coeffs)
        for mask, c in other.coeffs.items():
            coeffs[mask] = coeffs.get(mask, QQ.zero) + c
        return GrassmannElement(self.k, coeffs)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannElement(self.k, {mask: -c for mask, c in self.coeffs.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except CoercionFailed:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except CoercionFailed:
            return NotImplemented
        coeffs: Dict[int, object] = {}
        for left, a in self.coeffs.items():
            for right, b in other.coeffs.items():
                if left & right:
                    continue
                value = a * b * _merge_sign(left, right)
                mask = left | right
                coeffs[mask] = coeffs.get(mask, QQ.zero) + value
        return GrassmannElement(self.k, coeffs)

    def __rmul__(self, other):
        # only scalars reach here, and scalars are central
        return self.__mul__(other)

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = GrassmannElement(self.k, {0: QQ.one}), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, GrassmannElement):
            return self.k == other.k and self.coeffs == other.coeffs
        try:
            return self.coeffs == self._coerce(other).coeffs
        except CoercionFailed:
            return NotImplemented

    def __hash__(self):
        return hash((self.k, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def body(self):
        return self.coeffs.get(0, QQ.zero)

    @property
    def parity(self) -> Optional[int]:
        parities = {mask.bit_count() % 2 for mask in self.coeffs}
        if not parities:
            return 0
        return parities.pop() if len(parities) == 1 else None

    def is_even(self) -> bool:
        return self.parity == 0

    def is_odd(self) -> bool:
        return self.parity == 1 or not self.coeffs

    def inverse(self) -> "GrassmannElement":
        """Inverse of an element with nonzero body: b^-1 * sum (-n/b)^j."""
        body = self.body
        if not body:
            raise NonInvertibleError("A Grassmann element with zero body is not invertible.")
        nilpotent = (self - body) * (QQ.one / body)
        result = GrassmannElement(self.k, {0: QQ.one})
        power = result
        for _ in range(self.k):
            power = power * (-nilpotent)
            if not power:
                break
            result = result + power
        return result * (QQ.one / body)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for mask in sorted(self.coeffs, key=lambda m: (m.bit_count(), m)):
            coeff = self.coeffs[mask]
            indices = [str(i + 1) for i in range(self.k) if mask >> i & 1]
            sign = "-" if coeff < 0 else "+"
            magnitude = -coeff if coeff < 0 else coeff
            if not indices:
                body = str(magnitude)
            elif magnitude == 1:
                body = f"th[{','.join(indices)}]"
            else:
                body = f"{magnitude}*th[{','.join(indices)}]"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"<GrassmannElement {self}>"


GrassmannPoint = Mapping[Variable, GrassmannElement]


def check_point(point: GrassmannPoint) -> None:
    for var, value in point.items():
        if value and value.parity != var.parity:
            raise ParityError(f"{var} is assigned a Grassmann element of the wrong parity.")


def evaluate_grassmann(f: Polynomial, point: GrassmannPoint, k: int) -> GrassmannElement:
    """Evaluate ``f`` at a Grassmann point; factors multiply in canonical order."""
    check_point(point)
    result = GrassmannElement.zero(k)
    for monomial, coeff in f.terms.items():
        term = GrassmannElement.scalar(k, coeff)
        for var, exp in monomial:
            if var not in point:
                raise RingMismatchError(f"The point does not assign {var}.")
            term = term * (point[var] ** exp)
            if not term:
                break
        result = result + term
    return result
