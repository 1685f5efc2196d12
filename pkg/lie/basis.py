"""Elementary matrices E_kl at the vertices, their sl combinations, and weights."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, Mapping, Tuple

from core.exceptions import DimensionMismatchError
from quivers.graph import Quiver, SuperDimVector
from superalgebra.polynomial import CoordinateRing


@dataclass(frozen=True)
class LieBasisElement:
    vertex: str
    k: int
    l: int
    parity: int
    supertrace: int

    @classmethod
    def build(cls, alpha: SuperDimVector, vertex: str, k: int, l: int) -> "LieBasisElement":
        size = alpha.total(vertex)
        if not (1 <= k <= size and 1 <= l <= size):
            raise DimensionMismatchError(f"E[{k},{l}] does not fit at vertex {vertex} of dimension {size}.")
        even = alpha.even(vertex)
        row_block = 0 if k <= even else 1
        col_block = 0 if l <= even else 1
        trace = 0 if k != l else (1 if row_block == 0 else -1)
        return cls(vertex, k, l, (row_block + col_block) % 2, trace)

    def __str__(self):
        return f"E[{self.k},{self.l}]@{self.vertex}"


@dataclass(frozen=True)
class LieCombination:
    """Integer combination of elementary matrices at one vertex, homogeneous in parity."""

    terms: Tuple[Tuple[LieBasisElement, int], ...]

    def __post_init__(self):
        if not self.terms:
            raise DimensionMismatchError("A Lie combination needs at least one term.")
        if len({element.vertex for element, _ in self.terms}) != 1:
            raise DimensionMismatchError("A Lie combination lives at a single vertex.")
        if len({element.parity for element, _ in self.terms}) != 1:
            raise DimensionMismatchError("A Lie combination must be parity-homogeneous.")

    @classmethod
    def single(cls, element: LieBasisElement) -> "LieCombination":
        return cls(((element, 1),))

    @property
    def vertex(self) -> str:
        return self.terms[0][0].vertex

    @property
    def parity(self) -> int:
        return self.terms[0][0].parity

    @property
    def supertrace(self) -> int:
        return sum(element.supertrace * coeff for element, coeff in self.terms)

    def __str__(self):
        text = ""
        for position, (element, coeff) in enumerate(self.terms):
            name = f"E[{element.k},{element.l}]"
            if coeff == 1:
                text += name if not position else f"+{name}"
            elif coeff == -1:
                text += f"-{name}"
            else:
                text += f"{coeff:+d}*{name}" if position else f"{coeff}*{name}"
        return f"{text}@{self.vertex}"


@dataclass(frozen=True)
class LieBasis:
    kind: str
    elements: Tuple[LieCombination, ...]

    def __iter__(self) -> Iterator[LieCombination]:
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def at(self, vertex: str) -> Tuple[LieCombination, ...]:
        return tuple(element for element in self.elements if element.vertex == vertex)


def gl_basis(ring: CoordinateRing) -> LieBasis:
    alpha = ring.alpha
    elements = []
    for vertex in ring.quiver.vertices:
        size = alpha.total(vertex)
        for k in range(1, size + 1):
            for l in range(1, size + 1):
                elements.append(LieCombination.single(LieBasisElement.build(alpha, vertex, k, l)))
    return LieBasis("gl", tuple(elements))


def sl_basis(ring: CoordinateRing) -> LieBasis:
    """Off-diagonal E_kl and E_kk -+ E_{k+1,k+1} of supertrace zero: d^2 - 1 per vertex."""
    alpha = ring.alpha
    elements = []
    for vertex in ring.quiver.vertices:
        size = alpha.total(vertex)
        for k in range(1, size + 1):
            for l in range(1, size + 1):
                if k != l:
                    elements.append(LieCombination.single(LieBasisElement.build(alpha, vertex, k, l)))
        for k in range(1, size):
            first = LieBasisElement.build(alpha, vertex, k, k)
            second = LieBasisElement.build(alpha, vertex, k + 1, k + 1)
            sign = first.supertrace * second.supertrace
            elements.append(LieCombination(((first, 1), (second, -sign))))
    return LieBasis("sl", tuple(elements))


@dataclass(frozen=True)
class Weight:
    """Integer exponent of the Berezinian character at every vertex."""

    vertices: Tuple[str, ...]
    exponents: Tuple[int, ...]

    @classmethod
    def build(cls, quiver: Quiver, values: Mapping[str, int]) -> "Weight":
        for vertex in values:
            quiver.vertex_index(vertex)
        return cls(quiver.vertices, tuple(int(values.get(vertex, 0)) for vertex in quiver.vertices))

    @classmethod
    def zero(cls, quiver: Quiver) -> "Weight":
        return cls.build(quiver, {})

    def __getitem__(self, vertex: str) -> int:
        try:
            return self.exponents[self.vertices.index(vertex)]
        except ValueError:
            raise DimensionMismatchError(f"Weight is not defined at {vertex}.") from None

    def is_zero(self) -> bool:
        return not any(self.exponents)

    def as_dict(self) -> Dict[str, int]:
        return dict(zip(self.vertices, self.exponents))

    def __add__(self, other: "Weight") -> "Weight":
        if self.vertices != other.vertices:
            raise DimensionMismatchError("Weights live on different quivers.")
        return Weight(self.vertices, tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __str__(self):
        return " ".join(f"{v}={c:+d}" if c else f"{v}=0" for v, c in zip(self.vertices, self.exponents))
