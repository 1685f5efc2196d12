"""Immutable value types for quivers and the vectors that live on them."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Mapping, NamedTuple, Optional, Tuple

from core.exceptions import (
    DimensionMismatchError,
    PathError,
    QuiverError,
    UnknownEdgeError,
    UnknownVertexError,
)


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str
    # Set on derived quivers: the edge this one was copied from and, for the
    # edge-doubled quiver, its parity label.
    origin: Optional[str] = None
    label: Optional[int] = None

    def __str__(self):
        return f"{self.id}: {self.tail} -> {self.head}"


@dataclass(frozen=True)
class Quiver:
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        if not self.vertices:
            raise QuiverError("A quiver needs at least one vertex.")
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("Vertex identifiers must be unique.")
        seen = set()
        for edge in self.edges:
            if edge.id in seen:
                raise QuiverError(f"Edge identifier {edge.id} is declared twice.")
            seen.add(edge.id)
            for endpoint in (edge.tail, edge.head):
                if endpoint not in self.vertices:
                    raise UnknownVertexError(f"Edge {edge.id} uses undeclared vertex {endpoint}.")

    @cached_property
    def _vertex_index(self) -> Dict[str, int]:
        return {vertex: index for index, vertex in enumerate(self.vertices)}

    @cached_property
    def _edge_index(self) -> Dict[str, int]:
        return {edge.id: index for index, edge in enumerate(self.edges)}

    def has_vertex(self, vertex: str) -> bool:
        return vertex in self._vertex_index

    def vertex_index(self, vertex: str) -> int:
        try:
            return self._vertex_index[vertex]
        except KeyError:
            raise UnknownVertexError(f"Unknown vertex {vertex}.") from None

    def edge_index(self, edge_id: str) -> int:
        try:
            return self._edge_index[edge_id]
        except KeyError:
            raise UnknownEdgeError(f"Unknown edge {edge_id}.") from None

    def edge(self, edge_id: str) -> Edge:
        return self.edges[self.edge_index(edge_id)]

    def in_edges(self, vertex: str) -> Tuple[Edge, ...]:
        self.vertex_index(vertex)
        return tuple(edge for edge in self.edges if edge.head == vertex)

    def out_edges(self, vertex: str) -> Tuple[Edge, ...]:
        self.vertex_index(vertex)
        return tuple(edge for edge in self.edges if edge.tail == vertex)

    def path(self, edge_ids: Iterable[str]) -> "Path":
        return Path.build(self, edge_ids)


@dataclass(frozen=True)
class SuperDimVector:
    """Per-vertex super-dimension ``even|odd`` in vertex declaration order."""

    vertices: Tuple[str, ...]
    parts: Tuple[Tuple[int, int], ...]

    @classmethod
    def build(cls, quiver: Quiver, values: Mapping[str, Tuple[int, int]]) -> "SuperDimVector":
        if set(values) != set(quiver.vertices):
            raise DimensionMismatchError("A super-dimension vector must be defined on exactly the vertex set.")
        parts = []
        for vertex in quiver.vertices:
            even, odd = values[vertex]
            if even < 0 or odd < 0:
                raise DimensionMismatchError(f"Negative dimension at vertex {vertex}.")
            parts.append((int(even), int(odd)))
        return cls(quiver.vertices, tuple(parts))

    @classmethod
    def zero(cls, quiver: Quiver) -> "SuperDimVector":
        return cls(quiver.vertices, tuple((0, 0) for _ in quiver.vertices))

    def __getitem__(self, vertex: str) -> Tuple[int, int]:
        try:
            return self.parts[self.vertices.index(vertex)]
        except ValueError:
            raise UnknownVertexError(f"Unknown vertex {vertex}.") from None

    def even(self, vertex: str) -> int:
        return self[vertex][0]

    def odd(self, vertex: str) -> int:
        return self[vertex][1]

    def total(self, vertex: str) -> int:
        even, odd = self[vertex]
        return even + odd

    def as_dict(self) -> Dict[str, Tuple[int, int]]:
        return dict(zip(self.vertices, self.parts))

    def check_on(self, quiver: Quiver) -> None:
        if self.vertices != quiver.vertices:
            raise DimensionMismatchError("Super-dimension vector belongs to a different quiver.")

    def __add__(self, other: "SuperDimVector") -> "SuperDimVector":
        if self.vertices != other.vertices:
            raise DimensionMismatchError("Cannot add super-dimension vectors of different quivers.")
        parts = tuple((a0 + b0, a1 + b1) for (a0, a1), (b0, b1) in zip(self.parts, other.parts))
        return SuperDimVector(self.vertices, parts)

    def __str__(self):
        return ",".join(f"{v}={p}|{q}" for v, (p, q) in zip(self.vertices, self.parts))


@dataclass(frozen=True)
class ParityVector:
    vertices: Tuple[str, ...]
    bits: Tuple[int, ...]

    @classmethod
    def build(cls, quiver: Quiver, values: Mapping[str, int]) -> "ParityVector":
        if set(values) != set(quiver.vertices):
            raise DimensionMismatchError("A parity vector must be defined on exactly the vertex set.")
        bits = []
        for vertex in quiver.vertices:
            bit = values[vertex]
            if bit not in (0, 1):
                raise DimensionMismatchError(f"Parity at vertex {vertex} must be 0 or 1.")
            bits.append(int(bit))
        return cls(quiver.vertices, tuple(bits))

    @classmethod
    def zero(cls, quiver: Quiver) -> "ParityVector":
        return cls(quiver.vertices, tuple(0 for _ in quiver.vertices))

    def __getitem__(self, vertex: str) -> int:
        try:
            return self.bits[self.vertices.index(vertex)]
        except ValueError:
            raise UnknownVertexError(f"Unknown vertex {vertex}.") from None

    def check_on(self, quiver: Quiver) -> None:
        if self.vertices != quiver.vertices:
            raise DimensionMismatchError("Parity vector belongs to a different quiver.")


@dataclass(frozen=True)
class Path:
    """Edges e1..ek with h(e_{i+1}) = t(e_i); runs from t(ek) to h(e1)."""

    edges: Tuple[str, ...]
    tail: str
    head: str

    @classmethod
    def build(cls, quiver: Quiver, edge_ids: Iterable[str]) -> "Path":
        edge_ids = tuple(edge_ids)
        if not edge_ids:
            raise PathError("A path needs at least one edge.")
        edges = [quiver.edge(edge_id) for edge_id in edge_ids]
        for position, (current, following) in enumerate(zip(edges, edges[1:]), start=1):
            if following.head != current.tail:
                raise PathError(
                    f"Edges {current.id} and {following.id} are not composable at position {position}."
                )
        return cls(edge_ids, edges[-1].tail, edges[0].head)

    @property
    def closed(self) -> bool:
        return self.head == self.tail

    def __len__(self):
        return len(self.edges)

    def __str__(self):
        return ",".join(self.edges)


@dataclass(frozen=True)
class MultiDegree:
    """Dense per-edge degree vector in edge declaration order."""

    edges: Tuple[str, ...]
    values: Tuple[int, ...] = field(default=())

    @classmethod
    def build(cls, quiver: Quiver, values: Mapping[str, int]) -> "MultiDegree":
        for edge_id in values:
            quiver.edge_index(edge_id)
        dense = []
        for edge in quiver.edges:
            value = int(values.get(edge.id, 0))
            if value < 0:
                raise DimensionMismatchError(f"Negative degree on edge {edge.id}.")
            dense.append(value)
        return cls(tuple(edge.id for edge in quiver.edges), tuple(dense))

    @classmethod
    def zero(cls, quiver: Quiver) -> "MultiDegree":
        return cls.build(quiver, {})

    def __getitem__(self, edge_id: str) -> int:
        try:
            return self.values[self.edges.index(edge_id)]
        except ValueError:
            raise UnknownEdgeError(f"Unknown edge {edge_id}.") from None

    @property
    def total(self) -> int:
        return sum(self.values)

    def __add__(self, other: "MultiDegree") -> "MultiDegree":
        if self.edges != other.edges:
            raise DimensionMismatchError("Cannot add multidegrees of different quivers.")
        return MultiDegree(self.edges, tuple(a + b for a, b in zip(self.values, other.values)))

    def fits_in(self, other: "MultiDegree") -> bool:
        return all(a <= b for a, b in zip(self.values, other.values))

    def __str__(self):
        return ",".join(f"{edge}={value}" for edge, value in zip(self.edges, self.values))


class VertexClass(NamedTuple):
    source: bool
    sink: bool
    extremal: bool
    in_degree: int
    out_degree: int


class Normalization(NamedTuple):
    quiver: Quiver
    alpha: SuperDimVector
    parity: ParityVector
    edge: str
    vertex: str
    new_vertex: str
