from __future__ import annotations

import logging
from typing import Dict, List, Mapping, Sequence, Tuple

from core.exceptions import DimensionMismatchError, NormalizationError, QuiverError
from .graph import (
    Edge,
    MultiDegree,
    Normalization,
    ParityVector,
    Path,
    Quiver,
    SuperDimVector,
    VertexClass,
)

logger = logging.getLogger(__name__)


def enumerate_closed_paths(quiver: Quiver, max_len: int) -> List[Path]:
    """Closed paths up to ``max_len``, one per rotation class.

    Each class is reported by its lexicographically smallest rotation of edge
    declaration indices; output is ordered by length, then by that sequence.
    """
    if max_len < 1:
        raise QuiverError("max_len must be at least 1.")
    found: List[Tuple[int, ...]] = []
    # successors of e: edges f with h(f) = t(e)
    successors: Dict[int, List[int]] = {
        index: [other for other, candidate in enumerate(quiver.edges) if candidate.head == edge.tail]
        for index, edge in enumerate(quiver.edges)
    }

    def extend(sequence: List[int]) -> None:
        first, last = quiver.edges[sequence[0]], quiver.edges[sequence[-1]]
        if first.head == last.tail:
            candidate = tuple(sequence)
            if candidate == _min_rotation(candidate):
                found.append(candidate)
        if len(sequence) == max_len:
            return
        for following in successors[sequence[-1]]:
            if following < sequence[0]:
                continue
            sequence.append(following)
            extend(sequence)
            sequence.pop()

    for start in range(len(quiver.edges)):
        extend([start])

    found.sort(key=lambda seq: (len(seq), seq))
    return [Path.build(quiver, [quiver.edges[i].id for i in seq]) for seq in found]


def enumerate_paths(quiver: Quiver, max_len: int, tail: str, head: str) -> List[Path]:
    """Paths from ``tail`` to ``head`` with 1 to ``max_len`` edges, shortest first."""
    quiver.vertex_index(tail)
    quiver.vertex_index(head)
    found: List[Tuple[str, ...]] = []

    def extend(sequence: Tuple[str, ...], at: str) -> None:
        # grow backwards: e_k starts at ``tail``, e_1 ends at ``head``
        if len(sequence) == max_len:
            return
        for edge in quiver.edges:
            if edge.tail != at:
                continue
            grown = (edge.id,) + sequence
            if edge.head == head:
                found.append(grown)
            extend(grown, edge.head)

    extend((), tail)
    found.sort(key=lambda seq: (len(seq), [quiver.edge_index(e) for e in seq]))
    return [Path.build(quiver, seq) for seq in found]


def _min_rotation(cycle: Tuple[int, ...]) -> Tuple[int, ...]:
    return min(cycle[i:] + cycle[:i] for i in range(len(cycle)))


def ringel_form(quiver: Quiver, alpha: SuperDimVector, beta: SuperDimVector) -> int:
    alpha.check_on(quiver)
    beta.check_on(quiver)
    vertex_sum = sum(a0 * b0 + a1 * b1 for (a0, a1), (b0, b1) in zip(alpha.parts, beta.parts))
    edge_sum = sum(alpha.total(edge.tail) * beta.total(edge.head) for edge in quiver.edges)
    return vertex_sum - edge_sum


def euler_form(quiver: Quiver, dims_a: Mapping[str, int], dims_b: Mapping[str, int]) -> int:
    """Classical Euler form of ordinary dimension vectors."""
    vertex_sum = sum(dims_a[v] * dims_b[v] for v in quiver.vertices)
    edge_sum = sum(dims_a[edge.tail] * dims_b[edge.head] for edge in quiver.edges)
    return vertex_sum - edge_sum


def sources(quiver: Quiver) -> Tuple[str, ...]:
    return tuple(v for v in quiver.vertices if not quiver.in_edges(v))


def sinks(quiver: Quiver) -> Tuple[str, ...]:
    return tuple(v for v in quiver.vertices if not quiver.out_edges(v))


def is_acyclic(quiver: Quiver) -> bool:
    # a cycle exists iff a simple one does, and simple cycles are no longer than |Q0|
    return not enumerate_closed_paths(quiver, len(quiver.vertices))


def classify_vertex(quiver: Quiver, alpha: SuperDimVector, vertex: str) -> VertexClass:
    alpha.check_on(quiver)
    in_degree = len(quiver.in_edges(vertex))
    out_degree = len(quiver.out_edges(vertex))
    even, odd = alpha[vertex]
    return VertexClass(
        source=in_degree == 0,
        sink=out_degree == 0,
        extremal=even * odd == 0,
        in_degree=in_degree,
        out_degree=out_degree,
    )


def kirchhoff_ok(quiver: Quiver, vertex: str) -> bool:
    return len(quiver.in_edges(vertex)) == len(quiver.out_edges(vertex))


def double_edges(quiver: Quiver) -> Quiver:
    edges = []
    for edge in quiver.edges:
        for label in (0, 1):
            edges.append(Edge(f"{edge.id}_{label}", edge.tail, edge.head, origin=edge.id, label=label))
    return Quiver(quiver.vertices, tuple(edges))


def doubled_vertex(vertex: str, part: int) -> str:
    return f"{vertex}_{part}"


def double_all(quiver: Quiver, alpha: SuperDimVector) -> Tuple[Quiver, Dict[str, int]]:
    """Edge-and-vertex doubled quiver with its ordinary dimension vector."""
    alpha.check_on(quiver)
    vertices = tuple(doubled_vertex(v, part) for v in quiver.vertices for part in (0, 1))
    edges = []
    for edge in quiver.edges:
        for i in (0, 1):
            for j in (0, 1):
                edges.append(
                    Edge(
                        f"{edge.id}_{i}{j}",
                        doubled_vertex(edge.tail, i),
                        doubled_vertex(edge.head, j),
                        origin=edge.id,
                    )
                )
    dims = {doubled_vertex(v, part): alpha[v][part] for v in quiver.vertices for part in (0, 1)}
    return Quiver(vertices, tuple(edges)), dims


def polarized_edge(edge_id: str, copy: int) -> str:
    return f"{edge_id}_{copy}"


def polarize_quiver(quiver: Quiver, degree: MultiDegree) -> Quiver:
    if degree.edges != tuple(edge.id for edge in quiver.edges):
        raise DimensionMismatchError("Multidegree belongs to a different quiver.")
    edges = []
    for edge, count in zip(quiver.edges, degree.values):
        for copy in range(1, count + 1):
            edges.append(Edge(polarized_edge(edge.id, copy), edge.tail, edge.head, origin=edge.id))
    return Quiver(quiver.vertices, tuple(edges))


def normalize_at(
    quiver: Quiver,
    alpha: SuperDimVector,
    parity: ParityVector,
    vertex: str,
) -> Normalization:
    """Split ``vertex`` into a' -> a: in-edges move to a', e(a) joins them."""
    alpha.check_on(quiver)
    parity.check_on(quiver)
    info = classify_vertex(quiver, alpha, vertex)
    if info.source or info.sink:
        raise NormalizationError(f"Vertex {vertex} is a source or a sink; nothing to normalize.")

    new_vertex = f"{vertex}'"
    new_edge = f"e({vertex})"
    if quiver.has_vertex(new_vertex):
        raise NormalizationError(f"Vertex {new_vertex} already exists.")
    if new_edge in {edge.id for edge in quiver.edges}:
        raise NormalizationError(f"Edge {new_edge} already exists.")

    position = quiver.vertex_index(vertex) + 1
    vertices = quiver.vertices[:position] + (new_vertex,) + quiver.vertices[position:]
    edges = [
        Edge(edge.id, edge.tail, new_vertex, origin=edge.origin, label=edge.label) if edge.head == vertex else edge
        for edge in quiver.edges
    ]
    edges.append(Edge(new_edge, new_vertex, vertex))
    normalized = Quiver(vertices, tuple(edges))

    dims = alpha.as_dict()
    dims[new_vertex] = alpha[vertex]
    bits = dict(zip(parity.vertices, parity.bits))
    bits[new_vertex] = parity[vertex]
    logger.debug("Normalized %s at %s", quiver.vertices, vertex)
    return Normalization(
        quiver=normalized,
        alpha=SuperDimVector.build(normalized, dims),
        parity=ParityVector.build(normalized, bits),
        edge=new_edge,
        vertex=vertex,
        new_vertex=new_vertex,
    )


def normalize_extremal(
    quiver: Quiver,
    alpha: SuperDimVector,
    parity: ParityVector,
) -> List[Normalization]:
    """Normalize once at every extremal vertex that is neither source nor sink.

    Each step works on the result of the previous one; the last entry holds
    the final quiver.
    """
    steps: List[Normalization] = []
    current_quiver, current_alpha, current_parity = quiver, alpha, parity
    for vertex in quiver.vertices:
        info = classify_vertex(current_quiver, current_alpha, vertex)
        if current_alpha.total(vertex) == 0 or not info.extremal or info.source or info.sink:
            continue
        step = normalize_at(current_quiver, current_alpha, current_parity, vertex)
        steps.append(step)
        current_quiver, current_alpha, current_parity = step.quiver, step.alpha, step.parity
    return steps


def parity_shift(alpha: SuperDimVector, parity: ParityVector) -> SuperDimVector:
    if alpha.vertices != parity.vertices:
        raise DimensionMismatchError("Parity vector and super-dimension vector live on different quivers.")
    parts = tuple(
        (odd, even) if bit else (even, odd)
        for (even, odd), bit in zip(alpha.parts, parity.bits)
    )
    return SuperDimVector(alpha.vertices, parts)


def double_representation(
    quiver: Quiver,
    alpha: SuperDimVector,
    maps: Mapping[str, Sequence[Sequence]],
) -> Dict[str, List[List]]:
    """Split each ungraded map V(e) into the blocks carried by Q-tilde.

    The block for edge e_ij maps part i of V(t(e)) to part j of V(h(e)).
    """
    blocks: Dict[str, List[List]] = {}
    for edge in quiver.edges:
        matrix = maps[edge.id]
        tail_even = alpha.even(edge.tail)
        head_even = alpha.even(edge.head)
        tail_parts = (range(0, tail_even), range(tail_even, alpha.total(edge.tail)))
        head_parts = (range(0, head_even), range(head_even, alpha.total(edge.head)))
        for i in (0, 1):
            for j in (0, 1):
                blocks[f"{edge.id}_{i}{j}"] = [
                    [matrix[row][col] for col in tail_parts[i]] for row in head_parts[j]
                ]
    return blocks
