"""Determinant-like semi-invariants built from path matrices between sinks and sources."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from core.conf import setting
from core.exceptions import DetLikeSpecError, SuperquiverError
from lie.basis import Weight
from quivers.graph import MultiDegree, Path
from quivers.services import classify_vertex, enumerate_paths, sinks, sources
from superalgebra.polynomial import CoordinateRing, Polynomial
from supermatrices.services import determinant_of, path_product

logger = logging.getLogger(__name__)

# (sink, sink copy or None for every copy), same for the source
BlockKey = Tuple[str, Optional[int], str, Optional[int]]


@dataclass(frozen=True)
class DetLikeBlock:
    sink: str
    sink_copy: Optional[int]
    source: str
    source_copy: Optional[int]
    terms: Tuple[Tuple[object, Tuple[str, ...]], ...]


@dataclass(frozen=True)
class DetLikeSpec:
    sinks: Tuple[Tuple[str, int], ...]
    sources: Tuple[Tuple[str, int], ...]
    blocks: Tuple[DetLikeBlock, ...] = ()

    def row_positions(self) -> List[Tuple[str, int]]:
        return [(vertex, copy) for vertex, count in self.sinks for copy in range(1, count + 1)]

    def column_positions(self) -> List[Tuple[str, int]]:
        return [(vertex, copy) for vertex, count in self.sources for copy in range(1, count + 1)]

    def size(self, ring: CoordinateRing) -> int:
        return sum(ring.alpha.total(vertex) * count for vertex, count in self.sinks)


@dataclass(frozen=True)
class DetLikeResult:
    determinant: Polynomial
    components: Tuple[Tuple[MultiDegree, Polynomial], ...]
    weight: Weight


def purely_even_shifted(ring: CoordinateRing, vertex: str) -> bool:
    even, odd = ring.alpha[vertex]
    return (odd if not ring.parity[vertex] else even) == 0


def endpoint_weight(ring: CoordinateRing, vertex: str, multiplicity: int, sink: bool) -> int:
    """Sinks scale by det(g)^q, sources by det(g)^-r; det is Ber^-1 on a shifted odd space."""
    sign = -1 if ring.parity[vertex] else 1
    return sign * multiplicity if sink else -sign * multiplicity


def validate_detlike(ring: CoordinateRing, spec: DetLikeSpec) -> None:
    quiver = ring.quiver
    sink_set, source_set = set(sinks(quiver)), set(sources(quiver))
    for group, allowed, role in ((spec.sinks, sink_set, "sink"), (spec.sources, source_set, "source")):
        names = [vertex for vertex, _ in group]
        if len(set(names)) != len(names):
            raise DetLikeSpecError(f"A {role} is listed twice.")
        for vertex, count in group:
            try:
                info = classify_vertex(quiver, ring.alpha, vertex)
            except SuperquiverError as exc:
                raise DetLikeSpecError(str(exc)) from exc
            if vertex not in allowed:
                raise DetLikeSpecError(f"{vertex} is not a {role} of the quiver.")
            if count < 1:
                raise DetLikeSpecError(f"Multiplicity of {vertex} must be positive.")
            if not info.extremal or not purely_even_shifted(ring, vertex):
                raise DetLikeSpecError(f"{vertex} does not carry a purely even shifted space.")
    rows = spec.size(ring)
    columns = sum(ring.alpha.total(vertex) * count for vertex, count in spec.sources)
    if rows != columns:
        raise DetLikeSpecError(f"Unbalanced spec: sinks give {rows} rows, sources give {columns} columns.")
    sink_counts, source_counts = dict(spec.sinks), dict(spec.sources)
    for block in spec.blocks:
        if block.sink not in sink_counts or block.source not in source_counts:
            raise DetLikeSpecError(f"Block {block.sink} {block.source} uses an unlisted vertex.")
        if block.sink_copy is not None and not 1 <= block.sink_copy <= sink_counts[block.sink]:
            raise DetLikeSpecError(f"{block.sink} has no copy {block.sink_copy}.")
        if block.source_copy is not None and not 1 <= block.source_copy <= source_counts[block.source]:
            raise DetLikeSpecError(f"{block.source} has no copy {block.source_copy}.")
        for _, edges in block.terms:
            try:
                path = Path.build(quiver, edges)
            except SuperquiverError as exc:
                raise DetLikeSpecError(str(exc)) from exc
            if (path.tail, path.head) != (block.source, block.sink):
                raise DetLikeSpecError(f"Path {path} does not run from {block.source} to {block.sink}.")


def _block_matches(block: DetLikeBlock, row: Tuple[str, int], column: Tuple[str, int]) -> bool:
    return (
        block.sink == row[0]
        and block.source == column[0]
        and block.sink_copy in (None, row[1])
        and block.source_copy in (None, column[1])
    )


def detlike_matrix(ring: CoordinateRing, spec: DetLikeSpec) -> List[List[Polynomial]]:
    validate_detlike(ring, spec)
    alpha = ring.alpha
    paths: Dict[Tuple[str, ...], List[List[Polynomial]]] = {}
    rows: List[List[Polynomial]] = []
    for row in spec.row_positions():
        height = alpha.total(row[0])
        band = [[] for _ in range(height)]
        for column in spec.column_positions():
            width = alpha.total(column[0])
            cell = [[ring.zero] * width for _ in range(height)]
            for block in spec.blocks:
                if not _block_matches(block, row, column):
                    continue
                for coeff, edges in block.terms:
                    if edges not in paths:
                        paths[edges] = path_product(ring, Path.build(ring.quiver, edges)).rows()
                    matrix = paths[edges]
                    for i in range(height):
                        for j in range(width):
                            cell[i][j] = cell[i][j] + matrix[i][j] * coeff
            for i in range(height):
                band[i].extend(cell[i])
        rows.extend(band)
    return rows


def detlike_semi_invariant(ring: CoordinateRing, spec: DetLikeSpec) -> DetLikeResult:
    det = determinant_of(detlike_matrix(ring, spec), ring.zero)
    weights = {vertex: endpoint_weight(ring, vertex, count, True) for vertex, count in spec.sinks}
    for vertex, count in spec.sources:
        weights[vertex] = weights.get(vertex, 0) + endpoint_weight(ring, vertex, count, False)
    return DetLikeResult(
        determinant=det,
        components=tuple(det.homogeneous_components().items()),
        weight=Weight.build(ring.quiver, weights),
    )


# -- symbolic coefficients ----------------------------------------------


def parameter_name(row: int, column: int, index: int) -> str:
    return f"c{row}_{column}_{index}"


def symbolic_detlike_components(
    ring: CoordinateRing,
    sink_counts: Sequence[Tuple[str, int]],
    source_counts: Sequence[Tuple[str, int]],
    max_len: int,
) -> List[Polynomial]:
    """Every homogeneous component of det(X) with a fresh parameter per (block, path).

    Components are taken per monomial in the parameters, so the result spans
    what all rational choices of block coefficients produce.
    """
    spec = DetLikeSpec(tuple(sink_counts), tuple(source_counts))
    validate_detlike(ring, spec)
    rows_at = spec.row_positions()
    columns_at = spec.column_positions()
    per_block: Dict[Tuple[int, int], List[Path]] = {}
    names: List[str] = []
    for r, row in enumerate(rows_at):
        for c, column in enumerate(columns_at):
            found = enumerate_paths(ring.quiver, max_len, column[0], row[0])
            per_block[r, c] = found
            names.extend(parameter_name(r, c, index) for index in range(len(found)))
    if not names:
        return []
    extended = ring.with_parameters(names)
    blocks = []
    for r, row in enumerate(rows_at):
        for c, column in enumerate(columns_at):
            terms = tuple((extended.par(parameter_name(r, c, index)), path.edges) for index, path in enumerate(per_block[r, c]))
            if terms:
                blocks.append(DetLikeBlock(row[0], row[1], column[0], column[1], terms))
    det = determinant_of(detlike_matrix(extended, DetLikeSpec(spec.sinks, spec.sources, tuple(blocks))), extended.zero)
    components: List[Polynomial] = []
    for coefficient in det.coefficient_in_parameters().values():
        for component in coefficient.homogeneous_components().values():
            component = component.rehome(ring)
            if component and component not in components:
                components.append(component)
    logger.debug("det-like family %s / %s gave %s components", sink_counts, source_counts, len(components))
    return components


def detlike_families(ring: CoordinateRing, max_size: int) -> Iterator[Tuple[Tuple[Tuple[str, int], ...], Tuple[Tuple[str, int], ...]]]:
    """Balanced choices of sinks and sources with multiplicities up to the configured bound."""
    limit = setting("SUPERQUIVER_DETLIKE_MAX_MULTIPLICITY")
    def usable(vertex: str) -> bool:
        return (
            ring.alpha.total(vertex) > 0
            and classify_vertex(ring.quiver, ring.alpha, vertex).extremal
            and purely_even_shifted(ring, vertex)
        )

    sink_list = [v for v in sinks(ring.quiver) if usable(v) and v not in sources(ring.quiver)]
    source_list = [v for v in sources(ring.quiver) if usable(v) and v not in sinks(ring.quiver)]
    for sink_mult in product(range(limit + 1), repeat=len(sink_list)):
        rows = sum(ring.alpha.total(v) * q for v, q in zip(sink_list, sink_mult))
        if not rows or rows > max_size:
            continue
        for source_mult in product(range(limit + 1), repeat=len(source_list)):
            columns = sum(ring.alpha.total(v) * r for v, r in zip(source_list, source_mult))
            if columns != rows:
                continue
            yield (
                tuple((v, q) for v, q in zip(sink_list, sink_mult) if q),
                tuple((v, r) for v, r in zip(source_list, source_mult) if r),
            )
