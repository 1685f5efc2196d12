"""Hom and Ext between concrete super-representations."""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, NamedTuple, Sequence, Tuple

from sympy.polys.domains import QQ

from core.exceptions import (
    DimensionMismatchError,
    HomConsistencyError,
    JobReferenceError,
    JobSyntaxError,
    NegativeExtError,
)
from quivers.graph import Quiver, SuperDimVector
from quivers.services import double_all, double_representation, ringel_form
from quivers.textformat import parse_sdim, tokenize
from .linalg import sparse_rank

logger = logging.getLogger(__name__)

RATIONAL = re.compile(r"^-?\d+(/\d+)?$")

Matrix = Tuple[Tuple[object, ...], ...]


@dataclass(frozen=True)
class ConcreteSuperRep:
    """V(a) of super-dimension alpha(a) and ungraded rational matrices V(e)."""

    quiver: Quiver
    alpha: SuperDimVector
    maps: Mapping[str, Matrix]

    def __post_init__(self):
        self.alpha.check_on(self.quiver)
        for edge in self.quiver.edges:
            matrix = self.maps.get(edge.id)
            if matrix is None:
                raise DimensionMismatchError(f"No map for edge {edge.id}.")
            rows, cols = self.alpha.total(edge.head), self.alpha.total(edge.tail)
            if len(matrix) != rows or any(len(row) != cols for row in matrix):
                raise DimensionMismatchError(f"V({edge.id}) must be {rows}x{cols}.")

    @classmethod
    def build(cls, quiver: Quiver, alpha: SuperDimVector, maps: Mapping[str, Sequence[Sequence[object]]]) -> "ConcreteSuperRep":
        for edge_id in maps:
            quiver.edge_index(edge_id)
        full: Dict[str, Matrix] = {}
        for edge in quiver.edges:
            rows, cols = alpha.total(edge.head), alpha.total(edge.tail)
            matrix = maps.get(edge.id)
            if matrix is None:
                matrix = [[0] * cols for _ in range(rows)]
            full[edge.id] = tuple(tuple(QQ.convert(value) for value in row) for row in matrix)
        return cls(quiver, alpha, full)


class HomExt(NamedTuple):
    hom: int
    ext: int
    form: int


def _hom_dim(
    quiver: Quiver,
    source_dims: Mapping[str, int],
    source_maps: Mapping[str, Sequence[Sequence[object]]],
    target_dims: Mapping[str, int],
    target_maps: Mapping[str, Sequence[Sequence[object]]],
    allowed: Callable[[str, int, int], bool],
) -> int:
    """Solutions of W(e) phi(t(e)) = phi(h(e)) V(e) with phi(a)[i][j] free where ``allowed``."""
    unknowns: Dict[Tuple[str, int, int], int] = {}
    for vertex in quiver.vertices:
        for i in range(target_dims[vertex]):
            for j in range(source_dims[vertex]):
                if allowed(vertex, i, j):
                    unknowns[vertex, i, j] = len(unknowns)
    rows: List[Dict[int, object]] = []
    for edge in quiver.edges:
        v, w = source_maps[edge.id], target_maps[edge.id]
        for i in range(target_dims[edge.head]):
            for j in range(source_dims[edge.tail]):
                row: Dict[int, object] = {}
                for k in range(target_dims[edge.tail]):
                    column = unknowns.get((edge.tail, k, j))
                    if column is not None and w[i][k]:
                        row[column] = row.get(column, QQ.zero) + w[i][k]
                for k in range(source_dims[edge.head]):
                    column = unknowns.get((edge.head, i, k))
                    if column is not None and v[k][j]:
                        row[column] = row.get(column, QQ.zero) - v[k][j]
                rows.append(row)
    return len(unknowns) - sparse_rank(rows, len(unknowns))


def hom_dim(v: ConcreteSuperRep, w: ConcreteSuperRep) -> int:
    """Parity-preserving homomorphisms V -> W."""
    if v.quiver != w.quiver:
        raise DimensionMismatchError("Both representations must live on the same quiver.")

    def same_block(vertex: str, i: int, j: int) -> bool:
        return (i >= w.alpha.even(vertex)) == (j >= v.alpha.even(vertex))

    return _hom_dim(
        v.quiver,
        {a: v.alpha.total(a) for a in v.quiver.vertices},
        v.maps,
        {a: w.alpha.total(a) for a in w.quiver.vertices},
        w.maps,
        same_block,
    )


def doubled_hom_dim(v: ConcreteSuperRep, w: ConcreteSuperRep) -> int:
    """Hom between the classical representations of the edge-and-vertex doubled quiver."""
    doubled, v_dims = double_all(v.quiver, v.alpha)
    _, w_dims = double_all(w.quiver, w.alpha)
    v_maps = double_representation(v.quiver, v.alpha, v.maps)
    w_maps = double_representation(w.quiver, w.alpha, w.maps)
    return _hom_dim(doubled, v_dims, v_maps, w_dims, w_maps, lambda vertex, i, j: True)


def hom_ext_dims(v: ConcreteSuperRep, w: ConcreteSuperRep, check_doubled: bool = True) -> HomExt:
    hom = hom_dim(v, w)
    if check_doubled:
        doubled = doubled_hom_dim(v, w)
        if doubled != hom:
            raise HomConsistencyError(f"Graded solver gives hom={hom}, doubled quiver gives {doubled}.")
    form = ringel_form(v.quiver, v.alpha, w.alpha)
    ext = hom - form
    if ext < 0:
        raise NegativeExtError(f"hom={hom} and form={form} give a negative ext.")
    logger.debug("hom=%s ext=%s form=%s", hom, ext, form)
    return HomExt(hom, ext, form)


def random_rep(quiver: Quiver, alpha: SuperDimVector, rng, bound: int = 2) -> ConcreteSuperRep:
    maps = {
        edge.id: [
            [rng.randint(-bound, bound) for _ in range(alpha.total(edge.tail))]
            for _ in range(alpha.total(edge.head))
        ]
        for edge in quiver.edges
    }
    return ConcreteSuperRep.build(quiver, alpha, maps)


# -- representation files ------------------------------------------------


def _rational(token: str, line: int, column: int):
    if not RATIONAL.match(token):
        raise JobSyntaxError(f"expected a rational entry, got {token!r}", line, column)
    numerator, _, denominator = token.partition("/")
    if denominator and not int(denominator):
        raise JobSyntaxError("zero denominator", line, column)
    return QQ(int(numerator), int(denominator or 1))


def parse_rep(text: str, quiver: Quiver) -> ConcreteSuperRep:
    """Read ``dim <vertex> <p>|<q>`` and ``map <edge> <row> ; <row>`` lines.

    Vertices without a ``dim`` line are zero, edges without a ``map`` line
    carry the zero matrix.
    """
    dims: Dict[str, Tuple[int, int]] = {vertex: (0, 0) for vertex in quiver.vertices}
    maps: Dict[str, List[List[object]]] = {}
    edge_ids = {edge.id for edge in quiver.edges}
    pending = []
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = tokenize(raw)
        if not tokens:
            continue
        keyword, column = tokens[0]
        if keyword == "dim":
            if len(tokens) != 3:
                raise JobSyntaxError("expected: dim <vertex> <p>|<q>", number, column)
            vertex, at = tokens[1]
            if vertex not in dims:
                raise JobReferenceError(f"undeclared vertex {vertex}", number, at)
            dims[vertex] = parse_sdim(tokens[2][0], number, tokens[2][1])
        elif keyword == "map":
            if len(tokens) < 2:
                raise JobSyntaxError("expected: map <edge> <row> ; <row> ...", number, column)
            edge_id, at = tokens[1]
            if edge_id not in edge_ids:
                raise JobReferenceError(f"undeclared edge {edge_id}", number, at)
            if edge_id in maps:
                raise JobSyntaxError(f"map {edge_id} given twice", number, at)
            rows: List[List[object]] = [[]]
            for token, position in tokens[2:]:
                if token == ";":
                    rows.append([])
                else:
                    rows[-1].append(_rational(token, number, position))
            maps[edge_id] = [row for row in rows if row]
            pending.append((edge_id, number, at))
        else:
            raise JobSyntaxError(f"unknown directive {keyword!r}", number, column)
    alpha = SuperDimVector.build(quiver, dims)
    for edge_id, number, at in pending:
        edge = quiver.edge(edge_id)
        rows, cols = alpha.total(edge.head), alpha.total(edge.tail)
        matrix = maps[edge_id]
        if len(matrix) != rows or any(len(row) != cols for row in matrix):
            raise JobSyntaxError(f"map {edge_id} must be {rows}x{cols}", number, at)
    return ConcreteSuperRep.build(quiver, alpha, maps)
