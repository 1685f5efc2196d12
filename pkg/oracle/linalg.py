"""Exact rank computations over QQ.

Rows are scaled to integers and reduced fraction-free by sympy's
``rref_den``; the sparse representation is kept for derivation matrices.
"""
from __future__ import annotations

from math import lcm
from typing import Dict, List, Mapping, Sequence

from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

SparseRows = Sequence[Mapping[int, object]]


def _integer_row(row: Mapping[int, object]) -> Dict[int, int]:
    scale = lcm(*(int(value.denominator) for value in row.values())) if row else 1
    return {col: ZZ(int(value.numerator) * (scale // int(value.denominator))) for col, value in row.items() if value}


def sparse_rank(rows: SparseRows, width: int) -> int:
    """Rank of the matrix whose i-th row has the given nonzero entries."""
    cleaned = [_integer_row(row) for row in rows]
    cleaned = [row for row in cleaned if row]
    if not cleaned or not width:
        return 0
    matrix = DomainMatrix({i: row for i, row in enumerate(cleaned)}, (len(cleaned), width), ZZ)
    _, _, pivots = matrix.rref_den()
    return len(pivots)


def nullity(rows: SparseRows, width: int) -> int:
    return width - sparse_rank(rows, width)


def nullspace(rows: SparseRows, width: int) -> List[Dict[int, object]]:
    """A QQ basis of the kernel, one sparse vector per element."""
    cleaned = [_integer_row(row) for row in rows]
    cleaned = [row for row in cleaned if row]
    if not width:
        return []
    if not cleaned:
        return [{column: QQ.one} for column in range(width)]
    matrix = DomainMatrix({i: row for i, row in enumerate(cleaned)}, (len(cleaned), width), ZZ).convert_to(QQ)
    return [{j: value for j, value in enumerate(vector) if value} for vector in matrix.nullspace().to_list()]


def dense_rank(rows: Sequence[Sequence[object]]) -> int:
    if not rows:
        return 0
    width = len(rows[0])
    return sparse_rank([{j: value for j, value in enumerate(row) if value} for row in rows], width)
