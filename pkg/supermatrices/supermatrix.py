from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

from core.exceptions import FormatError


@dataclass(frozen=True)
class SuperFormat:
    """Row format r0|r1 by column format c0|c1.

    ``row_shift``/``col_shift`` carry the parity twist of the spaces; the
    parity of row i is its block parity plus the shift.
    """

    rows: Tuple[int, int]
    cols: Tuple[int, int]
    row_shift: int = 0
    col_shift: int = 0

    def __post_init__(self):
        if min(self.rows + self.cols) < 0:
            raise FormatError("Super-format parts must be nonnegative.")

    @property
    def shape(self) -> Tuple[int, int]:
        return sum(self.rows), sum(self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def row_block(self, i: int) -> int:
        return 0 if i < self.rows[0] else 1

    def col_block(self, j: int) -> int:
        return 0 if j < self.cols[0] else 1

    def entry_parity(self, i: int, j: int) -> int:
        return (self.row_block(i) + self.row_shift + self.col_block(j) + self.col_shift) % 2

    def transposed(self) -> "SuperFormat":
        return SuperFormat(self.cols, self.rows, self.col_shift, self.row_shift)

    def __str__(self):
        return f"{self.rows[0]}|{self.rows[1]} x {self.cols[0]}|{self.cols[1]}"


@dataclass(frozen=True)
class SuperMatrix:
    """Homogeneous-format matrix over the polynomial ring or a Grassmann algebra.

    ``zero`` is the zero element of the entry ring; it fills empty products.
    """

    format: SuperFormat
    entries: Tuple[Tuple[object, ...], ...]
    zero: object

    def __post_init__(self):
        rows, cols = self.format.shape
        entries = tuple(tuple(row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != rows or any(len(row) != cols for row in entries):
            raise FormatError(f"Entries do not match the format {self.format}.")
        for i, row in enumerate(entries):
            for j, value in enumerate(row):
                if value and value.parity != self.format.entry_parity(i, j):
                    raise FormatError(f"Entry ({i + 1},{j + 1}) breaks the block parity pattern.")

    @classmethod
    def build(cls, fmt: SuperFormat, entries: Sequence[Sequence[object]], zero) -> "SuperMatrix":
        return cls(fmt, tuple(tuple(row) for row in entries), zero)

    @classmethod
    def identity(cls, fmt: SuperFormat, one, zero) -> "SuperMatrix":
        if not fmt.is_square:
            raise FormatError("Identity needs a square super-format.")
        size = fmt.shape[0]
        return cls(fmt, tuple(tuple(one if i == j else zero for j in range(size)) for i in range(size)), zero)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.format.shape

    def __getitem__(self, position: Tuple[int, int]):
        i, j = position
        return self.entries[i][j]

    def rows(self) -> List[List[object]]:
        return [list(row) for row in self.entries]

    def block(self, row_part: int, col_part: int) -> "SuperMatrix":
        r0, r1 = self.format.rows
        c0, c1 = self.format.cols
        row_range = range(0, r0) if row_part == 0 else range(r0, r0 + r1)
        col_range = range(0, c0) if col_part == 0 else range(c0, c0 + c1)
        fmt = SuperFormat(
            (r0, 0) if row_part == 0 else (0, r1),
            (c0, 0) if col_part == 0 else (0, c1),
            self.format.row_shift,
            self.format.col_shift,
        )
        return SuperMatrix(fmt, tuple(tuple(self.entries[i][j] for j in col_range) for i in row_range), self.zero)

    def map(self, fn: Callable[[object], object], zero=None) -> "SuperMatrix":
        return SuperMatrix(
            self.format,
            tuple(tuple(fn(value) for value in row) for row in self.entries),
            self.zero if zero is None else zero,
        )

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        if self.format != other.format:
            raise FormatError("Cannot add supermatrices of different formats.")
        return SuperMatrix(
            self.format,
            tuple(tuple(a + b for a, b in zip(left, right)) for left, right in zip(self.entries, other.entries)),
            self.zero,
        )

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        return self + other.scale(-1)

    def scale(self, scalar) -> "SuperMatrix":
        return self.map(lambda value: value * scalar)

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        if self.format.cols != other.format.rows or self.format.col_shift != other.format.row_shift:
            raise FormatError(f"Cannot multiply {self.format} by {other.format}.")
        fmt = SuperFormat(self.format.rows, other.format.cols, self.format.row_shift, other.format.col_shift)
        return SuperMatrix(fmt, multiply_entries(self.entries, other.entries, self.zero), self.zero)

    __mul__ = __matmul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return self.format == other.format and self.entries == other.entries

    def __hash__(self):
        return hash((self.format, self.entries))

    def __str__(self):
        return "\n".join("[" + ", ".join(str(value) for value in row) + "]" for row in self.entries)


def multiply_entries(left, right, zero) -> Tuple[Tuple[object, ...], ...]:
    inner = len(right)
    width = len(right[0]) if right else 0
    product = []
    for row in left:
        out = []
        for j in range(width):
            total = zero
            for k in range(inner):
                a = row[k]
                if a:
                    b = right[k][j]
                    if b:
                        total = total + a * b
            out.append(total)
        product.append(tuple(out))
    return tuple(product)
