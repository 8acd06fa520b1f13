"""
Dense linear algebra over GF(2).

Matrices are immutable 0/1 numpy arrays. Row reduction uses XOR row
operations; pivots are taken left to right so every result is deterministic.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np


class MatrixFormatError(ValueError):
    """Raised when matrix text cannot be parsed."""

    pass


class IncomparableMatricesError(ValueError):
    """Raised when row spaces of matrices with different widths are compared."""

    pass


@dataclass(frozen=True, eq=False)
class BitMatrix:
    """
    Dense 0/1 matrix over GF(2).

    The entry grid is stored as a read-only uint8 array; equality and hashing
    are by shape and entries.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.entries, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError(f"BitMatrix needs a 2-dimensional grid, got {arr.ndim} dimensions")
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValueError("BitMatrix entries must be 0 or 1")
        arr = arr.astype(np.uint8)
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], col_count: int | None = None) -> "BitMatrix":
        """Build a matrix from row lists; `col_count` is needed when there are no rows."""
        if not rows:
            return cls(np.zeros((0, col_count or 0), dtype=np.uint8))
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise ValueError(f"Ragged rows: widths {sorted(widths)}")
        if col_count is not None and widths != {col_count}:
            raise ValueError(f"Rows have width {widths.pop()}, expected {col_count}")
        return cls(np.array(rows, dtype=np.uint8))

    @classmethod
    def identity(cls, size: int) -> "BitMatrix":
        return cls(np.eye(size, dtype=np.uint8))

    @classmethod
    def from_column_masks(cls, masks: Sequence[int], row_count: int) -> "BitMatrix":
        """Build a matrix whose column j has bit i of masks[j] in row i."""
        arr = np.zeros((row_count, len(masks)), dtype=np.uint8)
        for j, mask in enumerate(masks):
            for i in range(row_count):
                if mask >> i & 1:
                    arr[i, j] = 1
        return cls(arr)

    @property
    def row_count(self) -> int:
        return int(self.entries.shape[0])

    @property
    def col_count(self) -> int:
        return int(self.entries.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return self.row_count, self.col_count

    def column_masks(self) -> tuple[int, ...]:
        """Columns as integers, bit i set when row i holds a 1."""
        weights = [1 << i for i in range(self.row_count)]
        return tuple(
            sum(w for w, bit in zip(weights, self.entries[:, j]) if bit)
            for j in range(self.col_count)
        )

    def to_lists(self) -> list[list[int]]:
        return [[int(b) for b in row] for row in self.entries]

    def columns(self, indices: Sequence[int]) -> "BitMatrix":
        """Submatrix of the given columns, in the given order."""
        return BitMatrix(self.entries[:, list(indices)].reshape(self.row_count, len(indices)))

    def stack(self, other: "BitMatrix") -> "BitMatrix":
        """Rows of self followed by rows of other."""
        if self.col_count != other.col_count:
            raise IncomparableMatricesError(
                f"Cannot stack {self.col_count}-column and {other.col_count}-column matrices"
            )
        return BitMatrix(np.vstack([self.entries, other.entries]))

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.entries.T)

    def format(self, labels: Sequence[str] | None = None) -> str:
        """
        Render in the matrix text format.

        First line "ROWS COLS", then one line of 0/1 characters per row, then an
        optional "labels:" line naming the columns.
        """
        lines = [f"{self.row_count} {self.col_count}"]
        lines.extend("".join(str(int(b)) for b in row) for row in self.entries)
        if labels is not None:
            lines.append("labels: " + " ".join(labels))
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> tuple["BitMatrix", list[str] | None]:
        """
        Parse the matrix text format.

        Returns:
            (matrix, labels) where labels is None when no labels line is present

        Raises:
            MatrixFormatError: If the header, a row or the labels line is malformed
        """
        lines = [line.strip() for line in text.strip().splitlines()]
        if not lines:
            raise MatrixFormatError("Empty matrix text")
        header = lines[0].split()
        if len(header) != 2 or not all(tok.isdigit() for tok in header):
            raise MatrixFormatError(f"Header must be 'ROWS COLS', got {lines[0]!r}")
        row_count, col_count = int(header[0]), int(header[1])

        body = lines[1 : 1 + row_count]
        if len(body) != row_count:
            raise MatrixFormatError(f"Expected {row_count} rows, found {len(body)}")
        rows = []
        for idx, line in enumerate(body):
            if len(line) != col_count or set(line) - {"0", "1"}:
                raise MatrixFormatError(
                    f"Row {idx} must be {col_count} characters from {{0,1}}, got {line!r}"
                )
            rows.append([int(ch) for ch in line])

        labels = None
        rest = [line for line in lines[1 + row_count :] if line]
        if rest:
            if len(rest) > 1 or not rest[0].startswith("labels:"):
                raise MatrixFormatError(f"Unexpected trailing lines: {rest}")
            labels = rest[0][len("labels:") :].split()
            if len(labels) != col_count:
                raise MatrixFormatError(f"Expected {col_count} labels, got {len(labels)}")

        return cls.from_rows(rows, col_count=col_count), labels

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.entries, other.entries))

    def __hash__(self) -> int:
        return hash((self.shape, self.entries.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.row_count}x{self.col_count})"


@dataclass(frozen=True)
class StandardForm:
    """
    Standard representation [I_r | D] with its column permutation.

    Attributes:
        matrix: The permuted matrix; its first r columns are the identity
        basis_columns: Original indices of the identity columns, in row order
        column_order: column_order[j] is the original index of standard column j
    """

    matrix: BitMatrix
    basis_columns: tuple[int, ...]
    column_order: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.basis_columns)

    def in_original_order(self) -> BitMatrix:
        """Undo the column permutation."""
        inverse = [0] * len(self.column_order)
        for std_col, orig_col in enumerate(self.column_order):
            inverse[orig_col] = std_col
        return self.matrix.columns(inverse)


def _row_reduce(
    entries: np.ndarray, priority: Iterable[int] | None = None
) -> tuple[np.ndarray, list[int]]:
    """
    Gauss-Jordan elimination over GF(2).

    Columns are scanned in `priority` order (left to right by default); each
    pivot is the first row at or below the next unused row with a 1.

    Returns:
        (reduced, pivots): reduced has its nonzero rows first; pivots[i] is the
        column of the leading 1 placed in row i
    """
    work = (np.array(entries, dtype=np.uint8) % 2).copy()
    m, n = work.shape
    order = range(n) if priority is None else priority
    pivots: list[int] = []
    row = 0
    for col in order:
        if row == m:
            break
        candidates = np.nonzero(work[row:, col])[0]
        if candidates.size == 0:
            continue
        found = row + int(candidates[0])
        if found != row:
            work[[row, found]] = work[[found, row]]
        mask = work[:, col].astype(bool)
        mask[row] = False
        work[mask] ^= work[row]
        pivots.append(col)
        row += 1
    return work, pivots


def rank(m: BitMatrix) -> int:
    """GF(2) rank."""
    _, pivots = _row_reduce(m.entries)
    return len(pivots)


def reduced_rows(m: BitMatrix, priority: Iterable[int] | None = None) -> tuple[BitMatrix, list[int]]:
    """
    Reduced row echelon form with zero rows dropped, columns in original order.

    Args:
        m: Input matrix
        priority: Optional column scan order for pivot selection

    Returns:
        (matrix, pivots) with pivots[i] the identity column of row i
    """
    work, pivots = _row_reduce(m.entries, priority)
    return BitMatrix(work[: len(pivots)].reshape(len(pivots), m.col_count)), pivots


def standard_form(m: BitMatrix, priority: Iterable[int] | None = None) -> StandardForm:
    """
    Standard form [I_r | D] of a matrix.

    Zero rows are dropped and zero columns stay in D. Passing `priority`
    scans columns in that order, which selects a different basis for the
    identity part; the row space never changes.
    """
    reduced, pivots = reduced_rows(m, priority)
    pivot_set = set(pivots)
    column_order = tuple(pivots) + tuple(c for c in range(m.col_count) if c not in pivot_set)
    return StandardForm(
        matrix=reduced.columns(column_order),
        basis_columns=tuple(pivots),
        column_order=column_order,
    )


def row_space_equal(a: BitMatrix, b: BitMatrix) -> bool:
    """
    Check whether two matrices have the same GF(2) row space.

    Raises:
        IncomparableMatricesError: If the column counts differ
    """
    if a.col_count != b.col_count:
        raise IncomparableMatricesError(
            f"Row spaces of {a.col_count}-column and {b.col_count}-column matrices are incomparable"
        )
    rank_a = rank(a)
    return rank_a == rank(b) == rank(a.stack(b))
