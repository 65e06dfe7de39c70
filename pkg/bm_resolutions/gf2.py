"""
Dense linear algebra over the two-element field.

Row reduction with XOR row operations on numpy ``uint8`` arrays.
"""

from __future__ import annotations

import numpy as np
import numpy.typing as npt

type BitMatrix = npt.NDArray[np.uint8]


def zeros(rows: int, cols: int) -> BitMatrix:
    """An all-zero matrix of the given shape."""
    return np.zeros((rows, cols), dtype=np.uint8)


def row_echelon(matrix: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """
    Row-reduce a binary matrix.

    Returns the echelon form and the pivot columns; the number of pivots is
    the rank.
    """
    reduced = (np.asarray(matrix, dtype=np.uint8) % 2).copy()
    m, n = reduced.shape
    pivots: list[int] = []
    pivot_row = 0
    for col in range(n):
        if pivot_row == m:
            break
        hits = np.flatnonzero(reduced[pivot_row:, col])
        if hits.size == 0:
            continue
        found = pivot_row + int(hits[0])
        if found != pivot_row:
            reduced[[pivot_row, found]] = reduced[[found, pivot_row]]
        below = np.flatnonzero(reduced[pivot_row + 1 :, col]) + pivot_row + 1
        if below.size:
            reduced[below] ^= reduced[pivot_row]
        pivots.append(col)
        pivot_row += 1
    return reduced, pivots


def rank(matrix: BitMatrix) -> int:
    """Rank over the two-element field; empty matrices have rank 0."""
    if matrix.size == 0:
        return 0
    return len(row_echelon(matrix)[1])


def matmul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Matrix product reduced mod 2."""
    return ((a.astype(np.int64) @ b.astype(np.int64)) % 2).astype(np.uint8)


def homology_dimensions(dims: list[int], boundaries: list[BitMatrix]) -> list[int]:
    """
    Homology of a chain complex ``C_0 <- C_1 <- ... <- C_k``.

    ``boundaries[i]`` maps ``C_i`` to ``C_{i-1}`` (shape ``dims[i-1] x dims[i]``);
    ``boundaries[0]`` is ignored.
    """
    ranks = [0] + [rank(boundaries[i]) for i in range(1, len(dims))] + [0]
    return [dims[i] - ranks[i] - ranks[i + 1] for i in range(len(dims))]


__all__ = ["BitMatrix", "zeros", "row_echelon", "rank", "matmul", "homology_dimensions"]
