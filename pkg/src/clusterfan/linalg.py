"""Exact linear algebra over the rationals.

Everything funnels through fraction-free (Bareiss) elimination on
integer-scaled rows: each row of a rational matrix is multiplied by the lcm
of its denominators, which preserves rank and, for solving, the solution set
of the augmented system.  Intermediate entries stay integers; the exactness
of each Bareiss division step is asserted.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Rows = Sequence[Sequence[Fraction | int]]


class SingularMatrix(ValueError):
    """Raised when a square system has no unique solution."""


def _scaled_int_rows(rows: Rows) -> list[list[int]]:
    out = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        scale = lcm(*(f.denominator for f in fracs)) if fracs else 1
        out.append([int(f * scale) for f in fracs])
    return out


def _bareiss(rows: list[list[int]]) -> tuple[int, int, list[int]]:
    """In-place fraction-free elimination.

    Returns (rank, sign of row swaps, pivot column list).  After the call the
    matrix is upper echelon with integer entries.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    prev = 1
    sign = 1
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        pivot = next((r for r in range(row, m) if rows[r][col]), None)
        if pivot is None:
            continue
        if pivot != row:
            rows[row], rows[pivot] = rows[pivot], rows[row]
            sign = -sign
        for r in range(row + 1, m):
            for c in range(col + 1, n):
                value = rows[row][col] * rows[r][c] - rows[r][col] * rows[row][c]
                q, rem = divmod(value, prev)
                assert rem == 0, "Bareiss division must be exact"
                rows[r][c] = q
            rows[r][col] = 0
        prev = rows[row][col]
        pivots.append(col)
        row += 1
    return row, sign, pivots


def matrix_rank(rows: Rows) -> int:
    """Exact rank of a rational matrix."""
    work = _scaled_int_rows(rows)
    if not work or not work[0]:
        return 0
    rank, _, _ = _bareiss(work)
    return rank


def det(rows: Rows) -> Fraction:
    """Exact determinant of a square rational matrix."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    scales = []
    work = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        s = lcm(*(f.denominator for f in fracs))
        scales.append(s)
        work.append([int(f * s) for f in fracs])
    rank, sign, _ = _bareiss(work)
    if rank < n:
        return Fraction(0)
    value = Fraction(sign * work[n - 1][n - 1])
    for s in scales:
        value /= s
    return value


def solve_linear(matrix: Rows, rhs: Sequence[Fraction | int]) -> list[Fraction]:
    """Solve a square rational system exactly.

    Raises SingularMatrix when the matrix has no inverse.
    """
    n = len(matrix)
    if any(len(r) != n for r in matrix):
        raise ValueError("solve_linear needs a square matrix")
    if len(rhs) != n:
        raise ValueError(f"rhs length {len(rhs)} does not match matrix size {n}")
    augmented = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    work = _scaled_int_rows(augmented)
    rank, _, pivots = _bareiss(work)
    if rank < n or pivots != list(range(n)):
        raise SingularMatrix(f"matrix of rank {rank} < {n} has no unique solution")
    solution: list[Fraction] = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(work[i][n])
        for j in range(i + 1, n):
            acc -= work[i][j] * solution[j]
        solution[i] = acc / work[i][i]
    return solution


def leading_principal_minors(rows: Sequence[Sequence[int]]) -> list[Fraction]:
    """Determinants of the leading principal k-by-k submatrices, k = 1..n."""
    n = len(rows)
    return [det([row[: k + 1] for row in list(rows)[: k + 1]]) for k in range(n)]


def mat_vec(rows: Rows, vec: Sequence[Fraction | int]) -> list[Fraction]:
    return [
        sum((Fraction(a) * Fraction(x) for a, x in zip(row, vec)), Fraction(0))
        for row in rows
    ]


def transpose(rows: Rows) -> list[list]:
    return [list(col) for col in zip(*rows)]
