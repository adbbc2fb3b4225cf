"""Exact Gaussian elimination over the rationals.

Small dense routines backing subalgebra closures and cohomology ranks.
Rows are lists of Fraction; everything stays exact, nothing here is
numeric in the floating-point sense.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

__all__ = ["rref", "rank_of", "reduce_against"]


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form.

    Returns (reduced nonzero rows, pivot column indices).  Rows come out
    sorted by pivot column with pivots normalized to 1 and eliminated
    from every other row, so the result is the unique canonical basis of
    the row span.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(top, len(work)):
            if work[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        work[top], work[pivot_row] = work[pivot_row], work[top]
        lead = work[top][col]
        if lead != 1:
            work[top] = [x / lead for x in work[top]]
        for r in range(len(work)):
            if r != top and work[r][col]:
                factor = work[r][col]
                row_top = work[top]
                work[r] = [x - factor * y for x, y in zip(work[r], row_top)]
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return work[:top], pivots


def rank_of(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of the row span."""
    return len(rref(rows)[0])


def reduce_against(
    basis: Sequence[Sequence[Fraction]], pivots: Sequence[int], vec: Sequence[Fraction]
) -> list[Fraction]:
    """Residue of vec after eliminating the pivots of an rref basis.

    A zero residue means vec lies in the span.
    """
    out = list(vec)
    for row, col in zip(basis, pivots):
        factor = out[col]
        if factor:
            out = [x - factor * y for x, y in zip(out, row)]
    return out
