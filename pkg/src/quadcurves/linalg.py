"""Exact kernels of rational matrices via fraction-free (Bareiss) elimination."""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import List, Sequence, Tuple


def _integer_row(row: Sequence[Fraction]) -> List[int]:
    den = 1
    for v in row:
        den = lcm(den, Fraction(v).denominator)
    return [int(Fraction(v) * den) for v in row]


def echelon_fraction_free(rows: Sequence[Sequence], ncols: int) -> Tuple[List[List[int]], List[int]]:
    """Row echelon form over the integers by Bareiss one-step elimination.

    Each row is first scaled to integers.  Returns the echelon rows (only the
    ``rank`` nonzero ones) and the pivot column of each.
    """
    M = [_integer_row(r) for r in rows]
    for r in M:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
    nrows = len(M)
    prev = 1
    r = 0
    pivots: List[int] = []
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        for i in range(r + 1, nrows):
            mic = M[i][c]
            row_i = M[i]
            row_r = M[r]
            for j in range(c + 1, ncols):
                num = piv * row_i[j] - mic * row_r[j]
                q, rem = divmod(num, prev)
                if rem:
                    raise ArithmeticError("Bareiss division not exact")
                row_i[j] = q
            row_i[c] = 0
            # entries left of c are already zero in rows below r
        prev = piv
        pivots.append(c)
        r += 1
    return M[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[List[Fraction]]:
    """Basis of ``{v : A v = 0}``.

    One vector per free column ``f``: ``v[f] = 1``, every other free entry 0.
    The basis is therefore canonical for a given column order.
    """
    if not rows:
        return [[Fraction(int(i == f)) for i in range(ncols)] for f in range(ncols)]
    E, pivots = echelon_fraction_free(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for k in range(len(pivots) - 1, -1, -1):
            c = pivots[k]
            row = E[k]
            s = sum((row[j] * v[j] for j in range(c + 1, ncols) if row[j] and v[j]), Fraction(0))
            v[c] = -s / row[c]
        basis.append(v)
    return basis


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    if not rows:
        return 0
    return len(echelon_fraction_free(rows, ncols)[1])
