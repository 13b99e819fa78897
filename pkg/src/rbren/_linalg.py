"""Tiny exact linear algebra helpers over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def echelon_insert(basis: list[list[Fraction]], row: Sequence) -> bool:
    """Reduce ``row`` against an echelon basis; insert if independent.

    The basis rows are kept with a leading 1 at their pivot.  Returns True
    when the row was independent (basis grew).
    """
    row = [Fraction(x) for x in row]
    for b in basis:
        pivot = next(i for i, x in enumerate(b) if x)
        if row[pivot]:
            factor = row[pivot]
            row = [x - factor * y for x, y in zip(row, b)]
    for i, x in enumerate(row):
        if x:
            inv = Fraction(1) / x
            basis.append([v * inv for v in row])
            basis.sort(key=lambda b: next(i for i, v in enumerate(b) if v))
            return True
    return False


def rational_rank(rows: Iterable[Sequence]) -> int:
    basis: list[list[Fraction]] = []
    for row in rows:
        echelon_insert(basis, row)
    return len(basis)
