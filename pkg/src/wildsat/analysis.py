"""Model-set analytics over row lists: counting, cardinality profiles,
equivalence testing."""

from __future__ import annotations

from dataclasses import dataclass

from .rows import (
    ONE,
    Row012,
    Row012e,
    RowList,
    card_purified,
    intersection_card_ie,
    pos_slot,
    purify,
    slot_is_positive,
)


@dataclass(frozen=True)
class CountPolynomial:
    """coefficients[k] = number of models of cardinality k (length w+1)."""

    coefficients: tuple[int, ...]

    def count(self, k: int) -> int:
        return self.coefficients[k]

    def total(self) -> int:
        return sum(self.coefficients)

    def __str__(self) -> str:
        return "\n".join(f"{k} {c}" for k, c in enumerate(self.coefficients))


@dataclass(frozen=True)
class EquivalenceResult:
    equal: bool
    witness: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.equal


def _purified(rows: RowList) -> list[tuple[int, Row012e]]:
    """Purified e-row pieces tagged with their originating row index."""
    out = []
    for i, row in enumerate(rows.rows):
        if isinstance(row, Row012):
            row = Row012e.from_row012(row)
        for piece in purify(row):
            out.append((i, piece))
    return out


def count_models(rows: RowList) -> int:
    """Exact model count: the sum of row cardinalities."""
    return sum(card_purified(p) for _, p in _purified(rows))


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _binomials(n: int) -> list[int]:
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row


def _row_polynomial(piece: Row012e) -> list[int]:
    """Generating polynomial of a purified row: coefficient of x^k counts the
    members with k ones.

    Fixed-one variables contribute a factor x, free variables (1+x).  A
    bubble contributes its full slot-assignment product minus the all-zero
    assignment; a positive slot at 1 adds an x, a negative slot at 0 does
    (the variable is then 1), so the subtracted term is x^(negative slots).
    """
    poly = [1]
    fixed_ones = sum(
        1 for v in range(1, piece.width + 1) if piece.slots[pos_slot(v)] == ONE
    )
    poly = _poly_mul(poly, [0] * fixed_ones + [1]) if fixed_ones else poly
    free = piece.free_count
    if free:
        poly = _poly_mul(poly, _binomials(free))
    for members in piece.bubbles:
        factor = _binomials(len(members))
        negs = sum(1 for s in members if not slot_is_positive(s))
        factor[negs] -= 1
        poly = _poly_mul(poly, factor)
    return poly


def count_by_cardinality(rows: RowList) -> CountPolynomial:
    """Model counts split by cardinality, summed over (purified) rows."""
    w = rows.width
    coeff = [0] * (w + 1)
    for _, piece in _purified(rows):
        for k, c in enumerate(_row_polynomial(piece)):
            coeff[k] += c
    return CountPolynomial(tuple(coeff))


def equivalent(rows_a: RowList, rows_b: RowList) -> EquivalenceResult:
    """Do two disjoint row lists describe the same model set?

    Counts are compared first (fast reject).  Then every row of the first
    list must spend its whole cardinality inside the second list, checked by
    inclusion-exclusion intersections; together with equal totals this forces
    set equality.  On failure the witnessing row index (of the first list)
    is reported.
    """
    if rows_a.width != rows_b.width:
        raise ValueError("row lists have different widths")
    pa, pb = _purified(rows_a), _purified(rows_b)
    na = sum(card_purified(p) for _, p in pa)
    nb = sum(card_purified(p) for _, p in pb)
    if na != nb:
        return EquivalenceResult(False, None, f"model counts differ: {na} != {nb}")
    for i, piece in pa:
        inside = sum(intersection_card_ie(piece, q) for _, q in pb)
        if inside != card_purified(piece):
            return EquivalenceResult(
                False, i, f"row {i} has members outside the other list"
            )
    return EquivalenceResult(True, None, f"equal model sets of size {na}")
