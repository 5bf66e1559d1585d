"""Validators for the structured game classes used along the pipeline.

Every class is defined line by line: each row and each column of A and of
B^T must match one of a few allowed shapes. A line is summarised by the
multiset of its nonzero values and checked against those shapes.
"""

from __future__ import annotations

from collections import Counter
from enum import Enum
from fractions import Fraction

from .games import BimatrixGame, Matrix, transpose
from .report import ReportBuilder, ValidationReport


class GameClass(Enum):
    RESBI = "ResBi"
    STAGE1 = "Stage1"
    STAGE2 = "Stage2"
    STAGE3 = "Stage3"
    WINLOSE3SPARSE = "WinLose3Sparse"

    @classmethod
    def parse(cls, tag: str) -> "GameClass":
        key = tag.replace("-", "").replace("_", "").lower()
        for c in cls:
            if c.value.lower() == key:
                return c
        raise ValueError(f"unknown game class {tag!r}")


ONE, TWO, FOUR, EIGHT = Fraction(1), Fraction(2), Fraction(4), Fraction(8)

# Clause texts, reused by tests and by error messages.
RESBI_COL = "column must have one or two 1s, or one 8 and at most two entries from {1,2}"
RESBI_ROW = "row must have at most three entries from {1,2}, or exactly two 8s"
STAGE1_COL = "column must have at most three entries from {1,2} with at most one 2, or a single 4 and at most three 1s"
STAGE1_ROW = "row must have at most three 1s, or a single 2 and at most one 1, or exactly two 4s"
STAGE2_COL = "column must have at most four entries from {1,2} with at most one 2"
STAGE2_ROW = "row must have at most three 1s, or a single 2 and at most one 1, or exactly two 2s"
STAGE2_PAIR = "the two 2s of a row must each share a column with exactly one 1"
STAGE3_ROW = "row must have at most three 1s, or a single 2 and at most one 1"
WINLOSE_VALUES = "entries must lie in {0,1}"
WINLOSE_SPARSE = "at most three nonzero entries per line"
SQUARE = "ResBi games are square"


def _nonzero(line) -> Counter:
    return Counter(v for v in line if v != 0)


def _only(c: Counter, allowed: set) -> bool:
    return set(c) <= allowed


def _small_rows(c: Counter) -> bool:
    # at most three 1s, or a single 2 plus at most one 1
    if _only(c, {ONE}) and c[ONE] <= 3:
        return True
    return _only(c, {ONE, TWO}) and c[TWO] == 1 and c[ONE] <= 1


def resbi_col(c: Counter) -> bool:
    if _only(c, {ONE}) and 1 <= c[ONE] <= 2:
        return True
    return _only(c, {ONE, TWO, EIGHT}) and c[EIGHT] == 1 and c[ONE] + c[TWO] <= 2


def resbi_row(c: Counter) -> bool:
    if _only(c, {ONE, TWO}) and c[ONE] + c[TWO] <= 3:
        return True
    return _only(c, {EIGHT}) and c[EIGHT] == 2


def stage1_col(c: Counter) -> bool:
    if _only(c, {ONE, TWO}) and c[ONE] + c[TWO] <= 3 and c[TWO] <= 1:
        return True
    return _only(c, {ONE, FOUR}) and c[FOUR] == 1 and c[ONE] <= 3


def stage1_row(c: Counter) -> bool:
    return _small_rows(c) or (_only(c, {FOUR}) and c[FOUR] == 2)


def stage2_col(c: Counter) -> bool:
    return _only(c, {ONE, TWO}) and c[ONE] + c[TWO] <= 4 and c[TWO] <= 1


def stage2_row(c: Counter) -> bool:
    return _small_rows(c) or (_only(c, {TWO}) and c[TWO] == 2)


def stage3_row(c: Counter) -> bool:
    return _small_rows(c)


def winlose_line(c: Counter) -> bool:
    return _only(c, {ONE}) and c[ONE] <= 3


_RULES = {
    GameClass.RESBI: (resbi_col, RESBI_COL, resbi_row, RESBI_ROW),
    GameClass.STAGE1: (stage1_col, STAGE1_COL, stage1_row, STAGE1_ROW),
    GameClass.STAGE2: (stage2_col, STAGE2_COL, stage2_row, STAGE2_ROW),
    GameClass.STAGE3: (stage2_col, STAGE2_COL, stage3_row, STAGE3_ROW),
}


def _check_matrix(M: Matrix, cls: GameClass, name: str, rb: ReportBuilder) -> None:
    cols = transpose(M)
    if cls is GameClass.WINLOSE3SPARSE:
        for i, row in enumerate(M):
            for j, v in enumerate(row):
                if v not in (0, 1):
                    rb.add(f"{name} entry", (i, j), WINLOSE_VALUES)
        for i, row in enumerate(M):
            if sum(1 for v in row if v) > 3:
                rb.add(f"{name} row", i, WINLOSE_SPARSE)
        for j, col in enumerate(cols):
            if sum(1 for v in col if v) > 3:
                rb.add(f"{name} column", j, WINLOSE_SPARSE)
        return
    col_ok, col_clause, row_ok, row_clause = _RULES[cls]
    col_counts = [_nonzero(col) for col in cols]
    for j, c in enumerate(col_counts):
        if not col_ok(c):
            rb.add(f"{name} column", j, col_clause)
    for i, row in enumerate(M):
        c = _nonzero(row)
        if not row_ok(c):
            rb.add(f"{name} row", i, row_clause)
        elif cls is GameClass.STAGE2 and c == Counter({TWO: 2}):
            for j, v in enumerate(row):
                if v == TWO and col_counts[j][ONE] != 1:
                    rb.add(f"{name} row", i, STAGE2_PAIR + f" (column {j})")


def validate_matrix(M: Matrix, cls: GameClass, name: str = "A") -> ValidationReport:
    """Check one matrix in A-orientation (pass B^T for the column player)."""
    rb = ReportBuilder(f"{name} as {cls.value}")
    _check_matrix(M, cls, name, rb)
    return rb.build()


def validate_class(game: BimatrixGame, cls: GameClass | str) -> ValidationReport:
    if isinstance(cls, str):
        cls = GameClass.parse(cls)
    rb = ReportBuilder(f"{game.n_rows}x{game.n_cols} game as {cls.value}")
    if cls is GameClass.RESBI and game.n_rows != game.n_cols:
        rb.add("game", game.shape, SQUARE)
    _check_matrix(game.A, cls, "A", rb)
    _check_matrix(transpose(game.B), cls, "B^T", rb)
    return rb.build()
