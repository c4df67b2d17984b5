"""Reference values for the first six U1 numbers and a checker against them."""

from __future__ import annotations

from dataclasses import dataclass

from .constructor import Enumeration
from .gronwall import Factorization, scientific, to_decimal_string
from .primes import PrimeTable


@dataclass(frozen=True)
class Row:
    m: int
    k_m: int
    primorials: tuple[int, ...]  # T(p) factors
    powers: tuple[tuple[int, int], ...]  # extra prime powers
    value: str  # exact digits, or truncated scientific rendering
    g: str  # printed digits, truncated
    c: str


ROWS = (
    Row(1, 9, (23, 5), ((3, 1), (2, 3)), "160626866400", "1.7374", "1.37"),
    Row(2, 11, (31, 7), ((3, 1), (2, 4)), "2.02e15", "1.7368", "1.65"),
    Row(3, 16, (53, 7), ((3, 2), (2, 5)), "1.97e24", "1.7434", "1.51"),
    Row(4, 34, (139, 13, 5), ((3, 2), (2, 6)), "5.19e63", "1.7582", "1.70"),
    Row(5, 99, (523, 29, 7), ((5, 1), (3, 3), (2, 8)), "4.08e233", "1.770728", "1.67"),
    Row(6, 101, (547, 31, 7), ((5, 1), (3, 3), (2, 8)), "3.75e240", "1.770765", "1.78"),
)


def row_factorization(row: Row, table: PrimeTable) -> Factorization:
    d: dict[int, int] = {}
    for top in row.primorials:
        for p in table.primes:
            if p > top:
                break
            d[p] = d.get(p, 0) + 1
    for p, a in row.powers:
        d[p] = d.get(p, 0) + a
    return Factorization.from_dict(d)


def truncate(x: float, digits: int) -> str:
    """Decimal truncation to ``digits`` places ('1.7374..' notation)."""
    s = f"{x:.{digits + 6}f}"
    head, frac = s.split(".")
    return f"{head}.{frac[:digits]}"


def check_enumeration(enum: Enumeration, table: PrimeTable) -> list[str]:
    """Human-readable list of disagreements with the reference rows (empty when all match)."""
    problems = []
    recs = enum.records[: len(ROWS)]
    if [r.k_m for r in recs] != [row.k_m for row in ROWS]:
        problems.append(f"k_m sequence {[r.k_m for r in enum.records]} != {[row.k_m for row in ROWS]}")
        return problems
    for rec, row in zip(recs, ROWS):
        tag = f"row {row.m} (k={row.k_m})"
        if rec.v != row_factorization(row, table):
            problems.append(f"{tag}: factorization {rec.v}")
        value = to_decimal_string(rec.v) if "e" not in row.value else scientific(rec.v)
        if value != row.value:
            problems.append(f"{tag}: value {value} != {row.value}")
        g = truncate(rec.g, len(row.g.split(".")[1]))
        if g != row.g:
            problems.append(f"{tag}: G {rec.g!r} -> {g} != {row.g}")
        c = truncate(rec.c, 2)
        if c != row.c:
            problems.append(f"{tag}: C {rec.c!r} -> {c} != {row.c}")
        if rec.filter.verdict.value != "TRUE":
            problems.append(f"{tag}: filter verdict {rec.filter.verdict.value}")
    return problems
