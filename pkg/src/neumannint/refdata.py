"""Embedded reference rows for the three reproduction tables.

Each row pairs the tabulated 15-digit value (mantissa and bracketed-style
exponent, transcribed verbatim) with an independently certified value from
the arbitrary-precision oracle, recomputed at two working precisions that
agree to better than 1e-30 relative.  Where the two disagree the row is
flagged and the certified value is authoritative:

flag = "ok"                the tabulated digits round-trip against the
                           certified value at all 15 digits
flag = "suspect_exponent"  the tabulated exponent (or a companion column's
                           exponent) is inconsistent; only the mantissa is
                           comparable
flag = "suspect_value"     the tabulated digits disagree with the certified
                           value beyond formatting; every such row sits in a
                           region where the straight double-precision series
                           diverges and the value is quadrature-only

`terms` is the tabulated series length, kept for the term-count checks;
`expect_divergent` records whether the large-order series is certified to
diverge at that row (a few divergent rows still tabulate a term count).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources


@dataclass(frozen=True)
class RefRow:
    """One reference-table row."""

    table: int
    mu: int
    mantissa: str
    exponent: int
    terms: int | None
    flag: str
    expect_divergent: bool
    certified: str
    alpha: str | None = None
    p: int | None = None
    alpha1: float | None = None
    alpha2: float | None = None

    @property
    def printed(self) -> float:
        """The tabulated value as a float (mantissa times 10^exponent)."""
        return float(self.mantissa) * 10.0 ** self.exponent

    @property
    def certified_float(self) -> float:
        return float(self.certified)

    def key(self) -> tuple:
        if self.table == 1:
            return (self.table, self.alpha, self.mu)
        return (self.table, self.p, self.alpha1, self.alpha2, self.mu)


@lru_cache(maxsize=1)
def _load() -> dict:
    path = resources.files("neumannint").joinpath("data/reference_tables.json")
    with path.open("r", encoding="utf-8") as f:
        return json.load(f)


@lru_cache(maxsize=3)
def load_table(which: int) -> tuple[RefRow, ...]:
    """The rows of reproduction table 1, 2, or 3, in tabulated order."""
    if which not in (1, 2, 3):
        raise ValueError(f"no such table: {which}")
    raw = _load()[f"table{which}"]
    return tuple(RefRow(table=which, **row) for row in raw)
