"""Stage evaluation for the countable-set construction: a parameter packs
finitely many Baire-space points as the rows of a matrix-coded prefix, and
membership of a query point means agreement with some row.

Parameters are finitely supported: cells beyond the stored prefix read as
zero, so a parameter always denotes one definite element of Baire space
and its section always contains the all-zero sequence.  Query points stay
honest prefixes of unknown points, which is what the three-valued answers
are about.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InsufficientPrefix
from .space import BairePrefix, Tri, pair


@dataclass(frozen=True)
class CountableParam:
    prefix: tuple
    rows: int

    def cell(self, n: int, k: int) -> int:
        idx = pair(n, k)
        return self.prefix[idx] if idx < len(self.prefix) else 0

    def to_json(self) -> dict:
        return {"prefix": list(self.prefix), "rows": self.rows}

    @staticmethod
    def from_json(doc: dict) -> "CountableParam":
        return CountableParam(tuple(int(v) for v in doc["prefix"]), int(doc["rows"]))


def countable_encode(points: Sequence[BairePrefix], depth: int) -> CountableParam:
    """Pack `points` (each cut to `depth` entries) into one parameter."""
    for p in points:
        if len(p) < depth:
            raise InsufficientPrefix(depth, what="point")
    if not points or depth == 0:
        return CountableParam((), len(points))
    size = 1 + max(pair(n, m) for n in range(len(points)) for m in range(depth))
    cells = [0] * size
    for n, p in enumerate(points):
        for m in range(depth):
            cells[pair(n, m)] = p[m]
    return CountableParam(tuple(cells), len(points))


def _support_rows(prefix_len: int) -> int:
    # rows whose first cell lies inside the stored prefix; all later rows
    # are identically zero
    n = 0
    while pair(n, 0) < prefix_len:
        n += 1
    return n


def countable_member(y: CountableParam, x: BairePrefix, rows: int, depth: int) -> Tri:
    """Three-valued membership of the point with prefix `x` in the section.

    HOLDS needs a row agreeing with all of `x`; FAILS needs every row of
    the parameter -- including the all-zero tail rows -- to disagree with
    `x` inside the window [0, depth).  Extending `rows` or `depth` can
    only resolve UNKNOWN.
    """
    if depth > len(x):
        raise InsufficientPrefix(depth, what="query point")

    def row_agrees_fully(n: int) -> bool:
        return all(y.cell(n, m) == x[m] for m in range(len(x)))

    def row_refuted(n: int) -> bool:
        return any(y.cell(n, m) != x[m] for m in range(depth))

    if any(row_agrees_fully(n) for n in range(rows)):
        return Tri.HOLDS

    considered = max(rows, y.rows, _support_rows(len(y.prefix)))
    zero_row_refuted = any(x[m] != 0 for m in range(depth))
    if zero_row_refuted and all(row_refuted(n) for n in range(considered)):
        return Tri.FAILS
    return Tri.UNKNOWN
