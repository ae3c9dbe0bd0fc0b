"""Dense open sets, their countable intersections, and the complement view
that makes meager sets evaluable at a finite stage.

The open layer selects, for each basic open set, some nonempty basic
subset of it; because only nonempty subsets are ever selected, the union
meets every basic open set no matter what the parameter says, so every
section is dense-at-stage unconditionally.  Encoders pick those subsets
inside a given clopen target, which pins the stage union under the target
exactly.  The interval-partition predicate used by the combinatorial
meager base lives here too.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InsufficientPrefix, NotDense
from .space import BairePrefix, BitWord, Clopen, Tri, pair
from .enumerations import basic_open_cantor, kprime


@dataclass(frozen=True)
class IntervalPartition:
    """Consecutive intervals [a, b) covering an initial segment of omega."""

    intervals: tuple

    def __post_init__(self):
        start = 0
        for a, b in self.intervals:
            if a != start or b <= a:
                raise ValueError("intervals must be consecutive and nonempty")
            start = b

    @property
    def covered(self) -> int:
        return self.intervals[-1][1] if self.intervals else 0

    def to_json(self) -> dict:
        return {"intervals": [list(i) for i in self.intervals]}


def partition_from(y: BairePrefix) -> IntervalPartition:
    """Interval partition with widths y(n) + 1."""
    out = []
    a = 0
    for v in y:
        out.append((a, a + v + 1))
        a += v + 1
    return IntervalPartition(tuple(out))


def fxp_eval(x: BitWord, partition: IntervalPartition, z: BitWord, from_block: int) -> Tri:
    """Do x and z disagree on every complete block from `from_block` on?

    A block is complete when both prefixes cover it.  The answer is a
    claim about exactly this window: HOLDS when every complete block in
    range shows a disagreement, FAILS when some block agrees.
    """
    avail = min(len(x), len(z))
    in_range = [
        (a, b) for a, b in partition.intervals[from_block:] if b <= avail
    ]
    if not in_range:
        needed = (
            partition.intervals[from_block][1]
            if from_block < len(partition.intervals)
            else avail + 1
        )
        raise InsufficientPrefix(needed, what="block window")
    for a, b in in_range:
        if x[a:b] == z[a:b]:
            return Tri.FAILS
    return Tri.HOLDS


# -- dense open sections -----------------------------------------------------


@dataclass(frozen=True)
class DenseOpenParam:
    prefix: tuple

    def to_json(self) -> dict:
        return {"prefix": list(self.prefix)}

    @staticmethod
    def from_json(doc: dict) -> "DenseOpenParam":
        return DenseOpenParam(tuple(int(v) for v in doc["prefix"]))


def dense_section_stage(x: DenseOpenParam, n_max: int) -> Clopen:
    """Union of the selected nonempty basic subsets for 1 <= n <= n_max."""
    if len(x.prefix) <= n_max:
        raise InsufficientPrefix(n_max + 1)
    out = Clopen.empty()
    for n in range(1, n_max + 1):
        out = out.union(basic_open_cantor(kprime(n, x.prefix[n])))
    return out


def dense_open_encode(w: Clopen, n_max: int) -> DenseOpenParam:
    """Parameter whose stage union sits inside the dense clopen `w`.

    For each basic open set the least basic subset lying inside `w` is
    selected; NotDense reports the first basic set `w` misses.
    """
    for n in range(1, n_max + 1):
        if not basic_open_cantor(n).meets(w):
            raise NotDense(n)
    choices = [0]
    for n in range(1, n_max + 1):
        m = 0
        while not basic_open_cantor(kprime(n, m)).subset(w):
            m += 1
        choices.append(m)
    return DenseOpenParam(tuple(choices))


# -- meager sections ---------------------------------------------------------


@dataclass(frozen=True)
class MeagerParam:
    """Rows of dense-open parameters packed into one matrix-coded prefix.

    ``horizon`` is the stage depth the rows carry data for; evaluation
    never reads past it, so negative certificates issued against the
    horizon survive every admissible stage refinement.
    """

    prefix: tuple
    rows: int
    horizon: int

    def cell(self, r: int, n: int) -> int:
        idx = pair(r, n)
        if idx >= len(self.prefix):
            raise InsufficientPrefix(idx + 1)
        return self.prefix[idx]

    def row(self, r: int, n_max: int) -> DenseOpenParam:
        return DenseOpenParam(tuple(self.cell(r, n) for n in range(n_max + 1)))

    def to_json(self) -> dict:
        return {"prefix": list(self.prefix), "rows": self.rows, "horizon": self.horizon}

    @staticmethod
    def from_json(doc: dict) -> "MeagerParam":
        return MeagerParam(
            tuple(int(v) for v in doc["prefix"]),
            int(doc["rows"]),
            int(doc["horizon"]),
        )


def meager_encode(dense_opens: Sequence[Clopen], n_max: int) -> MeagerParam:
    """Pack one dense-open parameter per listed set."""
    rows = [dense_open_encode(w, n_max) for w in dense_opens]
    if not rows:
        return MeagerParam((), 0, n_max)
    size = 1 + max(pair(r, n) for r in range(len(rows)) for n in range(n_max + 1))
    cells = [0] * size
    for r, row in enumerate(rows):
        for n, v in enumerate(row.prefix):
            cells[pair(r, n)] = v
    return MeagerParam(tuple(cells), len(rows), n_max)


def meager_eval(p: MeagerParam, z: BitWord, rows: int, n_max: int) -> Tri:
    """Membership of the cylinder of `z` in the meager section at stage.

    HOLDS when `z` avoids some row's union over the parameter's whole
    horizon -- a certificate no later stage can revoke.  FAILS when `z`
    sits inside every row's union already at `n_max`.  Raising `n_max`
    within the horizon only ever resolves UNKNOWN.
    """
    if n_max > p.horizon:
        raise InsufficientPrefix(n_max, what="stage horizon")
    cyl = Clopen.cylinder(z)
    inside_all = True
    for r in range(rows):
        full_union = dense_section_stage(p.row(r, p.horizon), p.horizon)
        if not cyl.meets(full_union):
            return Tri.HOLDS
        stage_union = dense_section_stage(p.row(r, n_max), n_max)
        if not cyl.subset(stage_union):
            inside_all = False
    return Tri.FAILS if inside_all else Tri.UNKNOWN
