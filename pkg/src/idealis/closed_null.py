"""Sections for the ideal generated by closed measure-zero sets, reached
through their complements: open sets of full measure, then countable
intersections of them.

A term at position n is a union of all but 2^(L-m) of the level-L
cylinders, where m grows at least linearly in n; the working level L is
lifted to max(requested level, m) whenever the requested level is too
shallow for the subset size to be an integer, so the term measure
1 - 2^-m survives arbitrary parameters and every stage union is full up
to an error of 2^-n_max unconditionally.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from math import comb

from .errors import InsufficientPrefix, InsufficientResolution
from .space import BitWord, Clopen, Tri, _require_level, pair
from .enumerations import kcomb_rank, kcomb_unrank


@dataclass(frozen=True)
class ETripleParam:
    """Three coordinate prefixes steering size, level and subset choice."""

    x0: tuple
    x1: tuple
    x2: tuple

    def __post_init__(self):
        if not len(self.x0) == len(self.x1) == len(self.x2):
            raise ValueError("coordinate prefixes must share a length")

    @property
    def positions(self) -> int:
        return len(self.x0)

    def packed(self) -> tuple:
        """Single prefix carrying the three coordinates as matrix rows."""
        if self.positions == 0:
            return ()
        size = 1 + max(pair(i, self.positions - 1) for i in range(3))
        cells = [0] * size
        for i, row in enumerate((self.x0, self.x1, self.x2)):
            for n, v in enumerate(row):
                cells[pair(i, n)] = v
        return tuple(cells)

    @staticmethod
    def from_packed(prefix: Sequence[int], positions: int) -> "ETripleParam":
        rows = [[], [], []]
        for i in range(3):
            for n in range(positions):
                idx = pair(i, n)
                if idx >= len(prefix):
                    raise InsufficientPrefix(idx + 1)
                rows[i].append(prefix[idx])
        return ETripleParam(tuple(rows[0]), tuple(rows[1]), tuple(rows[2]))

    def to_json(self) -> dict:
        return {"prefix": list(self.packed()), "positions": self.positions}

    @staticmethod
    def from_json(doc: dict) -> "ETripleParam":
        return ETripleParam.from_packed(
            [int(v) for v in doc["prefix"]], int(doc["positions"])
        )


def e_term(p: ETripleParam, n: int) -> Clopen:
    """Union of 2^L - 2^(L-m) level-L cylinders, m = x0(n) + n."""
    if n >= p.positions:
        raise InsufficientPrefix(n + 1)
    m = p.x0[n] + n
    lvl = max(p.x1[n], m)
    _require_level(lvl)
    size = (1 << lvl) - (1 << (lvl - m)) if m else 0
    if size == 0:
        return Clopen.empty()
    index = p.x2[n] % comb(1 << lvl, size)
    mask = 0
    for w in kcomb_unrank(1 << lvl, size, index):
        mask |= 1 << w
    return Clopen.from_mask(lvl, mask)


def e_open_stage(p: ETripleParam, n_max: int) -> Clopen:
    """Union of the first n_max + 1 terms; measure at least 1 - 2^-n_max."""
    if n_max >= p.positions:
        raise InsufficientPrefix(n_max + 1)
    out = Clopen.empty()
    for n in range(n_max + 1):
        out = out.union(e_term(p, n))
    return out


def _cylinders_inside(v: Clopen, level: int) -> list[int]:
    if level >= v.level:
        mask = v.mask_at(level)
        return [i for i in range(1 << level) if mask >> i & 1]
    # a shallow cylinder counts only when all its extensions are inside
    step = 1 << (v.level - level)
    full = (1 << step) - 1
    mask = v.mask
    out = []
    for i in range(1 << level):
        if (mask >> (i * step)) & full == full:
            out.append(i)
    return out


def e_open_encode(v: Clopen, m_max: int) -> ETripleParam:
    """Parameter whose terms all lie inside `v`.

    Position n needs v to contain at least 2^l - 2^(l-n) cylinders at
    some level l up to v's own; the least such level is recorded and the
    lexicographically least family of qualifying cylinders is chosen at
    the lifted level.
    """
    x0, x1, x2 = [], [], []
    for n in range(m_max + 1):
        chosen = None
        for lvl in range(v.level + 1):
            count = len(_cylinders_inside(v, lvl))
            need = (1 << lvl) - (1 << (lvl - n)) if lvl >= n else None
            if need is None:
                # the bound is fractional below level n; only a full row
                # of cylinders satisfies it
                if count == 1 << lvl:
                    chosen = lvl
                    break
            elif count >= need:
                chosen = lvl
                break
        if chosen is None:
            raise InsufficientResolution(n)
        lifted = max(chosen, n)
        size = (1 << lifted) - (1 << (lifted - n)) if n else 0
        inside = _cylinders_inside(v, lifted)
        subset = tuple(inside[:size])
        x0.append(0)
        x1.append(chosen)
        x2.append(kcomb_rank(1 << lifted, subset))
    return ETripleParam(tuple(x0), tuple(x1), tuple(x2))


@dataclass(frozen=True)
class EParam:
    """Rows of triple parameters packed into one prefix."""

    prefix: tuple
    rows: int
    horizon: int

    def row(self, r: int) -> ETripleParam:
        rows = [[], [], []]
        for i in range(3):
            for n in range(self.horizon + 1):
                idx = pair(r, pair(i, n))
                if idx >= len(self.prefix):
                    raise InsufficientPrefix(idx + 1)
                rows[i].append(self.prefix[idx])
        return ETripleParam(tuple(rows[0]), tuple(rows[1]), tuple(rows[2]))

    @staticmethod
    def from_triples(triples: Sequence[ETripleParam], horizon: int) -> "EParam":
        if not triples:
            return EParam((), 0, horizon)
        cells: dict[int, int] = {}
        for r, t in enumerate(triples):
            if t.positions <= horizon:
                raise InsufficientPrefix(horizon + 1, what="triple positions")
            for i, row in enumerate((t.x0, t.x1, t.x2)):
                for n in range(horizon + 1):
                    cells[pair(r, pair(i, n))] = row[n]
        size = 1 + max(cells)
        prefix = [0] * size
        for idx, v in cells.items():
            prefix[idx] = v
        return EParam(tuple(prefix), len(triples), horizon)

    def to_json(self) -> dict:
        return {"prefix": list(self.prefix), "rows": self.rows, "horizon": self.horizon}

    @staticmethod
    def from_json(doc: dict) -> "EParam":
        return EParam(
            tuple(int(v) for v in doc["prefix"]),
            int(doc["rows"]),
            int(doc["horizon"]),
        )


def e_fsigma_member(p: EParam, z: BitWord, rows: int, n_max: int) -> Tri:
    """Membership of the cylinder of `z` in the union of the rows'
    co-full complements at stage.

    HOLDS when `z` avoids some row's open union over the parameter's
    whole horizon; FAILS when `z` sits inside every row's union already
    at `n_max`.  Raising `n_max` within the horizon only resolves
    UNKNOWN.
    """
    if n_max > p.horizon:
        raise InsufficientPrefix(n_max, what="stage horizon")
    cyl = Clopen.cylinder(z)
    inside_all = True
    for r in range(rows):
        triple = p.row(r)
        full_union = e_open_stage(triple, p.horizon)
        if not cyl.meets(full_union):
            return Tri.HOLDS
        if not cyl.subset(e_open_stage(triple, n_max)):
            inside_all = False
    return Tri.FAILS if inside_all else Tri.UNKNOWN
