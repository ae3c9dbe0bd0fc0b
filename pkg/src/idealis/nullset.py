"""Measure-zero sections: guarded stage evaluation and the cover
compression encoder.

A parameter's row n names clopen sets of measure below 2^-n through the
master enumeration.  A budget guard re-reads every row left to right and
blanks any candidate that would push the accepted total to 2^-n or
beyond, so every section has measure below 2^-n at every stage no matter
what the parameter says; the encoder's output is arranged so the guard
never fires on it.

The encoder flattens a family of covers row by row, with a few empty
slots inserted before each row so that every cut point lands ahead of the
next cover; the suffix of the flattened sequence kept by row n of the
parameter then still contains a whole cover, which is what makes every
covered point evaluate as a member.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InsufficientPrefix, InvariantViolated
from .space import BitWord, Clopen, Dyadic, Tri, pair
from .enumerations import clopen_enum, clopen_rank

# Empty slots placed before each cover row during flattening.  Four is
# enough to keep every cut point at or before the start of the row whose
# tail sum drove it; see the encoder invariants in the test suite.
_PAD = 4


@dataclass(frozen=True)
class CoverFamily:
    """Per-n clopen covers with exact tail bound sum < 2^-(n+1)."""

    covers: tuple

    def __post_init__(self):
        for n, pieces in enumerate(self.covers):
            total = Dyadic.zero()
            for c in pieces:
                total = total + c.measure()
            if not total < Dyadic.half_power(n + 1):
                raise InvariantViolated(
                    f"cover {n} has total measure {total.num}/2^{total.exp},"
                    f" not below 2^-{n + 1}"
                )

    @property
    def depth(self) -> int:
        return len(self.covers)

    def to_json(self) -> dict:
        return {"covers": [[c.to_json() for c in row] for row in self.covers]}

    @staticmethod
    def from_json(doc: dict) -> "CoverFamily":
        return CoverFamily(
            tuple(
                tuple(Clopen.from_json(c) for c in row) for row in doc["covers"]
            )
        )


@dataclass(frozen=True)
class NullParam:
    """Matrix-coded parameter plus per-row stage witnesses."""

    prefix: tuple
    witness: tuple

    def cell(self, n: int, k: int) -> int:
        idx = pair(n, k)
        if idx >= len(self.prefix):
            raise InsufficientPrefix(idx + 1)
        return self.prefix[idx]

    def to_json(self) -> dict:
        return {"prefix": list(self.prefix), "witness": list(self.witness)}

    @staticmethod
    def from_json(doc: dict) -> "NullParam":
        return NullParam(
            tuple(int(v) for v in doc["prefix"]),
            tuple(int(v) for v in doc.get("witness", [])),
        )


def _guarded_scan(f: NullParam, n: int, k_hi: int):
    """Terms k = n+1 .. k_hi after guarding, plus the accepted total."""
    budget = Dyadic.half_power(n)
    total = Dyadic.zero()
    terms = []
    for k in range(n + 1, k_hi + 1):
        cand = clopen_enum(n, f.cell(n, k))
        if total + cand.measure() < budget:
            total = total + cand.measure()
            terms.append(cand)
        else:
            terms.append(Clopen.empty())
    return terms, total


def null_term(f: NullParam, n: int, k: int) -> Clopen:
    """The k-th guarded term of row n."""
    if k <= n:
        raise InsufficientPrefix(n + 1, what="term index")
    terms, _ = _guarded_scan(f, n, k)
    return terms[-1]


def null_stage(f: NullParam, n: int, k_hi: int) -> Clopen:
    """Union of the guarded terms of row n up to k_hi; measure < 2^-n."""
    if k_hi <= n:
        raise InsufficientPrefix(n + 1, what="stage bound")
    terms, _ = _guarded_scan(f, n, k_hi)
    out = Clopen.empty()
    for t in terms:
        out = out.union(t)
    return out


def null_member(f: NullParam, z: BitWord, n_levels: int) -> Tri:
    """Membership of the cylinder of `z` at stage `n_levels`.

    HOLDS when every row the parameter carries a witness for covers the
    cylinder at its witnessed bound -- a claim about the whole stored
    parameter, so it cannot be revoked at a deeper stage.  FAILS when
    some row up to `n_levels` misses the cylinder entirely and the guard
    budget left cannot pay for covering it, so no continuation of that
    row's scan ever could.  Raising `n_levels` only resolves UNKNOWN.
    """
    if len(f.witness) <= n_levels:
        raise InsufficientPrefix(n_levels + 1, what="witness list")
    cyl = Clopen.cylinder(z)
    cyl_measure = cyl.measure()
    scans = []
    for n, k_hi in enumerate(f.witness):
        if k_hi <= n:
            raise InsufficientPrefix(n + 1, what=f"witness bound for row {n}")
        terms, total = _guarded_scan(f, n, k_hi)
        stage = Clopen.empty()
        for t in terms:
            stage = stage.union(t)
        scans.append((stage, total))
    if all(cyl.subset(stage) for stage, _ in scans):
        return Tri.HOLDS
    for n in range(n_levels + 1):
        stage, total = scans[n]
        remaining = Dyadic.half_power(n) - total
        if not cyl.meets(stage) and remaining <= cyl_measure:
            return Tri.FAILS
    return Tri.UNKNOWN


@dataclass(frozen=True)
class NullEncoding:
    """Encoder output plus the flattening data the laws are stated over."""

    param: NullParam
    flat: tuple          # the flattened cover pieces, pads included
    cuts: tuple          # cut points a_0 .. a_(depth)
    blocks: tuple        # unions of consecutive pieces between cut points


def _flatten(family: CoverFamily):
    flat: list[Clopen] = []
    starts = []
    for pieces in family.covers:
        flat.extend([Clopen.empty()] * _PAD)
        starts.append(len(flat))
        flat.extend(pieces)
    return flat, starts


def _cut_points(flat: Sequence[Clopen], depth: int) -> list[int]:
    suffix = [Dyadic.zero()] * (len(flat) + 1)
    for i in range(len(flat) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + flat[i].measure()

    def tail(k: int) -> Dyadic:
        return suffix[k + 1] if k + 1 <= len(flat) else Dyadic.zero()

    cuts = [0]
    for m in range(1, depth + 1):
        k = cuts[-1] + 1
        while not tail(k) < Dyadic.half_power(m):
            k += 1
        cuts.append(k + 1)
    return cuts


def null_encode_detail(family: CoverFamily) -> NullEncoding:
    """Full encoding: flatten, cut, rank every kept piece, pack the matrix."""
    depth = family.depth
    if depth == 0:
        return NullEncoding(NullParam((), ()), (), (0,), ())

    flat, _ = _flatten(family)
    cuts = _cut_points(flat, depth)

    blocks = []
    for m in range(depth):
        hi = cuts[m + 1] if m + 1 < len(cuts) else len(flat)
        block = Clopen.empty()
        for j in range(cuts[m], min(hi, len(flat))):
            block = block.union(flat[j])
        blocks.append(block)

    last_nonempty = max(
        (i for i, c in enumerate(flat) if not c.is_empty), default=-1
    )
    witness = tuple(max(last_nonempty + 1, n + 1) for n in range(depth))

    cells: dict[int, int] = {}
    for n in range(depth):
        lo = cuts[n + 1]
        for k in range(lo, witness[n] + 1):
            if k < len(flat) and not flat[k].is_empty:
                cells[pair(n, k)] = clopen_rank(n, flat[k])
    size = 1 + max(
        [pair(n, witness[n]) for n in range(depth)] + list(cells), default=-1
    )
    prefix = [0] * size
    for idx, v in cells.items():
        prefix[idx] = v
    param = NullParam(tuple(prefix), witness)
    return NullEncoding(param, tuple(flat), tuple(cuts), tuple(blocks))


def null_encode(family: CoverFamily) -> NullParam:
    return null_encode_detail(family).param
