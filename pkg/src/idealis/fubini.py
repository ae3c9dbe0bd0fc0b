"""Product sections built from one factor parameter and one planar
parameter, glued by bit interleaving, plus a desk-scale section
diagnostic for planar bitsets.

A product section contains a pair when the first coordinate lands in the
factor section or the interleaved pair lands in the planar section; the
evaluator is the pointwise disjunction of the component evaluators, so
its three-valued answers inherit their refinement behaviour.  The
quantifier shape of the whole evaluator nests three deep, one level of
union over the two components' two-deep shapes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import LengthMismatch, LevelCapExceeded
from .space import BitWord, Dyadic, Tri, tri_or
from .meager import MeagerParam, meager_encode, meager_eval
from .nullset import NullParam, null_encode, null_member

NULL_OVER_MEAGER = "nm"
MEAGER_OVER_NULL = "mn"

_DIAGNOSTIC_CAP = 12


@dataclass(frozen=True)
class ProductPoint:
    y: BitWord
    z: BitWord

    def __post_init__(self):
        if len(self.y) != len(self.z):
            raise LengthMismatch("product point coordinates differ in length")


def interleave(p: ProductPoint) -> BitWord:
    """Alternate the two coordinates bit by bit."""
    return "".join(a + b for a, b in zip(p.y, p.z))


def deinterleave(w: BitWord) -> ProductPoint:
    if len(w) % 2:
        raise LengthMismatch("interleaved word must have even length")
    return ProductPoint(w[0::2], w[1::2])


@dataclass(frozen=True)
class ProductParam:
    variant: str
    first: object   # factor parameter
    second: object  # planar parameter

    def __post_init__(self):
        if self.variant not in (NULL_OVER_MEAGER, MEAGER_OVER_NULL):
            raise ValueError(f"unknown variant {self.variant!r}")

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "first": self.first.to_json(),
            "second": self.second.to_json(),
        }

    @staticmethod
    def from_json(doc: dict) -> "ProductParam":
        variant = doc["variant"]
        if variant == NULL_OVER_MEAGER:
            first = NullParam.from_json(doc["first"])
            second = MeagerParam.from_json(doc["second"])
        else:
            first = MeagerParam.from_json(doc["first"])
            second = NullParam.from_json(doc["second"])
        return ProductParam(variant, first, second)


def product_encode(variant: str, x_part, plane_part) -> ProductParam:
    """Encode the factor and planar halves with their own encoders.

    For the null half supply a CoverFamily; for the meager half supply a
    (dense clopen list, stage depth) pair over the interleaved space.
    """
    if variant == NULL_OVER_MEAGER:
        first = null_encode(x_part)
        second = meager_encode(*plane_part)
    elif variant == MEAGER_OVER_NULL:
        first = meager_encode(*x_part)
        second = null_encode(plane_part)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return ProductParam(variant, first, second)


def product_member(
    pp: ProductParam,
    p: ProductPoint,
    *,
    null_levels: int,
    meager_n_max: int,
    meager_rows: int | None = None,
) -> Tri:
    """Three-valued membership of a plane point in the product section."""
    plane = interleave(p)
    if pp.variant == NULL_OVER_MEAGER:
        rows = pp.second.rows if meager_rows is None else meager_rows
        factor = null_member(pp.first, p.y, null_levels)
        planar = meager_eval(pp.second, plane, rows, meager_n_max)
    else:
        rows = pp.first.rows if meager_rows is None else meager_rows
        factor = meager_eval(pp.first, p.y, rows, meager_n_max)
        planar = null_member(pp.second, plane, null_levels)
    return tri_or(factor, planar)


def quantifier_shape(variant: str):
    """Nested quantifier tree of the evaluator, for structural audits."""
    gdelta = ("forall", ("exists", "clopen"))
    fsigma = ("exists", ("forall", "clopen"))
    if variant == NULL_OVER_MEAGER:
        return ("union", gdelta, fsigma)
    if variant == MEAGER_OVER_NULL:
        return ("union", fsigma, gdelta)
    raise ValueError(f"unknown variant {variant!r}")


def quantifier_depth(shape) -> int:
    if isinstance(shape, str):
        return 0
    return 1 + max(quantifier_depth(child) for child in shape[1:])


# -- planar diagnostics ------------------------------------------------------


@dataclass(frozen=True)
class DensityProxy:
    """Flag sections whose density reaches the threshold.

    Stands in for smallness in measure at one finite resolution; the
    output is a diagnostic, not membership in the true ideal.
    """

    threshold: Dyadic

    def flags(self, row: int, d: int) -> bool:
        return Dyadic(row.bit_count(), d) >= self.threshold

    def to_json(self) -> dict:
        return {
            "kind": "null",
            "epsilon": self.threshold.to_json(),
            "note": "finite-stage proxy, not the true ideal",
        }


@dataclass(frozen=True)
class SomewhereDenseProxy:
    """Flag sections meeting every cylinder at the split level."""

    split: int

    def flags(self, row: int, d: int) -> bool:
        width = 1 << (d - self.split)
        block = (1 << width) - 1
        return all(
            row >> (i * width) & block for i in range(1 << self.split)
        )

    def to_json(self) -> dict:
        return {
            "kind": "nwd",
            "split": self.split,
            "note": "finite-stage proxy, not the true ideal",
        }


def section_diagnostic(rows: Sequence[str], proxy) -> int:
    """Bitset of first-coordinate words whose section fails the proxy.

    `rows` lists, per level-d word in lexicographic order, the section's
    membership string over the level-d words of the second coordinate.
    """
    count = len(rows)
    d = count.bit_length() - 1
    if count != 1 << d:
        raise LengthMismatch("row count must be a power of two")
    if d > _DIAGNOSTIC_CAP:
        raise LevelCapExceeded(d, _DIAGNOSTIC_CAP)
    if isinstance(proxy, SomewhereDenseProxy) and proxy.split > d:
        raise LevelCapExceeded(proxy.split, d)
    flagged = 0
    for i, row_bits in enumerate(rows):
        if len(row_bits) != count:
            raise LengthMismatch(f"row {i} has length {len(row_bits)}")
        row = int(row_bits[::-1], 2) if row_bits else 0
        if proxy.flags(row, d):
            flagged |= 1 << i
    return flagged


def flagged_bits(flagged: int, d: int) -> str:
    """Render a diagnostic bitset in the same convention as the input rows."""
    return format(flagged, f"0{1 << d}b")[::-1]
