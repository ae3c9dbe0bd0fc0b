"""Cylinder algebra on Cantor space with exact dyadic measure, plus the
coding bijections shared by every construction in this package.

Finite data stands in for infinite objects throughout: a 0/1 word denotes
the cylinder of all sequences extending it, a tuple of naturals is the
prefix of an element of Baire space, and a clopen set is a finite union of
same-level cylinders kept in canonical least-level form so that equality,
hashing and enumeration order are deterministic.  All values are immutable
and every operation is pure, so sharing across threads is unrestricted.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

from .errors import InsufficientPrefix, LevelCapExceeded

#: Finite prefix of an element of omega^omega.
BairePrefix = tuple
#: Finite 0/1 word; "" denotes the whole space.
BitWord = str

DEFAULT_MAX_LEVEL = 12

CODING = "cantor-e1"


def max_level() -> int:
    """Current working-level cap (env IDEALIS_MAX_LEVEL, default 12)."""
    return int(os.environ.get("IDEALIS_MAX_LEVEL", str(DEFAULT_MAX_LEVEL)))


def _require_level(level: int) -> None:
    cap = max_level()
    if level > cap:
        raise LevelCapExceeded(level, cap)


class Tri(Enum):
    """Three-valued stage answer.

    Refining a stage bound may resolve UNKNOWN, but never swaps HOLDS and
    FAILS; every evaluator in this package is written against that
    contract.
    """

    HOLDS = "HoldsAtStage"
    FAILS = "FailsAtStage"
    UNKNOWN = "InsufficientData"


def tri_or(a: Tri, b: Tri) -> Tri:
    """Kleene disjunction: holds with one witness, fails only outright."""
    if a is Tri.HOLDS or b is Tri.HOLDS:
        return Tri.HOLDS
    if a is Tri.FAILS and b is Tri.FAILS:
        return Tri.FAILS
    return Tri.UNKNOWN


@dataclass(frozen=True)
class Dyadic:
    """Non-negative rational num / 2**exp kept in lowest terms."""

    num: int
    exp: int

    def __post_init__(self):
        if self.num < 0 or self.exp < 0:
            raise ValueError("dyadic parts must be non-negative")
        num, exp = self.num, self.exp
        if num == 0:
            exp = 0
        else:
            while num % 2 == 0 and exp > 0:
                num //= 2
                exp -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    @staticmethod
    def zero() -> "Dyadic":
        return Dyadic(0, 0)

    @staticmethod
    def one() -> "Dyadic":
        return Dyadic(1, 0)

    @staticmethod
    def half_power(n: int) -> "Dyadic":
        """The value 2**-n."""
        return Dyadic(1, n)

    def _common(self, other: "Dyadic"):
        e = max(self.exp, other.exp)
        return self.num << (e - self.exp), other.num << (e - other.exp), e

    def __add__(self, other: "Dyadic") -> "Dyadic":
        a, b, e = self._common(other)
        return Dyadic(a + b, e)

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        a, b, e = self._common(other)
        if a < b:
            raise ValueError("dyadic subtraction went negative")
        return Dyadic(a - b, e)

    def __lt__(self, other: "Dyadic") -> bool:
        a, b, _ = self._common(other)
        return a < b

    def __le__(self, other: "Dyadic") -> bool:
        a, b, _ = self._common(other)
        return a <= b

    def __gt__(self, other: "Dyadic") -> bool:
        return other < self

    def __ge__(self, other: "Dyadic") -> bool:
        return other <= self

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    def to_json(self) -> dict:
        return {"num": self.num, "exp": self.exp}

    @staticmethod
    def from_json(doc: dict) -> "Dyadic":
        return Dyadic(int(doc["num"]), int(doc["exp"]))


def word_index(word: BitWord) -> int:
    """Numeric value of a word; doubles as its lexicographic rank."""
    return int(word, 2) if word else 0


def index_word(index: int, level: int) -> BitWord:
    return format(index, f"0{level}b") if level else ""


def _reducible(level: int, mask: int) -> bool:
    # A union of level-`level` cylinders drops to level-1 exactly when the
    # two children of every shorter word are jointly in or jointly out.
    if level == 0:
        return False
    bits = format(mask, f"0{1 << level}b")[::-1]
    return bits[0::2] == bits[1::2]


def _reduce_once(level: int, mask: int) -> tuple[int, int]:
    bits = format(mask, f"0{1 << level}b")[::-1]
    kept = bits[0::2]
    return level - 1, int(kept[::-1], 2) if kept else 0


@dataclass(frozen=True)
class Clopen:
    """Canonical finite union of same-level cylinders of Cantor space.

    ``mask`` has bit i set exactly when the word of lexicographic rank i
    at ``level`` belongs to the set.  The empty set is (0, 0) and the
    whole space is (0, 1); the constructor rejects representations that
    could be written at a smaller level.
    """

    level: int
    mask: int

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("negative level")
        if not 0 <= self.mask < (1 << (1 << self.level)):
            raise ValueError("mask out of range for level")
        if _reducible(self.level, self.mask):
            raise ValueError("non-canonical clopen representation")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def empty() -> "Clopen":
        return Clopen(0, 0)

    @staticmethod
    def full() -> "Clopen":
        return Clopen(0, 1)

    @staticmethod
    def from_mask(level: int, mask: int) -> "Clopen":
        while level > 0 and _reducible(level, mask):
            level, mask = _reduce_once(level, mask)
        return Clopen(level, mask)

    @staticmethod
    def from_words(level: int, words: Iterable[BitWord]) -> "Clopen":
        mask = 0
        for w in words:
            if len(w) != level or (w and set(w) - {"0", "1"}):
                raise ValueError(f"bad word {w!r} for level {level}")
            mask |= 1 << word_index(w)
        return Clopen.from_mask(level, mask)

    @staticmethod
    def cylinder(word: BitWord) -> "Clopen":
        return Clopen.from_words(len(word), [word])

    # -- views ----------------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return self.mask == 0

    @property
    def is_full(self) -> bool:
        return self.level == 0 and self.mask == 1

    def words(self) -> list[BitWord]:
        n = 1 << self.level
        return [index_word(i, self.level) for i in range(n) if self.mask >> i & 1]

    def word_count(self) -> int:
        return self.mask.bit_count()

    def measure(self) -> Dyadic:
        return Dyadic(self.mask.bit_count(), self.level)

    def mask_at(self, level: int) -> int:
        """The word mask of this set lifted to a deeper level."""
        if level < self.level:
            raise ValueError("cannot lift to a shallower level")
        if level == self.level:
            return self.mask
        stretch = 1 << (level - self.level)
        bits = format(self.mask, f"0{1 << self.level}b")
        return int("".join(ch * stretch for ch in bits), 2)

    # -- boolean algebra -------------------------------------------------

    def union(self, other: "Clopen") -> "Clopen":
        lev = max(self.level, other.level)
        return Clopen.from_mask(lev, self.mask_at(lev) | other.mask_at(lev))

    def intersect(self, other: "Clopen") -> "Clopen":
        lev = max(self.level, other.level)
        return Clopen.from_mask(lev, self.mask_at(lev) & other.mask_at(lev))

    def complement(self) -> "Clopen":
        all_words = (1 << (1 << self.level)) - 1
        return Clopen.from_mask(self.level, self.mask ^ all_words)

    def subset(self, other: "Clopen") -> bool:
        lev = max(self.level, other.level)
        return self.mask_at(lev) & ~other.mask_at(lev) == 0

    def meets(self, other: "Clopen") -> bool:
        lev = max(self.level, other.level)
        return self.mask_at(lev) & other.mask_at(lev) != 0

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {"level": self.level, "words": self.words()}

    @staticmethod
    def from_json(doc: dict) -> "Clopen":
        return canonicalize(int(doc["level"]), doc["words"])

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Clopen(level={self.level}, words={self.words()})"


def canonicalize(level: int, words: Iterable[BitWord]) -> Clopen:
    """Canonical representative of a union of level-`level` cylinders."""
    _require_level(level)
    return Clopen.from_words(level, words)


def measure(c: Clopen) -> Dyadic:
    return c.measure()


def union(a: Clopen, b: Clopen) -> Clopen:
    return a.union(b)


def intersect(a: Clopen, b: Clopen) -> Clopen:
    return a.intersect(b)


def complement(a: Clopen) -> Clopen:
    return a.complement()


def subset(a: Clopen, b: Clopen) -> bool:
    return a.subset(b)


# -- pairing and sequence codes -------------------------------------------


def pair(m: int, n: int) -> int:
    """Cantor pairing (m + n)(m + n + 1)/2 + n."""
    s = m + n
    return s * (s + 1) // 2 + n


def unpair(k: int) -> tuple[int, int]:
    s = (isqrt(8 * k + 1) - 1) // 2
    n = k - s * (s + 1) // 2
    return s - n, n


def seq_code(s: Sequence[int]) -> int:
    """Bijection between finite sequences of naturals and naturals.

    The empty sequence maps to 0 and appending a entry maps (code, entry)
    through the pairing function plus one, so decoding peels entries off
    the tail.
    """
    code = 0
    for a in s:
        code = pair(code, a) + 1
    return code


def seq_decode(k: int) -> tuple[int, ...]:
    out = []
    while k > 0:
        k, a = unpair(k - 1)
        out.append(a)
    return tuple(reversed(out))


def matrix_entry(f: Sequence[int], n: int, k: int) -> int:
    """Read cell (n, k) of the square-matrix view of a prefix."""
    idx = pair(n, k)
    if idx >= len(f):
        raise InsufficientPrefix(idx + 1)
    return f[idx]
