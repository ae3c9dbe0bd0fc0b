"""Canonical enumerations consumed by the universal-set constructions.

The master clopen enumeration orders canonical clopen sets by
(canonical level, word-set bitmask value); ranking and unranking walk the
bitmask digits with binomial counting, so both stay exact far past the
range where brute-force scans are possible.  Basic open sets, the
nonempty-basic-subset index, lexicographic words and combinadic subset
(un)ranking live here as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import IndexOutOfRange, LevelCapExceeded, MeasureTooLarge
from .space import Clopen, index_word, max_level, seq_decode

CANTOR = "cantor"
BAIRE = "baire"


@lru_cache(maxsize=None)
def _tsum(b: int, q: int) -> int:
    """Number of b-bit masks with population count at most q."""
    if q < 0:
        return 0
    if q >= b:
        return 1 << b
    if q > b - q - 1:
        return (1 << b) - _tsum(b, b - q - 1)
    return sum(comb(b, j) for j in range(q + 1))


def _popcount_budget(level: int, n: int) -> int:
    # measure < 2^-n at `level` means word count < 2^(level-n)
    return (1 << (level - n)) - 1 if level > n else 0


def _level_count(level: int, n: int) -> int:
    """Canonical clopen sets of exactly this level with measure < 2^-n.

    Counted as: masks within the popcount budget, minus the ones whose
    sibling pairs all agree (those live at a smaller level; the zero mask
    is among them, so the empty set is never double counted).
    """
    if level == 0:
        return 0
    p = _popcount_budget(level, n)
    return _tsum(1 << level, p) - _tsum(1 << (level - 1), p // 2)


def _doubled(m: int, q: int, pend) -> int:
    # completions of m remaining bit positions whose sibling pairs all
    # agree, with popcount at most q; `pend` is the already-chosen high
    # half of a split pair (None when the remaining positions pair up).
    if pend is None:
        return _tsum(m // 2, q // 2)
    if pend > q:
        return 0
    return _tsum((m - 1) // 2, (q - pend) // 2)


def _completions(m: int, q: int, uniform: bool, pend) -> int:
    total = _tsum(m, q)
    if uniform:
        total -= _doubled(m, q, pend)
    return total


def _unrank_in_level(level: int, n: int, r: int) -> int:
    nbits = 1 << level
    q = _popcount_budget(level, n)
    uniform, pend = True, None
    mask = 0
    for p in range(nbits - 1, -1, -1):
        if p % 2:
            st0 = (uniform, 0)
            st1 = (uniform, 1)
        else:
            st0 = (uniform and pend == 0, None)
            st1 = (uniform and pend == 1, None)
        with_zero = _completions(p, q, *st0)
        if r < with_zero:
            uniform, pend = st0
        else:
            r -= with_zero
            mask |= 1 << p
            q -= 1
            uniform, pend = st1
    assert r == 0 and q >= 0
    return mask


def _rank_in_level(level: int, n: int, mask: int) -> int:
    nbits = 1 << level
    q = _popcount_budget(level, n)
    uniform, pend = True, None
    r = 0
    for p in range(nbits - 1, -1, -1):
        bit = mask >> p & 1
        if p % 2:
            st0 = (uniform, 0)
            st1 = (uniform, 1)
        else:
            st0 = (uniform and pend == 0, None)
            st1 = (uniform and pend == 1, None)
        if bit:
            r += _completions(p, q, *st0)
            q -= 1
            uniform, pend = st1
        else:
            uniform, pend = st0
    return r


@lru_cache(maxsize=1 << 16)
def clopen_enum(n: int, k: int) -> Clopen:
    """The k-th canonical clopen set of measure < 2^-n; index 0 is empty.

    Order for k >= 1: ascending canonical level, then ascending word-set
    bitmask value within a level.  Every qualifying set appears exactly
    once.
    """
    if n < 0 or k < 0:
        raise IndexOutOfRange("enumeration indices are naturals")
    if k == 0:
        return Clopen.empty()
    r = k - 1
    level = 1
    while True:
        c = _level_count(level, n)
        if r < c:
            return Clopen(level, _unrank_in_level(level, n, r))
        r -= c
        level += 1
        if level > max_level():
            raise LevelCapExceeded(level, max_level())


def clopen_rank(n: int, c: Clopen) -> int:
    """Inverse of clopen_enum along its second argument."""
    if c.is_empty:
        return 0
    if c.word_count() << n >= 1 << c.level:
        raise MeasureTooLarge(f"measure of {c!r} is not below 2^-{n}")
    k = 1
    for lev in range(1, c.level):
        k += _level_count(lev, n)
    return k + _rank_in_level(c.level, n, c.mask)


# -- basic open sets --------------------------------------------------------


@dataclass(frozen=True)
class BaireCylinder:
    """Basic open set of Baire space: all extensions of `stem`.

    ``stem=None`` denotes the empty set (index 0 of the enumeration).
    """

    stem: tuple | None

    @property
    def is_empty(self) -> bool:
        return self.stem is None

    def contains_stem(self, other: "BaireCylinder") -> bool:
        if other.is_empty:
            return True
        if self.is_empty:
            return False
        return other.stem[: len(self.stem)] == self.stem

    def to_json(self) -> dict:
        return {"stem": None if self.stem is None else list(self.stem)}


def _cantor_cylinder_word(idx: int) -> str:
    # cylinders in (level, lex) order: idx 0,1 -> level 1; 2..5 -> level 2 ...
    level = (idx + 2).bit_length() - 1
    return index_word(idx - ((1 << level) - 2), level)


def basic_open_cantor(n: int) -> Clopen:
    """Basic open sets of Cantor space: empty, full, then cylinders in
    (level, lex) order."""
    if n < 0:
        raise IndexOutOfRange("basic open index must be a natural")
    if n == 0:
        return Clopen.empty()
    if n == 1:
        return Clopen.full()
    word = _cantor_cylinder_word(n - 2)
    if len(word) > max_level():
        raise LevelCapExceeded(len(word), max_level())
    return Clopen.cylinder(word)


def basic_open_baire(n: int) -> BaireCylinder:
    """Basic open sets of Baire space via the sequence coding."""
    if n < 0:
        raise IndexOutOfRange("basic open index must be a natural")
    if n == 0:
        return BaireCylinder(None)
    return BaireCylinder(seq_decode(n - 1))


def basic_open(space: str, n: int):
    if space == CANTOR:
        return basic_open_cantor(n)
    if space == BAIRE:
        return basic_open_baire(n)
    raise IndexOutOfRange(f"unknown space {space!r}")


def _kprime_cantor(n: int, m: int) -> int:
    if n == 1:
        if m == 0:
            return 1
        rest, depth = m - 1, 1
        base = ""
    else:
        if m == 0:
            return n
        rest, depth = m - 1, 1
        base = _cantor_cylinder_word(n - 2)
    while rest >= 1 << depth:
        rest -= 1 << depth
        depth += 1
    word = base + index_word(rest, depth)
    return 2 + ((1 << len(word)) - 2) + int(word, 2)


def _kprime_baire(n: int, m: int) -> int:
    stem = seq_decode(n - 1)
    seen = 0
    k = 1
    while True:
        cand = seq_decode(k - 1)
        if cand[: len(stem)] == stem:
            if seen == m:
                return k
            seen += 1
        k += 1


def kprime(n: int, m: int, space: str = CANTOR) -> int:
    """Index of the (m+1)-th nonempty basic open set inside basic open
    set number n; zero by fiat when n is zero.

    Only nonempty basic sets are counted, so every term selected through
    this function meets the ambient basic set -- the property the dense
    sections downstream rely on.
    """
    if n < 0 or m < 0:
        raise IndexOutOfRange("kprime arguments are naturals")
    if n == 0:
        return 0
    if space == CANTOR:
        return _kprime_cantor(n, m)
    if space == BAIRE:
        return _kprime_baire(n, m)
    raise IndexOutOfRange(f"unknown space {space!r}")


def lex_word(n: int, k: int) -> str:
    """The k-th word of {0,1}^n in lexicographic order."""
    if n < 0 or not 0 <= k < (1 << n):
        raise IndexOutOfRange(f"no word {k} at length {n}")
    return index_word(k, n)


# -- combinadics ------------------------------------------------------------


def kcomb_unrank(n: int, t: int, r: int) -> tuple[int, ...]:
    """The r-th t-subset of {0..n-1}, ordering sorted tuples
    lexicographically.  Exact for big-integer ranks."""
    if t < 0 or t > n:
        raise IndexOutOfRange(f"no {t}-subsets of a {n}-set")
    total = comb(n, t)
    if not 0 <= r < total:
        raise IndexOutOfRange(f"rank {r} out of range {total}")
    if t == 0:
        return ()
    out = []
    rem = t
    c = 0
    # cur tracks C(n-1-c, rem-1), the count of subsets taking candidate c;
    # it is updated multiplicatively so each step costs one mul and one
    # exact division instead of a fresh binomial.
    cur = comb(n - 1, rem - 1)
    while rem > 0:
        a = n - 1 - c
        if r < cur:
            out.append(c)
            rem -= 1
            if rem == 0:
                break
            cur = cur * rem // a
        else:
            r -= cur
            cur = cur * (a - rem + 1) // a
        c += 1
    return tuple(out)


def kcomb_rank(n: int, subset) -> int:
    """Inverse of kcomb_unrank."""
    s = sorted(subset)
    t = len(s)
    if t > n or any(not 0 <= v < n for v in s) or len(set(s)) != t:
        raise IndexOutOfRange("not a subset of {0..n-1}")
    if t == 0:
        return 0
    r = 0
    rem = t
    cur = comb(n - 1, rem - 1)
    want = iter(s)
    nxt = next(want)
    for c in range(n):
        a = n - 1 - c
        if c == nxt:
            rem -= 1
            if rem == 0:
                break
            nxt = next(want)
            cur = cur * rem // a
        else:
            r += cur
            cur = cur * (a - (rem - 1)) // a
    return r
