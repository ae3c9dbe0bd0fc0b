import itertools
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from idealis.errors import IndexOutOfRange, MeasureTooLarge
from idealis.enumerations import (
    BaireCylinder,
    basic_open,
    basic_open_baire,
    basic_open_cantor,
    clopen_enum,
    clopen_rank,
    kcomb_rank,
    kcomb_unrank,
    kprime,
    lex_word,
)
from idealis.space import Clopen, Dyadic, seq_decode


def brute_master_order(n, level_cap):
    """Oracle: every canonical clopen set with measure < 2^-n and level
    <= level_cap, by scanning all masks per level in enumeration order."""
    out = []
    for level in range(1, level_cap + 1):
        nbits = 1 << level
        budget = (1 << (level - n)) - 1 if level > n else 0
        for mask in range(1, 1 << nbits):
            if bin(mask).count("1") > budget:
                continue
            bits = format(mask, f"0{nbits}b")[::-1]
            if bits[0::2] == bits[1::2]:
                continue  # representable one level down
            out.append(Clopen(level, mask))
    return out


class TestClopenEnum:
    def test_index_zero_is_empty_for_every_n(self):
        for n in range(6):
            assert clopen_enum(n, 0) == Clopen.empty()

    def test_first_values(self):
        assert clopen_enum(0, 1) == Clopen.from_words(1, ["0"])
        assert clopen_enum(0, 2) == Clopen.from_words(1, ["1"])
        assert clopen_enum(1, 1) == Clopen.from_words(2, ["00"])

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_matches_brute_force_master_order(self, n):
        oracle = brute_master_order(n, 4)
        got = [clopen_enum(n, k) for k in range(1, len(oracle) + 1)]
        assert got == oracle

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_measure_always_below_bound(self, n):
        bound = Dyadic.half_power(n)
        for k in range(0, 400):
            assert clopen_enum(n, k).measure() < bound

    def test_no_duplicates_prefix(self):
        seen = {clopen_enum(2, k) for k in range(2000)}
        assert len(seen) == 2000

    def test_rank_inverts_enum(self):
        for n in range(4):
            for k in range(500):
                assert clopen_rank(n, clopen_enum(n, k)) == k

    def test_rank_of_empty(self):
        for n in range(5):
            assert clopen_rank(n, Clopen.empty()) == 0

    def test_rank_rejects_large_measure(self):
        with pytest.raises(MeasureTooLarge):
            clopen_rank(1, Clopen.from_words(1, ["0"]))

    def test_rank_survives_deep_levels(self):
        # a level-10 singleton has an astronomically large rank at n=0;
        # the inverse must still be exact
        c = Clopen.cylinder("0" * 10)
        for n in (0, 1, 5, 8):
            assert clopen_enum(n, clopen_rank(n, c)) == c


class TestBasicOpen:
    def test_cantor_prefix(self):
        assert basic_open_cantor(0) == Clopen.empty()
        assert basic_open_cantor(1) == Clopen.full()
        expected = ["0", "1", "00", "01", "10", "11", "000"]
        for i, w in enumerate(expected):
            assert basic_open_cantor(i + 2) == Clopen.cylinder(w)

    def test_baire_prefix(self):
        assert basic_open_baire(0) == BaireCylinder(None)
        assert basic_open_baire(1) == BaireCylinder(())
        for n in range(2, 50):
            assert basic_open_baire(n) == BaireCylinder(seq_decode(n - 1))

    def test_dispatch(self):
        assert basic_open("cantor", 2) == Clopen.cylinder("0")
        assert basic_open("baire", 1) == BaireCylinder(())
        with pytest.raises(IndexOutOfRange):
            basic_open("euclid", 1)


class TestKprime:
    def test_zero_row_is_zero(self):
        for m in range(10):
            assert kprime(0, m) == 0
            assert kprime(0, m, "baire") == 0

    def test_first_subset_of_cylinder_is_itself(self):
        assert kprime(2, 0) == 2
        assert kprime(2, 1) == 4
        assert kprime(1, 0) == 1

    @pytest.mark.parametrize("space", ["cantor", "baire"])
    @pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
    def test_cross_check_with_brute_scan(self, space, n):
        # oracle: scan basic sets in order, keeping the nonempty subsets
        u_n = basic_open(space, n)
        found = []
        k = 1
        while len(found) < 12:
            u_k = basic_open(space, k)
            if space == "cantor":
                inside = u_k.subset(u_n) and not u_k.is_empty
            else:
                inside = u_n.contains_stem(u_k) and not u_k.is_empty
            if inside:
                found.append(k)
            k += 1
            assert k < 10_000
        got = [kprime(n, m, space) for m in range(12)]
        assert got == found
        assert got == sorted(got) and len(set(got)) == 12


class TestLexWord:
    def test_examples(self):
        assert lex_word(2, 0) == "00"
        assert lex_word(2, 3) == "11"
        assert lex_word(3, 4) == "100"

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            lex_word(2, 4)

    def test_full_order(self):
        words = [lex_word(3, k) for k in range(8)]
        assert words == sorted(words)


class TestCombinadics:
    def test_examples_against_itertools(self):
        oracle = list(itertools.combinations(range(4), 2))
        assert kcomb_unrank(4, 2, 0) == oracle[0] == (0, 1)
        assert kcomb_unrank(4, 2, 5) == oracle[5] == (2, 3)

    @pytest.mark.parametrize("n", range(0, 9))
    def test_matches_itertools_everywhere(self, n):
        for t in range(n + 1):
            oracle = list(itertools.combinations(range(n), t))
            for r, expect in enumerate(oracle):
                assert kcomb_unrank(n, t, r) == expect
                assert kcomb_rank(n, expect) == r

    def test_round_trip_up_to_16(self):
        for n in range(17):
            for t in range(n + 1):
                for r in range(comb(n, t)):
                    assert kcomb_rank(n, kcomb_unrank(n, t, r)) == r

    @given(st.integers(20, 200), st.data())
    @settings(max_examples=60, deadline=None)
    def test_big_integer_ranks(self, n, data):
        t = data.draw(st.integers(0, n))
        r = data.draw(st.integers(0, comb(n, t) - 1))
        s = kcomb_unrank(n, t, r)
        assert len(s) == t
        assert kcomb_rank(n, s) == r

    def test_bad_inputs(self):
        with pytest.raises(IndexOutOfRange):
            kcomb_unrank(4, 5, 0)
        with pytest.raises(IndexOutOfRange):
            kcomb_unrank(4, 2, 6)
        with pytest.raises(IndexOutOfRange):
            kcomb_rank(4, (1, 1))


class TestLevelCapInteraction:
    def test_enum_beyond_cap_refuses(self, monkeypatch):
        from idealis.errors import LevelCapExceeded

        monkeypatch.setenv("IDEALIS_MAX_LEVEL", "3")
        clopen_enum.cache_clear()
        with pytest.raises(LevelCapExceeded):
            clopen_enum(0, 10**30)
        monkeypatch.delenv("IDEALIS_MAX_LEVEL")
        clopen_enum.cache_clear()

    def test_deep_basic_open_refuses(self, monkeypatch):
        from idealis.errors import LevelCapExceeded

        monkeypatch.setenv("IDEALIS_MAX_LEVEL", "3")
        with pytest.raises(LevelCapExceeded):
            basic_open_cantor(2 + (1 << 5) - 2)  # first level-5 cylinder
        assert basic_open_cantor(5) == Clopen.cylinder("01")
