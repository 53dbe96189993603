import pytest
from hypothesis import given, strategies as st

from conftest import perms
from permfam import oracle
from permfam.errors import InvalidPermutation
from permfam.perm_core import (
    blocks, block_values, classify_values, cycle_transform, cycles, daisy_chain,
    eulerian_lift, format_permutation, inverse, inverse_cycle_transform,
    is_family_sequence, is_shuffle, parse_permutation, pattern,
)


def perm_strategy(max_n=9):
    return st.integers(1, max_n).flatmap(
        lambda n: st.permutations(range(1, n + 1)).map(tuple))


def is_single_cycle(p):
    return len(cycles(p)) == 1


class TestParsing:
    def test_space_and_comma_separated(self):
        assert parse_permutation("5 2 4 3 6 1") == (5, 2, 4, 3, 6, 1)
        assert parse_permutation("5,2,4, 3,6,1") == (5, 2, 4, 3, 6, 1)
        assert parse_permutation("(2 1)") == (2, 1)

    @pytest.mark.parametrize("text, fragment", [
        ("1 1", "position 2"),
        ("1 3", "position 2"),
        ("0 1", "position 1"),
        ("1 x", "'x'"),
        ("", "empty"),
    ])
    def test_rejects_with_first_violation(self, text, fragment):
        with pytest.raises(InvalidPermutation, match=fragment):
            parse_permutation(text)

    @given(perm_strategy())
    def test_format_round_trip(self, p):
        assert parse_permutation(format_permutation(p)) == p


class TestClassify:
    def test_mixed_blocks_ascents(self):
        c = classify_values((5, 6, 1, 2, 4, 3))
        assert c.ascent_values == {4, 5, 6}
        assert c.singlet_values == {2}
        assert c.descent_values == {1, 3}

    def test_singlets_merged(self):
        c = classify_values((5, 6, 1, 2, 4, 3), singlets_as_ascents=True)
        assert c.ascent_values == {2, 4, 5, 6} and not c.singlet_values

    def test_identity_all_ascents(self):
        c = classify_values((1, 2, 3, 4), singlets_as_ascents=True)
        assert c.ascent_values == {1, 2, 3, 4} and not c.descent_values

    def test_diagonal_example(self):
        c = classify_values((5, 2, 4, 3, 6, 1))
        assert c.over_values == {4, 5, 6}
        assert c.on_values == {2}
        assert c.under_values == {1, 3}

    @given(perm_strategy())
    def test_partitions(self, p):
        c = classify_values(p)
        everything = set(range(1, len(p) + 1))
        assert c.ascent_values | c.descent_values | c.singlet_values == everything
        assert not (c.ascent_values & c.descent_values)
        assert c.over_values | c.under_values | c.on_values == everything
        assert len(c.over_values) + len(c.under_values) + len(c.on_values) == len(p)


class TestBlocks:
    def test_three_blocks(self):
        b = blocks((5, 6, 1, 2, 4, 3))
        assert block_values((5, 6, 1, 2, 4, 3)) == [(5, 6, 1), (2,), (4, 3)]
        assert b.anchor_values == (1, 2, 3)
        assert b.anchor_positions == (3, 4, 6)
        assert b.blocks == ((1, 3), (4, 4), (5, 6))

    def test_identity_and_single_block(self):
        assert len(blocks((1, 2, 3, 4)).blocks) == 4
        assert blocks((4, 2, 3, 1)).anchor_values == (1,)

    @given(perm_strategy())
    def test_invariants(self, p):
        b = blocks(p)
        assert b.anchor_values[0] == 1
        assert list(b.anchor_values) == sorted(set(b.anchor_values))
        assert b.blocks[0][0] == 1 and b.blocks[-1][1] == len(p)
        assert all(e + 1 == s for (_, e), (s, _) in zip(b.blocks, b.blocks[1:]))
        assert tuple(e for _, e in b.blocks) == b.anchor_positions


class TestCycleTransform:
    @pytest.mark.parametrize("s, p", [
        ((5, 2, 4, 3, 6, 1), (5, 6, 1, 2, 4, 3)),
        ((1, 2, 3), (1, 2, 3)),
        ((3, 2, 1), (3, 1, 2)),
    ])
    def test_examples(self, s, p):
        assert cycle_transform(s) == p
        assert inverse_cycle_transform(p) == s

    def test_inverse_of_lift(self):
        assert inverse_cycle_transform((4, 2, 3, 1)) == (4, 3, 1, 2)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_round_trip_and_transport(self, n):
        for s in perms(n):
            p = cycle_transform(s)
            assert inverse_cycle_transform(p) == s
            assert cycle_transform(inverse_cycle_transform(s)) == s
            cs, cp = classify_values(s), classify_values(p)
            assert (cs.over_values, cs.under_values, cs.on_values) == \
                (cp.ascent_values, cp.descent_values, cp.singlet_values)

    def test_ascent_counts_match_oracle(self):
        for n in range(1, 7):
            assert sum(oracle.brute_count_by_ascent_sets(n).values()) == len(list(perms(n)))
            for p in perms(n):
                c = classify_values(p)
                assert oracle.brute_statistics(p)["ascent-descent"] == (c.ascent_values, c.descent_values)


class TestLiftAndDaisy:
    @pytest.mark.parametrize("p, q", [((3, 1, 2), (4, 2, 3, 1)), ((1,), (2, 1)), ((2, 1), (3, 2, 1))])
    def test_lift(self, p, q):
        assert eulerian_lift(p) == q

    @pytest.mark.parametrize("s, q", [((3, 2, 1), (4, 3, 1, 2)), ((1,), (2, 1))])
    def test_daisy(self, s, q):
        assert daisy_chain(s) == q

    def test_daisy_identity_two(self):
        q = daisy_chain((1, 2))
        assert len(q) == 3 and is_single_cycle(q)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_lift_and_daisy_properties(self, n):
        for p in perms(n):
            q = eulerian_lift(p)
            assert len(blocks(q).blocks) == 1
            c = classify_values(q)
            ext = (0,) + p + (0,)
            ups = sum(a < b for a, b in zip(ext, ext[1:]))
            downs = sum(a > b for a, b in zip(ext, ext[1:]))
            assert (len(c.ascent_values), len(c.descent_values)) == (ups, downs)
            d = daisy_chain(p)
            assert is_single_cycle(d)
            assert d == inverse_cycle_transform(eulerian_lift(cycle_transform(p)))


class TestPatterns:
    def test_mapping(self):
        # 3 < 7 < 8, so the values at 2, 5, 9 rank as 2, 1, 3
        assert pattern({2: 7, 5: 3, 9: 8}) == (2, 1, 3)
        assert pattern((10, 12, 11, 3)) == (2, 4, 3, 1)
        assert pattern((4, 9, 20)) == (1, 2, 3)

    @given(st.lists(st.integers(-50, 50), unique=True, min_size=1, max_size=10))
    def test_idempotent(self, values):
        assert pattern(pattern(values)) == pattern(values)

    def test_shuffle(self):
        f = (3, 1, 4, 2)
        assert is_shuffle(f, [({1, 3}, (1, 2)), ({2, 4}, (1, 2))])
        assert not is_shuffle(f, [({1, 3}, (2, 1)), ({2, 4}, (1, 2))])
        assert is_shuffle(f, [({1, 2, 3, 4}, pattern(f))])
        assert not is_shuffle((1, 2), [({1, 2}, (2, 1))])

    @given(perm_strategy())
    def test_inverse(self, p):
        q = inverse(p)
        assert all(q[v - 1] == i for i, v in enumerate(p, 1))

    def test_family_sequence(self):
        assert is_family_sequence((6, 7, 5, 3, 2))
        assert is_family_sequence((2, 1))
        assert not is_family_sequence((1, 2))
        assert not is_family_sequence((3, 5, 4, 1))
