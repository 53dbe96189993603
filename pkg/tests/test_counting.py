from itertools import combinations
from math import factorial

import pytest

from conftest import perms
from permfam import oracle
from permfam.counting import (
    MODES, binomial_form, bicolored_partitions, check_eulerian_recurrence,
    check_fundamental_recurrence, check_shifted_recurrence, construct_permutations,
    derangement_count, enumerate_compositions, enumerate_profiles, eulerian,
    eulerian_triangle, family_config_count, fundamental_multinomial, part_partitions,
    recurrence_bijection_check, shifted_multinomial,
)
from permfam.perm_core import blocks, classify_values
from permfam.registry_bijection import decompose


class TestMultinomials:
    @pytest.mark.parametrize("args, value", [
        ((3, 3, 1), 1), ((3, 3, 2), 35), ((3, 3, 3), 15), ((2, 2, 2), 3), ((1, 1, 1), 1),
        ((0, 0, 0), 1), ((3, 3, 4), 0), ((0, 2, 1), 0),
    ])
    def test_fundamental(self, args, value):
        assert fundamental_multinomial(*args) == value

    def test_shifted(self):
        assert shifted_multinomial(3, 3, -1) == eulerian(3, 3) == 66
        assert shifted_multinomial(3, 3, 0) == derangement_count(3, 3) == 161
        assert shifted_multinomial(1, 1, -1) == 1
        assert derangement_count(1, 1) == 1

    def test_part_partitions(self):
        assert part_partitions(2, 2, 2) == [((1, 1), (1, 1))]
        assert part_partitions(3, 3, 1) == [((3, 3),)]
        assert part_partitions(3, 3, 2) == [((2, 1), (1, 2)), ((2, 2), (1, 1))]
        assert part_partitions(1, 1, 2) == []

    @pytest.mark.parametrize("k, l, r", [(k, l, r) for k in range(4) for l in range(4) for r in range(4)])
    def test_matches_materialized_partitions(self, k, l, r):
        assert fundamental_multinomial(k, l, r) == len(bicolored_partitions(k, l, r))

    def test_binomial_form(self):
        assert binomial_form(3, 3, -1) == 66
        assert binomial_form(1, 1, -1) == 1
        for s in range(-3, 1):
            for k in range(1, 7):
                for l in range(1, 7):
                    assert binomial_form(k, l, s) == shifted_multinomial(k, l, s)
        with pytest.raises(ValueError):
            binomial_form(2, 2, 1)

    def test_positive_shift_divisible(self):
        for s in range(1, 4):
            for k in range(1, 7):
                for l in range(1, 7):
                    assert shifted_multinomial(k, l, s) % factorial(s) == 0


class TestRecurrences:
    def test_fundamental(self):
        for k in range(11):
            for l in range(11):
                for r in range(min(k, l) + 1):
                    if (k, l, r) != (0, 0, 0):
                        assert check_fundamental_recurrence(k, l, r)
        # the base case is a boundary value, not a consequence of the recurrence
        assert not check_fundamental_recurrence(0, 0, 0)

    def test_shifted(self):
        assert check_shifted_recurrence(3, 3, -2)
        for s in range(-3, 3):
            for k in range(8):
                for l in range(8):
                    assert check_shifted_recurrence(k, l, s) == ((k, l) != (0, 0) or s < 0)

    def test_eulerian(self):
        for k in range(1, 9):
            for l in range(1, 9):
                assert check_eulerian_recurrence(k, l) == ((k, l) != (1, 1))

    def test_eulerian_row_sums(self):
        for n in range(1, 10):
            assert sum(eulerian(k, n + 1 - k) for k in range(1, n + 1)) == factorial(n)
            assert sum(eulerian_triangle(n, j) for j in range(n)) == factorial(n)
            assert [eulerian(k, n + 1 - k) for k in range(1, n + 1)] == \
                [eulerian_triangle(n, j) for j in range(n)]


class TestAgainstBruteForce:
    @pytest.mark.parametrize("n", range(2, 9))
    def test_single_cycles(self, n):
        counts = oracle.brute_single_cycle_counts(n)
        for k in range(1, n):
            assert counts.get((k, n - k), 0) == eulerian(k, n - k)

    @pytest.mark.parametrize("n", range(2, 9))
    def test_derangements(self, n):
        counts = oracle.brute_derangement_counts(n)
        for k in range(1, n):
            assert counts.get((k, n - k), 0) == derangement_count(k, n - k)


class TestCompositions:
    A, B = {2, 4, 5}, {1, 3}

    def test_six_compositions(self):
        comps = enumerate_compositions(self.A, self.B)
        assert len(comps) == 6
        assert all(min(a) > max(b) for c in comps for a, b in c.pairs)

    def test_trivial(self):
        assert len(enumerate_compositions({2}, {1})) == 1
        assert enumerate_compositions({1}, {2}) == []
        with pytest.raises(ValueError):
            enumerate_compositions({1}, {1})

    @pytest.mark.parametrize("mode, expected", [
        ("ascent-descent", [21453, 24531, 24153, 25341, 24351, 25143]),
        ("diagonal", [21453, 24153, 25413, 24513, 25431, 24531]),
        ("positions", [21534, 31524, 41532, 41523, 51432, 51423]),
    ])
    def test_three_modes(self, mode, expected):
        want = sorted(tuple(int(c) for c in str(x)) for x in expected)
        assert construct_permutations(self.A, self.B, mode=mode) == want

    def test_mode_errors(self):
        with pytest.raises(ValueError):
            construct_permutations({2}, {1}, mode="nope")
        with pytest.raises(ValueError):
            construct_permutations({5}, {1}, n=3)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_all_modes_match_brute_force(self, n):
        stats = {p: oracle.brute_statistics(p) for p in perms(n)}
        values = range(1, n + 1)
        for size_a in range(n + 1):
            for A in combinations(values, size_a):
                rest = [v for v in values if v not in A]
                for size_b in range(len(rest) + 1):
                    for B in combinations(rest, size_b):
                        key = (frozenset(A), frozenset(B))
                        for mode in MODES:
                            want = sorted(p for p, s in stats.items() if s[mode] == key)
                            got = construct_permutations(A, B, n=n, mode=mode)
                            assert got == want, (mode, A, B)

    def test_count_matches_nonsinglet_ascents(self):
        for n in range(1, 8):
            seen = {}
            for p in perms(n):
                c = classify_values(p)
                key = (frozenset(c.ascent_values), frozenset(c.descent_values))
                seen[key] = seen.get(key, 0) + 1
            for (A, B), count in seen.items():
                assert len(enumerate_compositions(A, B)) == count


class TestBijection:
    def test_worked_size(self):
        report = recurrence_bijection_check(3, 3, 2)
        assert report.ok and report.left == report.right == 65
        assert set(report.cases) == {"A", "B", "C", "D", "E"}

    @pytest.mark.parametrize("k, l, r", [(1, 1, 1), (2, 2, 2), (2, 2, 1), (3, 2, 1), (2, 3, 2), (3, 3, 1), (3, 3, 3), (4, 2, 2)])
    def test_small(self, k, l, r):
        report = recurrence_bijection_check(k, l, r)
        assert report.ok, report.problems
        assert report.left == fundamental_multinomial(k, l, r) + r * (k + l - 1) * fundamental_multinomial(k - 1, l - 1, r)


class TestProfiles:
    def test_small(self):
        assert family_config_count(2, {(1, 1): 1}, 0) == 1
        assert family_config_count(2, {}, 2) == 1

    @pytest.mark.parametrize("n", range(0, 13))
    def test_sum_is_factorial(self, n):
        assert sum(family_config_count(n, prof, s) for prof, s in enumerate_profiles(n)) == factorial(n)

    def test_matches_registries(self):
        for n in range(1, 7):
            seen = {}
            for p in perms(n):
                r = decompose(p)
                prof = {}
                for f in r:
                    if not f.is_singlet:
                        prof[(f.reds, f.blues)] = prof.get((f.reds, f.blues), 0) + 1
                key = (tuple(sorted(prof.items())), sum(f.is_singlet for f in r))
                seen[key] = seen.get(key, 0) + 1
            for (prof, s), count in seen.items():
                assert family_config_count(n, dict(prof), s) == count

    def test_errors(self):
        with pytest.raises(ValueError):
            family_config_count(3, {(1, 1): 1}, 0)
        with pytest.raises(ValueError):
            family_config_count(2, {(0, 2): 1}, 0)


@pytest.mark.parametrize("n", range(2, 8))
def test_single_block_family_of_one_is_last(n):
    for p in perms(n):
        if len(blocks(p).blocks) == 1:
            assert 1 in decompose(p)[-1].elements
