"""
Naive reference implementations for cross-checking the main algorithms.

Nothing here imports from the rest of the package: every statistic is
recomputed from its definition so that agreement means something.
"""

from __future__ import annotations

from collections import Counter
from itertools import permutations
from typing import Iterator, NamedTuple

__all__ = [
    "DEFAULT_BUDGET", "all_permutations", "brute_count_by_diagonal_sets",
    "brute_count_by_position_sets", "brute_count_by_ascent_sets",
    "brute_single_cycle_counts", "brute_derangement_counts",
    "brute_primitive_scan", "OraclePrimitive", "is_family_word", "brute_statistics",
]

DEFAULT_BUDGET = 9


def _guard(n: int, budget: int) -> None:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > budget:
        raise ValueError(f"n={n} exceeds the oracle budget {budget}")


def all_permutations(n: int, budget: int = DEFAULT_BUDGET) -> Iterator[tuple[int, ...]]:
    """Permutations of 1..n in lexicographic order."""
    _guard(n, budget)
    return permutations(range(1, n + 1))


def _diag(p):
    over = frozenset(v for i, v in enumerate(p, 1) if v > i)
    under = frozenset(v for i, v in enumerate(p, 1) if v < i)
    on = frozenset(v for i, v in enumerate(p, 1) if v == i)
    return over, under, on


def brute_count_by_diagonal_sets(n: int, budget: int = DEFAULT_BUDGET) -> Counter:
    """Counts keyed by (over-diagonal values, under-diagonal values, fixed points)."""
    return Counter(_diag(p) for p in all_permutations(n, budget))


def brute_count_by_position_sets(n: int, budget: int = DEFAULT_BUDGET) -> Counter:
    """Counts keyed by (positions i with p(i) > i, positions with p(i) < i, fixed points)."""
    out = Counter()
    for p in all_permutations(n, budget):
        over = frozenset(i for i, v in enumerate(p, 1) if v > i)
        under = frozenset(i for i, v in enumerate(p, 1) if v < i)
        on = frozenset(i for i, v in enumerate(p, 1) if v == i)
        out[over, under, on] += 1
    return out


def _ascent_sets(p):
    # a value starts a singlet block when it is smaller than everything after it
    # and the value before it (if any) is also a successive minimum
    n = len(p)
    is_min = [all(p[i] < p[j] for j in range(i + 1, n)) for i in range(n)]
    singlets = frozenset(p[i] for i in range(n) if is_min[i] and (i == 0 or is_min[i - 1]))
    asc = frozenset(p[i] for i in range(n) if (p[i - 1] if i else 0) < p[i]) - singlets
    desc = frozenset(p[i] for i in range(n) if i and p[i - 1] > p[i])
    return asc, desc, singlets


def brute_statistics(p) -> dict[str, tuple[frozenset[int], frozenset[int]]]:
    """The (A, B) pair that ``p`` realizes in each counting mode.

    ``positions`` pairs the positions sent under the diagonal with those sent over it.
    """
    asc, desc, _ = _ascent_sets(p)
    over, under, _ = _diag(p)
    return {
        "ascent-descent": (asc, desc),
        "diagonal": (over, under),
        "positions": (frozenset(i for i, v in enumerate(p, 1) if v < i),
                      frozenset(i for i, v in enumerate(p, 1) if v > i)),
    }


def brute_count_by_ascent_sets(n: int, budget: int = DEFAULT_BUDGET) -> Counter:
    """Counts keyed by (nonsinglet ascent values, descent values, singlet-block values)."""
    return Counter(_ascent_sets(p) for p in all_permutations(n, budget))


def _is_single_cycle(p) -> bool:
    n, x, steps = len(p), 1, 0
    while True:
        x = p[x - 1]
        steps += 1
        if x == 1:
            return steps == n


def brute_single_cycle_counts(n: int, budget: int = DEFAULT_BUDGET) -> Counter:
    """Single-cycle permutations of 1..n keyed by (#over, #under) diagonal values."""
    out = Counter()
    for p in all_permutations(n, budget):
        if n and _is_single_cycle(p):
            over, under, _ = _diag(p)
            out[len(over), len(under)] += 1
    return out


def brute_derangement_counts(n: int, budget: int = DEFAULT_BUDGET) -> Counter:
    """Fixed-point-free permutations of 1..n keyed by (#over, #under)."""
    out = Counter()
    for p in all_permutations(n, budget):
        over, under, on = _diag(p)
        if not on:
            out[len(over), len(under)] += 1
    return out


def is_family_word(w) -> bool:
    """An increasing run then a nonempty decreasing tail starting below the run."""
    if len(w) < 2:
        return False
    k = 1
    while k < len(w) and w[k] > w[k - 1]:
        k += 1
    if k == len(w) or w[k] > w[0]:
        return False
    return all(w[i] > w[i + 1] for i in range(k, len(w) - 1))


def _pattern(w):
    ranks = {v: i for i, v in enumerate(sorted(w), 1)}
    return tuple(ranks[v] for v in w)


def _bud_sets(n: int, p):
    """Every set of disjoint adjacent descending position pairs (0-based starts)."""
    def walk(i):
        if i >= n - 1:
            yield ()
            return
        yield from walk(i + 1)
        if p[i] > p[i + 1]:
            for rest in walk(i + 2):
                yield (i,) + rest
    return walk(0)


def _family_ok(p, starts) -> bool:
    """Condition (a): the complement of the buds is a family."""
    covered = {i for s in starts for i in (s, s + 1)}
    return is_family_word([p[i] for i in range(len(p)) if i not in covered])


def _valid_bud_sets(p):
    return [starts for starts in _bud_sets(len(p), p) if _family_ok(p, starts)]


def _restrict(p, starts, c):
    """The cutoff pattern at ``c`` and the bud starts induced on it."""
    keep = [i for i, v in enumerate(p) if v <= c]
    where = {i: j for j, i in enumerate(keep)}
    sub = _pattern([p[i] for i in keep])
    return sub, tuple(where[s] for s in starts if p[s] <= c and p[s + 1] <= c)


def _active_values(p, starts) -> set[int]:
    covered = {i for s in starts for i in (s, s + 1)}
    return {p[i] for i in range(len(p)) if i not in covered}


def _consistent(p, starts) -> bool:
    """Check every cutoff c with the buds induced on it: the active part is a
    family, c stands just before an element active at cutoff c - 1, and if c
    opens a bud then putting that bud back breaks the family."""
    prev_active = None
    for c in range(2, len(p) + 1):
        sub, sub_starts = _restrict(p, starts, c)
        if not _family_ok(sub, sub_starts):
            return False
        top = sub.index(c)
        if prev_active is not None:
            if top == c - 1 or sub[top + 1] not in prev_active:
                return False
            if top in sub_starts and _family_ok(sub, tuple(s for s in sub_starts if s != top)):
                return False
        prev_active = _active_values(sub, sub_starts)
    return True


class OraclePrimitive(NamedTuple):
    perm: tuple[int, ...]
    # bud value pairs (higher, lower)
    buds: tuple[tuple[int, int], ...]
    active: tuple[int, ...]


def brute_primitive_scan(n: int, budget: int = DEFAULT_BUDGET) -> list[OraclePrimitive]:
    """Primitive permutations of 1..n, by searching bud sets at every cutoff.

    A bud set qualifies when the buds it induces on each cutoff satisfy the
    family conditions there and the largest value of every cutoff stands
    immediately before an element that was active in the previous cutoff.
    """
    _guard(n, budget)
    memo: dict[tuple[int, ...], bool] = {}

    def admits(pat):
        # a necessary condition, shared by many permutations
        if pat not in memo:
            memo[pat] = bool(_valid_bud_sets(pat))
        return memo[pat]

    out = []
    for p in all_permutations(n, budget):
        if n < 2:
            break
        if not all(admits(_pattern([v for v in p if v <= c])) for c in range(2, n)):
            continue
        found = [starts for starts in _valid_bud_sets(p) if _consistent(p, starts)]
        if not found:
            continue
        if len(found) > 1:
            raise AssertionError(f"{p} has several consistent bud sets: {found}")
        starts = found[0]
        covered = {i for s in starts for i in (s, s + 1)}
        out.append(OraclePrimitive(
            tuple(p),
            tuple((p[s], p[s + 1]) for s in starts),
            tuple(p[i] for i in range(n) if i not in covered),
        ))
    return out
