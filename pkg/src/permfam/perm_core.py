"""
Permutations in one-line notation and the statistics used throughout the
package.

A permutation of ``{1, ..., n}`` is a plain tuple of ints, position ``i``
(1-based) holding ``p[i - 1]``.

>>> cycle_transform((5, 2, 4, 3, 6, 1))
(5, 6, 1, 2, 4, 3)
>>> inverse_cycle_transform((5, 6, 1, 2, 4, 3))
(5, 2, 4, 3, 6, 1)
>>> eulerian_lift((3, 1, 2))
(4, 2, 3, 1)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import InvalidPermutation

__all__ = [
    "Permutation", "ValueClassification", "BlockDecomposition",
    "parse_permutation", "check_permutation", "format_permutation",
    "classify_values", "blocks", "block_values", "cycles",
    "cycle_transform", "inverse_cycle_transform", "eulerian_lift",
    "daisy_chain", "pattern", "is_shuffle", "inverse", "is_family_sequence",
]

# one-line notation, values 1..n
Permutation = tuple[int, ...]


@dataclass(frozen=True)
class ValueClassification:
    """Value sets of a permutation.

    Singlet-block values are kept apart from ascents; pass
    ``singlets_as_ascents=True`` to :func:`classify_values` to merge them the
    way Euler-style counts do.
    """
    ascent_values: frozenset[int]
    descent_values: frozenset[int]
    singlet_values: frozenset[int]
    over_values: frozenset[int]
    under_values: frozenset[int]
    on_values: frozenset[int]


@dataclass(frozen=True)
class BlockDecomposition:
    # 1-based positions of the successive minima
    anchor_positions: tuple[int, ...]
    anchor_values: tuple[int, ...]
    # inclusive 1-based (start, end) position intervals
    blocks: tuple[tuple[int, int], ...]


_SPLIT = re.compile(r"[\s,]+")


def parse_permutation(text: str) -> Permutation:
    """Parse whitespace- or comma-separated values into a permutation.

    Surrounding parentheses are tolerated, so ``"(2 1)"`` parses too.
    """
    body = text.strip().strip("()[]").strip()
    if not body:
        raise InvalidPermutation("empty permutation")
    values = []
    for tok in _SPLIT.split(body):
        if not tok:
            continue
        try:
            values.append(int(tok))
        except ValueError:
            raise InvalidPermutation(f"not an integer: {tok!r}") from None
    return check_permutation(values)


def check_permutation(values: Iterable[int]) -> Permutation:
    """Return ``values`` as a tuple, raising if it is not a permutation of 1..n."""
    p = tuple(values)
    n = len(p)
    seen = set()
    for i, v in enumerate(p, start=1):
        if not isinstance(v, int) or isinstance(v, bool):
            raise InvalidPermutation(f"position {i}: {v!r} is not an integer")
        if v < 1 or v > n:
            raise InvalidPermutation(f"position {i}: value {v} outside 1..{n}")
        if v in seen:
            raise InvalidPermutation(f"position {i}: value {v} repeated")
        seen.add(v)
    return p


def format_permutation(p: Sequence[int]) -> str:
    return " ".join(map(str, p))


def inverse(p: Sequence[int]) -> Permutation:
    inv = [0] * len(p)
    for i, v in enumerate(p, start=1):
        inv[v - 1] = i
    return tuple(inv)


def _anchor_flags(p: Sequence[int]) -> list[bool]:
    # position i is a successive minimum iff p[i] is smaller than everything after it
    flags = [False] * len(p)
    running = None
    for i in range(len(p) - 1, -1, -1):
        if running is None or p[i] < running:
            flags[i] = True
            running = p[i]
    return flags


def blocks(p: Sequence[int]) -> BlockDecomposition:
    """Split ``p`` into blocks ending at its successive minima."""
    flags = _anchor_flags(p)
    positions, values, intervals = [], [], []
    start = 1
    for i, is_anchor in enumerate(flags, start=1):
        if is_anchor:
            positions.append(i)
            values.append(p[i - 1])
            intervals.append((start, i))
            start = i + 1
    return BlockDecomposition(tuple(positions), tuple(values), tuple(intervals))


def block_values(p: Sequence[int]) -> list[tuple[int, ...]]:
    """The blocks of ``p`` as tuples of values, left to right."""
    return [tuple(p[a - 1:b]) for a, b in blocks(p).blocks]


def classify_values(p: Sequence[int], singlets_as_ascents: bool = False) -> ValueClassification:
    """Ascent/descent/singlet and over/under/on diagonal value sets of ``p``.

    The ascent test uses the sentinel ``p(0) = 0``.
    """
    singlets = {blk[0] for blk in block_values(p) if len(blk) == 1}
    ascents, descents = set(), set()
    prev = 0
    for v in p:
        (ascents if prev < v else descents).add(v)
        prev = v
    if not singlets_as_ascents:
        ascents -= singlets
    over = {v for i, v in enumerate(p, start=1) if v > i}
    under = {v for i, v in enumerate(p, start=1) if v < i}
    on = {v for i, v in enumerate(p, start=1) if v == i}
    return ValueClassification(
        frozenset(ascents), frozenset(descents),
        frozenset() if singlets_as_ascents else frozenset(singlets),
        frozenset(over), frozenset(under), frozenset(on),
    )


def cycles(s: Sequence[int]) -> list[tuple[int, ...]]:
    """Cycles of ``s``, each rotated to end at its minimum, sorted by minimum."""
    seen = set()
    out = []
    for start in range(1, len(s) + 1):
        if start in seen:
            continue
        # starting from the minimum c, the cycle reads s(c), s(s(c)), ..., c
        cyc = []
        x = s[start - 1]
        while True:
            cyc.append(x)
            seen.add(x)
            if x == start:
                break
            x = s[x - 1]
        out.append(tuple(cyc))
    return out


def cycle_transform(s: Sequence[int]) -> Permutation:
    """Write the min-last, min-sorted cycles of ``s`` as one line."""
    return tuple(v for cyc in cycles(s) for v in cyc)


def inverse_cycle_transform(p: Sequence[int]) -> Permutation:
    """Read every block of ``p`` as a cycle."""
    s = [0] * len(p)
    for blk in block_values(p):
        for a, b in zip(blk, blk[1:] + blk[:1]):
            s[a - 1] = b
    return tuple(s)


def eulerian_lift(p: Sequence[int]) -> Permutation:
    return tuple(v + 1 for v in p) + (1,)


def daisy_chain(s: Sequence[int]) -> Permutation:
    """Re-link the cycle heads of ``s`` through a new point 0, then shift up by one."""
    n = len(s)
    heads = [cyc[-1] for cyc in cycles(s)]
    # sigma' on {0..n}, stored at index j
    t = [0] + list(s)
    for a, b in zip(heads, heads[1:]):
        t[a] = s[b - 1]
    t[heads[-1]] = 0
    t[0] = s[heads[0] - 1]
    return tuple(t[j] + 1 for j in range(n + 1))


def pattern(f: Mapping[int, int] | Sequence[int]) -> Permutation:
    """Reduce an injective map to a permutation by order-preserving relabeling.

    A sequence is read as the map ``position -> value``.

    >>> pattern({2: 7, 5: 3, 9: 8})
    (2, 1, 3)
    >>> pattern([10, 12, 11, 3])
    (2, 4, 3, 1)
    """
    if isinstance(f, Mapping):
        values = [f[k] for k in sorted(f)]
    else:
        values = list(f)
    rank = {v: i for i, v in enumerate(sorted(values), start=1)}
    if len(rank) != len(values):
        raise InvalidPermutation("pattern of a non-injective map")
    return tuple(rank[v] for v in values)


def is_shuffle(f: Mapping[int, int] | Sequence[int],
               parts: Iterable[tuple[Iterable[int], Mapping[int, int] | Sequence[int]]]) -> bool:
    """True iff ``f`` restricted to each index set has the pattern of its partner map."""
    if not isinstance(f, Mapping):
        f = {i: v for i, v in enumerate(f, start=1)}
    covered = set()
    for index_set, g in parts:
        idx = set(index_set)
        if not idx <= f.keys():
            raise InvalidPermutation(f"index set {sorted(idx)} leaves the domain")
        covered |= idx
        if pattern({i: f[i] for i in idx}) != pattern(g):
            return False
    if covered != set(f):
        raise InvalidPermutation("index sets do not cover the domain")
    return True


def is_family_sequence(seq: Sequence[int]) -> bool:
    """True for singlets and for an increasing run followed by a decreasing tail below its start."""
    n = len(seq)
    if n == 1:
        return True
    if n == 0:
        return False
    k = 1
    while k < n and seq[k] > seq[k - 1]:
        k += 1
    if k == n or seq[k] >= seq[0]:
        return False
    return all(seq[i] > seq[i + 1] for i in range(k, n - 1))
