"""
The bijection between permutations of 1..n and registries.

:func:`decompose` inserts the values 1..n one at a time, each new value
either joining the family of its friend (the next smaller-or-equal value
to its right) or pulling the friend out into a new two-element family.
:func:`compose` undoes this by peeling off the maximum.

>>> from .family import format_registry
>>> format_registry(decompose((6, 7, 3, 5, 4, 1, 2)))
'((5 4),(6 7 3 1),(2))'
>>> compose(decompose((6, 7, 3, 5, 4, 1, 2)))
(6, 7, 3, 5, 4, 1, 2)
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Sequence

from .errors import InvalidRegistry
from .family import (
    Family, Registry, anchor, check_registry, fits, from_sequence,
    insert_singlets, regular_entry, registry_blocks, registry_range,
    remove_element, singlet, slide_left_wall, slide_right_wall,
    split_blocks, strip_singlets, to_sequence,
)
from .perm_core import Permutation, block_values, check_permutation, pattern

__all__ = [
    "Step", "decompose", "decompose_trace", "decompose_general", "compose",
    "compose_trace", "enumerate_registries", "count_registries",
    "ENUMERATION_BUDGET",
]

ENUMERATION_BUDGET = 8


@dataclass(frozen=True)
class Step:
    """One insertion (or removal) of ``value``; ``friend`` is None in cases A and A'."""
    value: int
    case: str
    friend: int | None
    registry: Registry


def _index_of(r: Sequence[Family], x: int) -> int:
    for i, f in enumerate(r):
        if x in f.elements:
            return i
    raise InvalidRegistry(f"{x} is not in the registry")


def _small(k: int, m: int) -> Family:
    return Family((m, k), 1)


def decompose_trace(p: Sequence[int]) -> list[Step]:
    """Registries R^(1), ..., R^(n) built from ``p`` with the case used at each step."""
    p = check_permutation(p)
    pos = {v: i for i, v in enumerate(p)}
    r: Registry = ()
    steps = []
    for k in range(1, len(p) + 1):
        friend = next((v for v in p[pos[k] + 1:] if v < k), None)
        if friend is None:
            r = r + (singlet(k),)
            steps.append(Step(k, "A", None, r))
            continue
        m = friend
        j = _index_of(r, m)
        old = r[j]
        if old.is_singlet:
            r = r[:j] + (_small(k, m),) + r[j + 1:]
            case = "B"
        elif fits(old, m):
            seq = list(to_sequence(old))
            seq.insert(seq.index(m), k)
            r = r[:j] + (from_sequence(seq),) + r[j + 1:]
            case = "C"
        elif m == anchor(old):
            slid, j2 = slide_left_wall(r, j)
            rest = list(slid)
            rest[j2] = remove_element(old, m)
            rest.insert(j + 1, _small(k, m))
            r = tuple(rest)
            case = "D"
        else:
            rest = list(r)
            rest[j] = remove_element(old, m)
            rest.insert(j, _small(k, m))
            r, _ = slide_left_wall(rest, j)
            case = "E"
        steps.append(Step(k, case, m, r))
    return steps


def decompose(p: Sequence[int], stripped: bool = False) -> Registry:
    """The registry of ``p``; with ``stripped=True`` singlets are dropped."""
    steps = decompose_trace(p)
    r = steps[-1].registry if steps else ()
    return strip_singlets(r) if stripped else r


def decompose_general(p: Sequence[int]) -> Registry:
    """Decompose every block of ``p`` on its own pattern and relabel back."""
    p = check_permutation(p)
    out: list[Family] = []
    for blk in block_values(p):
        labels = sorted(blk)
        for f in decompose(pattern(blk)):
            out.append(Family(tuple(labels[e - 1] for e in f.elements), f.reds))
    return tuple(out)


def _complete(r: Sequence[Family], n: int | None) -> Registry:
    r = check_registry(r)
    rng = registry_range(r)
    if n is None:
        n = max(rng, default=0)
    if any(f.is_singlet for f in r):
        if rng != frozenset(range(1, n + 1)):
            raise InvalidRegistry(f"registry with singlets must cover exactly 1..{n}")
    else:
        r = insert_singlets(r, n)
    rb = registry_blocks(r)
    bounds = rb.block_boundaries + (len(r),)
    for a, b in zip(bounds, bounds[1:]):
        if any(f.is_singlet for f in r[a:b]) and b - a > 1:
            raise InvalidRegistry("every singlet family must form a block by itself")
    return r


def compose_trace(r: Sequence[Family], n: int | None = None) -> tuple[Permutation, list[Step]]:
    """Permutation of a registry plus the removal steps, largest value first.

    A registry without singlets is completed to the range 1..n first; ``n``
    defaults to its largest element.
    """
    cur = list(_complete(r, n))
    n = max(registry_range(cur), default=0)
    steps = []
    for top in range(n, 0, -1):
        j = _index_of(cur, top)
        fam = cur[j]
        # the peel only touches the block holding the maximum
        rb = registry_blocks(cur)
        bounds = rb.block_boundaries + (len(cur),)
        b = max(i for i, s in enumerate(rb.block_boundaries) if s <= j)
        lo, hi = bounds[b], bounds[b + 1]
        blk = cur[lo:hi]
        j -= lo
        if fam.is_singlet:
            if hi != len(cur) or len(blk) != 1:
                raise InvalidRegistry(f"singlet ({top}) is not the last block")
            blk, case, m = [], "A'", None
        elif fam.size >= 3:
            seq = list(to_sequence(fam))
            m = seq[seq.index(top) + 1]
            seq.remove(top)
            blk[j] = from_sequence(seq)
            case = "C'"
        else:
            m = fam.elements[0]
            blk[j] = singlet(m)
            if j > 0 and anchor(blk[j - 1]) > m:
                slid, j2 = slide_left_wall(blk, j)
                target = slid[j2 + 1]
                if target.is_singlet:
                    raise InvalidRegistry(f"orphan {m} meets the singlet {target}")
                entered = regular_entry(target, m)
                rest = list(slid[:j2]) + list(slid[j2 + 2:j + 1])
                rest.append(entered)
                rest.extend(slid[j + 1:])
                blk, case = rest, "D'"
            else:
                slid, j2 = slide_right_wall(blk, j)
                if j2 == len(slid) - 1:
                    blk, case = list(slid), "B'"
                else:
                    target = slid[j2 + 1]
                    if target.is_singlet:
                        raise InvalidRegistry(f"orphan {m} meets the singlet {target}")
                    rest = list(slid)
                    rest[j2 + 1] = regular_entry(target, m)
                    del rest[j2]
                    blk, case = rest, "E'"
        cur = cur[:lo] + blk + cur[hi:]
        steps.append(Step(top, case, m, tuple(cur)))
    # replay the insertions: each value goes just before its friend
    perm: list[int] = []
    for st in reversed(steps):
        if st.friend is None:
            perm.append(st.value)
        else:
            perm.insert(perm.index(st.friend), st.value)
    return tuple(perm), steps


def compose(r: Sequence[Family], n: int | None = None) -> Permutation:
    """Inverse of :func:`decompose`."""
    return compose_trace(r, n)[0]


def _families_on(elements: tuple[int, ...]):
    if len(elements) < 2:
        return
    for reds in range(1, len(elements)):
        yield Family(elements, reds)


def enumerate_registries(n: int):
    """Every stripped registry whose range lies in 1..n (ordered lists of disjoint families)."""
    if n > ENUMERATION_BUDGET:
        raise ValueError(f"n={n} exceeds the enumeration budget {ENUMERATION_BUDGET}")

    def set_partitions(items: tuple[int, ...]):
        # partitions of items into blocks of size >= 2
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for size in range(1, len(rest) + 1):
            for others in combinations(rest, size):
                remaining = tuple(x for x in rest if x not in others)
                for tail in set_partitions(remaining):
                    yield [(first,) + others] + tail

    universe = tuple(range(1, n + 1))
    for size in range(n + 1):
        for support in combinations(universe, size):
            for parts in set_partitions(support):
                for order in permutations(parts):
                    yield from _colorings(order)


def _colorings(parts):
    if not parts:
        yield ()
        return
    for f in _families_on(parts[0]):
        for tail in _colorings(parts[1:]):
            yield (f,) + tail


def count_registries(n: int, grouped_by: str = "total"):
    """Count stripped registries over 1..n.

    ``grouped_by`` is ``"total"`` (an int), ``"reds_blues"`` (a Counter keyed by
    total reds and blues) or ``"single_block"`` (the same Counter restricted
    to one-block registries whose range is all of 1..n).
    """
    if grouped_by not in ("total", "reds_blues", "single_block"):
        raise ValueError(f"unknown grouping {grouped_by!r}")
    if grouped_by == "total":
        return sum(1 for _ in enumerate_registries(n))
    table: Counter = Counter()
    full = frozenset(range(1, n + 1))
    for r in enumerate_registries(n):
        if grouped_by == "single_block":
            if registry_range(r) != full or len(registry_blocks(r).anchors) != 1:
                continue
        table[(sum(f.reds for f in r), sum(f.blues for f in r))] += 1
    return table
