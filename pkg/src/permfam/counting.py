"""
Multinomial counts of bicolored partitions and what they count.

``N[r](k, l)`` counts unordered partitions of ``{1..k+l}`` into ``r``
families with ``k`` reds and ``l`` blues in total. Weighting by
``(r + s)!`` gives the shifted multinomials; shift -1 gives Eulerian
numbers and shift 0 derangement numbers.

>>> fundamental_multinomial(3, 3, 2), eulerian(3, 3), derangement_count(3, 3)
(35, 66, 161)
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb, factorial, prod
from typing import Iterable, Mapping

from .family import Family
from .perm_core import Permutation, inverse, inverse_cycle_transform
from .registry_bijection import compose

__all__ = [
    "fundamental_multinomial", "shifted_multinomial", "eulerian",
    "derangement_count", "eulerian_triangle", "part_partitions",
    "check_fundamental_recurrence", "check_shifted_recurrence",
    "check_eulerian_recurrence", "binomial_form", "CompositionPair",
    "enumerate_compositions", "construct_permutations", "MODES",
    "bicolored_partitions", "BijectionReport", "recurrence_bijection_check",
    "family_config_count", "enumerate_profiles",
]


def _fact(n: int) -> int:
    return factorial(n) if n >= 0 else 0


def part_partitions(k: int, l: int, r: int) -> list[tuple[tuple[int, int], ...]]:
    """Unordered partitions of (k, l) into ``r`` parts with both coordinates >= 1.

    Parts are listed in nonincreasing order, so each partition appears once.
    """
    if r < 0 or k < 0 or l < 0:
        return []
    if r == 0:
        return [()] if k == l == 0 else []
    out = []
    # stack of (remaining k, remaining l, parts left, upper bound on next part, parts so far)
    stack = [(k, l, r, (k, l), ())]
    while stack:
        rk, rl, left, bound, acc = stack.pop()
        if left == 0:
            if rk == rl == 0:
                out.append(acc)
            continue
        for a in range(min(rk - (left - 1), bound[0]), 0, -1):
            for b in range(rl - (left - 1), 0, -1):
                if (a, b) > bound:
                    continue
                stack.append((rk - a, rl - b, left - 1, (a, b), acc + ((a, b),)))
    return sorted(out)


@lru_cache(maxsize=None)
def fundamental_multinomial(k: int, l: int, r: int) -> int:
    """N[r](k, l); ``N[0](0, 0) = 1`` and every other degenerate case is 0."""
    total = 0
    for parts in part_partitions(k, l, r):
        mult = prod(factorial(c) for c in Counter(parts).values())
        total += factorial(k + l) // (prod(factorial(a + b) for a, b in parts) * mult)
    return total


def shifted_multinomial(k: int, l: int, s: int) -> int:
    """N(s)(k, l) = sum over r of (r + s)! N[r](k, l), negative factorials being 0."""
    if k < 0 or l < 0:
        return 0
    return sum(_fact(r + s) * fundamental_multinomial(k, l, r)
               for r in range(max(-s, 0), min(k, l) + 1))


def eulerian(k: int, l: int) -> int:
    return shifted_multinomial(k, l, -1)


def derangement_count(k: int, l: int) -> int:
    return shifted_multinomial(k, l, 0)


@lru_cache(maxsize=None)
def eulerian_triangle(n: int, j: int) -> int:
    """Classical Eulerian number A(n, j): permutations of n with j descents."""
    if n == 0:
        return 1 if j == 0 else 0
    if j < 0 or j >= n:
        return 0
    return (j + 1) * eulerian_triangle(n - 1, j) + (n - j) * eulerian_triangle(n - 1, j - 1)


def check_fundamental_recurrence(k: int, l: int, r: int) -> bool:
    N = fundamental_multinomial
    lhs = N(k, l, r)
    rhs = (k * N(k, l - 1, r) + l * N(k - 1, l, r)
           + (k + l - 1) * (N(k - 1, l - 1, r - 1) - r * N(k - 1, l - 1, r)))
    return lhs == rhs


def check_shifted_recurrence(k: int, l: int, s: int) -> bool:
    S, N = shifted_multinomial, fundamental_multinomial
    extra = N(k - 1, l - 1, -s - 1) if -s - 1 >= 0 else 0
    rhs = (k * S(k, l - 1, s) + l * S(k - 1, l, s)
           + (k + l - 1) * (extra + (s + 1) * S(k - 1, l - 1, s)))
    return S(k, l, s) == rhs


def check_eulerian_recurrence(k: int, l: int) -> bool:
    """E(k, l) = k E(k, l-1) + l E(k-1, l), valid away from the base case (1, 1)."""
    return eulerian(k, l) == k * eulerian(k, l - 1) + l * eulerian(k - 1, l)


def _compositions_of(k: int, l: int):
    """Ordered compositions of (k, l) into parts with both coordinates >= 1."""
    if k == 0 and l == 0:
        yield ()
        return
    for a in range(1, k + 1):
        for b in range(1, l + 1):
            for rest in _compositions_of(k - a, l - b):
                yield ((a, b),) + rest


def binomial_form(k: int, l: int, s: int) -> int:
    """N(s)(k, l) for s <= 0 as a sum of binomial-times-multinomial products."""
    if s > 0:
        raise ValueError("the binomial form needs s <= 0")
    total = 0
    lead = -s - 1  # number of leading binomial factors
    for parts in _compositions_of(k, l):
        r = len(parts)
        if r < -s:
            continue
        sizes = [a + b for a, b in parts]
        term = 1
        rest = sum(sizes)
        for i in range(lead):
            term *= comb(rest - 1, sizes[i] - 1)
            rest -= sizes[i]
        if s == 0:
            tail = sizes
            top = rest
        else:
            tail = [sizes[lead] - 1] + sizes[lead + 1:]
            top = rest - 1
        term *= factorial(top) // prod(factorial(x) for x in tail)
        total += term
    return total


@dataclass(frozen=True, order=True)
class CompositionPair:
    """Ordered (A_i, B_i) pairs, each with min A_i > max B_i."""
    pairs: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    def registry(self) -> tuple[Family, ...]:
        return tuple(Family(tuple(sorted(a + b)), len(a)) for a, b in self.pairs)


def _set_partitions(items: tuple[int, ...]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for size in range(len(rest) + 1):
        for others in combinations(rest, size):
            remaining = tuple(x for x in rest if x not in others)
            for tail in _set_partitions(remaining):
                yield [(first,) + others] + tail


def enumerate_compositions(A: Iterable[int], B: Iterable[int]) -> list[CompositionPair]:
    """Every ordered way to split A and B into pairs (A_i, B_i) with min A_i > max B_i."""
    A, B = tuple(sorted(set(A))), tuple(sorted(set(B)))
    if set(A) & set(B):
        raise ValueError("A and B must be disjoint")
    out = []
    for a_parts in _set_partitions(A):
        r = len(a_parts)
        for b_parts in _set_partitions(B):
            if len(b_parts) != r:
                continue
            # match each B part to an A part; the orders then give r! compositions
            for matched in _matchings(a_parts, b_parts):
                out.extend(_orderings(matched))
    return sorted(set(out))


def _matchings(a_parts, b_parts):
    if not a_parts:
        yield []
        return
    a, rest = a_parts[0], a_parts[1:]
    for i, b in enumerate(b_parts):
        if min(a) > max(b):
            for tail in _matchings(rest, b_parts[:i] + b_parts[i + 1:]):
                yield [(a, b)] + tail


def _orderings(matched):
    from itertools import permutations
    for order in permutations(matched):
        yield CompositionPair(tuple(order))


MODES = ("ascent-descent", "diagonal", "positions")


def construct_permutations(A: Iterable[int], B: Iterable[int], n: int | None = None,
                           mode: str = "ascent-descent") -> list[Permutation]:
    """Permutations of 1..n realizing (A, B) as ascent/descent values, over/under
    diagonal values, or over/under diagonal positions, depending on ``mode``."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    A, B = set(A), set(B)
    top = max(A | B, default=0)
    n = top if n is None else n
    if n < top:
        raise ValueError(f"n={n} is smaller than the largest value {top}")
    out = []
    for comp in enumerate_compositions(A, B):
        p = compose(comp.registry(), n)
        if mode != "ascent-descent":
            p = inverse_cycle_transform(p)
            if mode == "positions":
                p = inverse(p)
        out.append(p)
    return sorted(out)


def bicolored_partitions(k: int, l: int, r: int) -> list[frozenset[Family]]:
    """The set partitions counted by N[r](k, l), as frozensets of families."""
    n = k + l
    if r == 0:
        return [frozenset()] if n == 0 else []
    out = []
    for blocks in _set_partitions(tuple(range(1, n + 1))):
        if len(blocks) != r or any(len(b) < 2 for b in blocks):
            continue
        for reds in _red_choices([len(b) for b in blocks], k):
            out.append(frozenset(Family(tuple(b), c) for b, c in zip(blocks, reds)))
    return out


def _red_choices(sizes: list[int], k: int):
    if not sizes:
        if k == 0:
            yield ()
        return
    for c in range(1, sizes[0]):
        if c <= k:
            for tail in _red_choices(sizes[1:], k - c):
                yield (c,) + tail


def _relabel(fams: Iterable[Family], f) -> frozenset[Family]:
    out = []
    for fam in fams:
        els = tuple(sorted(f(x) for x in fam.elements))
        out.append(Family(els, fam.reds))
    return frozenset(out)


def _recolor(fam: Family, add: Iterable[int] = (), drop: Iterable[int] = (), reds: int | None = None) -> Family:
    els = tuple(sorted((set(fam.elements) | set(add)) - set(drop)))
    if len(els) == 1:
        return Family(els, 0)
    return Family(els, fam.reds if reds is None else reds)


def _owner(P: frozenset[Family], x: int) -> Family:
    return next(f for f in P if x in f.elements)


def _forward(obj, k: int, l: int):
    """Left object -> (case, right object)."""
    N = k + l
    if obj[0] == "P":
        P = obj[1]
        S = _owner(P, N)
        if S.size == 2:
            m = S.elements[0]
            rest = _relabel(P - {S}, lambda x: x - 1 if x > m else x)
            return "A", ("A'", rest, m)
        others = P - {S}
        if S.reds >= 2:
            m = S.blue_values[-1]
            return "B", ("blue", others | {_recolor(S, drop=[N], reds=S.reds - 1)}, m)
        m = S.elements[-2]
        return "C", ("red", others | {_recolor(S, drop=[N], reds=1)}, m)
    _, P, m, S = obj
    raised = {f: _relabel([f], lambda x: x + 1 if x >= m else x) for f in P}
    T = next(iter(raised[S]))
    others = frozenset(next(iter(raised[f])) for f in P if f != S)
    if m <= S.blue_values[-1]:
        return "D", ("blue", others | {_recolor(T, add=[m])}, m)
    return "E", ("red", others | {_recolor(T, add=[m], reds=T.reds + 1)}, m)


def _backward(obj, k: int, l: int):
    """Right object -> (case, left object)."""
    N = k + l
    term, P, m = obj
    if term == "A'":
        raised = _relabel(P, lambda x: x + 1 if x >= m else x)
        return "A'", ("P", raised | {Family((m, N), 1)})
    S = _owner(P, m)
    others = P - {S}
    lower = lambda x: x - 1 if x > m else x
    if term == "blue":
        if m == S.blue_values[-1]:
            return "B'", ("P", others | {_recolor(S, add=[N], reds=S.reds + 1)})
        T = _recolor(S, drop=[m])
        return "D'", ("T", _relabel(others | {T}, lower), m, next(iter(_relabel([T], lower))))
    if S.reds == 1:
        return "C'", ("P", others | {_recolor(S, add=[N], reds=1)})
    T = _recolor(S, drop=[m], reds=S.reds - 1)
    return "E'", ("T", _relabel(others | {T}, lower), m, next(iter(_relabel([T], lower))))


@dataclass(frozen=True)
class BijectionReport:
    ok: bool
    left: int
    right: int
    cases: dict[str, int] = field(default_factory=dict)
    problems: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def recurrence_bijection_check(k: int, l: int, r: int) -> BijectionReport:
    """Materialize both sides of
    N[r](k,l) + r(k+l-1) N[r](k-1,l-1) = (k+l-1) N[r-1](k-1,l-1) + k N[r](k,l-1) + l N[r](k-1,l)
    and check that the case maps A..E and A'..E' are mutually inverse bijections."""
    n = k + l
    left = [("P", P) for P in bicolored_partitions(k, l, r)]
    left += [("T", P, m, S) for P in bicolored_partitions(k - 1, l - 1, r)
             for m in range(1, n) for S in sorted(P)] if k >= 1 and l >= 1 else []
    right = [("A'", P, m) for P in bicolored_partitions(k - 1, l - 1, r - 1)
             for m in range(1, n)] if k >= 1 and l >= 1 and r >= 1 else []
    right += [("red", P, m) for P in bicolored_partitions(k, l - 1, r)
              for f in P for m in f.red_values] if l >= 1 else []
    right += [("blue", P, m) for P in bicolored_partitions(k - 1, l, r)
              for f in P for m in f.blue_values] if k >= 1 else []
    problems = []
    cases: Counter = Counter()
    images = {}
    for obj in left:
        case, img = _forward(obj, k, l)
        cases[case] += 1
        back_case, back = _backward(img, k, l)
        if back_case != case + "'":
            problems.append(f"{case} maps into {back_case}")
        if back != obj:
            problems.append(f"case {case} does not round-trip on {obj}")
        images[img] = obj
    right_set = set(right)
    if set(images) != right_set:
        problems.append(f"image covers {len(set(images) & right_set)} of {len(right_set)} right objects")
    if len(images) != len(left):
        problems.append("forward map is not injective")
    return BijectionReport(not problems and len(left) == len(right), len(left), len(right),
                           dict(sorted(cases.items())), tuple(problems[:10]))


def family_config_count(n: int, profile: Mapping[tuple[int, int], int], singlets: int) -> int:
    """Permutations of 1..n with ``singlets`` singlet blocks and ``profile[(i, j)]``
    registry families having i reds and j blues."""
    if singlets < 0 or any(c < 0 or i < 1 or j < 1 for (i, j), c in profile.items()):
        raise ValueError("profile entries need i, j >= 1 and nonnegative counts")
    if singlets + sum((i + j) * c for (i, j), c in profile.items()) != n:
        raise ValueError(f"profile does not add up to n={n}")
    denom = factorial(singlets) * prod(factorial(i + j) ** c for (i, j), c in profile.items())
    families = sum(profile.values())
    return (factorial(n) // denom) * factorial(families) // prod(factorial(c) for c in profile.values())


def enumerate_profiles(n: int):
    """Every (profile, singlets) pair with total size n."""
    kinds = [(i, s - i) for s in range(2, n + 1) for i in range(1, s)]

    def walk(idx: int, left: int, acc: dict):
        if idx == len(kinds):
            yield dict(acc), left
            return
        i, j = kinds[idx]
        size = i + j
        for c in range(left // size + 1):
            if c:
                acc[(i, j)] = c
            yield from walk(idx + 1, left - c * size, acc)
            acc.pop((i, j), None)

    yield from walk(0, n, {})
