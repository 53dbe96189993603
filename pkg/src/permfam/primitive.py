"""
Primitive permutations, pairing sequences and their counts.

A primitive permutation grows from ``(2 1)`` by inserting each new maximum
just before an element of the active family: either the maximum fits into
the family, or it pulls that element out and the two form a bud.

>>> build_primitive((1, 2, 3, -2, 4, 5, -5), 2).perm
(4, 2, 3, 5, 7, 6, 1)
>>> [count_primitive(2, b) for b in range(6)]
[1, 3, 21, 207, 2529, 36243]
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import InvalidPairing
from .family import Family, from_sequence
from .perm_core import Permutation, check_permutation, is_family_sequence

__all__ = [
    "DecoratedDyckPath", "PrimitivePermutation", "OdeCheck",
    "parse_pairing", "check_pairing", "pairing_to_dyck", "dyck_to_pairing",
    "format_dyck", "build_primitive", "primitive_decomposition",
    "is_primitive", "primitive_to_pairing", "count_primitive",
    "count_primitive_states", "count_pairings", "phi_series",
    "verify_phi_ode", "format_primitive",
]


@dataclass(frozen=True)
class DecoratedDyckPath:
    steps: tuple[int, ...]
    # one choice number per -1 step, in order
    decorations: tuple[int, ...]


@dataclass(frozen=True)
class PrimitivePermutation:
    perm: Permutation
    # (n, m) value pairs, in order of creation
    buds: tuple[tuple[int, int], ...]
    # active values in left-to-right order
    active: tuple[int, ...]

    @property
    def family(self) -> Family:
        return from_sequence(self.active)

    @property
    def reds(self) -> int:
        return self.family.reds

    @property
    def blues(self) -> int:
        return self.family.blues

    @property
    def bud_positions(self) -> tuple[tuple[int, int], ...]:
        where = {v: i for i, v in enumerate(self.perm, start=1)}
        return tuple((where[a], where[b]) for a, b in self.buds)


def parse_pairing(text: str) -> tuple[int, ...]:
    body = text.strip().strip("()[]")
    try:
        return check_pairing(int(t) for t in re.split(r"[\s,]+", body) if t)
    except ValueError as exc:
        if isinstance(exc, InvalidPairing):
            raise
        raise InvalidPairing(f"cannot parse pairing sequence {text!r}") from None


def check_pairing(values) -> tuple[int, ...]:
    """Validate a pairing sequence, naming the first offending (1-based) index."""
    p = tuple(values)
    if p[:2] != (1, 2):
        raise InvalidPairing("a pairing sequence starts with 1, 2")
    nxt, height = 1, 0
    unpaired: set[int] = set()
    for i, v in enumerate(p, start=1):
        if v == 0:
            raise InvalidPairing(f"index {i}: zero entry")
        if v > 0:
            if v != nxt:
                raise InvalidPairing(f"index {i}: expected positive {nxt}, got {v}")
            nxt += 1
            unpaired.add(v)
            height += 1
        else:
            if -v not in unpaired:
                raise InvalidPairing(f"index {i}: {v} has no unpaired partner before it")
            unpaired.remove(-v)
            height -= 1
            if height < 2:
                raise InvalidPairing(f"index {i}: sign sum drops below 2")
    return p


def pairing_to_dyck(p: Sequence[int]) -> DecoratedDyckPath:
    p = check_pairing(p)
    open_: list[int] = []
    steps, decos = [], []
    for v in p:
        if v > 0:
            open_.append(v)
            steps.append(1)
        else:
            decos.append(open_.index(-v) + 1)
            open_.remove(-v)
            steps.append(-1)
    return DecoratedDyckPath(tuple(steps), tuple(decos))


def dyck_to_pairing(d: DecoratedDyckPath) -> tuple[int, ...]:
    open_: list[int] = []
    out = []
    decos = iter(d.decorations)
    nxt = 1
    for i, s in enumerate(d.steps, start=1):
        if s == 1:
            open_.append(nxt)
            out.append(nxt)
            nxt += 1
        elif s == -1:
            try:
                c = next(decos)
            except StopIteration:
                raise InvalidPairing(f"index {i}: descent without a decoration") from None
            if not 1 <= c <= len(open_):
                raise InvalidPairing(f"index {i}: decoration {c} outside 1..{len(open_)}")
            out.append(-open_.pop(c - 1))
        else:
            raise InvalidPairing(f"index {i}: step {s} is not +1 or -1")
    if next(decos, None) is not None:
        raise InvalidPairing("more decorations than descents")
    return check_pairing(out)


def format_dyck(d: DecoratedDyckPath) -> str:
    decos = iter(d.decorations)
    return "(" + ",".join("+" if s > 0 else f"-({next(decos)})" for s in d.steps) + ")"


def _reds_schedule(p: tuple[int, ...], reds: int) -> list[int]:
    """Red counts of the active family after each prefix, from the last step back."""
    n = len(p)
    heights, h = [], 0
    for v in p:
        h += 1 if v > 0 else -1
        heights.append(h)
    if not 1 <= reds <= heights[-1] - 1:
        raise InvalidPairing(f"reds must lie in 1..{heights[-1] - 1}, got {reds}")
    choice = pairing_to_dyck(p).decorations
    sched = [0] * n
    sched[-1] = reds
    ci = len(choice) - 1
    for i in range(n - 1, 1, -1):
        r = sched[i]
        if p[i] > 0:
            sched[i - 1] = r if r == 1 else r - 1
        else:
            blues = heights[i] - r
            sched[i - 1] = r if choice[ci] <= blues else r + 1
            ci -= 1
    return sched


def build_primitive(p: Sequence[int], reds: int) -> PrimitivePermutation:
    """The primitive permutation with pairing sequence ``p`` and ``reds`` active reds."""
    p = check_pairing(p)
    sched = _reds_schedule(p, reds)
    choices = iter(pairing_to_dyck(p).decorations)
    perm = [2, 1]
    active = {1, 2}
    buds = []
    for i in range(3, len(p) + 1):
        target = sched[i - 1]
        seq = [v for v in perm if v in active]
        fam = from_sequence(seq)
        if p[i - 1] > 0:
            before = seq[0] if target == 1 else fam.blue_values[-1]
            perm.insert(perm.index(before), i)
            active.add(i)
        else:
            c = next(choices)
            blues_after = sum(1 for v in p[:i] if v > 0) - sum(1 for v in p[:i] if v < 0) - target
            if c <= blues_after:
                friend = fam.blue_values[c - 1]
            else:
                friend = fam.red_values[c - blues_after - 1]
            perm.insert(perm.index(friend), i)
            active.discard(friend)
            buds.append((i, friend))
    out = PrimitivePermutation(tuple(perm), tuple(buds), tuple(v for v in perm if v in active))
    if out.reds != reds:
        raise InvalidPairing(f"construction ended with {out.reds} reds instead of {reds}")
    return out


def primitive_decomposition(p: Sequence[int]) -> PrimitivePermutation | None:
    """Buds and active family of ``p`` if it is primitive, else None."""
    p = check_permutation(p)
    n = len(p)
    if n < 2 or [v for v in p if v <= 2] != [2, 1]:
        return None
    pos = {v: i for i, v in enumerate(p)}
    active = {1, 2}
    buds = []
    for k in range(3, n + 1):
        friend = next((v for v in p[pos[k] + 1:] if v < k), None)
        if friend is None or friend not in active:
            return None
        seq = [v for v in p if v in active or v == k]
        if is_family_sequence(seq):
            active.add(k)
        else:
            active.discard(friend)
            buds.append((k, friend))
    return PrimitivePermutation(p, tuple(buds), tuple(v for v in p if v in active))


def is_primitive(p: Sequence[int]) -> bool:
    return primitive_decomposition(p) is not None


def primitive_to_pairing(p: Sequence[int] | PrimitivePermutation) -> tuple[tuple[int, ...], int]:
    """Pairing sequence and red count of a primitive permutation."""
    perm = p.perm if isinstance(p, PrimitivePermutation) else tuple(p)
    dec = primitive_decomposition(perm)
    if dec is None:
        raise InvalidPairing(f"{perm} is not primitive")
    bud_of = dict(dec.buds)
    out = [1, 2]
    positives = 2
    for k in range(3, len(perm) + 1):
        if k in bud_of:
            out.append(-out[bud_of[k] - 1])
        else:
            positives += 1
            out.append(positives)
    return tuple(out), dec.reds


def format_primitive(pp: PrimitivePermutation) -> str:
    """Line notation with buds parenthesized, e.g. ``((4 2) 3 5 (7 6) 1)``."""
    heads = dict(pp.buds)
    out, skip = [], set()
    for v in pp.perm:
        if v in skip:
            continue
        if v in heads:
            out.append(f"({v} {heads[v]})")
            skip.add(heads[v])
        else:
            out.append(str(v))
    return "(" + " ".join(out) + ")"


@lru_cache(maxsize=None)
def _states(length: int) -> dict[tuple[int, int, int], int]:
    """Counts of primitive permutations of ``length`` by (reds, blues, buds)."""
    if length == 2:
        return {(1, 1, 0): 1}
    out: dict[tuple[int, int, int], int] = {}
    for (k, l, b), c in _states(length - 1).items():
        moves = [((k + 1, l, b), 1)]
        if k == 1:
            moves.append(((1, l + 1, b), 1))
        if l >= 2:
            moves.append(((k, l - 1, b + 1), l - 1))
        if k >= 2:
            moves.append(((k - 1, l, b + 1), k))
        for state, ways in moves:
            out[state] = out.get(state, 0) + c * ways
    return out


def count_primitive_states(reds: int, blues: int, buds: int) -> int:
    """Primitive permutations whose active family has the given colors, with ``buds`` buds."""
    if reds < 1 or blues < 1 or buds < 0:
        return 0
    return _states(reds + blues + 2 * buds).get((reds, blues, buds), 0)


def count_primitive(fam_size: int, buds: int) -> int:
    """Primitive permutations with a fixed (k, l) split of an active family of ``fam_size``.

    The count does not depend on the split, so the split (1, fam_size - 1) is used.
    """
    if fam_size < 2 or buds < 0:
        return 0
    return count_primitive_states(1, fam_size - 1, buds)


@lru_cache(maxsize=None)
def count_pairings(height: int, negatives: int) -> int:
    """Pairing sequences ending at sign sum ``height`` with ``negatives`` negative entries."""
    if height < 2 or negatives < 0:
        return 0
    if height == 2 and negatives == 0:
        return 1
    return count_pairings(height - 1, negatives) + (height + 1) * count_pairings(height + 1, negatives - 1)


# truncated power series over the rationals, coefficient lists

def _mul(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[:order + 1]):
        if x:
            for j, y in enumerate(b[:order + 1 - i]):
                out[i + j] += x * y
    return out


def _inv(a: list[Fraction], order: int) -> list[Fraction]:
    if not a or a[0] == 0:
        raise ZeroDivisionError("series without constant term has no inverse")
    out = [Fraction(0)] * (order + 1)
    out[0] = 1 / a[0]
    for k in range(1, order + 1):
        s = sum((a[j] * out[k - j] for j in range(1, min(k, len(a) - 1) + 1)), Fraction(0))
        out[k] = -s / a[0]
    return out


def phi_series(order: int) -> list[int]:
    """Coefficients of phi(t) up to t^order, from the double factorial series."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    top = order + 2
    d = [Fraction(1)]
    for k in range(1, top + 1):
        d.append(d[-1] * (2 * k - 1))
    inv_d = _inv(d, top)
    g = [-c for c in inv_d[1:]]  # (1 - 1/D) / t
    inv_g = _inv(g, order + 1)
    phi = [-c / 2 for c in inv_g[1:order + 2]]  # (1 - 1/G) / (2t)
    if any(c.denominator != 1 or c < 0 for c in phi):
        raise ArithmeticError("phi has a non-integral coefficient")
    return [int(c) for c in phi]


@dataclass(frozen=True)
class OdeCheck:
    ok: bool
    checked: int
    # (x exponent, t exponent, residual) of the first failure
    first_discrepancy: tuple[int, int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_phi_ode(max_x: int, max_t: int, shift: int = -4) -> OdeCheck:
    """Check t x^3 dPsi/dx = x^2 (x - x^2 - 4t) Psi + 2 t phi(t) - x coefficientwise.

    Here ``Psi = sum c(f, b) x^(f + shift) t^b`` with ``c = count_primitive``;
    the identity holds for ``shift = -4``. The boundary ``[x^2] Phi = phi`` is
    checked first and reported at x exponent 2. Coefficients whose inputs
    fall outside ``f <= max_x, b <= max_t`` are skipped.
    """
    if max_x < 2 or max_t < 2:
        raise ValueError("truncation orders must be at least 2")
    phi = phi_series(max_t)
    for b in range(max_t + 1):
        if count_primitive(2, b) != phi[b]:
            return OdeCheck(False, b, (2, b, count_primitive(2, b) - phi[b]))

    def c(f: int, b: int) -> int:
        return count_primitive(f, b) if b >= 0 else 0

    checked = max_t + 1
    for e in range(min(0, shift + 2), max_x + shift + 3):
        for b in range(max_t + 1):
            f = e - 2 - shift
            residual = ((e - 2) * c(f, b - 1) - c(f - 1, b) + c(f - 2, b)
                        + 4 * c(f, b - 1))
            if e == 0 and b >= 1:
                residual -= 2 * phi[b - 1]
            if e == 1 and b == 0:
                residual += 1
            checked += 1
            if residual:
                return OdeCheck(False, checked, (e, b, residual))
    return OdeCheck(True, checked)
