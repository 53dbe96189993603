"""
Families, registries and the moves used by the registry bijection.

A family is a set of at least two integers split into reds (the largest
``reds`` elements) and blues (the rest), or a single integer (a singlet).
Its sequence form lists the reds ascending and then the blues descending.

>>> f = from_sequence((6, 7, 5, 3, 2))
>>> f.elements, f.reds
((2, 3, 5, 6, 7), 2)
>>> fits(from_sequence((6, 8, 9, 3, 2)), 3)
True
>>> format_registry(insert_singlets(parse_registry("((5 4),(6 7 3 1))"), 7))
'((5 4),(6 7 3 1),(2))'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidFamily, InvalidRegistry
from .perm_core import is_family_sequence

__all__ = [
    "Family", "Registry", "RegistryBlocks", "singlet", "from_sequence",
    "to_sequence", "parse_family", "format_family", "parse_registry",
    "format_registry", "fits", "exit_positions", "regular_entry",
    "remove_element", "registry_blocks", "split_blocks", "slide_left_wall",
    "slide_right_wall", "strip_singlets", "insert_singlets",
    "registry_range", "check_registry", "anchor",
]


@dataclass(frozen=True, order=True)
class Family:
    """Sorted elements plus the number of reds; ``reds == 0`` marks a singlet."""
    elements: tuple[int, ...]
    reds: int = 0

    def __post_init__(self):
        els = self.elements
        if not els:
            raise InvalidFamily("a family needs at least one element")
        if any(a >= b for a, b in zip(els, els[1:])):
            raise InvalidFamily(f"elements {els} are not strictly increasing")
        if len(els) == 1:
            if self.reds != 0:
                raise InvalidFamily("a singlet carries no colors")
        elif not 1 <= self.reds <= len(els) - 1:
            raise InvalidFamily(
                f"{len(els)} elements need between 1 and {len(els) - 1} reds, got {self.reds}")

    @property
    def is_singlet(self) -> bool:
        return len(self.elements) == 1

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def blues(self) -> int:
        return 0 if self.is_singlet else len(self.elements) - self.reds

    @property
    def red_values(self) -> tuple[int, ...]:
        return self.elements[len(self.elements) - self.reds:] if self.reds else ()

    @property
    def blue_values(self) -> tuple[int, ...]:
        return () if self.is_singlet else self.elements[:len(self.elements) - self.reds]

    @property
    def anchor(self) -> int:
        return self.elements[0]

    @property
    def sequence(self) -> tuple[int, ...]:
        return to_sequence(self)

    def __contains__(self, x: int) -> bool:
        return x in self.elements

    def __str__(self) -> str:
        return format_family(self)


# ordered, immutable
Registry = tuple[Family, ...]


@dataclass(frozen=True)
class RegistryBlocks:
    # start index of every block; the last block runs to the end of the registry
    block_boundaries: tuple[int, ...]
    anchors: tuple[int, ...]


def singlet(m: int) -> Family:
    return Family((m,), 0)


def anchor(f: Family) -> int:
    return f.elements[0]


def to_sequence(f: Family) -> tuple[int, ...]:
    return f.red_values + tuple(reversed(f.blue_values)) if not f.is_singlet else f.elements


def from_sequence(seq: Sequence[int]) -> Family:
    """Read a family from its sequence form; the initial increasing run is red."""
    seq = tuple(seq)
    if len(set(seq)) != len(seq):
        raise InvalidFamily(f"repeated element in {seq}")
    if not is_family_sequence(seq):
        raise InvalidFamily(f"{seq} is not a family sequence")
    if len(seq) == 1:
        return singlet(seq[0])
    k = 1
    while seq[k] > seq[k - 1]:
        k += 1
    return Family(tuple(sorted(seq)), k)


_ANNOTATED = re.compile(r"^(\d+)([rb])$")


def parse_family(text: str) -> Family:
    """Parse ``"(6 7 3 1)"``, ``"6,7,3,1"`` or the annotated ``"6r 7r 3b 1b"``."""
    toks = [t for t in re.split(r"[\s,]+", text.strip().strip("()")) if t]
    if not toks:
        raise InvalidFamily("empty family")
    if any(_ANNOTATED.match(t) for t in toks):
        seq, colors = [], []
        for t in toks:
            m = _ANNOTATED.match(t)
            if not m:
                raise InvalidFamily(f"mixed annotated and plain tokens near {t!r}")
            seq.append(int(m.group(1)))
            colors.append(m.group(2))
        fam = from_sequence(seq)
        expected = ["r"] * fam.reds + ["b"] * fam.blues
        if fam.is_singlet or colors != expected:
            raise InvalidFamily(f"colors {''.join(colors)} do not match the sequence {tuple(seq)}")
        return fam
    try:
        return from_sequence(int(t) for t in toks)
    except ValueError:
        raise InvalidFamily(f"cannot parse family {text!r}") from None


def format_family(f: Family, annotated: bool = False) -> str:
    seq = to_sequence(f)
    if annotated and not f.is_singlet:
        return " ".join(f"{v}{'r' if v in f.red_values else 'b'}" for v in seq)
    return "(" + " ".join(map(str, seq)) + ")"


def parse_registry(text: str) -> Registry:
    """Parse ``"((5 4),(6 7 3 1),(2))"``; the empty registry is ``"()"``."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")") and body.count("(") > 1:
        body = body[1:-1]
    elif body in ("()", ""):
        return ()
    groups = re.findall(r"\(([^()]*)\)", body)
    leftover = re.sub(r"\(([^()]*)\)", "", body)
    if leftover.strip(" ,") or not groups:
        raise InvalidRegistry(f"cannot parse registry {text!r}")
    return check_registry(parse_family(g) for g in groups)


def format_registry(r: Iterable[Family]) -> str:
    return "(" + ",".join(format_family(f) for f in r) + ")"


def check_registry(families: Iterable[Family]) -> Registry:
    """Validate pairwise disjointness and return the registry as a tuple."""
    r = tuple(families)
    seen = set()
    for f in r:
        clash = seen.intersection(f.elements)
        if clash:
            raise InvalidRegistry(f"families overlap in {sorted(clash)}")
        seen.update(f.elements)
    return r


def registry_range(r: Iterable[Family]) -> frozenset[int]:
    return frozenset(x for f in r for x in f.elements)


def fits(f: Family, m: int) -> bool:
    """Can a new maximum enter ``f`` just before its element ``m``?"""
    if m not in f.elements:
        raise InvalidFamily(f"{m} is not in {format_family(f)}")
    if f.is_singlet:
        return True
    seq = list(to_sequence(f))
    seq.insert(seq.index(m), max(seq) + 1)
    return is_family_sequence(seq)


def exit_positions(f: Family) -> frozenset[int]:
    """Elements whose removal leaves a family that the element can re-enter regularly."""
    if f.is_singlet:
        raise InvalidFamily("a singlet has no exit positions")
    keep = {f.blue_values[-1]}
    if f.reds == 1:
        keep.add(f.red_values[0])
    return frozenset(f.elements) - keep


def regular_entry(f: Family, x: int) -> Family:
    """Insert ``x``: blue below the highest blue, red otherwise."""
    if x in f.elements:
        raise InvalidFamily(f"{x} is already in {format_family(f)}")
    if f.is_singlet:
        raise InvalidFamily("regular entry needs a family of size at least two")
    reds = f.reds if x < f.blue_values[-1] else f.reds + 1
    return Family(tuple(sorted(f.elements + (x,))), reds)


def remove_element(f: Family, x: int) -> Family:
    """Drop ``x`` keeping the other colors; at least one red and one blue survive."""
    if x not in f.elements:
        raise InvalidFamily(f"{x} is not in {format_family(f)}")
    if f.is_singlet:
        raise InvalidFamily("cannot remove the only element of a singlet")
    rest = tuple(e for e in f.elements if e != x)
    if len(rest) == 1:
        return singlet(rest[0])
    reds = f.reds - (x in f.red_values)
    return Family(rest, min(max(reds, 1), len(rest) - 1))


def registry_blocks(r: Sequence[Family]) -> RegistryBlocks:
    """Blocks end at the families whose anchor is below every later anchor."""
    starts, anchors = [], []
    running = None
    ends = []
    for i in range(len(r) - 1, -1, -1):
        a = anchor(r[i])
        if running is None or a < running:
            ends.append(i)
            anchors.append(a)
            running = a
    ends.reverse()
    anchors.reverse()
    start = 0
    for e in ends:
        starts.append(start)
        start = e + 1
    return RegistryBlocks(tuple(starts), tuple(anchors))


def split_blocks(r: Sequence[Family]) -> list[Registry]:
    bounds = registry_blocks(r).block_boundaries + (len(r),)
    return [tuple(r[a:b]) for a, b in zip(bounds, bounds[1:])]


def slide_left_wall(r: Sequence[Family], i: int) -> tuple[Registry, int]:
    """Move ``r[i]`` left past neighbors with larger anchors; return the registry and new index."""
    r = list(r)
    while i > 0 and anchor(r[i - 1]) > anchor(r[i]):
        r[i - 1], r[i] = r[i], r[i - 1]
        i -= 1
    return tuple(r), i


def slide_right_wall(r: Sequence[Family], i: int) -> tuple[Registry, int]:
    """Move ``r[i]`` right past neighbors with larger anchors; return the registry and new index."""
    r = list(r)
    while i < len(r) - 1 and anchor(r[i + 1]) > anchor(r[i]):
        r[i + 1], r[i] = r[i], r[i + 1]
        i += 1
    return tuple(r), i


def strip_singlets(r: Iterable[Family]) -> Registry:
    return tuple(f for f in r if not f.is_singlet)


def insert_singlets(r: Sequence[Family], n: int) -> Registry:
    """Add every missing value of 1..n as a singlet block, smallest first."""
    rng = registry_range(r)
    if rng and (min(rng) < 1 or max(rng) > n):
        raise InvalidRegistry(f"registry range exceeds 1..{n}")
    out = list(r)
    for s in range(1, n + 1):
        if s in rng:
            continue
        rb = registry_blocks(out)
        bounds = rb.block_boundaries + (len(out),)
        pos = 0
        for j, a in enumerate(rb.anchors):
            if a < s:
                pos = bounds[j + 1]
        out.insert(pos, singlet(s))
    return tuple(out)
