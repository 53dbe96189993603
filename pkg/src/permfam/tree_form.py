"""
Nested-parentheses form of a permutation, its forest of primitive nodes,
and the iterated-registry (multiparenthesized) form.

>>> format_paren(parenthesize((6, 7, 3, 5, 4, 1, 2)))
'(6 7 3 (5 4) 1)(2)'
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence, Union

from .errors import InvalidPermutation, InvalidRegistry
from .family import Family, Registry
from .perm_core import Permutation, check_permutation, pattern
from .registry_bijection import compose, decompose, decompose_trace

__all__ = [
    "Group", "ParenForm", "PrimitiveNode", "MultiParenForm", "parenthesize",
    "parse_paren", "format_paren", "flatten", "tree_nodes", "format_node",
    "multiparenthesize", "demultiparenthesize", "format_multiparen",
    "parse_multiparen",
]


@dataclass(eq=True)
class Group:
    """A parenthesized group; items are values or nested groups."""
    items: list[Union[int, "Group"]] = field(default_factory=list)

    def values(self) -> list[int]:
        """Every value in the subtree, left to right."""
        out = []
        for it in self.items:
            out.extend(it.values() if isinstance(it, Group) else [it])
        return out

    def own(self) -> tuple[int, ...]:
        return tuple(it for it in self.items if isinstance(it, int))

    def children(self) -> list["Group"]:
        return [it for it in self.items if isinstance(it, Group)]

    def bud(self) -> tuple[int, int]:
        """(second smallest, smallest) of the subtree: the pair that founded it."""
        lo = sorted(self.values())[:2]
        return (lo[1], lo[0])


ParenForm = tuple[Group, ...]


@dataclass(frozen=True)
class PrimitiveNode:
    values: tuple[int, ...]
    buds: tuple[tuple[int, int], ...]
    active_family: tuple[int, ...]
    # the bud this node hangs from in its parent, None at the top level
    root: tuple[int, int] | None
    # own values with every child group replaced by its bud pair
    sequence: tuple[int, ...]
    children: tuple["PrimitiveNode", ...] = ()

    @property
    def pattern(self) -> Permutation:
        return pattern(self.sequence)


def parenthesize(p: Sequence[int]) -> ParenForm:
    """Replay the insertion history of ``p`` as nested groups."""
    forest: list[Group] = []
    home: dict[int, Group] = {}
    for st in decompose_trace(p):
        k, m = st.value, st.friend
        if st.case == "A":
            g = Group([k])
            forest.append(g)
            home[k] = g
        elif st.case in ("B", "C"):
            g = home[m]
            g.items.insert(g.items.index(m), k)
            home[k] = g
        else:
            g = home[m]
            child = Group([k, m])
            g.items[g.items.index(m)] = child
            home[k] = home[m] = child
    return tuple(forest)


def flatten(pf: Sequence[Group]) -> Permutation:
    return tuple(v for g in pf for v in g.values())


def _format_group(g: Group) -> str:
    return "(" + " ".join(_format_group(it) if isinstance(it, Group) else str(it)
                          for it in g.items) + ")"


def format_paren(pf: Sequence[Group]) -> str:
    return "".join(_format_group(g) for g in pf)


_TOKEN = re.compile(r"\(|\)|\d+")


def parse_paren(text: str, require_permutation: bool = True) -> ParenForm:
    """Parse text such as ``"(6 7 3 (5 4) 1)(2)"``.

    Pass ``require_permutation=False`` for groups over arbitrary distinct values.
    """
    stack: list[Group] = []
    forest: list[Group] = []
    if re.sub(r"[\s()\d]", "", text):
        raise InvalidPermutation(f"unexpected characters in {text!r}")
    for tok in _TOKEN.findall(text):
        if tok == "(":
            g = Group()
            (stack[-1].items if stack else forest).append(g)
            stack.append(g)
        elif tok == ")":
            if not stack:
                raise InvalidPermutation("unbalanced ')'")
            stack.pop()
        else:
            if not stack:
                raise InvalidPermutation(f"value {tok} outside any group")
            stack[-1].items.append(int(tok))
    if stack:
        raise InvalidPermutation("unbalanced '('")
    values = flatten(forest)
    if require_permutation:
        check_permutation(values)
    elif len(set(values)) != len(values):
        raise InvalidPermutation("repeated value")
    return tuple(forest)


def _node(g: Group, root) -> PrimitiveNode:
    seq, buds = [], []
    for it in g.items:
        if isinstance(it, Group):
            b = it.bud()
            buds.append(b)
            seq.extend(b)
        else:
            seq.append(it)
    kids = tuple(_node(c, c.bud()) for c in g.children())
    return PrimitiveNode(tuple(g.values()), tuple(buds), g.own(), root, tuple(seq), kids)


def tree_nodes(pf: Sequence[Group]) -> tuple[PrimitiveNode, ...]:
    """One tree of primitive nodes per top-level group."""
    return tuple(_node(g, None) for g in pf)


def format_node(node: PrimitiveNode, relabel: bool = False) -> str:
    """Print a node with its buds in parentheses, e.g. ``(2 (4 3) 1)``."""
    seq = node.pattern if relabel else node.sequence
    lookup = dict(zip(node.sequence, seq))
    buds = {b[0] for b in node.buds}
    out, i = [], 0
    while i < len(node.sequence):
        v = node.sequence[i]
        if v in buds:
            out.append(f"({lookup[v]} {lookup[node.sequence[i + 1]]})")
            i += 2
        else:
            out.append(str(lookup[v]))
            i += 1
    return "(" + " ".join(out) + ")"


# a bicolored part: the set it covers and its number of reds
Part = tuple[frozenset[int], int]


@dataclass(frozen=True)
class MultiParenForm:
    """``levels[0]`` partitions the nonsinglet values of 1..n; ``levels[t + 1]``
    groups the level-``t`` parts, numbered 1, 2, ... by increasing minimum."""
    n: int
    levels: tuple[frozenset[Part], ...]


def _standard(parts) -> list[Part]:
    return sorted(parts, key=lambda part: min(part[0]))


def _level_of(r: Registry) -> frozenset[Part]:
    return frozenset((frozenset(f.elements), f.reds) for f in r)


def _order_permutation(r: Registry) -> Permutation:
    ranks = {m: i for i, m in enumerate(sorted(f.elements[0] for f in r), start=1)}
    return tuple(ranks[f.elements[0]] for f in r)


def multiparenthesize(p: Sequence[int]) -> MultiParenForm:
    """Strip ``p`` to its registry, then encode the order of the families recursively."""
    p = check_permutation(p)
    r = decompose(p, stripped=True)
    levels = [_level_of(r)]
    while len(r) >= 2:
        r = decompose(_order_permutation(r), stripped=True)
        if not r:
            break
        levels.append(_level_of(r))
    return MultiParenForm(len(p), tuple(levels))


def _registry(parts: list[Part], order: Permutation) -> Registry:
    fams = []
    for i in order:
        els, reds = parts[i - 1]
        fams.append(Family(tuple(sorted(els)), reds if len(els) > 1 else 0))
    return tuple(fams)


def demultiparenthesize(mp: MultiParenForm) -> Permutation:
    """Inverse of :func:`multiparenthesize`."""
    levels = [_standard(lv) for lv in mp.levels] or [[]]
    for t, lv in enumerate(levels):
        universe = range(1, mp.n + 1) if t == 0 else range(1, len(levels[t - 1]) + 1)
        seen: set[int] = set()
        for els, reds in lv:
            if len(els) < 2 or not 1 <= reds < len(els):
                raise InvalidRegistry(f"level {t}: bad part {sorted(els)}:{reds}")
            if seen & els or not els <= set(universe):
                raise InvalidRegistry(f"level {t}: part {sorted(els)} overlaps or leaves the range")
            seen |= els
        if t > 0 and len(levels[t - 1]) < 2:
            raise InvalidRegistry(f"level {t} is present but level {t - 1} has fewer than two parts")
    # the topmost level is in standard order
    order: Permutation = tuple(range(1, len(levels[-1]) + 1))
    for t in range(len(levels) - 1, -1, -1):
        size = mp.n if t == 0 else len(levels[t - 1])
        order = compose(_registry(levels[t], order), size)
    return order


def format_multiparen(mp: MultiParenForm) -> str:
    lines = [f"n={mp.n}"]
    for t, lv in enumerate(mp.levels):
        parts = " ".join("{" + ",".join(map(str, sorted(els))) + "}:" + str(reds)
                         for els, reds in _standard(lv))
        lines.append("  " * t + f"level {t}: {parts}".rstrip())
    return "\n".join(lines)


_PART = re.compile(r"\{([\d,\s]*)\}:(\d+)")


def parse_multiparen(text: str) -> MultiParenForm:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n="):
        raise InvalidRegistry("expected a first line 'n=<size>'")
    n = int(lines[0][2:])
    levels = []
    for t, ln in enumerate(lines[1:]):
        head, _, body = ln.partition(":")
        if head.strip() != f"level {t}":
            raise InvalidRegistry(f"expected 'level {t}:', got {ln!r}")
        parts = []
        for els, reds in _PART.findall(body):
            parts.append((frozenset(int(x) for x in els.replace(",", " ").split()), int(reds)))
        if _PART.sub("", body).strip():
            raise InvalidRegistry(f"cannot parse level {t}: {body!r}")
        levels.append(frozenset(parts))
    return MultiParenForm(n, tuple(levels))
