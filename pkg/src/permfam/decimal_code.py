"""
Dewey-style decimal codes of permutations.

Every value of a permutation gets a dotted number recording its block, its
path through the tree of primitive nodes and its color: ``r`` (ascent),
``b`` (descent) or ``k`` (singlet block). The code lists these numbers in
increasing order of the values.

>>> [str(d) for d in encode((2, 1))]
['1.1.b', '1.2.r']
>>> decode(encode((3, 1, 2)))
(3, 1, 2)
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InvalidCode, InvalidPairing
from .perm_core import Permutation, check_permutation, pattern
from .primitive import build_primitive, primitive_decomposition, primitive_to_pairing
from .tree_form import Group, parenthesize

__all__ = [
    "DecimalNumber", "DecimalCode", "Violation", "ValidationReport",
    "parse_number", "parse_code", "format_code", "encode", "decode",
    "node_cut", "cut_to_pairing", "validate",
]

COLORS = ("r", "b", "k")


@dataclass(frozen=True, order=True)
class DecimalNumber:
    head: tuple[int, ...]
    terminal: str

    def __post_init__(self):
        if not self.head:
            raise InvalidCode("a decimal number needs at least one digit")
        if any(not isinstance(d, int) or d < 1 for d in self.head):
            raise InvalidCode(f"digits must be positive integers: {self.head}")
        if self.terminal not in COLORS:
            raise InvalidCode(f"unknown terminal {self.terminal!r}")

    def __str__(self) -> str:
        return ".".join(map(str, self.head)) + "." + self.terminal


DecimalCode = tuple[DecimalNumber, ...]


@dataclass(frozen=True)
class Violation:
    axiom: str
    # 1-based positions of the offending entries
    entries: tuple[int, ...]
    message: str

    def __str__(self) -> str:
        where = ",".join(map(str, self.entries)) or "-"
        return f"[{self.axiom}] entries {where}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def parse_number(text: str) -> DecimalNumber:
    parts = text.strip().split(".")
    if len(parts) < 2:
        raise InvalidCode(f"{text!r}: expected digits followed by a color")
    try:
        head = tuple(int(d) for d in parts[:-1])
    except ValueError:
        raise InvalidCode(f"{text!r}: non-numeric digit") from None
    return DecimalNumber(head, parts[-1].lower())


def parse_code(text: str | Iterable[str]) -> DecimalCode:
    """One decimal number per line (or per item); blank lines and commas are ignored."""
    if isinstance(text, str):
        text = text.replace(",", "\n").splitlines()
    return tuple(parse_number(ln) for ln in text if ln.strip())


def format_code(code: Iterable[DecimalNumber]) -> str:
    return "\n".join(map(str, code))


def _node_sequence(g: Group) -> list[int]:
    seq = []
    for it in g.items:
        seq.extend(it.bud() if isinstance(it, Group) else [it])
    return seq


def _encode_group(g: Group, head: tuple[int, ...], out: dict[int, DecimalNumber]) -> None:
    seq = _node_sequence(g)
    pat = pattern(seq)
    pairing, _ = primitive_to_pairing(pat)
    dec = primitive_decomposition(pat)
    reds = set(dec.family.red_values)
    rank = dict(zip(seq, pat))
    for it in g.items:
        if isinstance(it, Group):
            lo = it.bud()[1]
            _encode_group(it, head + (pairing[rank[lo] - 1],), out)
        else:
            r = rank[it]
            out[it] = DecimalNumber(head + (pairing[r - 1],), "r" if r in reds else "b")


def encode(p: Sequence[int], singlet_color: str = "k") -> DecimalCode:
    """Decimal code of ``p``; singlet blocks get ``singlet_color`` (``k`` or ``r``)."""
    if singlet_color not in ("k", "r"):
        raise ValueError("singlet blocks are colored 'k' or 'r'")
    p = check_permutation(p)
    out: dict[int, DecimalNumber] = {}
    for i, g in enumerate(parenthesize(p), start=1):
        if len(g.items) == 1:
            out[g.items[0]] = DecimalNumber((i,), singlet_color)
        else:
            _encode_group(g, (i,), out)
    return tuple(out[v] for v in range(1, len(p) + 1))


def _cut(code: Sequence[DecimalNumber], head: tuple[int, ...]) -> list[tuple[int, tuple[int, int | str]]]:
    """(entry position, (n, 1|2|color)) pairs of the node cut, in code order."""
    k = len(head)
    out = []
    for pos, d in enumerate(code, start=1):
        if d.head[:k] != head or len(d.head) <= k:
            continue
        n, rest = d.head[k], d.head[k + 1:]
        if not rest:
            out.append((pos, (n, d.terminal)))
        elif rest[0] in (1, 2) and all(x == 1 for x in rest[1:]):
            out.append((pos, (n, rest[0])))
    return out


def node_cut(code: Sequence[DecimalNumber], head: Sequence[int]) -> tuple[tuple[int, int | str], ...]:
    """The node cut of a branch head, e.g. ``((1, 1), (2, 1), (3, 'b'), ...)``."""
    head = tuple(head)
    if not _is_branch_head(code, head):
        raise InvalidCode(f"{'.'.join(map(str, head))} is not a branch head")
    return tuple(item for _, item in _cut(code, head))


def _is_branch_head(code: Sequence[DecimalNumber], head: tuple[int, ...]) -> bool:
    k = len(head)
    return any(d.head[:k] == head and len(d.head) > k for d in code)


def cut_to_pairing(cut: Sequence[tuple[int, int | str]]) -> tuple[tuple[int, ...], int]:
    """Pairing sequence and red count of a colored pairing sequence."""
    seq = tuple(-n if x == 2 else n for n, x in cut)
    return seq, sum(1 for _, x in cut if x == "r")


def _check_cut(cut, head_text: str) -> list[Violation]:
    bad = []
    expect = 1
    opened: dict[int, int] = {}
    closed: set[int] = set()
    height = 0
    seen_red = False
    blues = reds = 0
    for i, (pos, (n, x)) in enumerate(cut, start=1):
        if x == 2:
            if n not in opened or n in closed:
                bad.append(Violation("pairing", (pos,), f"{head_text}{n}.2 has no earlier unpaired {n}.1"))
            else:
                closed.add(n)
            height -= 1
        else:
            if n != expect:
                bad.append(Violation("natural-order", (pos,),
                                     f"{head_text}{n}.{x} appears where {expect} was due"))
            expect = n + 1
            height += 1
            if x == 1:
                opened[n] = pos
            elif x == "b":
                blues += 1
                if seen_red:
                    bad.append(Violation("leaf-colors", (pos,), f"blue leaf {head_text}{n}.b after a red"))
            elif x == "r":
                reds += 1
                seen_red = True
            else:
                bad.append(Violation("leaf-colors", (pos,), f"black leaf {head_text}{n}.k inside a branch"))
        if i >= 2 and height < 2:
            bad.append(Violation("dyck", (pos,), f"sign sum {height} < 2 after {i} entries of {head_text[:-1] or 'root'}"))
    for n, pos in opened.items():
        if n not in closed:
            bad.append(Violation("pairing", (pos,), f"{head_text}{n}.1 is never closed by {n}.2"))
    if cut and (blues == 0 or reds == 0):
        bad.append(Violation("leaf-colors", tuple(p for p, _ in cut),
                             f"branch {head_text[:-1]} needs at least one blue and one red leaf"))
    return bad


def validate(code: Sequence[DecimalNumber]) -> ValidationReport:
    """Check every axiom of a decimal code and report all violations found."""
    code = tuple(code)
    bad: list[Violation] = []
    if not code:
        return ValidationReport((Violation("blocks", (), "empty code"),))

    # leaf heads appear once and are never continued by digits
    continued: dict[tuple[int, ...], list[int]] = defaultdict(list)
    leaves: dict[tuple[int, ...], list[int]] = defaultdict(list)
    for pos, d in enumerate(code, start=1):
        leaves[d.head].append(pos)
        for k in range(1, len(d.head)):
            continued[d.head[:k]].append(pos)
    for h, where in leaves.items():
        text = ".".join(map(str, h))
        if len(where) > 1:
            bad.append(Violation("leaf-head", tuple(where), f"leaf head {text} is used {len(where)} times"))
        if h in continued:
            bad.append(Violation("leaf-head", tuple(where) + tuple(continued[h][:1]),
                                 f"{text} is followed both by a color and by digits"))

    for pos, d in enumerate(code, start=1):
        if d.terminal == "k" and len(d.head) != 1:
            bad.append(Violation("colors", (pos,), f"black terminal only marks singlet blocks, got {d}"))

    # block labels and anchors
    labels = sorted({d.head[0] for d in code})
    if labels != list(range(1, len(labels) + 1)):
        missing = sorted(set(range(1, labels[-1] + 1)) - set(labels))
        bad.append(Violation("blocks", (), f"block labels skip {missing}"))
    anchor_pos = []
    for i in labels:
        found = [pos for pos, d in enumerate(code, start=1)
                 if d.head[0] == i and all(x == 1 for x in d.head[1:])]
        if len(found) != 1:
            members = tuple(pos for pos, d in enumerate(code, start=1) if d.head[0] == i)
            bad.append(Violation("anchor", tuple(found) or members,
                                 f"block {i} has {len(found)} anchors instead of one"))
            continue
        d = code[found[0] - 1]
        if len(d.head) == 1 and d.terminal not in ("k", "r"):
            bad.append(Violation("anchor", tuple(found), f"singlet anchor {d} must be black (or red)"))
        if len(d.head) > 1 and d.terminal != "b":
            bad.append(Violation("anchor", tuple(found), f"anchor {d} of a nonsinglet block must be blue"))
        anchor_pos.append(found[0])
    for a, b in zip(anchor_pos, anchor_pos[1:]):
        if a > b:
            bad.append(Violation("anchor-order", (a, b), "block anchors are not in ascending order"))

    # node cuts of every branch head
    branch_heads = sorted(continued, key=lambda h: (len(h), h))
    for h in branch_heads:
        cut = _cut(code, h)
        text = ".".join(map(str, h)) + "."
        bad.extend(_check_cut(cut, text))
        paired = {n for _, (n, x) in cut if x == 2}
        # every deeper entry hangs from a bud of this node
        for pos, d in enumerate(code, start=1):
            if d.head[:len(h)] == h and len(d.head) > len(h) + 1:
                n = d.head[len(h)]
                if n not in paired:
                    bad.append(Violation("attachment", (pos,),
                                         f"{d} lies under {text}{n} which is not a bud of {text[:-1]}"))
    return ValidationReport(tuple(dict.fromkeys(bad)))


def _decode_branch(code: DecimalCode, head: tuple[int, ...]) -> list[int]:
    cut = _cut(code, head)
    pairing, reds = cut_to_pairing([item for _, item in cut])
    sigma = build_primitive(pairing, reds).perm
    line: list[int] = []
    skip = False
    for r in sigma:
        if skip:
            skip = False
            continue
        pos, (n, x) = cut[r - 1]
        if x == 2:
            line.extend(_decode_branch(code, head + (n,)))
            skip = True
        else:
            line.append(pos)
    return line


def decode(code: Sequence[DecimalNumber]) -> Permutation:
    """The permutation whose decimal code is ``code``; raises on axiom violations."""
    code = tuple(code)
    report = validate(code)
    if not report.ok:
        raise InvalidCode("; ".join(map(str, report.violations)))
    labels = sorted({d.head[0] for d in code})
    out: list[int] = []
    try:
        for i in labels:
            members = [pos for pos, d in enumerate(code, start=1) if d.head[0] == i]
            if len(members) == 1 and len(code[members[0] - 1].head) == 1:
                out.extend(members)
            else:
                out.extend(_decode_branch(code, (i,)))
    except InvalidPairing as exc:
        raise InvalidCode(str(exc)) from None
    return check_permutation(out)
