"""
Command-line interface.

Permutations are passed as quoted, space-separated values; any textual
argument may instead be ``@path`` to read it from a file. Exit status is 0 on
success, 1 on a domain error or a failed check, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable, Sequence

from . import counting, decimal_code, oracle, perm_core, primitive, tree_form
from .errors import PermfamError
from .family import format_registry, parse_registry
from .registry_bijection import compose, decompose, decompose_trace

Result = tuple[str, Any]


class CheckFailed(Exception):
    """A check ran to completion and reported failure."""

    def __init__(self, result: Result):
        super().__init__(result[0])
        self.result = result


def _text(arg: str) -> str:
    if arg.startswith("@"):
        with open(arg[1:], encoding="utf-8") as fh:
            return fh.read()
    return arg


def _perm(arg: str):
    return perm_core.parse_permutation(_text(arg))


def _intset(arg: str) -> frozenset[int]:
    body = _text(arg).strip().strip("{}[]()")
    try:
        return frozenset(int(t) for t in body.replace(",", " ").split())
    except ValueError:
        raise PermfamError(f"expected a set of integers, got {arg!r}") from None


def _fmt(p) -> str:
    return perm_core.format_permutation(p)


def _registry_json(r):
    return [{"elements": list(f.elements), "reds": f.reds, "sequence": list(f.sequence)} for f in r]


# -- handlers ---------------------------------------------------------------

_TRANSFORMS: dict[str, Callable] = {
    "cycle": perm_core.cycle_transform,
    "inverse-cycle": perm_core.inverse_cycle_transform,
    "lift": perm_core.eulerian_lift,
    "daisy": perm_core.daisy_chain,
}


def cmd_transform(a) -> Result:
    p = _perm(a.perm)
    q = _TRANSFORMS[a.kind](p)
    return _fmt(q), {"input": list(p), "output": list(q)}


def cmd_decompose(a) -> Result:
    p = _perm(a.perm)
    r = decompose(p, stripped=a.stripped)
    lines, steps = [], []
    if a.trace:
        for i, st in enumerate(decompose_trace(p), start=1):
            friend = "-" if st.friend is None else st.friend
            lines.append(f"R^({i}) {st.case} value={st.value} friend={friend} {format_registry(st.registry)}")
            steps.append({"value": st.value, "case": st.case, "friend": st.friend,
                          "registry": format_registry(st.registry)})
    lines.append(format_registry(r))
    data: dict[str, Any] = {"registry": format_registry(r), "families": _registry_json(r)}
    if a.trace:
        data["trace"] = steps
    return "\n".join(lines), data


def cmd_compose(a) -> Result:
    r = parse_registry(_text(a.registry))
    p = compose(r, a.n)
    return _fmt(p), {"registry": format_registry(r), "permutation": list(p)}


def cmd_parenthesize(a) -> Result:
    text = tree_form.format_paren(tree_form.parenthesize(_perm(a.perm)))
    return text, {"parenthesized": text}


def _walk(node, depth, relabel, lines, out):
    text = tree_form.format_node(node, relabel=relabel)
    root = "-" if node.root is None else f"{node.root[0]} {node.root[1]}"
    lines.append("  " * depth + f"{text}  root={root}")
    item = {"node": text, "root": list(node.root) if node.root else None,
            "active": list(node.active_family), "children": []}
    out.append(item)
    for child in node.children:
        _walk(child, depth + 1, relabel, lines, item["children"])


def cmd_tree(a) -> Result:
    nodes = tree_form.tree_nodes(tree_form.parenthesize(_perm(a.perm)))
    lines: list[str] = []
    data: list[dict] = []
    for node in nodes:
        _walk(node, 0, a.relabel, lines, data)
    return "\n".join(lines), {"trees": data}


def cmd_multipar(a) -> Result:
    if a.decode:
        mp = tree_form.parse_multiparen(_text(a.input))
        p = tree_form.demultiparenthesize(mp)
        return _fmt(p), {"permutation": list(p)}
    mp = tree_form.multiparenthesize(_perm(a.input))
    levels = [[{"elements": sorted(els), "reds": reds} for els, reds in
               sorted(lv, key=lambda part: min(part[0]))] for lv in mp.levels]
    return tree_form.format_multiparen(mp), {"n": mp.n, "levels": levels}


def _primitive_json(pp, pairing, reds):
    return {"permutation": list(pp.perm), "parenthesized": primitive.format_primitive(pp),
            "buds": [list(b) for b in pp.buds], "active": list(pp.active),
            "pairing": list(pairing), "reds": reds,
            "dyck": primitive.format_dyck(primitive.pairing_to_dyck(pairing))}


def cmd_primitive_build(a) -> Result:
    pairing = primitive.parse_pairing(_text(a.pairing))
    pp = primitive.build_primitive(pairing, a.reds)
    return primitive.format_primitive(pp), _primitive_json(pp, pairing, a.reds)


def cmd_primitive_invert(a) -> Result:
    p = _perm(a.perm)
    pp = primitive.primitive_decomposition(p)
    if pp is None:
        raise PermfamError(f"{_fmt(p)} is not primitive")
    pairing, reds = primitive.primitive_to_pairing(pp)
    body = "(" + ",".join(map(str, pairing)) + ")"
    return f"{body} reds={reds}", _primitive_json(pp, pairing, reds)


def cmd_primitive_count(a) -> Result:
    if a.reds is None:
        n = primitive.count_primitive(a.fam, a.buds)
    else:
        n = primitive.count_primitive_states(a.reds, a.fam - a.reds, a.buds)
    return str(n), {"fam": a.fam, "buds": a.buds, "reds": a.reds, "count": n}


def cmd_primitive_phi(a) -> Result:
    coeffs = primitive.phi_series(a.order)
    return " ".join(map(str, coeffs)), {"coefficients": coeffs}


def cmd_primitive_ode(a) -> Result:
    chk = primitive.verify_phi_ode(a.max_x, a.max_t, shift=a.shift)
    data = {"ok": chk.ok, "checked": chk.checked,
            "first_discrepancy": list(chk.first_discrepancy) if chk.first_discrepancy else None}
    if not chk.ok:
        e, b, res = chk.first_discrepancy
        raise CheckFailed((f"false (first discrepancy at x^{e} t^{b}: residual {res})", data))
    return "true", data


def cmd_decimal_encode(a) -> Result:
    code = decimal_code.encode(_perm(a.perm), singlet_color=a.singlet_color)
    return decimal_code.format_code(code), {"code": [str(d) for d in code]}


def cmd_decimal_decode(a) -> Result:
    p = decimal_code.decode(decimal_code.parse_code(_text(a.code)))
    return _fmt(p), {"permutation": list(p)}


def cmd_decimal_validate(a) -> Result:
    report = decimal_code.validate(decimal_code.parse_code(_text(a.code)))
    data = {"ok": report.ok, "violations": [
        {"axiom": v.axiom, "entries": list(v.entries), "message": v.message} for v in report.violations]}
    if not report.ok:
        raise CheckFailed(("\n".join(map(str, report.violations)), data))
    return "valid", data


def _number(fn: Callable[..., int], *names: str):
    def run(a) -> Result:
        args = [getattr(a, n) for n in names]
        n = fn(*args)
        return str(n), dict(zip(names, args), value=n)
    return run


def _parse_profile(text: str) -> dict[tuple[int, int], int]:
    # "1/1=2,2/1=1": two (1 red, 1 blue) families and one (2 red, 1 blue)
    out: dict[tuple[int, int], int] = {}
    for item in filter(None, (t.strip() for t in text.split(","))):
        try:
            kind, _, count = item.partition("=")
            i, j = kind.split("/")
            out[int(i), int(j)] = out.get((int(i), int(j)), 0) + int(count or 1)
        except ValueError:
            raise PermfamError(f"bad profile item {item!r}; expected reds/blues=count") from None
    return out


def cmd_count_configs(a) -> Result:
    if a.profile is not None:
        profile = _parse_profile(_text(a.profile))
        singlets = a.n - sum((i + j) * c for (i, j), c in profile.items())
        n = counting.family_config_count(a.n, profile, singlets)
        return str(n), {"n": a.n, "singlets": singlets, "count": n,
                        "profile": [{"reds": i, "blues": j, "count": c} for (i, j), c in sorted(profile.items())]}
    profiles = list(counting.enumerate_profiles(a.n))
    total = sum(counting.family_config_count(a.n, pr, s) for pr, s in profiles)
    return f"{len(profiles)} profiles, {total} permutations", {
        "n": a.n, "profiles": len(profiles), "total": total}


def cmd_enum_compositions(a) -> Result:
    comps = counting.enumerate_compositions(_intset(a.ascents), _intset(a.descents))
    lines = [format_registry(c.registry()) for c in comps]
    return "\n".join(lines + [f"{len(comps)} compositions"]), {
        "count": len(comps), "compositions": [[[list(x), list(y)] for x, y in c.pairs] for c in comps]}


def cmd_enum_permutations(a) -> Result:
    perms = counting.construct_permutations(_intset(a.ascents), _intset(a.descents), a.n, a.mode)
    return "\n".join(map(_fmt, perms)), {"mode": a.mode, "permutations": [list(p) for p in perms]}


def _sweep(max_n: int) -> list[tuple[str, bool]]:
    rows = []
    for n in range(1, max_n + 1):
        perms = list(oracle.all_permutations(n))
        ok = all(compose(decompose(p), n) == p for p in perms)
        rows.append((f"n={n} registry round trip over {len(perms)} permutations", ok))
        found = [o.perm for o in oracle.brute_primitive_scan(n)]
        ok = found == [p for p in perms if n >= 2 and primitive.is_primitive(p)]
        rows.append((f"n={n} primitive scan agrees ({len(found)} primitives)", ok))
        diag = oracle.brute_count_by_diagonal_sets(n)
        ok = all(len(counting.enumerate_compositions(o, u)) == c
                 for (o, u, _), c in diag.items() if o and u)
        rows.append((f"n={n} compositions match diagonal counts", ok))
    return rows


def cmd_oracle_sweep(a) -> Result:
    rows = _sweep(a.max_n)
    lines = [f"{'ok  ' if ok else 'FAIL'} {label}" for label, ok in rows]
    data = {"ok": all(ok for _, ok in rows), "checks": [{"check": l, "ok": ok} for l, ok in rows]}
    if not data["ok"]:
        raise CheckFailed(("\n".join(lines), data))
    return "\n".join(lines), data


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("plain", "structured"), default=argparse.SUPPRESS,
                        help="plain text (default) or JSON")

    parser = argparse.ArgumentParser(prog="permfam", parents=[common],
                                     description="Families, registries and trees of permutations.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(container, name, handler, help_text):
        p = container.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add(sub, "transform", cmd_transform, "cycle transform, its inverse, the Eulerian lift or daisy chaining")
    p.add_argument("kind", choices=sorted(_TRANSFORMS))
    p.add_argument("perm")

    p = add(sub, "decompose", cmd_decompose, "registry of families of a permutation")
    p.add_argument("perm")
    p.add_argument("--trace", action="store_true", help="show the registry after each insertion")
    p.add_argument("--stripped", action="store_true", help="drop singlet families")

    p = add(sub, "compose", cmd_compose, "permutation of a registry such as '((5 4),(6 7 3 1),(2))'")
    p.add_argument("registry")
    p.add_argument("--n", type=int, default=None, help="size, when singlets are stripped")

    p = add(sub, "parenthesize", cmd_parenthesize, "nested-parentheses form")
    p.add_argument("perm")

    p = add(sub, "tree", cmd_tree, "tree of primitive nodes")
    p.add_argument("perm")
    p.add_argument("--relabel", action="store_true", help="print each node as its pattern")

    p = add(sub, "multipar", cmd_multipar, "multiparenthesized form, or its inverse with --decode")
    p.add_argument("input")
    p.add_argument("--decode", action="store_true")

    prim = add(sub, "primitive", None, "primitive permutations").add_subparsers(
        dest="action", required=True, metavar="ACTION")
    p = add(prim, "build", cmd_primitive_build, "primitive permutation from a pairing sequence")
    p.add_argument("--pairing", required=True, help="e.g. '1,2,3,-2,4,5,-5'")
    p.add_argument("--reds", type=int, required=True)
    p = add(prim, "invert", cmd_primitive_invert, "pairing sequence and red count of a primitive permutation")
    p.add_argument("perm")
    p = add(prim, "count", cmd_primitive_count, "number of primitive permutations")
    p.add_argument("--fam", type=int, required=True, help="active family size")
    p.add_argument("--buds", type=int, required=True)
    p.add_argument("--reds", type=int, default=None, help="fix the red count instead of a single split")
    p = add(prim, "phi", cmd_primitive_phi, "coefficients of the small-family series")
    p.add_argument("--order", type=int, default=5)
    p = add(prim, "ode-check", cmd_primitive_ode, "check the generating-function equation coefficientwise")
    p.add_argument("--max-x", type=int, default=8)
    p.add_argument("--max-t", type=int, default=6)
    p.add_argument("--shift", type=int, default=-4)

    dec = add(sub, "decimal", None, "decimal codes").add_subparsers(
        dest="action", required=True, metavar="ACTION")
    p = add(dec, "encode", cmd_decimal_encode, "decimal code of a permutation")
    p.add_argument("perm")
    p.add_argument("--singlet-color", choices=("k", "r"), default="k")
    p = add(dec, "decode", cmd_decimal_decode, "permutation of a decimal code")
    p.add_argument("code", help="numbers separated by commas or newlines")
    p = add(dec, "validate", cmd_decimal_validate, "list every axiom a decimal code violates")
    p.add_argument("code")

    cnt = add(sub, "count", None, "multinomial counts").add_subparsers(
        dest="action", required=True, metavar="ACTION")
    for name, fn, names, help_text in (
        ("eulerian", counting.eulerian, ("k", "l"), "Eulerian number E(k,l)"),
        ("derangement", counting.derangement_count, ("k", "l"), "derangements with k over and l under"),
        ("fundamental", counting.fundamental_multinomial, ("k", "l", "r"), "fundamental multinomial N[r](k,l)"),
        ("shifted", counting.shifted_multinomial, ("k", "l", "s"), "shifted multinomial N(s)(k,l)"),
        ("binomial", counting.binomial_form, ("k", "l", "s"), "shifted multinomial by binomial decomposition"),
    ):
        p = add(cnt, name, _number(fn, *names), help_text)
        for n in names:
            p.add_argument(n, type=int)
    p = add(cnt, "configs", cmd_count_configs, "permutations per family profile")
    p.add_argument("n", type=int)
    p.add_argument("--profile", default=None, help="e.g. '1/1=2,2/1=1' (reds/blues=count)")

    enum = add(sub, "enumerate", None, "compositions and the permutations they produce").add_subparsers(
        dest="action", required=True, metavar="ACTION")
    for name, handler in (("compositions", cmd_enum_compositions), ("permutations", cmd_enum_permutations)):
        p = add(enum, name, handler, f"enumerate {name} for value sets A, B")
        p.add_argument("--ascents", required=True, help="the set A, e.g. '2 4 5'")
        p.add_argument("--descents", required=True, help="the set B, e.g. '1 3'")
        if name == "permutations":
            p.add_argument("--mode", choices=counting.MODES, default="ascent-descent")
            p.add_argument("--n", type=int, default=None)

    orc = add(sub, "oracle", None, "brute-force cross-checks").add_subparsers(
        dest="action", required=True, metavar="ACTION")
    p = add(orc, "sweep", cmd_oracle_sweep, "compare the main algorithms with brute force")
    p.add_argument("--max-n", type=int, default=6)
    return parser


def _emit(result: Result, structured: bool, command: str, stream) -> None:
    text, data = result
    if structured:
        print(json.dumps({"command": command, "result": data}, sort_keys=True), file=stream)
    elif text:
        print(text, file=stream)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    structured = getattr(args, "format", "plain") == "structured"
    command = " ".join(filter(None, (args.command, getattr(args, "action", None))))
    try:
        result = args.handler(args)
    except CheckFailed as exc:
        _emit(exc.result, structured, command, sys.stdout)
        return 1
    except (PermfamError, ValueError, OSError, RecursionError) as exc:
        if structured:
            print(json.dumps({"command": command, "error": str(exc)}), file=sys.stdout)
        print(f"permfam: error: {exc}", file=sys.stderr)
        return 1
    _emit(result, structured, command, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
