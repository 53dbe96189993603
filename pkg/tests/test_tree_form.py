import pytest

from conftest import perms
from permfam.errors import InvalidPermutation, InvalidRegistry
from permfam.primitive import is_primitive
from permfam.registry_bijection import decompose
from permfam.tree_form import (
    Group, MultiParenForm, demultiparenthesize, flatten, format_multiparen,
    format_node, format_paren, multiparenthesize, parenthesize, parse_multiparen,
    parse_paren, tree_nodes,
)


class TestParenthesize:
    @pytest.mark.parametrize("p, text", [
        ((6, 7, 3, 5, 4, 1, 2), "(6 7 3 (5 4) 1)(2)"),
        ((1, 2, 3), "(1)(2)(3)"),
        ((3, 1, 2), "(3 1)(2)"),
    ])
    def test_examples(self, p, text):
        assert format_paren(parenthesize(p)) == text
        assert flatten(parse_paren(text)) == p

    def test_parse_errors(self):
        for bad in ("(1 2", "1 2)", "(1)(1)", "(1 a)", "3"):
            with pytest.raises(InvalidPermutation):
                parse_paren(bad)
        assert parse_paren("(10 (12 11) 3)", require_permutation=False)[0].values() == [10, 12, 11, 3]

    @pytest.mark.parametrize("n", range(1, 8))
    def test_structure(self, n):
        for p in perms(n):
            pf = parenthesize(p)
            assert flatten(pf) == p
            assert parse_paren(format_paren(pf)) == pf
            fams = {f.sequence for f in decompose(p)}
            stack = list(pf)
            groups = []
            while stack:
                g = stack.pop()
                groups.append(g.own())
                stack.extend(g.children())
            # each group with its children elided is one family of the registry
            assert sorted(groups) == sorted(fams)
            for tree in tree_nodes(pf):
                todo = [tree]
                while todo:
                    node = todo.pop()
                    if len(node.sequence) > 1:
                        assert is_primitive(node.pattern)
                    todo.extend(node.children)


class TestNodes:
    def test_node_with_three_buds(self):
        (node,) = tree_nodes(parse_paren("(7 8 (13 9) 6 4 (10 3) (5 2) 1)", require_permutation=False))
        assert node.buds == ((13, 9), (10, 3), (5, 2))
        assert node.active_family == (7, 8, 6, 4, 1)
        assert node.root is None
        assert format_node(node) == "(7 8 (13 9) 6 4 (10 3) (5 2) 1)"

    def test_node_pattern(self):
        (node,) = tree_nodes(parse_paren("(10 (12 11) 3)", require_permutation=False))
        assert format_node(node, relabel=True) == "(2 (4 3) 1)"

    def test_children_hang_from_buds(self):
        (tree, leaf) = tree_nodes(parenthesize((6, 7, 3, 5, 4, 1, 2)))
        assert tree.buds == ((5, 4),)
        assert tree.children[0].root == (5, 4)
        assert leaf.sequence == (2,) and not leaf.children

    def test_group_bud(self):
        assert Group([18, Group([13, 10]), 7]).bud() == (10, 7)


class TestMultiParen:
    def test_identity(self):
        mp = multiparenthesize((1, 2, 3, 4))
        assert mp.levels == (frozenset(),)
        assert demultiparenthesize(mp) == (1, 2, 3, 4)

    def test_reverse(self):
        mp = multiparenthesize((5, 4, 3, 2, 1))
        assert mp.levels == (frozenset({(frozenset(range(1, 6)), 1)}),)

    def test_worked_example(self):
        mp = multiparenthesize((6, 7, 3, 5, 4, 1, 2))
        assert mp.levels[0] == frozenset({(frozenset({4, 5}), 1), (frozenset({1, 3, 6, 7}), 2)})
        # the families sit in the order (5 4) before (6 7 3 1), against their minima
        assert mp.levels[1] == frozenset({(frozenset({1, 2}), 1)})
        text = format_multiparen(mp)
        assert text == "n=7\nlevel 0: {1,3,6,7}:2 {4,5}:1\n  level 1: {1,2}:1"
        assert parse_multiparen(text) == mp

    @pytest.mark.parametrize("n", range(1, 8))
    def test_round_trip(self, n):
        for p in perms(n):
            mp = multiparenthesize(p)
            assert demultiparenthesize(mp) == p
            assert parse_multiparen(format_multiparen(mp)) == mp
            assert all(len(lv) >= 2 for lv in mp.levels[:-1])

    def test_malformed(self):
        bad = [
            MultiParenForm(3, (frozenset({(frozenset({1, 2}), 2)}),)),
            MultiParenForm(3, (frozenset({(frozenset({1, 2}), 1), (frozenset({2, 3}), 1)}),)),
            MultiParenForm(3, (frozenset({(frozenset({1, 4}), 1)}),)),
            MultiParenForm(3, (frozenset({(frozenset({1, 2}), 1)}), frozenset({(frozenset({1, 2}), 1)}))),
        ]
        for mp in bad:
            with pytest.raises(InvalidRegistry):
                demultiparenthesize(mp)
        with pytest.raises(InvalidRegistry):
            parse_multiparen("level 0: {1,2}:1")
        with pytest.raises(InvalidRegistry):
            parse_multiparen("n=3\nlevel 0: {1,2}:x")
