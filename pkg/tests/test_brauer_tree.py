import random

import pytest

from perverse_blocks.brauer_tree import (
    BrauerTree,
    canonical_pi,
    char_edge_bijection,
    greens_walk,
    parse_tree,
    random_tree,
    star,
    to_dot,
    to_text,
    two_branch_line,
    validate_pi,
    walk_starts,
)
from perverse_blocks.errors import BlockFileError, PerversityError
from perverse_blocks.star_algebra import GenericGreen

G2_TREE = """\
vertex exc exceptional m=1 : phi_1_6,G2[1]
vertex phi_1_0 : phi_1_0
vertex phi_2_2 : phi_1_0,phi_2_2
vertex phi_1_6 : phi_2_2,G2[theta],phi_1_6,G2[theta^2]
vertex G2[theta] : G2[theta]
vertex G2[theta^2] : G2[theta^2]
vertex G2[1] : G2[1]"""

G2_PI = {
    "phi_1_0": 0,
    "G2[theta^2]": 3,
    "phi_2_2": 3,
    "G2[theta]": 3,
    "phi_1_6": 4,
    "G2[1]": 4,
}


@pytest.fixture
def g2_tree():
    return parse_tree(G2_TREE.splitlines())


def test_star():
    t = star(3, m=2)
    assert t.e == 3
    assert t.vertices == ["exc", "v1", "v2", "v3"]
    assert t.multiplicity == 2
    assert canonical_pi(t) == {"1": 0, "2": 0, "3": 0}
    with pytest.raises(ValueError):
        star(0)


def test_two_branch_line():
    t = two_branch_line(["s1", "s2"], ["t1"])
    assert t.rotations == {
        "exc": ("s2", "t1"),
        "s1": ("s1",),
        "s2": ("s1", "s2"),
        "t1": ("t1",),
    }
    assert t.is_line()
    assert t.distances["s1"] == 2
    assert canonical_pi(t) == {"s1": 0, "s2": 1, "t1": 1}
    assert char_edge_bijection(t) == {"s1": "s1", "s2": "s2", "t1": "t1"}


@pytest.mark.parametrize(
    "rotation",
    [
        {"exc": ("a",), "x": ("a",), "y": ("a",)},
        {"exc": ("a",), "x": ("b",)},
        {"x": ("a",), "y": ("a",)},
        {"exc": ("a", "a"), "x": ("a",)},
    ],
)
def test_malformed_rotation_systems(rotation):
    with pytest.raises(ValueError):
        BrauerTree(rotation)


def test_g2_tree_shape(g2_tree):
    assert g2_tree.e == 6
    assert not g2_tree.is_line()
    assert walk_starts(g2_tree) == ["phi_1_0"]
    assert canonical_pi(g2_tree) == {
        "phi_1_0": 0,
        "phi_2_2": 1,
        "G2[theta]": 1,
        "G2[theta^2]": 1,
        "phi_1_6": 2,
        "G2[1]": 2,
    }
    assert canonical_pi(g2_tree, alpha=1)["phi_1_0"] == 1


def test_greens_walk_on_g2(g2_tree):
    walk = greens_walk(g2_tree)
    assert walk.start == "phi_1_0"
    assert [edge for edge, _ in walk.steps[:4]] == [
        "phi_1_0",
        "phi_2_2",
        "G2[theta]",
        "G2[theta]",
    ]
    assert walk.s_index == {
        "phi_2_2": 2,
        "G2[theta]": 3,
        "G2[1]": 5,
        "phi_1_6": 4,
        "G2[theta^2]": 6,
        "phi_1_0": 1,
    }
    assert walk.delta == {1: 1, 2: 3, 3: 5, 4: 4, 5: 6, 6: 2}
    assert walk.greens[4] == GenericGreen(socle=3, top=5, odd=False)
    assert walk.greens[2] == GenericGreen(socle=6, top=2, odd=True)
    assert walk.edge_at(5) == "G2[1]"


def test_greens_walk_on_a_star():
    walk = greens_walk(star(3))
    assert walk.s_index == {"1": 1, "2": 2, "3": 3}
    assert all(not green.odd for green in walk.greens.values())


def test_greens_walk_needs_a_leaf(g2_tree):
    with pytest.raises(PerversityError):
        greens_walk(g2_tree, start="phi_1_6")


def test_validate_pi(g2_tree):
    report = validate_pi(g2_tree, G2_PI)
    assert report.ok
    assert report.alpha == 0


def test_validate_pi_reports_problems(g2_tree):
    pi = dict(G2_PI, phi_1_6=3)
    report = validate_pi(g2_tree, pi, parities={edge: 1 for edge in pi})
    assert not report.increasing
    assert ("phi_1_6", "phi_2_2") in report.bad_pairs
    assert set(report.bad_parity) == {"G2[theta^2]", "phi_2_2", "G2[theta]", "phi_1_6"}
    assert report.alpha is None
    assert not report.ok


def test_text_form_is_kept(g2_tree):
    assert to_text(g2_tree) == G2_TREE
    assert parse_tree(to_text(g2_tree).splitlines()) == g2_tree


def test_dot_output(g2_tree):
    dot = to_dot(g2_tree, name="g2")
    assert dot.startswith('graph "g2" {')
    assert '"exc" [shape=doublecircle];' in dot
    assert '"phi_1_0" -- "phi_2_2" [label="phi_1_0"];' in dot


def test_parse_tree_errors():
    with pytest.raises(BlockFileError) as info:
        parse_tree(["vertex exc exceptional m=1 : a", "nonsense"], "t.block", 10)
    assert info.value.line == 11
    with pytest.raises(BlockFileError):
        parse_tree(["vertex x : a", "vertex y : a"])
    with pytest.raises(BlockFileError):
        parse_tree(["vertex exc exceptional m=1 : a", "vertex x : b"])


@pytest.mark.parametrize("seed", range(5))
def test_random_trees(seed):
    t = random_tree(7, random.Random(seed))
    assert t.e == 7
    assert len(t.vertices) == 8
    assert t == random_tree(7, random.Random(seed))
    assert char_edge_bijection(t) == {v: v for v in t.vertices if v != "exc"}
    walk = greens_walk(t)
    assert sorted(walk.s_index.values()) == list(range(1, 8))
