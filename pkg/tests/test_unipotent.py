import pytest

from perverse_blocks.cyclo import HALF, ONE, Frac, RootAngle, from_cyclotomic
from perverse_blocks.degrees import format_degree
from perverse_blocks.errors import FamilyError, HookError, PerversityError
from perverse_blocks.partitions import Partition, Symbol
from perverse_blocks.unipotent import (
    SIGMA,
    TAU,
    Block,
    GroupFamily,
    UnipotentCharacter,
    aA_char,
    aA_decreases_from_exceptional,
    abacus_length,
    block_members,
    classical_block,
    classical_blocks,
    classical_tree,
    core_family,
    degree,
    e_of,
    minimal_pi_check,
    parity_holds,
    pi_char,
)


@pytest.mark.parametrize(
    "family, label, expected",
    [
        (GroupFamily.GL, Partition((1,)), "1"),
        (GroupFamily.GL, Partition((1, 1)), "q"),
        (GroupFamily.GL, Partition((2, 1)), "q*P2"),
        (GroupFamily.GL, Partition((1, 1, 1)), "q^3"),
        (GroupFamily.GU, Partition((2, 1)), "q*P1"),
        (GroupFamily.BC, Symbol.of((2,), ()), "1"),
        (GroupFamily.BC, Symbol.of((2, 1, 0), ()), "q*P1^2/2"),
        (GroupFamily.BC, Symbol.of((2, 0), (1,)), "q*P2^2/2"),
        (GroupFamily.BC, Symbol.of((2, 1, 0), (2, 1)), "q^4"),
    ],
)
def test_degree(family, label, expected):
    assert format_degree(degree(family, label)) == expected


def test_degree_checks_the_label_kind():
    with pytest.raises(FamilyError):
        degree(GroupFamily.GL, Symbol.of((1,), ()))
    with pytest.raises(FamilyError):
        degree(GroupFamily.BC, Partition((2,)))
    with pytest.raises(FamilyError):
        degree(GroupFamily.BC, Symbol.of((2, 1), (1, 0)))
    with pytest.raises(FamilyError):
        degree(GroupFamily.D, Symbol.of((1, 0), (2,)))
    with pytest.raises(FamilyError):
        degree(GroupFamily.EXCEPTIONAL, Partition((1,)))


@pytest.mark.parametrize(
    "text, family",
    [
        ("GL", GroupFamily.GL),
        ("gu", GroupFamily.GU),
        ("B", GroupFamily.BC),
        ("C", GroupFamily.BC),
        ("2D", GroupFamily.TWO_D),
        ("D", GroupFamily.D),
        ("E7", GroupFamily.EXCEPTIONAL),
    ],
)
def test_family_parse(text, family):
    assert GroupFamily.parse(text) is family


@pytest.mark.parametrize(
    "family, d, e, length",
    [
        (GroupFamily.GL, 3, 3, 3),
        (GroupFamily.GU, 1, 2, 2),
        (GroupFamily.GU, 2, 1, 1),
        (GroupFamily.GU, 3, 6, 6),
        (GroupFamily.GU, 4, 4, 4),
        (GroupFamily.BC, 3, 6, 3),
        (GroupFamily.BC, 4, 4, 2),
        (GroupFamily.D, 6, 6, 3),
    ],
)
def test_block_sizes(family, d, e, length):
    assert e_of(d, family) == e
    assert abacus_length(d, family) == length


def test_core_family_swaps_d_types_for_even_d():
    assert core_family(GroupFamily.D, 2) is GroupFamily.TWO_D
    assert core_family(GroupFamily.TWO_D, 4) is GroupFamily.D
    assert core_family(GroupFamily.D, 3) is GroupFamily.D


@pytest.fixture
def gl3_block():
    return classical_block(GroupFamily.GL, Partition((1,)), 2)


def test_gl_block_members(gl3_block):
    assert gl3_block.names == ["s1", "s2"]
    assert [c.label for c in gl3_block.characters] == [
        Partition((3,)),
        Partition((1, 1, 1)),
    ]
    assert gl3_block.describe() == "GL d=2 e=2"
    assert gl3_block.tree.rotations["exc"] == ("s2",)


def test_tree_is_attached_separately(gl3_block):
    bare = block_members(GroupFamily.GL, Partition((1,)), 2)
    assert bare.tree is None
    assert bare.characters == gl3_block.characters
    assert classical_tree(bare).rotations == gl3_block.tree.rotations
    with pytest.raises(FamilyError):
        block_members(GroupFamily.EXCEPTIONAL, Partition(()), 3)


def test_gl_block_pi(gl3_block):
    frac = Frac(1, 2)
    assert [pi_char(gl3_block, i, frac) for i in range(2)] == [0, 3]
    assert all(parity_holds(gl3_block, name, frac) for name in gl3_block.names)
    report = minimal_pi_check(gl3_block, frac)
    assert (report.name, report.pi, report.gl_expected) == ("s1", 0, 0)
    assert report.ok


def test_block_lookup(gl3_block):
    assert gl3_block.index("s2") == 1
    assert gl3_block.character(0).name == "s1"
    with pytest.raises(IndexError):
        gl3_block.index(2)
    with pytest.raises(KeyError):
        gl3_block.index("t1")


def test_non_core_is_rejected():
    with pytest.raises(HookError):
        classical_block(GroupFamily.GL, Partition((2,)), 2)


def test_gu_block_has_two_branches():
    b = classical_block(GroupFamily.GU, Partition(()), 1)
    assert b.names == ["s1", "t1"]
    assert [c.label for c in b.characters] == [Partition((1, 1)), Partition((2,))]
    assert b.character("t1").omega == RootAngle(HALF)
    assert [c.side for c in b.characters] == [SIGMA, TAU]
    assert b.tree.rotations["exc"] == ("s1", "t1")
    frac = Frac(1, 1)
    assert [pi_char(b, name, frac) for name in b.names] == [2, 0]
    assert minimal_pi_check(b, frac).name == "t1"


@pytest.fixture
def b2_block():
    # the principal Phi_4 block of B2
    return classical_block(GroupFamily.BC, Symbol.of((0,), ()), 4)


def test_symbol_block_members(b2_block):
    assert b2_block.names == ["s1", "s2", "s3", "t1"]
    degrees = [format_degree(c.degree) for c in b2_block.characters]
    assert degrees == ["1", "q*P2^2/2", "q^4", "q*P1^2/2"]
    assert b2_block.cuspidal == ONE


@pytest.mark.parametrize("kappa", [1, 3])
def test_symbol_block_invariants(b2_block, kappa):
    frac = Frac(kappa, 4)
    assert all(parity_holds(b2_block, name, frac) for name in b2_block.names)
    assert minimal_pi_check(b2_block, frac).ok
    assert aA_decreases_from_exceptional(b2_block) == []


def test_symbol_block_pi(b2_block):
    frac = Frac(1, 4)
    assert [pi_char(b2_block, name, frac) for name in b2_block.names] == [0, 1, 2, 2]
    assert [aA_char(b2_block, name) for name in b2_block.names] == [0, 4, 8, 4]


def test_classical_blocks_of_small_gl():
    shapes = [(b.d, b.e) for b in classical_blocks(GroupFamily.GL, 3)]
    assert shapes == [(1, 1), (2, 2), (2, 2), (3, 3)]


def test_pi_must_be_an_integer():
    b = Block(
        family=GroupFamily.GL,
        d=3,
        cuspidal=ONE,
        characters=(UnipotentCharacter("x", from_cyclotomic(1)),),
    )
    with pytest.raises(PerversityError):
        pi_char(b, "x", Frac(1, 3))
