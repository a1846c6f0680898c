import pytest

from perverse_blocks.blockfile import (
    NO_SIDE,
    block_paths,
    default_data_dir,
    find_block_file,
    load_all,
    load_all_files,
    load_block,
    read_block_file,
)
from perverse_blocks.cyclo import Frac
from perverse_blocks.errors import BlockFileError, FamilyError
from perverse_blocks.unipotent import (
    SIGMA,
    TAU,
    GroupFamily,
    a_char,
    aA_char,
    parity_holds,
    pi_char,
)

SMALL = """\
# a two-character block
family: GL2
d: 2
cuspidal: 1
kappa: 1
rows:
s1\t1\t0\t1\t0
s2\tq\t1\tq\t1
tree:
vertex exc exceptional m=1 : s2
vertex s2 : s1,s2
vertex s1 : s1
"""


@pytest.fixture(scope="module")
def bundled():
    return load_all_files()


def test_bundled_files(bundled):
    assert len(bundled) == 99
    assert len(block_paths()) == 99
    assert bundled[0].name == "2b2_d1"
    assert {f.name for f in bundled if f.conjectural} == {
        "e7_d10_b2",
        "e8_d15",
        "e8_d18_b3",
    }
    assert default_data_dir().is_dir()
    assert [b.group for b in load_all()] == [f.family for f in bundled]


def test_g2_file(bundled):
    f = next(f for f in bundled if f.name == "g2_d3")
    assert (f.d, f.e, f.kappas) == (3, 6, (1, 2))
    assert f.fracs == [Frac(1, 3), Frac(2, 3)]
    assert f.expected_pi("phi_1_6", 2) == 8
    assert f.block.family is GroupFamily.EXCEPTIONAL
    assert f.block.character("G2[1]").side == TAU
    assert f.block.character("G2[theta]").side == NO_SIDE
    assert f.block.character("phi_2_2").side == SIGMA


def test_load_block():
    b = load_block(default_data_dir() / "g2_d3.block")
    assert b.describe() == "G2 d=3 e=6"
    assert b.tree.e == 6


def test_primed_d_values(bundled):
    f = next(f for f in bundled if f.name == "2g2_d12pp")
    assert (f.d, f.d_text) == (12, "12''")


def test_tabulated_pi_matches(bundled):
    for f in bundled:
        for kappa, frac in zip(f.kappas, f.fracs):
            for row in f.rows:
                if f.is_deviation(row.name, kappa):
                    continue
                assert pi_char(f.block, row.name, frac) == f.expected_pi(
                    row.name, kappa
                ), f"{f.name} {row.name} kappa={kappa}"
                if row.degree is not None:
                    assert parity_holds(f.block, row.name, frac)


def test_2f4_deviations(bundled):
    f = next(f for f in bundled if f.name == "2f4_d24p")
    found = {
        (name, kappa): (
            pi_char(f.block, name, Frac(kappa, 24)),
            f.expected_pi(name, kappa),
        )
        for name, kappa in f.deviations
    }
    assert found == {
        ("phi_2_1", 11): (19, 17),
        ("phi_2_1", 19): (33, 31),
        ("2F4II[-1]", 11): (18, 20),
        ("2F4II[-1]", 13): (22, 24),
        ("2F4II[-1]", 19): (30, 32),
    }
    assert pi_char(f.block, "phi_2_1", Frac(5, 24)) == 7
    assert {g.name for g in bundled if g.deviations} == {"2f4_d12", "2f4_d24p"}


def test_2f4_d12_deviations(bundled):
    f = next(f for f in bundled if f.name == "2f4_d12")
    for name in ("2F4[-theta]", "2F4[-theta^2]"):
        assert f.is_deviation(name, 11)
        assert pi_char(f.block, name, Frac(11, 12)) == 37
        assert f.expected_pi(name, 11) == 35
        assert pi_char(f.block, name, Frac(7, 12)) == f.expected_pi(name, 7)


def test_small_block():
    f = read_block_file("small.block", SMALL)
    assert f.name == "small"
    assert f.block.names == ["s1", "s2"]
    assert f.block.group == "GL2"
    assert f.block.tree.e == 2
    assert f.expected_pi("s2", 1) == 1


def test_block_without_degrees():
    text = SMALL.replace("s1\t1\t", "s1\t-\t").replace("s2\tq\t", "s2\t-\t")
    f = read_block_file("bare.block", text)
    b = f.block
    assert not b.has_degrees
    assert b.character("s2").degree is None
    assert (aA_char(b, "s2"), a_char(b, "s2")) == (2, 1)
    assert [pi_char(b, name, Frac(1, 2)) for name in b.names] == [0, 1]
    assert pi_char(b, "s2", Frac(3, 2)) == 3
    with pytest.raises(FamilyError):
        parity_holds(b, "s2", Frac(1, 2))


def test_e8_blocks_are_read_without_degrees(bundled):
    f = next(f for f in bundled if f.name == "e8_d30")
    assert (f.e, f.kappas[-1]) == (30, 29)
    assert not f.block.has_degrees
    assert pi_char(f.block, "phi_1_120", Frac(1, 30)) == 8
    assert pi_char(f.block, "phi_8_1", Frac(29, 30)) == 57
    assert aA_char(f.block, "E7[i];eps") == 135


@pytest.mark.parametrize(
    "old, new, line",
    [
        ("family: GL2\n", "family: GL2\ncolour: red\n", 3),
        ("d: 2\n", "d: 2\nd: 2\n", 4),
        ("d: 2\n", "d: zero\n", 3),
        ("kappa: 1\n", "kappa: 2\n", 5),
        ("s2\tq\t1\tq\t1", "s2\tq\t2\tq\t1", 8),
        ("s2\tq\t1\tq\t1", "s2\tq\t1\tq^2\t1", 8),
        ("s2\tq\t1\tq\t1", "s2\tq*X\t1\tq\t1", 8),
        ("s2\tq\t1\tq\t1", "s2\tq\t1\tq", 8),
        ("s2\tq\t1\tq\t1", "s2\tq\t1\tq\t1,3", 8),
        ("vertex s1 : s1\n", "vertex s1 : s1\nedge\n", 13),
        ("kappa: 1\n", "kappa: 1\ndeviations: s3@1\n", 6),
        ("kappa: 1\n", "kappa: 1\ndeviations: s2@3\n", 6),
        ("s1\t1\t0\t1\t0", "s1\t-\t0\t1\t0", 7),
    ],
)
def test_errors_carry_the_line(old, new, line):
    with pytest.raises(BlockFileError) as info:
        read_block_file("bad.block", SMALL.replace(old, new))
    assert info.value.line == line
    assert str(info.value).startswith(f"bad.block:{line}: ")


@pytest.mark.parametrize(
    "old, new",
    [
        ("tree:\n", ""),
        ("rows:\n", ""),
        ("kappa: 1\n", ""),
        ("vertex s1 : s1\n", "vertex s1 : s3\n"),
        ("s1\t1\t0\t1\t0\n", "s2\t1\t0\t1\t0\n"),
    ],
)
def test_file_level_errors(old, new):
    with pytest.raises(BlockFileError):
        read_block_file("bad.block", SMALL.replace(old, new))


def test_edges_must_be_named_by_their_outer_vertex():
    text = SMALL.replace("vertex s2 : s1,s2", "vertex s2 : s2,s1")
    text = text.replace("m=1 : s2", "m=1 : s1")
    text = text.replace("vertex s1 : s1", "vertex s1 : s2")
    with pytest.raises(BlockFileError):
        read_block_file("bad.block", text)


def test_find_block_file(tmp_path, bundled):
    assert find_block_file("g2_d6", bundled).name == "g2_d6"
    path = tmp_path / "small.block"
    path.write_text(SMALL, encoding="utf-8")
    assert find_block_file(str(path)).block.e == 2
    with pytest.raises(BlockFileError):
        find_block_file("nope", bundled)


def test_missing_directory(tmp_path):
    with pytest.raises(BlockFileError):
        block_paths(tmp_path / "missing")
    assert load_all(tmp_path) == []
