import pytest

from perverse_blocks.cli import main


def test_pi(capsys):
    assert main(["pi", "--f", "q*P2^2*P6/2", "--frac", "1/3"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["pi\t3", "a\t1", "A\t5", "phi\t1"]


def test_degree(capsys):
    assert main(["degree", "--family", "GL", "--label", "[2,1]"]) == 0
    assert capsys.readouterr().out == "q*P2\n"


def test_block(capsys):
    assert main(["block", "--family", "GL", "--core", "[1]", "--d", "2"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[:4] == [
        "GL d=2 e=2",
        "name\tdegree\taA\tparam\tpi(1/2)",
        "s1\t1\t0\t1\t0",
        "s2\tq^3\t6\tq^-3\t3",
    ]
    assert out[4] == "tree:"
    assert out[5] == "vertex exc exceptional m=1 : s2"


def test_block_with_several_kappas(capsys):
    argv = ["block", "--family", "GL", "--core", "[]", "--d", "3", "--kappa", "1,2"]
    assert main(argv) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[1].endswith("pi(1/3)\tpi(2/3)")


def test_tree_formats(capsys):
    assert main(["tree", "g2_d3"]) == 0
    assert capsys.readouterr().out.startswith("vertex exc exceptional m=1 : ")
    assert main(["tree", "g2_d3", "--format", "dot"]) == 0
    assert capsys.readouterr().out.startswith('graph "g2_d3" {')


def test_algorithm(capsys):
    assert main(["algorithm", "--pi", "0,3,3,3,4,4", "--lbar", "13"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "X_1\tpi=0\t0" in out
    assert "X_5\tpi=4\tP5 -> P6 -> P4 -> P5" in out
    assert "X_2\tH^-2=1\tH^-3=1/2" in out
    assert "X_1\t(socle 1, top 1, even)\tdim=1" in out
    assert out[-1] == "exc\t0 0 0 0 1 1"


def test_hecke_with_non_real_parameters(capsys):
    assert main(["hecke", "--block", "g2_d3", "--frac", "1/3"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "type\tnone (parameters are not real)" in out
    assert "anchor\tphi_1_0" in out


def test_verify(capsys):
    assert main(["verify", "g2-d3", "--scale", "0.05"]) == 0
    captured = capsys.readouterr()
    lines = captured.out.splitlines()
    assert len(lines) == 4
    assert all(line.split("\t")[2] == "PASS" for line in lines)
    assert "g2-d3: 4 cases, 0 failures" in captured.err


@pytest.mark.parametrize(
    "argv",
    [
        ["pi", "--f", "q*X2", "--frac", "1/3"],
        ["tree", "no_such_block"],
        ["block", "--family", "GL", "--core", "[2]", "--d", "2"],
        ["algorithm", "--pi", "0,1", "--e", "3"],
    ],
)
def test_errors_exit_with_two(capsys, argv):
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("error: ")


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["pi", "--f", "q", "--frac", "2/4"],
        ["verify", "no-such-suite"],
        ["algorithm", "--pi", "0,x"],
    ],
)
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2
