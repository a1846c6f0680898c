"""Reading weight-1 blocks from ``.block`` data files.

A file has a ``key: value`` header, a ``rows:`` section with one tab-separated
line per character and a ``tree:`` section holding the rotation system::

    family: G2
    d: 3
    cuspidal: 1
    kappa: 1,2
    rows:
    phi_2_2<TAB>q*P2^2*P6/2<TAB>5<TAB>q<TAB>3,7
    tree:
    vertex phi_1_6 : phi_2_2,G2[theta],phi_1_6,G2[theta^2]

The A column and the exponent of the parameter are checked against the parsed
degree. A degree of ``-`` marks a block tabulated without degrees: every row must
then use it, and aA and a are read off the parameter exponent and the A column.
The pi columns are expectations only; nothing here computes with them.
"""

import logging
import math
import re
from collections.abc import Iterable
from dataclasses import dataclass, replace
from fractions import Fraction
from importlib import resources
from pathlib import Path

from perverse_blocks.brauer_tree import BrauerTree, char_edge_bijection, parse_tree
from perverse_blocks.cyclo import HALF, A_of, CycloProduct, Frac, RootAngle, aA_of
from perverse_blocks.degrees import parse_degree, parse_param
from perverse_blocks.errors import BlockFileError, DegreeParseError
from perverse_blocks.unipotent import SIGMA, TAU, Block, GroupFamily, UnipotentCharacter

logger = logging.getLogger(__name__)

SUFFIX = ".block"

HEADER_KEYS = (
    "family",
    "d",
    "cuspidal",
    "kappa",
    "conjectural",
    "source",
    "embedding",
    "deviations",
)
REQUIRED_KEYS = ("family", "d", "cuspidal", "kappa")

# characters whose parameter has a non-real root of unity sit on neither branch
NO_SIDE = 0

NO_DEGREE = "-"

_D_VALUE = re.compile(r"(\d+)('{0,2})")


@dataclass(frozen=True)
class BlockRow:
    name: str
    degree_text: str
    degree: CycloProduct | None
    A: Fraction
    omega: RootAngle
    exponent: Fraction
    pi: tuple[int, ...]
    line: int


@dataclass(frozen=True)
class BlockFile:
    path: str
    family: str
    d_text: str
    cuspidal_text: str
    kappas: tuple[int, ...]
    conjectural: bool
    source: str
    rows: tuple[BlockRow, ...]
    block: Block
    # (character, kappa) cells whose tabulated pi disagrees with the printed degree
    deviations: frozenset[tuple[str, int]] = frozenset()

    @property
    def d(self) -> int:
        return self.block.d

    @property
    def e(self) -> int:
        return len(self.rows)

    @property
    def name(self) -> str:
        return Path(self.path).stem

    @property
    def fracs(self) -> list[Frac]:
        return [Frac(kappa, self.d) for kappa in self.kappas]

    def is_deviation(self, name: str, kappa: int) -> bool:
        return (name, kappa) in self.deviations

    def expected_pi(self, name: str, kappa: int) -> int:
        row = next(r for r in self.rows if r.name == name)
        return row.pi[self.kappas.index(kappa)]


def default_data_dir() -> Path:
    """The directory of block files shipped with the package."""
    return Path(str(resources.files("perverse_blocks").joinpath("data")))


def _parse_d(text: str, path: str, line: int) -> int:
    match = _D_VALUE.fullmatch(text)
    if not match or int(match.group(1)) < 1:
        raise BlockFileError(path, line, f"d must be a positive integer, got {text!r}")
    return int(match.group(1))


def _parse_bool(text: str, path: str, line: int) -> bool:
    if text not in ("true", "false"):
        raise BlockFileError(path, line, f"expected true or false, got {text!r}")
    return text == "true"


def _parse_ints(text: str, path: str, line: int, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise BlockFileError(path, line, f"bad {what} list {text!r}") from None


def _parse_deviations(
    text: str, path: str, line: int, names: list[str], kappas: tuple[int, ...]
) -> frozenset[tuple[str, int]]:
    cells = set()
    for part in text.split(","):
        name, at, kappa_text = part.strip().rpartition("@")
        try:
            kappa = int(kappa_text)
        except ValueError:
            kappa = None
        if not at or name not in names or kappa not in kappas:
            raise BlockFileError(path, line, f"bad deviation {part.strip()!r}")
        cells.add((name, kappa))
    return frozenset(cells)


def _side(omega: RootAngle) -> int:
    if omega.turns == 0:
        return SIGMA
    if omega.turns == HALF:
        return TAU
    return NO_SIDE


class _Reader:
    def __init__(self, path: str, lines: list[str]) -> None:
        self.path = path
        self.lines = lines
        self.header: dict[str, tuple[str, int]] = {}
        self.raw_rows: list[tuple[list[str], int]] = []
        self.tree_start = 0

    def error(self, line: int | None, message: str) -> BlockFileError:
        return BlockFileError(self.path, line, message)

    def split(self) -> None:
        section = "header"
        for number, raw in enumerate(self.lines, start=1):
            line = raw.rstrip("\n")
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if stripped == "rows:" and section == "header":
                section = "rows"
            elif stripped == "tree:" and section == "rows":
                self.tree_start = number
                return
            elif section == "header":
                key, colon, value = stripped.partition(":")
                key = key.strip()
                if not colon or key not in HEADER_KEYS:
                    raise self.error(number, f"unknown header line {stripped!r}")
                if key in self.header:
                    raise self.error(number, f"duplicate header key {key!r}")
                self.header[key] = (value.strip(), number)
            else:
                self.raw_rows.append((line.split("\t"), number))
        missing = "rows:" if section == "header" else "tree:"
        raise self.error(None, f"missing {missing} section")

    def value(self, key: str) -> tuple[str, int]:
        try:
            return self.header[key]
        except KeyError:
            raise self.error(None, f"missing header key {key!r}") from None

    def degree(self, text: str, line: int) -> CycloProduct:
        try:
            return parse_degree(text)
        except DegreeParseError as exc:
            raise self.error(line, str(exc)) from exc

    def row(
        self, fields: list[str], line: int, cuspidal: CycloProduct, n_kappa: int
    ) -> BlockRow:
        if len(fields) != 5:
            raise self.error(
                line, f"expected 5 tab-separated fields, got {len(fields)}"
            )
        name, degree_text, a_text, param_text, pi_text = (f.strip() for f in fields)
        if not name or "," in name:
            raise self.error(line, f"bad character name {name!r}")
        degree = None if degree_text == NO_DEGREE else self.degree(degree_text, line)
        try:
            listed = Fraction(a_text)
            omega, exponent = parse_param(param_text)
        except (ValueError, ZeroDivisionError) as exc:
            raise self.error(line, str(exc)) from exc
        actual = None if degree is None else A_of(degree) - A_of(cuspidal)
        if actual is not None and actual != listed:
            raise self.error(
                line, f"{name}: degree {degree_text} has A = {actual}, listed {listed}"
            )
        pi = _parse_ints(pi_text, self.path, line, "pi")
        if len(pi) != n_kappa:
            raise self.error(line, f"{name}: {len(pi)} pi values for {n_kappa} kappas")
        return BlockRow(name, degree_text, degree, listed, omega, exponent, pi, line)

    def tree(self, names: list[str]) -> BrauerTree:
        tree = parse_tree(self.lines[self.tree_start :], self.path, self.tree_start + 1)
        if sorted(tree.edges) != sorted(names):
            raise self.error(
                self.tree_start, "tree edges do not match the character names"
            )
        for vertex, edge in char_edge_bijection(tree).items():
            if vertex != edge:
                raise self.error(
                    self.tree_start,
                    f"vertex {vertex!r} peels off edge {edge!r}; "
                    "edges are named by their outer vertex",
                )
        return tree


def _character(row: BlockRow, e: int) -> UnipotentCharacter:
    character = UnipotentCharacter(
        name=row.name, degree=row.degree, omega=row.omega, side=_side(row.omega)
    )
    if row.degree is not None:
        return character
    aA = row.exponent * e
    return replace(character, listed_aA=aA, listed_a=aA - row.A)


def read_block_file(path: "str | Path", text: str | None = None) -> BlockFile:
    """Parse and cross-check one block file."""
    path = str(path)
    if text is None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise BlockFileError(path, None, f"cannot read: {exc}") from exc
    reader = _Reader(path, text.splitlines())
    reader.split()
    for key in REQUIRED_KEYS:
        reader.value(key)

    family_text, _ = reader.value("family")
    d_text, d_line = reader.value("d")
    d = _parse_d(d_text, path, d_line)
    cuspidal_text, cusp_line = reader.value("cuspidal")
    cuspidal = reader.degree(cuspidal_text, cusp_line)
    kappa_text, kappa_line = reader.value("kappa")
    kappas = _parse_ints(kappa_text, path, kappa_line, "kappa")
    for kappa in kappas:
        if kappa < 1 or math.gcd(kappa, d) != 1:
            raise BlockFileError(path, kappa_line, f"kappa={kappa} is not prime to {d}")
    conjectural = False
    if "conjectural" in reader.header:
        value, line = reader.header["conjectural"]
        conjectural = _parse_bool(value, path, line)

    rows = [
        reader.row(fields, line, cuspidal, len(kappas))
        for fields, line in reader.raw_rows
    ]
    if not rows:
        raise BlockFileError(path, None, "block has no characters")
    names = [row.name for row in rows]
    if len(set(names)) != len(names):
        raise BlockFileError(path, None, "duplicate character names")

    e = len(rows)
    without = [row for row in rows if row.degree is None]
    if without and len(without) != e:
        raise BlockFileError(
            path, without[0].line, "either every row has a degree or none does"
        )
    for row in rows:
        if row.degree is None:
            continue
        expected = (aA_of(row.degree) - aA_of(cuspidal)) / e
        if row.exponent != expected:
            raise BlockFileError(
                path,
                row.line,
                f"{row.name}: parameter exponent {row.exponent}, aA/e is {expected}",
            )

    characters = tuple(_character(row, e) for row in rows)
    block = Block(
        family=GroupFamily.parse(family_text),
        d=d,
        cuspidal=cuspidal,
        characters=characters,
        tree=reader.tree(names),
        group=family_text,
        conjectural=conjectural,
    )
    deviations: frozenset[tuple[str, int]] = frozenset()
    if "deviations" in reader.header:
        value, line = reader.header["deviations"]
        deviations = _parse_deviations(value, path, line, names, kappas)
    source = reader.header.get("source", ("", 0))[0]
    logger.info("loaded %s: %s", path, block.describe())
    return BlockFile(
        path=path,
        family=family_text,
        d_text=d_text,
        cuspidal_text=cuspidal_text,
        kappas=kappas,
        conjectural=conjectural,
        source=source,
        rows=tuple(rows),
        block=block,
        deviations=deviations,
    )


def load_block(path: "str | Path") -> Block:
    return read_block_file(path).block


def block_paths(data_dir: "str | Path | None" = None) -> list[Path]:
    directory = Path(data_dir) if data_dir is not None else default_data_dir()
    if not directory.is_dir():
        raise BlockFileError(str(directory), None, "not a directory")
    return sorted(directory.glob(f"*{SUFFIX}"))


def load_all_files(data_dir: "str | Path | None" = None) -> list[BlockFile]:
    """Every block file in the directory, in file name order."""
    return [read_block_file(path) for path in block_paths(data_dir)]


def load_all(data_dir: "str | Path | None" = None) -> list[Block]:
    return [f.block for f in load_all_files(data_dir)]


def find_block_file(
    key: str, files: Iterable[BlockFile] | None = None
) -> BlockFile:
    """A bundled block by file stem (``g2_d3``) or a path to a block file."""
    candidate = Path(key)
    if candidate.suffix == SUFFIX or candidate.exists():
        return read_block_file(candidate)
    for f in files if files is not None else load_all_files():
        if f.name == key:
            return f
    raise BlockFileError(key, None, "no such block file")
