"""Unipotent character degrees and weight-1 blocks of the classical groups.

Blocks of ``GL_n`` and ``GU_n`` are labelled by partitions, blocks of types B, C,
D and 2D by symbols. Exceptional blocks come from data files (see ``blockfile``)
but share the :class:`Block` type and the invariants below.
"""

import enum
import logging
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from perverse_blocks.brauer_tree import BrauerTree, two_branch_line
from perverse_blocks.cyclo import (
    HALF,
    ONE,
    CycloProduct,
    Frac,
    RootAngle,
    a_of,
    aA_of,
    binomial,
    negate_q,
    pi_rel,
    product,
    sign_at_zeta,
)
from perverse_blocks.errors import FamilyError, HookError, PerversityError
from perverse_blocks.parameters import HeckeParams, param, pi_from_parameters
from perverse_blocks.partitions import (
    BetaSet,
    Partition,
    Symbol,
    add_hook,
    addable,
    beta_of,
    is_symbol_t_core,
    is_t_cocore,
    is_t_core,
    partition_of,
    partitions_of,
    runner_normalized,
    symbols_of_rank,
)

logger = logging.getLogger(__name__)

Label = Partition | BetaSet | Symbol


class GroupFamily(enum.Enum):
    GL = "GL"
    GU = "GU"
    BC = "BC"
    D = "D"
    TWO_D = "2D"
    EXCEPTIONAL = "exceptional"

    @classmethod
    def parse(cls, text: str) -> "GroupFamily":
        aliases = {"B": cls.BC, "C": cls.BC, "TWOD": cls.TWO_D, "2D": cls.TWO_D}
        key = text.strip().upper()
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            return cls.EXCEPTIONAL

    @property
    def uses_symbols(self) -> bool:
        return self in (GroupFamily.BC, GroupFamily.D, GroupFamily.TWO_D)


SIGMA, TAU = 1, -1


@dataclass(frozen=True)
class UnipotentCharacter:
    name: str
    # None for characters tabulated without a generic degree
    degree: CycloProduct | None
    label: Label | None = None
    # root of unity in the Hecke parameter; +1 and -1 for classical blocks
    omega: RootAngle = RootAngle(0)
    side: int = SIGMA
    # aA and a relative to the cuspidal, carried when the degree is not
    listed_aA: Fraction | None = None
    listed_a: Fraction | None = None

    def __str__(self) -> str:
        return self.name if self.label is None else f"{self.name} {self.label}"


@dataclass(frozen=True)
class Block:
    family: GroupFamily
    d: int
    cuspidal: CycloProduct
    characters: tuple[UnipotentCharacter, ...]
    tree: BrauerTree | None = None
    group: str = ""
    core: Label | None = None
    conjectural: bool = False

    @property
    def e(self) -> int:
        return len(self.characters)

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.characters]

    def index(self, key: "int | str") -> int:
        if isinstance(key, int):
            if not 0 <= key < self.e:
                raise IndexError(f"block has {self.e} characters, no index {key}")
            return key
        for i, character in enumerate(self.characters):
            if character.name == key:
                return i
        raise KeyError(f"no character named {key!r} in the block")

    def character(self, key: "int | str") -> UnipotentCharacter:
        return self.characters[self.index(key)]

    def branch(self, side: int) -> list[UnipotentCharacter]:
        return [c for c in self.characters if c.side == side]

    @property
    def has_degrees(self) -> bool:
        return all(c.degree is not None for c in self.characters)

    def describe(self) -> str:
        group = self.group or self.family.value
        return f"{group} d={self.d} e={self.e}"


# Degrees


def _check_family(family: GroupFamily, label: Label) -> None:
    if family is GroupFamily.EXCEPTIONAL:
        raise FamilyError("exceptional degrees are read from block files")
    if family.uses_symbols != isinstance(label, Symbol):
        kind = "a symbol" if family.uses_symbols else "a partition or beta-set"
        raise FamilyError(
            f"{family.value} characters are labelled by {kind}, got {label}"
        )
    if isinstance(label, Symbol):
        defect = label.defect
        valid = {
            GroupFamily.BC: defect % 2 == 1,
            GroupFamily.D: defect % 4 == 0,
            GroupFamily.TWO_D: defect % 4 == 2,
        }[family]
        if not valid:
            raise FamilyError(
                f"symbol {label} of defect {defect} is not of type {family.value}"
            )


def _gl_degree(x: BetaSet) -> CycloProduct:
    xs, a, n = x.elements, len(x), x.rank
    numerator = [binomial(i, 0) for i in range(1, n + 1)]
    numerator += [binomial(xs[i], xs[j]) for i in range(a) for j in range(i + 1, a)]
    denominator = [CycloProduct.monomial(comb(a, 3))]
    denominator += [binomial(k, 0) for elem in xs for k in range(1, elem + 1)]
    return product(numerator, denominator)


def _symbol_degree(family: GroupFamily, s: Symbol) -> CycloProduct:
    xs, ys = s.first.elements, s.second.elements
    a, b, n = len(xs), len(ys), s.rank
    if family is GroupFamily.BC:
        numerator = [binomial(2 * i, 0) for i in range(1, n + 1)]
        c = (a + b - 1) // 2
    else:
        if n == 0:
            return ONE
        sign = -1 if family is GroupFamily.D else 1
        numerator = [binomial(n, 0, sign)]
        numerator += [binomial(2 * i, 0) for i in range(1, n)]
        if family is GroupFamily.TWO_D:
            c = (a + b - 2) // 2
        else:
            c = a if s.is_degenerate else (a + b - 1) // 2
    for row in (xs, ys):
        numerator += [
            binomial(row[i], row[j])
            for i in range(len(row))
            for j in range(i + 1, len(row))
        ]
    numerator += [binomial(x, y, 1) for x in xs for y in ys]

    qexp = sum(comb(m, 2) for m in range(a + b - 2, 1, -2))
    denominator = [CycloProduct.constant(2**c), CycloProduct.monomial(qexp)]
    denominator += [
        binomial(2 * j, 0) for elem in xs + ys for j in range(1, elem + 1)
    ]
    return product(numerator, denominator)


@lru_cache(maxsize=4096)
def degree(family: GroupFamily, label: Label) -> CycloProduct:
    """Generic degree of the unipotent character labelled by ``label``."""
    _check_family(family, label)
    if isinstance(label, Symbol):
        return _symbol_degree(family, label.canonical())
    beta = beta_of(label) if isinstance(label, Partition) else label.canonical()
    result = _gl_degree(beta)
    return negate_q(result) if family is GroupFamily.GU else result


def e_of(d: int, family: GroupFamily) -> int:
    """Number of unipotent characters in a weight-1 block."""
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    if family is GroupFamily.GL:
        return d
    if family is GroupFamily.GU:
        if d % 4 == 0:
            return d
        return 2 * d if d % 2 else d // 2
    if family.uses_symbols:
        return 2 * d if d % 2 else d
    raise FamilyError("e of an exceptional block is its number of characters")


def abacus_length(d: int, family: GroupFamily) -> int:
    """Length of the hooks (or cohooks, d even) that move within a block."""
    if family is GroupFamily.GL:
        return d
    if family is GroupFamily.GU:
        return e_of(d, family)
    if family.uses_symbols:
        return d if d % 2 else d // 2
    raise FamilyError("exceptional blocks have no abacus")


def core_family(family: GroupFamily, d: int) -> GroupFamily:
    """Family of the core label; cohooks move between types D and 2D."""
    if d % 2 == 0 and family is GroupFamily.D:
        return GroupFamily.TWO_D
    if d % 2 == 0 and family is GroupFamily.TWO_D:
        return GroupFamily.D
    return family


# Block construction


def _character(
    family: GroupFamily, name: str, label: Label, side: int
) -> UnipotentCharacter:
    omega = RootAngle(0) if side == SIGMA else RootAngle(HALF)
    return UnipotentCharacter(name, degree(family, label), label, omega, side)


def _partition_members(
    family: GroupFamily, core: "Partition | BetaSet", d: int
) -> list[UnipotentCharacter]:
    beta = beta_of(core) if isinstance(core, Partition) else core
    t = abacus_length(d, family)
    if not is_t_core(beta.canonical(), t):
        raise HookError(f"{core} is not a {t}-core")
    x = runner_normalized(beta, t)
    ends = addable(x, t)
    if family is GroupFamily.GL:
        sides = {elem: SIGMA for elem in ends}
    else:
        sides = {elem: SIGMA if elem % 2 == 0 else TAU for elem in ends}
    members: list[UnipotentCharacter] = []
    for side, prefix in ((SIGMA, "s"), (TAU, "t")):
        chosen = [elem for elem in ends if sides[elem] == side]
        for i, elem in enumerate(chosen, start=1):
            label = partition_of(add_hook(x, elem, t)[0])
            members.append(_character(family, f"{prefix}{i}", label, side))
    return members


def _shift_rows(
    s: Symbol, done: Callable[[BetaSet], bool]
) -> tuple[BetaSet, BetaSet]:
    x, y = s.first, s.second
    while not (done(x) and done(y)):
        x, y = x.shift(), y.shift()
    return x, y


def _symbol_members(
    family: GroupFamily, core: Symbol, d: int
) -> list[UnipotentCharacter]:
    t = abacus_length(d, family)
    if d % 2:
        if not is_symbol_t_core(core, t):
            raise HookError(f"{core} is not a {t}-core")
        x, y = _shift_rows(core, lambda row: len({elem % t for elem in row}) == t)
        sigma = [
            Symbol(add_hook(x, elem, t)[0], y)
            for elem in x
            if elem + t not in x
        ]
        tau = [
            Symbol(x, add_hook(y, elem, t)[0])
            for elem in y
            if elem + t not in y
        ]
    else:
        if not is_t_cocore(core, t):
            raise HookError(f"{core} is not a {t}-cocore")
        x, y = _shift_rows(core, lambda row: all(k in row for k in range(t)))

        def moved(source: BetaSet, target: BetaSet, elem: int):
            return (
                BetaSet(tuple(v for v in source if v != elem)),
                BetaSet(target.elements + (elem + t,)),
            )

        sigma = [Symbol(*moved(x, y, elem)) for elem in x if elem + t not in y]
        tau = [Symbol(*moved(y, x, elem)[::-1]) for elem in y if elem + t not in x]
        if not core.is_degenerate and len(sigma) + len(tau) != d:
            raise HookError(
                f"{core} has {len(sigma)} + {len(tau)} addable {t}-cohooks, "
                f"expected {d}"
            )
    if core.is_degenerate:
        logger.debug("degenerate core %s: keeping one branch", core)
        tau = []
    members = [
        _character(family, f"s{i}", label.canonical(), SIGMA)
        for i, label in enumerate(sigma, start=1)
    ]
    members += [
        _character(family, f"t{i}", label.canonical(), TAU)
        for i, label in enumerate(tau, start=1)
    ]
    return members


def block_members(family: GroupFamily, core: Label, d: int) -> Block:
    """The weight-1 block with the given d-core (or d/2-cocore), without its tree."""
    if family is GroupFamily.EXCEPTIONAL:
        raise FamilyError("exceptional blocks are read from block files")
    cusp_family = core_family(family, d)
    cuspidal = degree(cusp_family, core)
    if family.uses_symbols:
        members = _symbol_members(family, core, d)
    else:
        members = _partition_members(family, core, d)
    logger.debug(
        "%s block of %s at d=%d: %d characters", family.value, core, d, len(members)
    )
    return Block(
        family=family,
        d=d,
        cuspidal=cuspidal,
        characters=tuple(members),
        core=core,
    )


def classical_tree(b: Block) -> BrauerTree:
    """The line with the sigma branch on one side of the exceptional vertex."""
    return two_branch_line(
        [c.name for c in b.branch(SIGMA)], [c.name for c in b.branch(TAU)]
    )


def classical_block(family: GroupFamily, core: Label, d: int) -> Block:
    b = block_members(family, core, d)
    return Block(
        family=b.family,
        d=b.d,
        cuspidal=b.cuspidal,
        characters=b.characters,
        tree=classical_tree(b),
        core=b.core,
    )


def _cores(family: GroupFamily, d: int, max_core: int) -> Iterator[Label]:
    t = abacus_length(d, family)
    if not family.uses_symbols:
        for n in range(max_core + 1):
            for p in partitions_of(n):
                if is_t_core(beta_of(p), t):
                    yield p
        return
    cusp_family = core_family(family, d)
    residue = {GroupFamily.BC: (2, 1), GroupFamily.D: (4, 0), GroupFamily.TWO_D: (4, 2)}
    modulus, rest = residue[cusp_family]
    for n in range(max_core + 1):
        defect = rest
        while defect * defect // 4 <= n:
            for s in symbols_of_rank(n, defect):
                is_core = is_symbol_t_core(s, t) if d % 2 else is_t_cocore(s, t)
                if is_core:
                    yield s
            defect += modulus


def classical_blocks(
    family: GroupFamily, max_rank: int, ds: Iterable[int] | None = None
) -> Iterator[Block]:
    """Every weight-1 block of rank at most ``max_rank``, with trees."""
    minimum = 2 if family in (GroupFamily.D, GroupFamily.TWO_D) else 1
    candidates = range(1, 2 * max_rank + 1) if ds is None else ds
    for d in candidates:
        t = abacus_length(d, family)
        if t > max_rank:
            continue
        for core in _cores(family, d, max_rank - t):
            rank = (core.rank if isinstance(core, Symbol) else _label_size(core)) + t
            if rank < minimum:
                continue
            yield classical_block(family, core, d)


def _label_size(label: "Partition | BetaSet") -> int:
    return label.size if isinstance(label, Partition) else label.rank


# Invariants of a block


def from_block(b: Block) -> HeckeParams:
    """``omega_i * q^{-aA_i/e}`` for each character, aA relative to the cuspidal."""
    params = tuple(
        param(c.omega, -aA_char(b, i) / b.e) for i, c in enumerate(b.characters)
    )
    return HeckeParams(params, b.d)


def _parameter_anchor(b: Block) -> int:
    """The a = 0 character of smallest aA; its pi is ``2 kappa aA / d``."""
    candidates = [i for i in range(b.e) if a_char(b, i) == 0]
    if not candidates:
        raise PerversityError(f"{b.describe()}: no character with a = 0")
    return min(candidates, key=lambda i: aA_char(b, i))


def _pi_without_degree(b: Block, i: int, frac: Frac) -> Fraction:
    anchor = _parameter_anchor(b)
    anchor_pi = 2 * frac.kappa * aA_char(b, anchor) / b.d
    return pi_from_parameters(from_block(b), frac, anchor, anchor_pi)[i]


def pi_char(b: Block, key: "int | str", frac: Frac) -> int:
    c = b.character(key)
    if c.degree is None:
        value = _pi_without_degree(b, b.index(key), frac)
    else:
        value = pi_rel(c.degree, b.cuspidal, frac)
    if value.denominator != 1:
        raise PerversityError(f"{c.name}: pi at {frac} is {value}, not an integer")
    return int(value)


def aA_char(b: Block, key: "int | str") -> Fraction:
    c = b.character(key)
    if c.degree is None:
        if c.listed_aA is None:
            raise FamilyError(f"{c.name} has neither a degree nor a listed aA")
        return c.listed_aA
    return aA_of(c.degree) - aA_of(b.cuspidal)


def a_char(b: Block, key: "int | str") -> Fraction:
    c = b.character(key)
    if c.degree is None:
        if c.listed_a is None:
            raise FamilyError(f"{c.name} has neither a degree nor a listed a")
        return c.listed_a
    return a_of(c.degree) - a_of(b.cuspidal)


def parity_holds(b: Block, key: "int | str", frac: Frac) -> bool:
    """``(-1)^pi`` against the sign of ``Deg(chi)/Deg(lambda)`` at zeta."""
    c = b.character(key)
    if c.degree is None:
        raise FamilyError(f"{c.name} has no degree to take the sign of")
    quotient = c.degree / b.cuspidal
    return sign_at_zeta(quotient, frac) == (-1) ** (pi_char(b, key, frac) % 2)


@dataclass(frozen=True)
class MinimalPiReport:
    name: str
    pi: int
    expected: Fraction
    a_matches: bool
    # only for GL blocks: 2 kappa (n - lambda_1)
    gl_expected: int | None = None

    @property
    def ok(self) -> bool:
        gl_ok = self.gl_expected is None or self.gl_expected == self.pi
        return self.pi == self.expected and self.a_matches and gl_ok


def minimal_pi_check(b: Block, frac: Frac) -> MinimalPiReport:
    values = [pi_char(b, i, frac) for i in range(b.e)]
    lowest = min(range(b.e), key=lambda i: (values[i], b.characters[i].side != SIGMA))
    tied = [i for i in range(b.e) if values[i] == values[lowest] and i != lowest]
    if tied:
        names = [b.names[i] for i in tied]
        logger.debug("minimal pi tie in %s: %s", b.describe(), names)
    gl_expected = None
    if b.family is GroupFamily.GL and isinstance(b.core, Partition | BetaSet):
        core = b.core if isinstance(b.core, Partition) else partition_of(b.core)
        gl_expected = 2 * frac.kappa * (core.size - core.first_part)
    return MinimalPiReport(
        name=b.characters[lowest].name,
        pi=values[lowest],
        expected=2 * frac.kappa * aA_char(b, lowest) / frac.d,
        a_matches=a_char(b, lowest) == 0,
        gl_expected=gl_expected,
    )


def aA_decreases_from_exceptional(b: Block) -> list[tuple[str, str]]:
    """Pairs (inner, outer) of adjacent characters where aA fails to increase
    toward the exceptional vertex."""
    if b.tree is None:
        raise FamilyError("block has no Brauer tree")
    tree = b.tree
    bad = []
    for vertex, edge in tree.edge_toward_exceptional.items():
        parent = tree.other_end(edge, vertex)
        if parent == tree.exceptional:
            continue
        if aA_char(b, parent) <= aA_char(b, vertex):
            bad.append((parent, vertex))
    return bad
