"""Specialized cyclotomic Hecke algebras of a cyclic group and their perturbations.

The parameter arithmetic itself lives in ``parameters``; here it is tied to blocks,
typed and walked to a Coxeter algebra.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from perverse_blocks.cyclo import Frac, RootAngle
from perverse_blocks.errors import HeckeError
from perverse_blocks.parameters import (
    NEGATIVE,
    POSITIVE,
    HeckeParams,
    Param,
    format_params,
    param,
)
from perverse_blocks.unipotent import SIGMA, Block, aA_char, pi_char

logger = logging.getLogger(__name__)

MAX_PERTURBATIONS = 10_000


@dataclass(frozen=True)
class TypedHecke:
    """Parameters ``q^{a_1}, ..., q^{a_s}, -q^{b_1}, ..., -q^{b_t}``, exponents
    decreasing within each sign."""

    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]
    d: int

    @property
    def s(self) -> int:
        return len(self.a)

    @property
    def t(self) -> int:
        return len(self.b)

    @property
    def e(self) -> int:
        return self.s + self.t

    @property
    def params(self) -> tuple[Param, ...]:
        return tuple(param(POSITIVE, v) for v in self.a) + tuple(
            param(NEGATIVE, v) for v in self.b
        )

    @property
    def base(self) -> HeckeParams:
        return HeckeParams(self.params, self.d)

    def shifted(self, amount: "int | Fraction") -> "TypedHecke":
        return TypedHecke(
            tuple(v + amount for v in self.a), tuple(v + amount for v in self.b), self.d
        )

    def same_up_to_shift(self, other: "TypedHecke") -> bool:
        if (self.s, self.t, self.d) != (other.s, other.t, other.d):
            return False
        top = self.a[0] if self.a else self.b[0]
        other_top = other.a[0] if other.a else other.b[0]
        return self.shifted(-top) == other.shifted(-other_top)

    def __str__(self) -> str:
        return f"type ({self.s},{self.t}) d={self.d}: {format_params(self.params)}"


def classify_type(h: HeckeParams) -> TypedHecke:
    if any(omega not in (POSITIVE, NEGATIVE) for omega, _ in h.params):
        raise HeckeError(f"parameters are not real up to q-powers: {h}")
    a = sorted((v for omega, v in h.params if omega == POSITIVE), reverse=True)
    b = sorted((v for omega, v in h.params if omega == NEGATIVE), reverse=True)
    for values in (a, b):
        if len(set(values)) != len(values):
            raise HeckeError(f"two parameters of the same sign coincide: {h}")
    typed = TypedHecke(tuple(a), tuple(b), h.d)
    if not typed.base.is_ambient():
        raise HeckeError(f"parameters do not have ambiance {h.d}: {h}")
    return typed


def coxeter(s: int, t: int, d: int) -> TypedHecke:
    if s < 0 or t < 0 or s + t == 0:
        raise HeckeError(f"invalid type ({s},{t})")
    eps = Fraction(d, s + t)
    a = tuple(-k * eps for k in range(s))
    b = tuple(-(s - t) * eps / 2 - k * eps for k in range(t))
    return TypedHecke(a, b, d)


def _changed(before: Sequence[Param], after: Sequence[Param]) -> tuple[int, ...]:
    return tuple(i + 1 for i, (x, y) in enumerate(zip(before, after)) if x != y)


def perturb(h: TypedHecke) -> tuple[TypedHecke, str, tuple[int, ...]]:
    """Apply the one allowed perturbation.

    Returns the new algebra, the kind (``+``, ``-`` or ``+-``) and the 1-based
    positions whose parameter changed.
    """
    a, b, d = list(h.a), list(h.b), h.d
    half = Fraction(d, 2)
    if a and (not b or a[-1] + half < b[-1]):
        kind = "+"
        a[-1] += d
    elif b and (not a or b[-1] + half < a[-1]):
        kind = "-"
        b[-1] += d
    else:
        kind = "+-"
        low_a, low_b = a.pop(), b.pop()
        a.append(low_b + half)
        b.append(low_a + half)
    result = TypedHecke(
        tuple(sorted(a, reverse=True)), tuple(sorted(b, reverse=True)), d
    )
    moved = _changed(h.params, result.params)
    logger.debug("%s perturbation moves %s: %s", kind, moved, result)
    return result, kind, moved


@dataclass(frozen=True)
class ChainStep:
    step: int
    kind: str
    permuted: tuple[int, ...]
    after: TypedHecke

    def __str__(self) -> str:
        positions = ",".join(map(str, self.permuted))
        params = format_params(self.after.params)
        return f"{self.step}\t{self.kind}\t{{{positions}}}\t{params}"


@dataclass(frozen=True)
class PerturbationChain:
    start: TypedHecke
    steps: tuple[ChainStep, ...]
    endpoint: TypedHecke

    @property
    def sets(self) -> list[tuple[int, ...]]:
        return [step.permuted for step in self.steps]

    @property
    def nested(self) -> bool:
        sets = [set(s) for s in self.sets]
        return all(x <= y for x, y in zip(sets, sets[1:]))

    def membership(self, position: int) -> int:
        return sum(1 for s in self.sets if position in s)

    def pi(self) -> list[int]:
        """``2 f + base`` by position, normalized at the larger sign class."""
        s, t = self.start.s, self.start.t
        values = []
        for position in range(1, s + t + 1):
            if position <= s:
                i, base = position, (0 if s >= t else t - s)
            else:
                i, base = position - s, (s - t if s >= t else 0)
            values.append(2 * self.membership(position) + base + i - 1)
        return values


def chain_to_coxeter(h: TypedHecke) -> PerturbationChain:
    """Perturb until every parameter is permuted; the last algebra is Coxeter."""
    current, steps = h, []
    for k in range(1, MAX_PERTURBATIONS + 1):
        result, kind, moved = perturb(current)
        if len(moved) == h.e:
            if not current.same_up_to_shift(coxeter(h.s, h.t, h.d)):
                raise HeckeError(f"chain ended at a non-Coxeter algebra: {current}")
            return PerturbationChain(h, tuple(steps), current)
        steps.append(ChainStep(k, kind, moved, result))
        current = result
    raise HeckeError(f"no Coxeter algebra after {MAX_PERTURBATIONS} perturbations")


def anchor_index(b: Block, frac: Frac) -> int:
    """The character of minimal pi, preferring the sigma branch on ties."""
    values = [pi_char(b, i, frac) for i in range(b.e)]
    best = min(values)
    tied = [i for i in range(b.e) if values[i] == best]
    if len(tied) > 1:
        logger.warning(
            "%s: minimal pi shared by %s", b.describe(), [b.names[i] for i in tied]
        )
    sigma = [i for i in tied if b.characters[i].side == SIGMA]
    return (sigma or tied)[0]


@dataclass(frozen=True)
class SpecializationBijection:
    angles: dict[str, RootAngle]
    anchor: str
    # place of each character counted in steps of 1/e from the anchor
    offsets: dict[str, int]

    def ordering(self) -> list[str]:
        return sorted(self.offsets, key=self.offsets.__getitem__)


def specialization_bijection(b: Block, frac: Frac) -> SpecializationBijection:
    """Characters to e-th roots ``omega_i * zeta^{aA_i/e}``."""
    angles = {
        c.name: RootAngle(c.omega.turns + aA_char(b, i) / b.e * frac.value)
        for i, c in enumerate(b.characters)
    }
    anchor = b.names[anchor_index(b, frac)]
    offsets = {}
    for name, angle in angles.items():
        steps = (angle.turns - angles[anchor].turns) * b.e % b.e
        if steps.denominator != 1:
            raise HeckeError(f"{name}: angle {angle.turns} is not on the e-th roots")
        offsets[name] = int(steps)
    if len(set(offsets.values())) != b.e:
        raise HeckeError(f"{b.describe()}: specialized parameters coincide at {frac}")
    return SpecializationBijection(angles, anchor, offsets)


def kappa_shift_change(b: Block, frac: Frac) -> dict[str, str]:
    """Characters whose root moves under kappa -> kappa + d.

    Each is mapped to the character that held its new root before the shift.
    """
    before = specialization_bijection(b, frac).angles
    after = specialization_bijection(b, frac.shifted()).angles
    holder = {angle: name for name, angle in before.items()}
    return {
        name: holder[after[name]]
        for name in before
        if after[name] != before[name]
    }


def broue_agrees(b: Block, frac: Frac, positions: dict[str, int]) -> bool:
    """Compare star positions of a perverse equivalence with the specialization."""
    bijection = specialization_bijection(b, frac)
    home = positions[bijection.anchor]
    return all(
        (positions[name] - home) % b.e == offset
        for name, offset in bijection.offsets.items()
    )
