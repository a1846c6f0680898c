"""Hecke parameters ``omega * q^v`` of a cyclic group and the relative degrees they
determine.

Only the ratios matter, so everything here works up to a global factor
``omega_0 * q^{v_0}``.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from perverse_blocks.cyclo import HALF, CycloProduct, Frac, RootAngle, pi_rel, product
from perverse_blocks.degrees import format_param
from perverse_blocks.errors import HeckeError

Param = tuple[RootAngle, Fraction]

POSITIVE, NEGATIVE = RootAngle(0), RootAngle(HALF)


def param(omega: RootAngle, v: "int | Fraction") -> Param:
    return omega, Fraction(v)


def format_params(params: Sequence[Param]) -> str:
    return ", ".join(format_param(omega, v) for omega, v in params)


@dataclass(frozen=True)
class HeckeParams:
    params: tuple[Param, ...]
    d: int

    @property
    def e(self) -> int:
        return len(self.params)

    def angles(self, frac: Frac | None = None) -> list[RootAngle]:
        """Arguments of ``omega_i * zeta^{v_i}``, in turns."""
        z = Fraction(1, self.d) if frac is None else frac.value
        return [RootAngle(omega.turns + v * z) for omega, v in self.params]

    def is_ambient(self, frac: Frac | None = None) -> bool:
        """The specialized parameters are all e-th roots of unity up to rotation."""
        angles = self.angles(frac)
        first = angles[0].turns
        offsets = sorted((a.turns - first) % 1 for a in angles)
        return offsets == [Fraction(k, self.e) for k in range(self.e)]

    def normalized(self) -> "HeckeParams":
        """Rescale so the positive parameter with the largest exponent is 1."""
        positives = [v for omega, v in self.params if omega == POSITIVE]
        if positives:
            shift, turn = max(positives), RootAngle(0)
        else:
            turn, shift = self.params[0]
        return HeckeParams(
            tuple(param(omega + (-turn), v - shift) for omega, v in self.params),
            self.d,
        )

    def __str__(self) -> str:
        return f"({format_params(self.params)}) d={self.d}"


def _pair_factor(low: Param, high: Param) -> CycloProduct:
    """``u_high - u_low`` up to a unit, with ``v_low <= v_high``."""
    (w_low, v_low), (w_high, v_high) = low, high
    gap = v_high - v_low
    if gap == 0:
        if w_low == w_high:
            raise HeckeError(f"parameters coincide: {format_params([low])}")
        scalar = 2 if (w_high.turns - w_low.turns) % 1 == HALF else 1
        return CycloProduct.monomial(v_low, scalar=scalar)
    if gap.denominator != 1:
        raise HeckeError(
            f"exponents {v_low} and {v_high} differ by {gap}; clear denominators first"
        )
    root = RootAngle(w_low.turns - w_high.turns)
    return CycloProduct.monomial(v_low) * CycloProduct.root_of(int(gap), root)


@lru_cache(maxsize=4096)
def relative_degree(h: HeckeParams, i: int) -> CycloProduct:
    """``prod_{j != i} u_j / (u_i - u_j)`` up to a nonzero constant; i is 0-based."""
    own = h.params[i]
    numerator, denominator = [], []
    for j, other in enumerate(h.params):
        if j == i:
            continue
        numerator.append(CycloProduct.monomial(other[1]))
        low, high = (own, other) if own[1] <= other[1] else (other, own)
        denominator.append(_pair_factor(low, high))
    return product(numerator, denominator)


def relative_pi(h: HeckeParams, frac: Frac, anchor: int = 0) -> list[Fraction]:
    base = relative_degree(h, anchor)
    return [pi_rel(relative_degree(h, i), base, frac) for i in range(h.e)]


def reduce_kappa(h: HeckeParams, frac: Frac) -> tuple[HeckeParams, Frac]:
    """Move to kappa = 1 by scaling exponents by kappa."""
    if frac.kappa == 1:
        return h, frac
    params = tuple(param(omega, v * frac.kappa) for omega, v in h.params)
    return HeckeParams(params, h.d), Frac(1, frac.d)


def clear_denominators(h: HeckeParams, frac: Frac) -> tuple[HeckeParams, Frac]:
    """Substitute ``q -> q^N`` so exponents are integers, d is even and e | d."""
    if frac.kappa != 1:
        raise HeckeError("reduce kappa to 1 before clearing denominators")
    factor = 1
    for _, v in h.params:
        factor = math.lcm(factor, v.denominator)
    if h.d % 2:
        factor = math.lcm(factor, 2)
    factor = math.lcm(factor, h.e // math.gcd(h.e, h.d))
    if factor == 1:
        return h, frac
    params = tuple(param(omega, v * factor) for omega, v in h.params)
    return HeckeParams(params, h.d * factor), Frac(1, frac.d * factor)


@lru_cache(maxsize=256)
def pi_from_parameters(
    h: HeckeParams, frac: Frac, anchor: int, anchor_pi: Fraction
) -> tuple[Fraction, ...]:
    """pi of every parameter at ``frac`` given its value at ``anchor``.

    Kappa is reduced and denominators cleared first, which leaves pi unchanged.
    """
    reduced, reduced_frac = reduce_kappa(h, frac)
    reduced, reduced_frac = clear_denominators(reduced, reduced_frac)
    relative = relative_pi(reduced, reduced_frac, anchor=anchor)
    return tuple(anchor_pi + value for value in relative)
