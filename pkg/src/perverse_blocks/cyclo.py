"""Products of cyclotomic-rooted factors in q and the perversity invariants on them.

A :class:`CycloProduct` stands for ``c * q^a * prod (q - e^{2 pi i t})^{m_t}``. The
multiplicities may be negative, so quotients of degrees never need polynomial
division.
"""

import logging
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from sympy import factorint

from perverse_blocks.errors import RootAtZetaError

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


def _to_fraction(value: "int | Fraction | str") -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


@dataclass(frozen=True, order=True)
class RootAngle:
    """The root of unity ``e^{2 pi i turns}`` with ``0 <= turns < 1``."""

    turns: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "turns", _to_fraction(self.turns) % 1)

    @classmethod
    def of(cls, n: int, k: int = 1) -> "RootAngle":
        """``E(n, k) = e^{2 pi i k / n}``."""
        if n <= 0:
            raise ValueError(f"root of unity order must be positive, got {n}")
        return cls(Fraction(k, n))

    def negate(self) -> "RootAngle":
        return RootAngle(self.turns + HALF)

    def __add__(self, other: "RootAngle") -> "RootAngle":
        return RootAngle(self.turns + other.turns)

    def __neg__(self) -> "RootAngle":
        return RootAngle(-self.turns)

    @property
    def is_real(self) -> bool:
        return self.turns in (0, HALF)

    @property
    def order(self) -> int:
        return self.turns.denominator

    def __str__(self) -> str:
        if self.turns == 0:
            return "1"
        if self.turns == HALF:
            return "-1"
        return f"E({self.turns.denominator},{self.turns.numerator})"


@dataclass(frozen=True)
class Frac:
    """The fraction kappa/d at which perversity is evaluated."""

    kappa: int
    d: int

    def __post_init__(self) -> None:
        if self.d < 1 or self.kappa < 0:
            raise ValueError(f"invalid fraction {self.kappa}/{self.d}")
        if math.gcd(self.kappa, self.d) != 1:
            raise ValueError(f"kappa={self.kappa} is not prime to d={self.d}")

    @classmethod
    def parse(cls, text: str) -> "Frac":
        kappa, sep, d = text.strip().partition("/")
        try:
            return cls(int(kappa), int(d) if sep else 1)
        except ValueError as exc:
            raise ValueError(f"expected a fraction k/d, got {text!r}") from exc

    @property
    def value(self) -> Fraction:
        return Fraction(self.kappa, self.d)

    @property
    def zeta(self) -> RootAngle:
        return RootAngle(self.value)

    def shifted(self, times: int = 1) -> "Frac":
        return Frac(self.kappa + times * self.d, self.d)

    def __str__(self) -> str:
        return f"{self.kappa}/{self.d}"


def _squarefree_split(n: int) -> tuple[int, int]:
    """Write ``n = k^2 * s`` with ``s`` squarefree and return ``(k, s)``."""
    k, s = 1, 1
    for prime, power in factorint(n).items():
        k *= prime ** (power // 2)
        if power % 2:
            s *= prime
    return k, s


def _normalize_roots(
    roots: "Mapping[RootAngle, int] | Iterable[tuple[RootAngle, int]]",
) -> tuple[tuple[RootAngle, int], ...]:
    merged: dict[RootAngle, int] = {}
    items = roots.items() if isinstance(roots, Mapping) else roots
    for angle, mult in items:
        merged[angle] = merged.get(angle, 0) + mult
    return tuple(sorted((a, m) for a, m in merged.items() if m))


@dataclass(frozen=True)
class CycloProduct:
    scalar: Fraction = Fraction(1)
    qexp: Fraction = Fraction(0)
    roots: tuple[tuple[RootAngle, int], ...] = field(default=())
    # The value carries an extra factor sqrt(surd); display only.
    surd: int = 1

    def __post_init__(self) -> None:
        scalar = _to_fraction(self.scalar)
        if scalar == 0:
            raise ValueError("scalar of a CycloProduct must be nonzero")
        if self.surd < 1:
            raise ValueError(f"surd must be a positive integer, got {self.surd}")
        k, s = _squarefree_split(self.surd) if self.surd > 1 else (1, 1)
        object.__setattr__(self, "scalar", scalar * k)
        object.__setattr__(self, "surd", s)
        object.__setattr__(self, "qexp", _to_fraction(self.qexp))
        object.__setattr__(self, "roots", _normalize_roots(self.roots))

    @classmethod
    def constant(cls, value: "int | Fraction", surd: int = 1) -> "CycloProduct":
        return cls(scalar=Fraction(value), surd=surd)

    @classmethod
    def monomial(cls, exponent: "int | Fraction", scalar: "int | Fraction" = 1):
        return cls(scalar=Fraction(scalar), qexp=Fraction(exponent))

    @classmethod
    def linear(cls, angle: RootAngle, mult: int = 1) -> "CycloProduct":
        """``(q - e^{2 pi i angle})^mult``."""
        return cls(roots=((angle, mult),))

    @classmethod
    def root_of(cls, m: int, angle: RootAngle) -> "CycloProduct":
        """``q^m - e^{2 pi i angle}``, split into its m linear factors."""
        if m < 1:
            raise ValueError(f"q^m - w needs m >= 1, got {m}")
        return cls(roots=[(RootAngle((angle.turns + j) / m), 1) for j in range(m)])

    @property
    def root_map(self) -> dict[RootAngle, int]:
        return dict(self.roots)

    def multiplicity(self, angle: RootAngle) -> int:
        return self.root_map.get(angle, 0)

    @property
    def is_polynomial(self) -> bool:
        return self.qexp >= 0 and all(m > 0 for _, m in self.roots)

    @property
    def is_real(self) -> bool:
        """Roots closed under complex conjugation."""
        mults = self.root_map
        return all(mults.get(-angle, 0) == m for angle, m in mults.items())

    def __mul__(self, other: "CycloProduct | int | Fraction") -> "CycloProduct":
        if not isinstance(other, CycloProduct):
            other = CycloProduct.constant(other)
        root, surd = _squarefree_split(self.surd * other.surd)
        return CycloProduct(
            scalar=self.scalar * other.scalar * root,
            qexp=self.qexp + other.qexp,
            roots=self.roots + other.roots,
            surd=surd,
        )

    __rmul__ = __mul__

    def inverse(self) -> "CycloProduct":
        # 1/(c sqrt s) = sqrt s / (c s)
        return CycloProduct(
            scalar=1 / (self.scalar * self.surd),
            qexp=-self.qexp,
            roots=[(a, -m) for a, m in self.roots],
            surd=self.surd,
        )

    def __truediv__(self, other: "CycloProduct | int | Fraction") -> "CycloProduct":
        if not isinstance(other, CycloProduct):
            other = CycloProduct.constant(other)
        return self * other.inverse()

    def __rtruediv__(self, other: "int | Fraction") -> "CycloProduct":
        return CycloProduct.constant(other) * self.inverse()

    def __pow__(self, n: int) -> "CycloProduct":
        base = self if n >= 0 else self.inverse()
        result = CycloProduct()
        for _ in range(abs(n)):
            result = result * base
        return result

    def without_scalar(self) -> "CycloProduct":
        """The same roots and power of q with scalar 1; what the invariants see."""
        return CycloProduct(qexp=self.qexp, roots=self.roots)

    def same_shape(self, other: "CycloProduct") -> bool:
        return self.qexp == other.qexp and self.roots == other.roots


ONE = CycloProduct()
Q = CycloProduct.monomial(1)


@lru_cache(maxsize=512)
def from_cyclotomic(n: int, mult: int = 1) -> CycloProduct:
    """The n-th cyclotomic polynomial raised to ``mult``."""
    if n < 1:
        raise ValueError(f"cyclotomic index must be positive, got {n}")
    roots = [
        (RootAngle(Fraction(k, n)), mult) for k in range(n) if math.gcd(k, n) == 1
    ]
    return CycloProduct(roots=roots)


def binomial(i: int, j: int, sign: int = -1) -> CycloProduct:
    """``q^i - q^j`` (``sign=-1``) or ``q^i + q^j`` (``sign=+1``), as a product.

    ``q^i - q^j`` with ``i < j`` is stored as ``-(q^j - q^i)``.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if i == j:
        if sign == -1:
            raise ValueError("q^i - q^i vanishes identically")
        return CycloProduct.monomial(i, scalar=2)
    low, gap = min(i, j), abs(i - j)
    target = RootAngle(0) if sign == -1 else RootAngle(HALF)
    factor = CycloProduct.root_of(gap, target)
    scalar = -1 if sign == -1 and i < j else 1
    return CycloProduct.monomial(low, scalar=scalar) * factor


def negate_q(f: CycloProduct) -> CycloProduct:
    """``f(-q)`` up to sign: every root angle moves by a half turn.

    The scalar comes back positive, as a degree would.
    """
    return CycloProduct(
        scalar=abs(f.scalar),
        qexp=f.qexp,
        roots=[(angle.negate(), m) for angle, m in f.roots],
        surd=f.surd,
    )


def substitute_power(f: CycloProduct, n: int) -> CycloProduct:
    """``f(q^n)``: each root gets its n preimages under ``x -> x^n``."""
    if n < 1:
        raise ValueError(f"power must be positive, got {n}")
    roots = [
        (RootAngle((angle.turns + j) / n), m) for angle, m in f.roots for j in range(n)
    ]
    return CycloProduct(scalar=f.scalar, qexp=f.qexp * n, roots=roots, surd=f.surd)


def a_of(f: CycloProduct) -> Fraction:
    return f.qexp


def A_of(f: CycloProduct) -> Fraction:
    return f.qexp + sum(m for _, m in f.roots)


def aA_of(f: CycloProduct) -> Fraction:
    return a_of(f) + A_of(f)


def arg_count(angle: RootAngle, frac: Frac) -> int:
    """Number of arguments ``2 pi (t + j)``, ``j >= 0``, in ``(0, 2 pi kappa/d]``."""
    z, t = frac.value, angle.turns
    if t == 0:
        return math.floor(z)
    return math.floor(z - t) + 1 if z >= t else 0


def phi(f: CycloProduct, frac: Frac) -> Fraction:
    total = Fraction(0)
    for angle, mult in f.roots:
        total += mult * arg_count(angle, frac)
    return total + Fraction(f.multiplicity(RootAngle(0)), 2)


def pi(f: CycloProduct, frac: Frac) -> Fraction:
    return aA_of(f) * frac.value + phi(f, frac)


def pi_rel(f: CycloProduct, g: CycloProduct, frac: Frac) -> Fraction:
    return pi(f, frac) - pi(g, frac)


def arg_mod2(f: CycloProduct, frac: Frac) -> Fraction:
    """``arg(f(zeta)) / pi`` modulo 2 with ``zeta = e^{2 pi i kappa/d}``."""
    z = frac.value
    total = Fraction(0 if f.scalar > 0 else 1) + 2 * f.qexp * z
    for angle, mult in f.roots:
        # arg(zeta - w) = arg(w) + arg(zeta/w - 1), and arg(e^{ix} - 1) = x/2 + pi/2
        gap = (z - angle.turns) % 1
        if gap == 0:
            raise RootAtZetaError(f"factor with root {angle} vanishes at zeta={frac}")
        total += mult * (2 * angle.turns + gap + HALF)
    return total % 2


def sign_at_zeta(f: CycloProduct, frac: Frac) -> int:
    """+1 or -1 for an f whose value at zeta is real."""
    arg = arg_mod2(f, frac)
    if arg == 0:
        return 1
    if arg == 1:
        return -1
    raise RootAtZetaError(f"value at zeta={frac} is not real (arg = {arg} pi)")


def pi_d1(f: CycloProduct, kappa: int) -> Fraction:
    """Closed form at d = 1, valid when f(1) != 0."""
    if f.multiplicity(RootAngle(0)):
        raise RootAtZetaError("closed form at d=1 needs f(1) != 0")
    return 2 * kappa * A_of(f)


def pi_d2(f: CycloProduct, kappa: int) -> Fraction:
    """Closed form at d = 2, valid for real f with f(-1) != 0."""
    if f.multiplicity(RootAngle(HALF)):
        raise RootAtZetaError("closed form at d=2 needs f(-1) != 0")
    return kappa * A_of(f)


def pi_binomial(i: int, j: int, sign: int, frac: Frac) -> Fraction:
    """Closed forms for ``pi(q^i - q^j)`` and ``pi(q^i + q^j)`` with ``i > j``."""
    if i <= j:
        raise ValueError(f"closed form needs i > j, got i={i}, j={j}")
    kappa, d = frac.kappa, frac.d
    base = Fraction(kappa * (i + j), d)
    if sign == -1:
        return base + (kappa * (i - j)) // d + HALF
    return base + (2 * kappa * (i - j)) // d - (kappa * (i - j)) // d


def product(
    factors: Iterable[CycloProduct], divisors: Iterable[CycloProduct] = ()
) -> CycloProduct:
    """Multiply many factors at once, dividing by ``divisors``."""
    scalar, qexp = Fraction(1), Fraction(0)
    roots: dict[RootAngle, int] = {}
    surds = CycloProduct()
    for sign, group in ((1, factors), (-1, divisors)):
        for f in group:
            scalar *= f.scalar if sign == 1 else 1 / f.scalar
            qexp += sign * f.qexp
            for angle, mult in f.roots:
                roots[angle] = roots.get(angle, 0) + sign * mult
            if f.surd != 1:
                root = CycloProduct.constant(1, surd=f.surd)
                surds = surds * root if sign == 1 else surds / root
    return CycloProduct(scalar=scalar, qexp=qexp, roots=roots) * surds
