"""Text forms of degrees (``q*P2^2*P6/2``) and Hecke parameters (``-theta*q``)."""

import math
import re
from collections import Counter
from fractions import Fraction

from perverse_blocks.cyclo import HALF, CycloProduct, RootAngle, from_cyclotomic
from perverse_blocks.errors import DegreeParseError

# Halves of Phi_8, Phi_12, Phi_24 that split over Q(sqrt 2), Q(sqrt 3), Q(sqrt 6).
PRIMED_CYCLOTOMICS: dict[tuple[int, str], tuple[int, ...]] = {
    (8, "''"): (1, 7),
    (8, "'"): (3, 5),
    (12, "''"): (1, 11),
    (12, "'"): (5, 7),
    (24, "''"): (1, 7, 17, 23),
    (24, "'"): (5, 11, 13, 19),
}

ROOT_ALIASES: dict[str, int] = {"i": 4, "theta": 3, "psi": 8, "xi": 12, "zeta": 5}

_TRAILER = re.compile(r"((?:/(?:sqrt)?\d+)+)$")
_DIVISOR = re.compile(r"/(sqrt)?(\d+)")
_Q_TERM = re.compile(r"q(?:\^(?:(-?\d+)|\((-?\d+(?:/\d+)?)\)))?")
_P_TERM = re.compile(r"P(\d+)('{0,2})(?:\^(-?\d+))?")
_L_TERM = re.compile(r"L\((\d+),(-?\d+)\)(?:\^(-?\d+))?")
_NUMBER = re.compile(r"\d+(?:/\d+)?")
_ROOT = re.compile(r"(?:E\((\d+),(-?\d+)\)|(i|theta|psi|xi|zeta))(?:\^(-?\d+))?")
_Q_PARAM = re.compile(r"q(?:\^(?:\((-?\d+(?:/\d+)?)\)|(-?\d+(?:/\d+)?)))?")


def primed_cyclotomic(n: int, prime: str, mult: int = 1) -> CycloProduct:
    try:
        ks = PRIMED_CYCLOTOMICS[(n, prime)]
    except KeyError:
        raise ValueError(f"no primed factor P{n}{prime}") from None
    return CycloProduct(roots=[(RootAngle(Fraction(k, n)), mult) for k in ks])


def parse_degree(text: str) -> CycloProduct:
    source = text
    body = "".join(text.split())
    if not body:
        raise DegreeParseError(source, "empty degree")

    result = CycloProduct()
    if body.startswith("-"):
        result = result * -1
        body = body[1:]

    trailer = _TRAILER.search(body)
    if trailer and trailer.start() > 0:
        for is_sqrt, number in _DIVISOR.findall(trailer.group(1)):
            value = int(number)
            if value == 0:
                raise DegreeParseError(source, "division by zero")
            if is_sqrt:
                result = result * CycloProduct.constant(Fraction(1, value), surd=value)
            else:
                result = result / value
        body = body[: trailer.start()]

    column = len(source) - len(source.lstrip())
    for position, term in enumerate(body.split("*")):
        result = result * _parse_term(term, position, source, column)
        column += len(term) + 1
    return result


def _parse_term(term: str, position: int, source: str, column: int) -> CycloProduct:
    if not term:
        raise DegreeParseError(source, "empty factor", column)
    if match := _Q_TERM.fullmatch(term):
        exponent = match.group(1) or match.group(2) or "1"
        return CycloProduct.monomial(Fraction(exponent))
    if match := _P_TERM.fullmatch(term):
        n, prime, exponent = int(match.group(1)), match.group(2), match.group(3)
        mult = int(exponent) if exponent else 1
        if n == 0:
            raise DegreeParseError(source, "P0 is not a cyclotomic factor", column)
        if prime:
            try:
                return primed_cyclotomic(n, prime, mult)
            except ValueError as exc:
                raise DegreeParseError(source, str(exc), column) from None
        return from_cyclotomic(n, mult)
    if match := _L_TERM.fullmatch(term):
        n, k, exponent = int(match.group(1)), int(match.group(2)), match.group(3)
        if n == 0:
            raise DegreeParseError(source, "L(0, k) is not a root of unity", column)
        return CycloProduct.linear(RootAngle.of(n, k), int(exponent) if exponent else 1)
    if position == 0 and _NUMBER.fullmatch(term):
        return CycloProduct.constant(Fraction(term))
    raise DegreeParseError(source, f"unrecognised factor {term!r}", column)


def _power(name: str, mult: int) -> str:
    return name if mult == 1 else f"{name}^{mult}"


def _format_exponent(exponent: Fraction) -> str:
    if exponent == 1:
        return "q"
    if exponent.denominator == 1:
        return f"q^{exponent.numerator}"
    return f"q^({exponent})"


def _take_group(counts: Counter, angles: list[RootAngle]) -> int:
    mults = [counts[a] for a in angles]
    if all(m > 0 for m in mults):
        take = min(mults)
    elif all(m < 0 for m in mults):
        take = max(mults)
    else:
        return 0
    for angle in angles:
        counts[angle] -= take
    return take


def format_degree(f: CycloProduct) -> str:
    counts: Counter = Counter(f.root_map)
    factors: list[str] = []
    if f.qexp:
        factors.append(_format_exponent(f.qexp))

    orders = sorted({angle.order for angle in counts})
    for n in orders:
        angles = [RootAngle(Fraction(k, n)) for k in range(n) if math.gcd(k, n) == 1]
        if take := _take_group(counts, angles):
            factors.append(_power(f"P{n}", take))
        for prime in ("''", "'"):
            if (n, prime) not in PRIMED_CYCLOTOMICS:
                continue
            half = [RootAngle(Fraction(k, n)) for k in PRIMED_CYCLOTOMICS[(n, prime)]]
            if take := _take_group(counts, half):
                factors.append(_power(f"P{n}{prime}", take))
    for angle in sorted(counts):
        if mult := counts[angle]:
            n, k = angle.turns.denominator, angle.turns.numerator
            factors.append(_power(f"L({n},{k})", mult))

    numerator = f.scalar * f.surd
    sign = "-" if numerator < 0 else ""
    num, den = abs(numerator.numerator), numerator.denominator
    if not factors:
        text = str(num)
    else:
        text = "*".join(factors) if num == 1 else f"{num}*" + "*".join(factors)
    if den != 1:
        text += f"/{den}"
    if f.surd != 1:
        text += f"/sqrt{f.surd}"
    return sign + text


def parse_param(text: str) -> tuple[RootAngle, Fraction]:
    """Parse ``omega * q^r`` into ``(omega, r)``."""
    source = text
    body = "".join(text.split())
    angle = RootAngle(0)
    if body.startswith("-"):
        angle = angle.negate()
        body = body[1:]
    if body in ("1", ""):
        if not body:
            raise DegreeParseError(source, "empty parameter")
        return angle, Fraction(0)

    root_text, star, q_text = body.partition("*")
    if not star:
        if body.startswith("q"):
            root_text, q_text = "", body
        else:
            root_text, q_text = body, ""

    if root_text:
        match = _ROOT.fullmatch(root_text)
        if not match:
            raise DegreeParseError(source, f"unrecognised root of unity {root_text!r}")
        if match.group(3):
            base = RootAngle.of(ROOT_ALIASES[match.group(3)])
        else:
            n = int(match.group(1))
            if n == 0:
                raise DegreeParseError(source, "E(0, k) is not a root of unity")
            base = RootAngle.of(n, int(match.group(2)))
        power = int(match.group(4)) if match.group(4) else 1
        angle = angle + RootAngle(base.turns * power)

    exponent = Fraction(0)
    if q_text:
        match = _Q_PARAM.fullmatch(q_text)
        if not match:
            raise DegreeParseError(source, f"unrecognised power of q {q_text!r}")
        exponent = Fraction(match.group(1) or match.group(2) or "1")
    elif star:
        raise DegreeParseError(source, "missing power of q after '*'")
    return angle, exponent


def _format_root(angle: RootAngle) -> str:
    for name, order in ROOT_ALIASES.items():
        if angle.order == order:
            k = angle.turns.numerator
            return _power(name, k)
    return f"E({angle.turns.denominator},{angle.turns.numerator})"


def format_param(angle: RootAngle, exponent: Fraction) -> str:
    sign = ""
    if angle.turns == HALF:
        sign, angle = "-", RootAngle(0)
    elif angle.turns != 0:
        flipped = angle.negate()
        named = ROOT_ALIASES.values()
        if flipped.order in named and (
            angle.order not in named
            or flipped.turns.numerator < angle.turns.numerator
        ):
            sign, angle = "-", flipped

    root = "" if angle.turns == 0 else _format_root(angle)
    if exponent == 0:
        return sign + (root or "1")
    q_text = "q" if exponent == 1 else f"q^{exponent}"
    if exponent.denominator != 1:
        q_text = f"q^({exponent})"
    return sign + (f"{root}*{q_text}" if root else q_text)
