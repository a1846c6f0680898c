"""Partitions, beta-sets and symbols with their hook and cohook moves."""

import re
from collections.abc import Iterator
from dataclasses import dataclass

from perverse_blocks.errors import FamilyError, HookError


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def first_part(self) -> int:
        return self.parts[0] if self.parts else 0

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(
            tuple(sum(1 for p in self.parts if p > i) for i in range(self.parts[0]))
        )

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.parts)) + "]"


@dataclass(frozen=True)
class BetaSet:
    """A finite set of non-negative integers, stored decreasing.

    Two beta-sets related by ``X -> {0} u (X + 1)`` describe the same partition;
    ``canonical`` picks the representative without 0.
    """

    elements: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        elements = tuple(sorted({int(x) for x in self.elements}, reverse=True))
        if len(elements) != len(self.elements):
            raise ValueError(f"beta-set has repeated elements: {self.elements}")
        if elements and elements[-1] < 0:
            raise ValueError(f"beta-set elements must be non-negative: {elements}")
        object.__setattr__(self, "elements", elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.elements

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    @property
    def rank(self) -> int:
        a = len(self.elements)
        return sum(self.elements) - a * (a - 1) // 2

    def shift(self, times: int = 1) -> "BetaSet":
        return BetaSet(
            tuple(x + times for x in self.elements) + tuple(range(times))
        )

    def canonical(self) -> "BetaSet":
        elements = self.elements
        while elements and elements[-1] == 0:
            elements = tuple(x - 1 for x in elements[:-1])
        return BetaSet(elements)

    def with_length(self, length: int) -> "BetaSet":
        base = self.canonical()
        if length < len(base):
            raise HookError(f"{self} has no representative with {length} elements")
        return base.shift(length - len(base))

    def equivalent(self, other: "BetaSet") -> bool:
        return self.canonical() == other.canonical()

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


def beta_of(p: Partition, length: int | None = None) -> BetaSet:
    length = len(p) if length is None else length
    if length < len(p):
        raise HookError(f"beta-set length {length} is shorter than {p}")
    parts = p.parts + (0,) * (length - len(p))
    return BetaSet(tuple(part + length - i for i, part in enumerate(parts, start=1)))


def partition_of(x: BetaSet) -> Partition:
    a = len(x)
    parts = (elem - (a - i) for i, elem in enumerate(x.elements, start=1))
    return Partition(tuple(p for p in parts if p > 0))


def rank(x: BetaSet) -> int:
    return x.rank


def add_hook(x: BetaSet, elem: int, t: int) -> tuple[BetaSet, int]:
    """Slide ``elem`` to ``elem + t``; also return the leg length of the hook."""
    if t <= 0:
        raise HookError(f"hook length must be positive, got {t}")
    if elem not in x:
        raise HookError(f"{elem} is not in {x}")
    if elem + t in x:
        raise HookError(f"cannot add a {t}-hook at {elem}: {elem + t} is in {x}")
    leg = sum(1 for y in x if elem < y < elem + t)
    moved = tuple(elem + t if y == elem else y for y in x)
    return BetaSet(moved), leg


def remove_hook(x: BetaSet, elem: int, t: int) -> tuple[BetaSet, int]:
    if elem not in x or elem - t < 0 or elem - t in x:
        raise HookError(f"no removable {t}-hook at {elem} in {x}")
    leg = sum(1 for y in x if elem - t < y < elem)
    moved = tuple(elem - t if y == elem else y for y in x)
    return BetaSet(moved), leg


def hooks(x: BetaSet, t: int) -> list[tuple[int, int]]:
    """Removable t-hooks as ``(element, leg length)`` pairs, largest element first."""
    return [
        (elem, sum(1 for y in x if elem - t < y < elem))
        for elem in x
        if elem - t >= 0 and elem - t not in x
    ]


def t_core(x: BetaSet, t: int, canonical: bool = True) -> BetaSet:
    """Push every bead up its runner on the t-abacus."""
    beads = [0] * t
    for elem in x:
        beads[elem % t] += 1
    core = BetaSet(tuple(r + t * k for r in range(t) for k in range(beads[r])))
    return core.canonical() if canonical else core


def is_t_core(x: BetaSet, t: int) -> bool:
    return not hooks(x, t)


def t_weight(x: BetaSet, t: int) -> int:
    return (x.rank - t_core(x, t).rank) // t


def runner_normalized(x: BetaSet, t: int) -> BetaSet:
    """Shortest shift of ``x`` with a bead on every runner of the t-abacus."""
    y = x.canonical()
    while len({elem % t for elem in y}) < t:
        y = y.shift()
    return y


def addable(x: BetaSet, t: int) -> list[int]:
    """Runner ends (``y + t`` absent) of the normalized representative, decreasing.

    There is one per runner, so exactly t of them.
    """
    y = runner_normalized(x, t)
    return [elem for elem in y if elem + t not in y]


def partitions_of(n: int, largest: int | None = None) -> Iterator[Partition]:
    def build(remaining: int, cap: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, cap), 0, -1):
            for rest in build(remaining - part, part):
                yield (part,) + rest

    for parts in build(n, n if largest is None else largest):
        yield Partition(parts)


def _row_key(row: BetaSet) -> tuple[int, tuple[int, ...]]:
    return len(row), row.elements


@dataclass(frozen=True)
class Symbol:
    """An unordered pair of beta-sets, stored larger row first."""

    first: BetaSet
    second: BetaSet

    def __post_init__(self) -> None:
        if _row_key(self.second) > _row_key(self.first):
            first, second = self.second, self.first
            object.__setattr__(self, "first", first)
            object.__setattr__(self, "second", second)

    @classmethod
    def of(cls, first: "tuple[int, ...] | list[int]", second=()) -> "Symbol":
        return cls(BetaSet(tuple(first)), BetaSet(tuple(second)))

    @property
    def rows(self) -> tuple[BetaSet, BetaSet]:
        return self.first, self.second

    @property
    def defect(self) -> int:
        return len(self.first) - len(self.second)

    @property
    def rank(self) -> int:
        a, b = len(self.first), len(self.second)
        return sum(self.first) + sum(self.second) - (a + b - 1) ** 2 // 4

    @property
    def is_degenerate(self) -> bool:
        return self.first == self.second

    def shift(self, times: int = 1) -> "Symbol":
        return Symbol(self.first.shift(times), self.second.shift(times))

    def canonical(self) -> "Symbol":
        x, y = self.first.elements, self.second.elements
        while x and y and x[-1] == 0 and y[-1] == 0:
            x = tuple(v - 1 for v in x[:-1])
            y = tuple(v - 1 for v in y[:-1])
        return Symbol(BetaSet(x), BetaSet(y))

    def equivalent(self, other: "Symbol") -> bool:
        return self.canonical() == other.canonical()

    def __str__(self) -> str:
        return "{" + str(self.first) + "," + str(self.second) + "}"


def _rows_after_move(
    s: Symbol, side: int, elem: int, target: int
) -> tuple[BetaSet, BetaSet]:
    source, other = (s.first, s.second) if side == 0 else (s.second, s.first)
    source = BetaSet(tuple(y for y in source if y != elem))
    other = BetaSet(other.elements + (target,))
    return source, other


def add_cohook(s: Symbol, side: int, elem: int, t: int) -> Symbol:
    """Remove ``elem`` from row ``side`` and put ``elem + t`` into the other row."""
    if t <= 0 or side not in (0, 1):
        raise HookError(f"invalid cohook (side={side}, t={t})")
    row, other = s.rows if side == 0 else s.rows[::-1]
    if elem not in row:
        raise HookError(f"{elem} is not in row {side} of {s}")
    if elem + t in other:
        raise HookError(f"cannot add a {t}-cohook at {elem}: {elem + t} in {other}")
    return Symbol(*_rows_after_move(s, side, elem, elem + t))


def remove_cohook(s: Symbol, side: int, elem: int, t: int) -> Symbol:
    row, other = s.rows if side == 0 else s.rows[::-1]
    if elem not in row or elem - t < 0 or elem - t in other:
        raise HookError(f"no removable {t}-cohook at {elem} in row {side} of {s}")
    return Symbol(*_rows_after_move(s, side, elem, elem - t))


def cohooks(s: Symbol, t: int) -> list[tuple[int, int]]:
    """Removable t-cohooks as ``(side, element)`` pairs."""
    found = []
    for side, (row, other) in enumerate((s.rows, s.rows[::-1])):
        found.extend(
            (side, elem) for elem in row if elem - t >= 0 and elem - t not in other
        )
    return found


def t_cocore(s: Symbol, t: int) -> Symbol:
    current = s.shift(t)
    while moves := cohooks(current, t):
        side, elem = max(moves, key=lambda move: move[1])
        current = remove_cohook(current, side, elem, t)
    return current.canonical()


def is_t_cocore(s: Symbol, t: int) -> bool:
    return not cohooks(s, t)


def symbol_t_core(s: Symbol, t: int) -> Symbol:
    first = t_core(s.first, t, canonical=False)
    second = t_core(s.second, t, canonical=False)
    return Symbol(first, second).canonical()


def is_symbol_t_core(s: Symbol, t: int) -> bool:
    return not hooks(s.first, t) and not hooks(s.second, t)


def symbols_of_rank(n: int, defect: int) -> Iterator[Symbol]:
    """All symbols of rank n and the given defect, each once, canonical."""
    if defect < 0:
        raise FamilyError(f"defect must be non-negative, got {defect}")
    size = n - defect * defect // 4
    if size < 0:
        return
    seen: set[Symbol] = set()
    for k in range(size + 1):
        for alpha in partitions_of(k):
            for beta in partitions_of(size - k):
                length = max(len(alpha) - defect, len(beta), 0)
                symbol = Symbol(
                    beta_of(alpha, length + defect), beta_of(beta, length)
                ).canonical()
                if symbol not in seen:
                    seen.add(symbol)
                    yield symbol


_PARTITION = re.compile(r"\[\s*((?:\d+\s*(?:,\s*\d+\s*)*)?)\]")
_BETA = re.compile(r"\{\s*((?:\d+\s*(?:,\s*\d+\s*)*)?)\}")
_SYMBOL = re.compile(r"\{\s*(\{[^{}]*\})\s*,\s*(\{[^{}]*\})\s*\}")


def _numbers(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(",") if v.strip())


def parse_partition(text: str) -> Partition:
    match = _PARTITION.fullmatch(text.strip())
    if not match:
        raise FamilyError(f"cannot read a partition from {text!r}")
    return Partition(tuple(sorted(_numbers(match.group(1)), reverse=True)))


def parse_beta(text: str) -> BetaSet:
    match = _BETA.fullmatch(text.strip())
    if not match:
        raise FamilyError(f"cannot read a beta-set from {text!r}")
    return BetaSet(_numbers(match.group(1)))


def parse_symbol(text: str) -> Symbol:
    match = _SYMBOL.fullmatch(text.strip())
    if not match:
        raise FamilyError(f"cannot read a symbol from {text!r}")
    return Symbol(parse_beta(match.group(1)), parse_beta(match.group(2)))


def parse_label(text: str) -> "Partition | BetaSet | Symbol":
    text = text.strip()
    if text.startswith("["):
        return parse_partition(text)
    if text.startswith("{{") or _SYMBOL.fullmatch(text):
        return parse_symbol(text)
    return parse_beta(text)
