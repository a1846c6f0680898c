"""The perverse-equivalence algorithm over the Brauer star algebra.

Simple modules of the star with e edges are ``T_1, ..., T_e``; the projective
cover of ``T_i`` is uniserial with radical layers ``i, i+1, ..., i`` and
``Omega^2(T_i) = T_{i+1}``. Modules are tracked by socle and top (generic run)
or socle and dimension (concrete run with ``lbar = m*e + 1``).
"""

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, replace
from functools import lru_cache

from sympy import Matrix

from perverse_blocks.errors import PerversityError
from perverse_blocks.types import Index, Permutation, PiValues

logger = logging.getLogger(__name__)


def wrap(x: int, e: int) -> Index:
    """Representative of x modulo e in 1..e."""
    return (x - 1) % e + 1


@dataclass(frozen=True)
class Uniserial:
    socle: Index
    length: int
    e: int

    @property
    def top(self) -> Index:
        return wrap(self.socle - self.length + 1, self.e)

    @property
    def layers(self) -> tuple[Index, ...]:
        """Radical layers from the top down to the socle."""
        return tuple(wrap(self.top + k, self.e) for k in range(self.length))

    def __bool__(self) -> bool:
        return self.length > 0

    def __str__(self) -> str:
        return "/".join(map(str, self.layers)) if self.length else "0"


@dataclass(frozen=True)
class GenericGreen:
    socle: Index
    top: Index
    odd: bool

    def __str__(self) -> str:
        parity = "odd" if self.odd else "even"
        return f"(socle {self.socle}, top {self.top}, {parity})"


@dataclass(frozen=True)
class GenericComplexResult:
    index: Index
    pi: int
    # injective hulls from degree -pi up to degree -1
    projectives: tuple[Index, ...]
    # cohomology[j - 1] is H^{-j}
    cohomology: tuple[Uniserial, ...]
    green: GenericGreen
    alt_sum: tuple[int, ...]

    def nonzero_cohomology(self) -> list[tuple[int, Uniserial]]:
        return [
            (j, module) for j, module in enumerate(self.cohomology, start=1) if module
        ]


@dataclass(frozen=True)
class ConcreteComplexResult:
    generic: GenericComplexResult
    lbar: int
    green_dimension: int
    # (dim M_j, dim L_j) at each step, degree -pi first
    dimensions: tuple[tuple[int, int], ...]

    @property
    def green_matches_parity(self) -> bool:
        e = len(self.generic.alt_sum)
        if self.generic.green.odd:
            return self.green_dimension >= self.lbar - e
        return self.green_dimension <= e


def _check_pi(e: int, pi: Sequence[int]) -> PiValues:
    values = tuple(int(v) for v in pi)
    if e < 1 or len(values) != e:
        raise PerversityError(f"expected {e} perversity values, got {len(values)}")
    if any(v < 0 for v in values):
        raise PerversityError(f"perversity values must be non-negative: {values}")
    return values


def _run(e: int, pi: PiValues, i: Index, lbar: int | None):
    def p(x: int) -> int:
        return pi[wrap(x, e) - 1]

    top, socle, dim = i, i, 1
    projectives: list[Index] = []
    cohomology: dict[int, Uniserial] = {}
    dims: list[tuple[int, int]] = []
    for j in range(pi[i - 1], 0, -1):
        hull = socle
        projectives.append(hull)
        s, idx = 0, top - 1
        while p(idx) < j:
            s += 1
            idx -= 1
        if lbar is not None and s > lbar - dim:
            raise PerversityError(
                f"X_{i}: degree -{j} needs {s} layers above a module of dimension "
                f"{dim} inside a projective of dimension {lbar}"
            )
        if j == pi[i - 1]:
            cohomology[j] = Uniserial(i, s + 1, e)
        else:
            cohomology[j] = Uniserial(wrap(top - 1, e), s, e)
        m_top, m_dim = wrap(top - s, e), dim + s
        top, socle = hull, wrap(m_top - 1, e)
        if lbar is not None:
            dim = lbar - m_dim
            dims.append((m_dim, dim))
        logger.debug("X_%d degree -%d: P%d, H = %s", i, j, hull, cohomology[j])

    generic = GenericComplexResult(
        index=i,
        pi=pi[i - 1],
        projectives=tuple(projectives),
        cohomology=tuple(
            cohomology.get(j, Uniserial(i, 0, e)) for j in range(1, pi[i - 1] + 1)
        ),
        green=GenericGreen(socle=socle, top=top, odd=bool(pi[i - 1] % 2)),
        alt_sum=(),
    )
    generic = replace(generic, alt_sum=alternating_sum(generic, pi))
    return generic, dim, tuple(dims)


@lru_cache(maxsize=4096)
def _run_generic_cached(e: int, pi: PiValues) -> tuple[GenericComplexResult, ...]:
    return tuple(_run(e, pi, i, None)[0] for i in range(1, e + 1))


def run_generic(e: int, pi: Sequence[int]) -> dict[Index, GenericComplexResult]:
    """Run the algorithm for every simple module, independently of lbar."""
    values = _check_pi(e, pi)
    return {r.index: r for r in _run_generic_cached(e, values)}


def run_concrete(
    lbar: int, e: int, pi: Sequence[int]
) -> dict[Index, ConcreteComplexResult]:
    values = _check_pi(e, pi)
    if lbar < 2 or (lbar - 1) % e:
        raise PerversityError(f"lbar={lbar} is not admissible for e={e}")
    results = {}
    for i in range(1, e + 1):
        generic, dim, dims = _run(e, values, i, lbar)
        results[i] = ConcreteComplexResult(generic, lbar, dim, dims)
    return results


def alternating_sum(r: GenericComplexResult, pi: Sequence[int]) -> tuple[int, ...]:
    """Signed composition factors of the cohomology of X_i."""
    e = len(pi)
    total = [0] * e
    for j, module in r.nonzero_cohomology():
        for layer in module.layers:
            total[layer - 1] += (-1) ** ((j - pi[layer - 1]) % 2)
    if r.pi == 0:
        total[r.index - 1] = 1
    return tuple(total)


@dataclass(frozen=True)
class DecompositionMatrix:
    unipotent: tuple[tuple[int, ...], ...]
    exceptional: tuple[int, ...]


def decomposition_matrix(
    results: Mapping[Index, GenericComplexResult], pi: Sequence[int]
) -> DecompositionMatrix:
    e = len(pi)
    sums = Matrix([list(results[i].alt_sum) for i in range(1, e + 1)])
    if sums.det() == 0:
        raise PerversityError("alternating sums are linearly dependent")
    inverse = sums.inv()
    rows = tuple(tuple(int(inverse[i, j]) for j in range(e)) for i in range(e))
    exceptional = [0] * e
    for i in range(e):
        sign = (-1) ** (pi[i] % 2)
        for j in range(e):
            exceptional[j] += sign * rows[i][j]
    return DecompositionMatrix(rows, tuple(exceptional))


def is_cohomologically_closed(
    indices: Iterable[Index], results: Mapping[Index, GenericComplexResult]
) -> bool:
    chosen = set(indices)
    for i, result in results.items():
        if i in chosen:
            continue
        for _, module in result.nonzero_cohomology():
            if chosen.intersection(module.layers):
                return False
    return True


def cycle_of(indices: Iterable[Index], e: int) -> Permutation:
    ordered = sorted(set(indices))
    rho = {i: i for i in range(1, e + 1)}
    for k, x in enumerate(ordered):
        rho[x] = ordered[(k + 1) % len(ordered)]
    return rho


def shift_pi(
    pi: Sequence[int], indices: Iterable[Index], check: bool = True
) -> tuple[PiValues, Permutation]:
    """Add 2 to pi on a closed set and cycle the set by one place."""
    e = len(pi)
    chosen = sorted(set(indices))
    if check and not is_cohomologically_closed(chosen, run_generic(e, pi)):
        raise PerversityError(
            f"{chosen} is not cohomologically closed for {tuple(pi)}"
        )
    rho = cycle_of(chosen, e)
    shifted = list(pi)
    for i in chosen:
        shifted[rho[i] - 1] = pi[i - 1] + 2
    return tuple(shifted), rho


def _matches(
    a: GenericComplexResult, b: GenericComplexResult, pi_a: int, pi_b: int
) -> bool:
    return a.green == b.green and (pi_a - pi_b) % 2 == 0


def algorithmically_equivalent(
    pi_a: Sequence[int], pi_b: Sequence[int]
) -> Permutation | None:
    """A permutation rho identifying the two algorithm outputs, if one exists.

    Green correspondents live in the local block and are compared as they are;
    alternating sums are compared after relabelling by rho.
    """
    e = len(pi_a)
    if len(pi_b) != e:
        return None
    res_a, res_b = run_generic(e, pi_a), run_generic(e, pi_b)
    options = {
        i: [
            j
            for j in range(1, e + 1)
            if _matches(res_a[i], res_b[j], pi_a[i - 1], pi_b[j - 1])
        ]
        for i in range(1, e + 1)
    }

    def consistent(rho: Permutation) -> bool:
        return all(
            res_b[rho[i]].alt_sum[rho[alpha] - 1] == res_a[i].alt_sum[alpha - 1]
            for i in range(1, e + 1)
            for alpha in range(1, e + 1)
        )

    def extend(i: int, rho: Permutation, used: set[Index]):
        if i > e:
            return dict(rho) if consistent(rho) else None
        for j in options[i]:
            if j in used:
                continue
            rho[i] = j
            used.add(j)
            if (found := extend(i + 1, rho, used)) is not None:
                return found
            used.discard(j)
            del rho[i]
        return None

    return extend(1, {}, set())


def projective_string(i: Index, e: int, m: int = 1) -> str:
    """Radical layers of the projective cover of T_i."""
    return "/".join(str(wrap(i + k, e)) for k in range(m * e + 1))
