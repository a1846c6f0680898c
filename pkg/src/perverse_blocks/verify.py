"""Verification suites over the bundled tables and random instances.

Each suite yields named cases; a case returns ``None`` when it passes and a short
description of the first discrepancy otherwise. Results are sorted by case name
before they are reported, so reports do not depend on the number of workers.
"""

import cmath
import logging
import math
import os
import random
import time
from collections.abc import Callable, Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from perverse_blocks.blockfile import BlockFile, load_all_files
from perverse_blocks.brauer_tree import BrauerTree, canonical_pi, random_tree
from perverse_blocks.classification import bijection_for, walk_bijection_realized
from perverse_blocks.cyclo import (
    A_of,
    CycloProduct,
    Frac,
    RootAngle,
    arg_mod2,
    binomial,
    from_cyclotomic,
    pi,
    pi_binomial,
    pi_d1,
    pi_d2,
    sign_at_zeta,
    substitute_power,
)
from perverse_blocks.errors import PerverseBlocksError, RootAtZetaError
from perverse_blocks.hecke import (
    broue_agrees,
    chain_to_coxeter,
    classify_type,
    kappa_shift_change,
)
from perverse_blocks.parameters import clear_denominators, reduce_kappa, relative_pi
from perverse_blocks.star_algebra import (
    algorithmically_equivalent,
    decomposition_matrix,
    is_cohomologically_closed,
    run_concrete,
    run_generic,
    shift_pi,
)
from perverse_blocks.unipotent import (
    Block,
    GroupFamily,
    aA_decreases_from_exceptional,
    classical_blocks,
    from_block,
    minimal_pi_check,
    parity_holds,
    pi_char,
)

logger = logging.getLogger(__name__)

PASS = "PASS"
FAIL = "FAIL"
SKIP_CONJECTURAL = "SKIP-conjectural"

Case = tuple[str, Callable[[], "str | None"], bool]

G2_PI = (0, 3, 3, 3, 4, 4)
G2_ORDER = ("phi_1_0", "G2[theta^2]", "phi_2_2", "G2[theta]", "phi_1_6", "G2[1]")
G2_PROJECTIVES = {5: (5, 6, 4, 5), 6: (6, 5, 5, 4), 2: (2, 6, 6)}
G2_COHOMOLOGY = {2: {3: "1/2", 2: "1"}, 3: {3: "3", 1: "1"}, 5: {4: "1/2/3/4/5"}}
G2_TOTALS = {3: (-1, 0, 1, 0, 0, 0), 5: (1, -1, -1, -1, 1, 0)}
G2_GREEN_DIMENSIONS = (1, 12, 11, 12, 5, 1)
G2_DECOMPOSITION = (
    (1, 0, 0, 0, 0, 0),
    (0, 1, 0, 0, 0, 0),
    (1, 0, 1, 0, 0, 0),
    (0, 0, 0, 1, 0, 0),
    (0, 1, 1, 1, 1, 0),
    (0, 0, 0, 0, 0, 1),
)
G2_EXCEPTIONAL_ROW = (0, 0, 0, 0, 1, 1)

# characters of minimal pi in non-principal bundled blocks, with aA/d
MINIMAL_PI_TABLE = {
    "e6_d5_b2": ("phi_6_1", Fraction(2)),
    "f4_d4_b1": ("phi_2_4'", Fraction(2)),
    "f4_d4_b2": ("phi_2_4''", Fraction(2)),
}

E7_SWAP = {"E7[i]": "E7[-i]", "E7[-i]": "E7[i]"}

CLASSICAL_RANKS = {
    GroupFamily.GL: 12,
    GroupFamily.GU: 12,
    GroupFamily.BC: 10,
    GroupFamily.D: 10,
    GroupFamily.TWO_D: 10,
}


@dataclass(frozen=True)
class VerifySettings:
    seed: int = 0
    scale: float = 1.0
    data_dir: Path | None = None
    workers: int = 1
    include_conjectural: bool = False

    @classmethod
    def from_env(cls, **overrides) -> "VerifySettings":
        """Settings from ``PERVERSE_BLOCKS_*`` variables; keyword overrides win."""
        values: dict = {}
        if data := os.environ.get("PERVERSE_BLOCKS_DATA"):
            values["data_dir"] = Path(data)
        for key, name in (("seed", "SEED"), ("workers", "WORKERS")):
            if raw := os.environ.get(f"PERVERSE_BLOCKS_{name}"):
                try:
                    values[key] = int(raw)
                except ValueError:
                    raise ValueError(
                        f"PERVERSE_BLOCKS_{name} must be an integer, got {raw!r}"
                    ) from None
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def count(self, base: int) -> int:
        return max(1, round(base * self.scale))

    def rank(self, base: int) -> int:
        return max(2, round(base * self.scale))


@dataclass(frozen=True)
class CaseResult:
    suite: str
    case: str
    status: str
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.suite}\t{self.case}\t{self.status}\t{self.detail}"


@dataclass
class VerifyReport:
    suite: str
    results: list[CaseResult] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def cases(self) -> int:
        return len(self.results)

    @property
    def failures(self) -> list[CaseResult]:
        return [r for r in self.results if r.status == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        return [str(r) for r in self.results]

    def summary(self) -> str:
        return (
            f"{self.suite}: {self.cases} cases, {len(self.failures)} failures, "
            f"{self.seconds:.2f}s"
        )


def _evaluate(suite: str, case: Case) -> CaseResult:
    name, check, conjectural = case
    try:
        detail = check()
    except PerverseBlocksError as exc:
        detail = f"{type(exc).__name__}: {exc}"
    if conjectural:
        return CaseResult(suite, name, SKIP_CONJECTURAL, detail or "consistent")
    if detail:
        return CaseResult(suite, name, FAIL, detail)
    return CaseResult(suite, name, PASS)


def _run_cases(suite: str, cases: list[Case], settings: VerifySettings):
    if settings.workers > 1:
        with ThreadPoolExecutor(max_workers=settings.workers) as pool:
            results = list(pool.map(lambda c: _evaluate(suite, c), cases))
    else:
        results = [_evaluate(suite, c) for c in cases]
    return sorted(results, key=lambda r: r.case)


def _first(problems: list[str]) -> str | None:
    if not problems:
        return None
    more = f" (+{len(problems) - 1} more)" if len(problems) > 1 else ""
    return problems[0] + more


def _files(settings: VerifySettings) -> list[BlockFile]:
    return load_all_files(settings.data_dir)


def _skip(f: BlockFile, settings: VerifySettings) -> bool:
    return f.conjectural and not settings.include_conjectural


def _per_file(
    settings: VerifySettings, check: Callable[[BlockFile], "str | None"]
) -> list[Case]:
    return [
        (f.name, lambda f=f: check(f), _skip(f, settings)) for f in _files(settings)
    ]


def _classical(settings: VerifySettings) -> Iterator[Block]:
    for family, rank in CLASSICAL_RANKS.items():
        yield from classical_blocks(family, settings.rank(rank))


def _classical_key(b: Block) -> str:
    return f"{b.family.value}-d{b.d:02d}-{b.core}"


def _fracs(d: int, limit: int) -> list[Frac]:
    return [Frac(k, d) for k in range(1, limit + 1) if math.gcd(k, d) == 1]


def _parities(b: Block, frac: Frac) -> dict[str, int] | None:
    if not b.has_degrees:
        return None
    return {c.name: sign_at_zeta(c.degree / b.cuspidal, frac) for c in b.characters}


def _block_bijection(b: Block, frac: Frac) -> dict[str, int]:
    if b.tree is None:
        raise PerverseBlocksError(f"{b.describe()} has no tree")
    values = {c.name: pi_char(b, c.name, frac) for c in b.characters}
    return bijection_for(b.tree, values, _parities(b, frac)).sigma


# Suites


def g2_d3_cases(settings: VerifySettings) -> list[Case]:
    e = len(G2_PI)

    def complexes() -> str | None:
        results = run_generic(e, G2_PI)
        problems = []
        for i, expected in G2_PROJECTIVES.items():
            if results[i].projectives != expected:
                problems.append(f"X_{i}: projectives {results[i].projectives}")
        for i, slots in G2_COHOMOLOGY.items():
            found = {j: str(m) for j, m in results[i].nonzero_cohomology()}
            if found != slots:
                problems.append(f"X_{i}: cohomology {found}")
        for i, total in G2_TOTALS.items():
            if results[i].alt_sum != total:
                problems.append(f"X_{i}: total {results[i].alt_sum}")
        return _first(problems)

    def greens() -> str | None:
        concrete = run_concrete(13, e, G2_PI)
        dims = tuple(concrete[i].green_dimension for i in range(1, e + 1))
        return None if dims == G2_GREEN_DIMENSIONS else f"dimensions {dims}"

    def matrix() -> str | None:
        m = decomposition_matrix(run_generic(e, G2_PI), G2_PI)
        if m.unipotent != G2_DECOMPOSITION:
            return f"unipotent rows {m.unipotent}"
        if m.exceptional != G2_EXCEPTIONAL_ROW:
            return f"exceptional row {m.exceptional}"
        return None

    def block() -> str | None:
        f = next(f for f in _files(settings) if f.name == "g2_d3")
        b, frac = f.block, Frac(1, 3)
        values = tuple(pi_char(b, name, frac) for name in G2_ORDER)
        if values != G2_PI:
            return f"pi in star order {values}"
        order = sorted(G2_ORDER, key=_block_bijection(b, frac).__getitem__)
        return None if tuple(order) == G2_ORDER else f"ordering {order}"

    return [
        ("algorithm", complexes, False),
        ("block", block, False),
        ("decomposition", matrix, False),
        ("green-dimensions", greens, False),
    ]


def pi_table_cases(settings: VerifySettings) -> list[Case]:
    def check(f: BlockFile) -> str | None:
        problems = []
        for kappa, frac in zip(f.kappas, f.fracs):
            for row in f.rows:
                got = pi_char(f.block, row.name, frac)
                expected = f.expected_pi(row.name, kappa)
                if f.is_deviation(row.name, kappa):
                    if got == expected:
                        problems.append(
                            f"{row.name} kappa={kappa}: listed deviation now matches"
                        )
                    else:
                        logger.warning(
                            "%s: %s kappa=%d computes %d, table has %d",
                            f.name,
                            row.name,
                            kappa,
                            got,
                            expected,
                        )
                elif got != expected:
                    problems.append(f"{row.name} kappa={kappa}: {got} != {expected}")
                has_degree = row.degree is not None
                if has_degree and not parity_holds(f.block, row.name, frac):
                    problems.append(f"{row.name} kappa={kappa}: sign parity")
        return _first(problems)

    return _per_file(settings, check)


def integrality_cases(settings: VerifySettings) -> list[Case]:
    def check(b: Block) -> str | None:
        problems = []
        for frac in _fracs(b.d, 2 * b.d):
            for c in b.characters:
                try:
                    if not parity_holds(b, c.name, frac):
                        problems.append(f"{c} at {frac}: sign parity")
                except PerverseBlocksError as exc:
                    problems.append(f"{c} at {frac}: {exc}")
        return _first(problems)

    return [
        (_classical_key(b), lambda b=b: check(b), False) for b in _classical(settings)
    ]


def _random_product(rng: random.Random) -> CycloProduct:
    f = CycloProduct.monomial(rng.randint(0, 6), scalar=Fraction(rng.randint(1, 9)))
    for _ in range(rng.randint(0, 4)):
        f = f * from_cyclotomic(rng.randint(1, 12), rng.randint(-1, 3))
    if rng.random() < 0.3:
        n = rng.randint(1, 12)
        f = f * CycloProduct.linear(RootAngle.of(n, rng.randint(0, n - 1)))
    return f


def _random_frac(rng: random.Random, limit: int = 12) -> Frac:
    d = rng.randint(1, limit)
    kappa = rng.choice([k for k in range(1, 2 * d + 1) if math.gcd(k, d) == 1])
    return Frac(kappa, d)


def _float_arg(f: CycloProduct, frac: Frac) -> float:
    """arg(f(zeta))/pi in [0, 2), by evaluating the factors numerically."""
    zeta = cmath.exp(2j * cmath.pi * float(frac.value))
    value = float(f.scalar) * cmath.exp(2j * cmath.pi * float(f.qexp * frac.value))
    for angle, mult in f.roots:
        value *= (zeta - cmath.exp(2j * cmath.pi * float(angle.turns))) ** mult
    return (cmath.phase(value) / math.pi) % 2


def _shift_law_instance(rng: random.Random) -> str | None:
    f, frac = _random_product(rng), _random_frac(rng)
    if pi(f, frac.shifted()) != pi(f, frac) + 2 * A_of(f):
        return f"shift law fails for {f} at {frac}"
    if pi(f, frac) != pi(substitute_power(f, frac.kappa), Frac(1, frac.d)):
        return f"q -> q^kappa fails for {f} at {frac}"
    one = Frac(1, frac.d)
    if pi(f, one) != pi(substitute_power(f, 2), Frac(1, 2 * frac.d)):
        return f"q -> q^2 fails for {f} at {one}"
    if not f.multiplicity(RootAngle(0)) and pi(f, Frac(frac.kappa, 1)) != pi_d1(
        f, frac.kappa
    ):
        return f"d=1 closed form fails for {f}"
    if f.is_real and not f.multiplicity(RootAngle(Fraction(1, 2))):
        kappa = 2 * rng.randint(0, 5) + 1
        if pi(f, Frac(kappa, 2)) != pi_d2(f, kappa):
            return f"d=2 closed form fails for {f} at kappa={kappa}"
    i, j = sorted(rng.sample(range(0, 15), 2), reverse=True)
    sign = rng.choice((1, -1))
    if pi(binomial(i, j, sign), frac) != pi_binomial(i, j, sign, frac):
        return f"closed form for q^{i} {'+' if sign > 0 else '-'} q^{j} at {frac}"
    try:
        exact = arg_mod2(f, frac)
    except RootAtZetaError:
        return None
    if f.is_real and (exact - pi(f, frac)) % 2:
        return f"arg parity fails for {f} at {frac}"
    gap = abs(float(exact) - _float_arg(f, frac))
    if min(gap, 2 - gap) > 1e-9:
        return f"floating-point argument disagrees for {f} at {frac}"
    return None


def shift_law_cases(settings: VerifySettings) -> list[Case]:
    total, chunk = settings.count(10_000), 500

    def check(start: int) -> str | None:
        rng = random.Random(f"{settings.seed}-shift-law-{start}")
        for _ in range(start, min(start + chunk, total)):
            if problem := _shift_law_instance(rng):
                return problem
        return None

    return [
        (f"chunk-{start // chunk:03d}", lambda s=start: check(s), False)
        for start in range(0, total, chunk)
    ]


def genericity_cases(settings: VerifySettings) -> list[Case]:
    def check(k: int) -> str | None:
        rng = random.Random(f"{settings.seed}-genericity-{k}")
        e = rng.randint(1, 8)
        values = tuple(rng.randint(0, 8) for _ in range(e))
        generic = run_generic(e, values)
        m = 2 * max(values) + 2
        for lbar in (m * e + 1, (m + 3) * e + 1):
            concrete = run_concrete(lbar, e, values)
            for i, result in concrete.items():
                if result.generic != generic[i]:
                    return f"e={e} pi={values}: X_{i} differs at lbar={lbar}"
                if not result.green_matches_parity:
                    return f"e={e} pi={values}: X_{i} degree-0 dimension at {lbar}"
        return None

    return [
        (f"case-{k:04d}", lambda k=k: check(k), False)
        for k in range(settings.count(200))
    ]


def greens_walk_cases(settings: VerifySettings) -> list[Case]:
    def check(k: int) -> str | None:
        rng = random.Random(f"{settings.seed}-greens-walk-{k}")
        tree = random_tree(rng.randint(1, 10), rng)
        for alpha in (0, 1):
            if not walk_bijection_realized(tree, alpha):
                return f"alpha={alpha}: degree-0 terms differ for {tree.rotations}"
        return None

    return [
        (f"case-{k:04d}", lambda k=k: check(k), False)
        for k in range(settings.count(100))
    ]


def random_admissible_pi(tree: BrauerTree, rng: random.Random) -> dict[str, int]:
    """canonical pi plus twice a weight that never decreases toward exc."""
    alpha = rng.randint(0, 1)
    base = canonical_pi(tree, alpha)
    weight: dict[str, int] = {}
    for vertex in sorted(tree.distances, key=tree.distances.__getitem__):
        if vertex == tree.exceptional:
            continue
        inner = tree.edge_toward_exceptional[vertex]
        parent = tree.other_end(inner, vertex)
        ceiling = 3 if parent == tree.exceptional else weight[
            tree.edge_toward_exceptional[parent]
        ]
        weight[inner] = rng.randint(0, ceiling)
    return {edge: base[edge] + 2 * weight[edge] for edge in tree.edges}


def classification_cases(settings: VerifySettings) -> list[Case]:
    def check(k: int) -> str | None:
        rng = random.Random(f"{settings.seed}-classification-{k}")
        tree = random_tree(rng.randint(1, 8), rng)
        values = random_admissible_pi(tree, rng)
        result = bijection_for(tree, values)
        if sorted(result.sigma.values()) != list(range(1, tree.e + 1)):
            return f"not a bijection: {result.sigma}"
        sets = [set(step.edges) for step in result.chain]
        if any(not later <= earlier for earlier, later in zip(sets, sets[1:])):
            return "chain sets are not nested"
        if not all(step.closed for step in result.chain):
            return "a chain set is not cohomologically closed"
        star = [0] * tree.e
        for edge, position in result.sigma.items():
            star[position - 1] = values[edge] + result.offset
        subset = sorted(rng.sample(range(1, tree.e + 1), rng.randint(0, tree.e)))
        if is_cohomologically_closed(subset, run_generic(tree.e, star)):
            shifted, rho = shift_pi(star, subset)
            witness = algorithmically_equivalent(star, shifted)
            if witness is None:
                return f"shift on {subset} of {tuple(star)} is not equivalent"
        return None

    return [
        (f"case-{k:04d}", lambda k=k: check(k), False)
        for k in range(settings.count(100))
    ]


def minimal_pi_cases(settings: VerifySettings) -> list[Case]:
    def check(b: Block, fracs: list[Frac], spot: tuple | None) -> str | None:
        problems = [
            f"aA does not increase from {inner} to {outer}"
            for inner, outer in aA_decreases_from_exceptional(b)
        ]
        for frac in fracs:
            report = minimal_pi_check(b, frac)
            if not report.ok:
                problems.append(f"{frac}: {report}")
            if spot and frac.kappa == 1:
                name, ratio = spot
                got = pi_char(b, name, frac)
                if got != 2 * ratio or report.pi != got:
                    problems.append(f"{name}: pi {got}, expected {2 * ratio}")
        return _first(problems)

    cases: list[Case] = [
        (
            f"classical/{_classical_key(b)}",
            lambda b=b: check(b, _fracs(b.d, b.d), None),
            False,
        )
        for b in _classical(settings)
    ]
    cases += [
        (
            f"table/{f.name}",
            lambda f=f: check(f.block, f.fracs, MINIMAL_PI_TABLE.get(f.name)),
            _skip(f, settings),
        )
        for f in _files(settings)
    ]
    return cases


def _hecke_pipeline(b: Block, frac: Frac) -> str | None:
    h, reduced = reduce_kappa(from_block(b), frac)
    h, reduced = clear_denominators(h, reduced)
    typed = classify_type(h)
    chain = chain_to_coxeter(typed)
    if not chain.nested:
        return f"{frac}: perturbation sets {chain.sets} are not nested"
    by_param = {param: i for i, param in enumerate(h.params)}
    order = [by_param[param] for param in typed.params]
    chain_pi = chain.pi()
    hecke_pi = relative_pi(h, reduced, anchor=order[0])
    block_pi = [pi_char(b, i, frac) for i in range(b.e)]
    for position, i in enumerate(order):
        from_chain = chain_pi[position] - chain_pi[0]
        from_hecke = hecke_pi[i]
        from_block_ = block_pi[i] - block_pi[order[0]]
        if not from_chain == from_hecke == from_block_:
            name = b.names[i]
            return (
                f"{frac}: {name} pi differences chain={from_chain} "
                f"hecke={from_hecke} block={from_block_}"
            )
    return None


def hecke_cases(settings: VerifySettings) -> list[Case]:
    def check_classical(b: Block) -> str | None:
        problems = []
        for frac in _fracs(b.d, b.d):
            if problem := _hecke_pipeline(b, frac):
                problems.append(problem)
            elif not broue_agrees(b, frac, _block_bijection(b, frac)):
                problems.append(f"{frac}: specialization differs from the tree")
        return _first(problems)

    def check_file(f: BlockFile) -> str | None:
        problems = [
            f"{frac}: specialization differs from the tree"
            for frac in f.fracs
            if not broue_agrees(f.block, frac, _block_bijection(f.block, frac))
        ]
        return _first(problems)

    cases: list[Case] = [
        (f"classical/{_classical_key(b)}", lambda b=b: check_classical(b), False)
        for b in _classical(settings)
    ]
    cases += [
        (f"table/{f.name}", lambda f=f: check_file(f), _skip(f, settings))
        for f in _files(settings)
    ]
    return cases


def kappa_shift_cases(settings: VerifySettings) -> list[Case]:
    def check(f: BlockFile) -> str | None:
        frac = f.fracs[0]
        change = kappa_shift_change(f.block, frac)
        integral = all(row.exponent.denominator == 1 for row in f.rows)
        expected = {} if integral else E7_SWAP if f.name == "e7_d14" else None
        if expected is None:
            moved = sorted(change)
            if moved != sorted(change.values()):
                return f"{frac}: change {change} is not a permutation"
            return None
        return None if change == expected else f"{frac}: change {change}"

    return _per_file(settings, check)


SUITES: dict[str, Callable[[VerifySettings], list[Case]]] = {
    "g2-d3": g2_d3_cases,
    "pi-tables": pi_table_cases,
    "integrality": integrality_cases,
    "shift-law": shift_law_cases,
    "genericity": genericity_cases,
    "greens-walk": greens_walk_cases,
    "classification": classification_cases,
    "minimal-pi": minimal_pi_cases,
    "hecke": hecke_cases,
    "kappa-shift": kappa_shift_cases,
}


def run_suite(name: str, settings: VerifySettings | None = None) -> VerifyReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    settings = settings or VerifySettings()
    logger.info("suite %s: seed=%d scale=%s", name, settings.seed, settings.scale)
    started = time.perf_counter()
    results = _run_cases(name, SUITES[name](settings), settings)
    report = VerifyReport(name, results, time.perf_counter() - started)
    logger.info(report.summary())
    return report


def run_suites(
    names: list[str], settings: VerifySettings | None = None
) -> list[VerifyReport]:
    """Run the named suites in order; ``all`` expands to every suite."""
    expanded: list[str] = []
    for name in names:
        expanded += list(SUITES) if name == "all" else [name]
    return [run_suite(name, settings) for name in expanded]
