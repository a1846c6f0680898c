"""Perverse equivalences for an arbitrary Brauer tree, built from Green's walk.

Starting from the walk bijection for the canonical perversity ``pi_alpha``, the
target perversity is reached by repeatedly adding 2 on nested sets of simple
modules; each step cycles the affected star positions.
"""

import logging
from dataclasses import dataclass, field

from perverse_blocks.brauer_tree import (
    BrauerTree,
    canonical_pi,
    greens_walk,
    validate_pi,
)
from perverse_blocks.errors import PerversityError
from perverse_blocks.star_algebra import (
    is_cohomologically_closed,
    run_generic,
    shift_pi,
    wrap,
)
from perverse_blocks.types import EdgeId, EdgePi, EdgeSigns, Index

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChainSet:
    step: int
    edges: tuple[EdgeId, ...]
    positions: tuple[Index, ...]
    closed: bool


@dataclass(frozen=True)
class PerverseBijection:
    sigma: dict[EdgeId, Index]
    alpha: int
    offset: int
    chain: tuple[ChainSet, ...] = field(default=())

    def ordering(self) -> list[EdgeId]:
        """Edges listed by star position."""
        return sorted(self.sigma, key=self.sigma.__getitem__)


def bijection_for(
    tree: BrauerTree, pi: EdgePi, parities: EdgeSigns | None = None
) -> PerverseBijection:
    """Star positions of the simple modules for the equivalence with perversity pi."""
    report = validate_pi(tree, pi, parities)
    if not report.ok:
        raise PerversityError(
            "perversity function is not admissible: "
            f"increasing={report.increasing} parity={report.parity} "
            f"alpha={report.alpha} pairs={list(report.bad_pairs)} "
            f"signs={list(report.bad_parity)}"
        )
    alpha = report.alpha
    e = tree.e
    walk = greens_walk(tree, alpha=alpha)
    base = canonical_pi(tree, alpha)

    gap = max(base[edge] - pi[edge] for edge in tree.edges)
    offset = max(gap, 0)
    offset += offset % 2
    target = {edge: pi[edge] + offset for edge in tree.edges}

    sigma = dict(walk.s_index)
    star_pi = [0] * e
    for edge, position in sigma.items():
        star_pi[position - 1] = base[edge]

    chain: list[ChainSet] = []
    top = max((target[edge] - base[edge]) // 2 for edge in tree.edges)
    for j in range(1, top + 1):
        edges = tuple(
            sorted(edge for edge in tree.edges if target[edge] - base[edge] >= 2 * j)
        )
        positions = tuple(sorted(sigma[edge] for edge in edges))
        closed = is_cohomologically_closed(positions, run_generic(e, star_pi))
        if not closed:
            logger.warning("step %d: %s is not cohomologically closed", j, positions)
        chain.append(ChainSet(j, edges, positions, closed))
        star_pi_tuple, rho = shift_pi(star_pi, positions, check=False)
        star_pi = list(star_pi_tuple)
        sigma = {edge: rho[position] for edge, position in sigma.items()}

    results = run_generic(e, star_pi)
    for edge in tree.edges:
        position = sigma[edge]
        if star_pi[position - 1] != target[edge]:
            raise PerversityError(f"{edge}: transported perversity does not match")
        expected = walk.greens[walk.s_index[edge]]
        if results[position].green != expected:
            raise PerversityError(
                f"{edge}: Green correspondent {results[position].green} "
                f"differs from the walk's {expected}"
            )

    shift = offset // 2
    final = {edge: wrap(position - shift, e) for edge, position in sigma.items()}
    return PerverseBijection(
        sigma=final, alpha=alpha, offset=offset, chain=tuple(chain)
    )


def walk_bijection_realized(tree: BrauerTree, alpha: int = 0) -> bool:
    """Whether the algorithm on the transported pi_alpha gives the walk's Greens."""
    walk = greens_walk(tree, alpha=alpha)
    base = canonical_pi(tree, alpha)
    star_pi = [0] * tree.e
    for edge, position in walk.s_index.items():
        star_pi[position - 1] = base[edge]
    results = run_generic(tree.e, star_pi)
    return all(results[p].green == walk.greens[p] for p in walk.greens)
