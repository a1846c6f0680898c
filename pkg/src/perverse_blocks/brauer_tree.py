"""Planar Brauer trees, Green's walk and the canonical perversity functions."""

import logging
import random
import re
from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property

from perverse_blocks.errors import BlockFileError, PerversityError
from perverse_blocks.star_algebra import GenericGreen, wrap
from perverse_blocks.types import EdgeId, EdgePi, EdgeSigns, VertexId

logger = logging.getLogger(__name__)

EXCEPTIONAL = "exc"


@dataclass(frozen=True)
class BrauerTree:
    """A tree given as a rotation system.

    ``rotation`` lists, for every vertex, its incident edges in anti-clockwise
    order. Edges are named by the non-exceptional endpoint further from the
    exceptional vertex wherever a character labelling is available.
    """

    rotation: tuple[tuple[VertexId, tuple[EdgeId, ...]], ...]
    exceptional: VertexId = EXCEPTIONAL
    multiplicity: int = 1

    def __post_init__(self) -> None:
        if isinstance(self.rotation, Mapping):
            object.__setattr__(
                self,
                "rotation",
                tuple((v, tuple(es)) for v, es in self.rotation.items()),
            )
        if self.multiplicity < 1:
            raise ValueError(f"multiplicity must be positive, got {self.multiplicity}")
        self._check_shape()

    def _check_shape(self) -> None:
        vertices = [v for v, _ in self.rotation]
        if len(set(vertices)) != len(vertices):
            raise ValueError("a vertex is listed twice in the rotation system")
        if self.exceptional not in vertices:
            raise ValueError(f"exceptional vertex {self.exceptional!r} is missing")
        ends: dict[EdgeId, list[VertexId]] = {}
        for vertex, edges in self.rotation:
            if len(set(edges)) != len(edges):
                raise ValueError(f"vertex {vertex!r} lists an edge twice")
            for edge in edges:
                ends.setdefault(edge, []).append(vertex)
        for edge, where in ends.items():
            if len(where) != 2:
                raise ValueError(f"edge {edge!r} must join two vertices, found {where}")
        if len(ends) != len(vertices) - 1 or not ends:
            raise ValueError("a Brauer tree needs e >= 1 edges and e + 1 vertices")
        if len(self.distances) != len(vertices):
            raise ValueError("the rotation system is not connected")

    @cached_property
    def rotations(self) -> dict[VertexId, tuple[EdgeId, ...]]:
        return dict(self.rotation)

    @cached_property
    def endpoints(self) -> dict[EdgeId, tuple[VertexId, VertexId]]:
        ends: dict[EdgeId, list[VertexId]] = {}
        for vertex, edges in self.rotation:
            for edge in edges:
                ends.setdefault(edge, []).append(vertex)
        return {edge: (a, b) for edge, (a, b) in ends.items()}

    @property
    def vertices(self) -> list[VertexId]:
        return [v for v, _ in self.rotation]

    @property
    def edges(self) -> list[EdgeId]:
        return list(self.endpoints)

    @property
    def e(self) -> int:
        return len(self.endpoints)

    def other_end(self, edge: EdgeId, vertex: VertexId) -> VertexId:
        a, b = self.endpoints[edge]
        return b if a == vertex else a

    @cached_property
    def distances(self) -> dict[VertexId, int]:
        """Number of edges between each vertex and the exceptional vertex."""
        dist = {self.exceptional: 0}
        queue = deque([self.exceptional])
        ends: dict[EdgeId, list[VertexId]] = {}
        for vertex, edges in self.rotation:
            for edge in edges:
                ends.setdefault(edge, []).append(vertex)
        rotations = dict(self.rotation)
        while queue:
            vertex = queue.popleft()
            for edge in rotations[vertex]:
                for other in ends[edge]:
                    if other not in dist:
                        dist[other] = dist[vertex] + 1
                        queue.append(other)
        return dist

    def edge_distance(self, edge: EdgeId) -> int:
        """Distance from the exceptional vertex to the nearer endpoint."""
        return min(self.distances[v] for v in self.endpoints[edge])

    @cached_property
    def edge_toward_exceptional(self) -> dict[VertexId, EdgeId]:
        toward = {}
        for vertex, edges in self.rotation:
            if vertex == self.exceptional:
                continue
            for edge in edges:
                other = self.other_end(edge, vertex)
                if self.distances[other] < self.distances[vertex]:
                    toward[vertex] = edge
        return toward

    def is_leaf(self, vertex: VertexId) -> bool:
        return len(self.rotations[vertex]) == 1

    def successor(self, vertex: VertexId, edge: EdgeId) -> EdgeId:
        edges = self.rotations[vertex]
        return edges[(edges.index(edge) + 1) % len(edges)]

    def is_line(self) -> bool:
        return all(len(edges) <= 2 for _, edges in self.rotation)


def star(e: int, m: int = 1) -> BrauerTree:
    if e < 1:
        raise ValueError(f"a star needs at least one edge, got e={e}")
    rotation = [(EXCEPTIONAL, tuple(str(i) for i in range(1, e + 1)))]
    rotation += [(f"v{i}", (str(i),)) for i in range(1, e + 1)]
    return BrauerTree(tuple(rotation), multiplicity=m)


def two_branch_line(
    sigma: Iterable[VertexId], tau: Iterable[VertexId] = (), m: int = 1
) -> BrauerTree:
    """The line sigma_1 - ... - sigma_a - exc - tau_b - ... - tau_1.

    Each edge carries the name of the vertex on its far side from ``exc``.
    """
    rotation: list[tuple[VertexId, tuple[EdgeId, ...]]] = []
    inner: list[EdgeId] = []
    for branch in (list(sigma), list(tau)):
        for i, name in enumerate(branch):
            rotation.append((name, tuple(branch[max(i - 1, 0) : i]) + (name,)))
        if branch:
            inner.append(branch[-1])
    rotation.insert(0, (EXCEPTIONAL, tuple(inner)))
    return BrauerTree(tuple(rotation), multiplicity=m)


def random_tree(e: int, rng: random.Random, m: int = 1) -> BrauerTree:
    """A random planar tree; edge ``vk`` joins vertex ``vk`` to its parent."""
    rotations: dict[VertexId, list[EdgeId]] = {EXCEPTIONAL: []}
    for k in range(1, e + 1):
        child = f"v{k}"
        parent = rng.choice(list(rotations))
        slot = rng.randint(0, len(rotations[parent]))
        rotations[parent].insert(slot, child)
        rotations[child] = [child]
    ordered = {v: tuple(edges) for v, edges in rotations.items()}
    return BrauerTree(tuple(ordered.items()), multiplicity=m)


def char_edge_bijection(t: BrauerTree) -> dict[VertexId, EdgeId]:
    """Pair each non-exceptional vertex with the edge left when it is peeled off."""
    return dict(t.edge_toward_exceptional)


def canonical_pi(t: BrauerTree, alpha: int = 0) -> dict[EdgeId, int]:
    r = max(t.edge_distance(edge) for edge in t.edges)
    return {edge: r - t.edge_distance(edge) + alpha for edge in t.edges}


@dataclass(frozen=True)
class WalkLabeling:
    start: VertexId
    alpha: int
    # (edge, label) per step; labels are ("plain", i) or ("delta", j)
    steps: tuple[tuple[EdgeId, tuple[str, int]], ...]
    plain: dict[int, EdgeId] = field(default_factory=dict)
    delta: dict[int, int] = field(default_factory=dict)
    s_index: dict[EdgeId, int] = field(default_factory=dict)
    greens: dict[int, GenericGreen] = field(default_factory=dict)

    @property
    def e(self) -> int:
        return len(self.plain)

    def delta_inverse(self, i: int) -> int:
        return next(j for j, value in self.delta.items() if value == i)

    def edge_at(self, index: int) -> EdgeId:
        return next(edge for edge, s in self.s_index.items() if s == index)


def _walk_labels(e: int) -> list[tuple[str, int]]:
    labels: list[tuple[str, int]] = []
    for k in range(e):
        labels.append(("delta", k + 1))
        labels.append(("plain", (k + 1) % e + 1))
    return labels


def walk_starts(t: BrauerTree) -> list[VertexId]:
    """Non-exceptional vertices at maximal distance, in id order."""
    far = max(dist for v, dist in t.distances.items() if v != t.exceptional)
    return sorted(
        v for v, dist in t.distances.items() if v != t.exceptional and dist == far
    )


def greens_walk(
    t: BrauerTree, start: VertexId | None = None, alpha: int = 0
) -> WalkLabeling:
    candidates = walk_starts(t)
    if start is None:
        start = candidates[0]
    elif start not in candidates:
        logger.warning("walk starts at %s, which is not at maximal distance", start)
    if start == t.exceptional or not t.is_leaf(start):
        raise PerversityError(
            f"Green's walk must start at a non-exceptional leaf, not {start}"
        )

    e = t.e
    labels = _walk_labels(e)
    pi_alpha = canonical_pi(t, alpha)

    vertex, edge = start, t.rotations[start][0]
    steps: list[tuple[EdgeId, tuple[str, int]]] = []
    for k in range(2 * e):
        steps.append((edge, labels[(k - alpha) % (2 * e)]))
        vertex = t.other_end(edge, vertex)
        edge = t.successor(vertex, edge)
        logger.debug("walk step %d: at %s, next edge %s", k, vertex, edge)

    plain = {label: edge for edge, (kind, label) in steps if kind == "plain"}
    plain_of = {edge: i for i, edge in plain.items()}
    delta = {j: plain_of[edge] for edge, (kind, j) in steps if kind == "delta"}
    delta_inv = {i: j for j, i in delta.items()}

    s_index: dict[EdgeId, int] = {}
    greens: dict[int, GenericGreen] = {}
    for i, edge in plain.items():
        c, odd = divmod(pi_alpha[edge], 2)
        index = wrap((i if odd else delta_inv[i]) + c, e)
        if index in greens:
            raise PerversityError(f"two edges received the simple index {index}")
        s_index[edge] = index
        greens[index] = GenericGreen(socle=delta_inv[i], top=i, odd=bool(odd))
    return WalkLabeling(
        start=start,
        alpha=alpha,
        steps=tuple(steps),
        plain=plain,
        delta=delta,
        s_index=s_index,
        greens=greens,
    )


@dataclass(frozen=True)
class PiValidation:
    increasing: bool
    parity: bool
    alpha: int | None
    bad_pairs: tuple[tuple[EdgeId, EdgeId], ...] = ()
    bad_parity: tuple[EdgeId, ...] = ()

    @property
    def ok(self) -> bool:
        return self.increasing and self.parity and self.alpha is not None


def validate_pi(
    t: BrauerTree, pi: EdgePi, parities: EdgeSigns | None = None
) -> PiValidation:
    """Check that ``pi`` can be the perversity of a perverse equivalence.

    Perversity must grow strictly toward the exceptional vertex across every
    non-exceptional vertex, ``(-1)^pi`` must match the given degree signs, and
    ``pi - pi_0`` must have constant parity.
    """
    bad_pairs = []
    for vertex, inner in t.edge_toward_exceptional.items():
        for edge in t.rotations[vertex]:
            if edge != inner and pi[inner] <= pi[edge]:
                bad_pairs.append((inner, edge))

    bad_parity = []
    if parities is not None:
        bad_parity = [
            edge for edge in t.edges if parities[edge] != (-1) ** (pi[edge] % 2)
        ]

    base = canonical_pi(t)
    residues = {(pi[edge] - base[edge]) % 2 for edge in t.edges}
    alpha = residues.pop() if len(residues) == 1 else None
    return PiValidation(
        increasing=not bad_pairs,
        parity=not bad_parity,
        alpha=alpha,
        bad_pairs=tuple(bad_pairs),
        bad_parity=tuple(bad_parity),
    )


def to_text(t: BrauerTree) -> str:
    lines = []
    for vertex, edges in t.rotation:
        mark = f" exceptional m={t.multiplicity}" if vertex == t.exceptional else ""
        lines.append(f"vertex {vertex}{mark} : {','.join(edges)}")
    return "\n".join(lines)


def to_dot(t: BrauerTree, name: str = "brauer_tree") -> str:
    lines = [f'graph "{name}" {{']
    for vertex in t.vertices:
        shape = "doublecircle" if vertex == t.exceptional else "circle"
        lines.append(f'  "{vertex}" [shape={shape}];')
    for edge, (a, b) in t.endpoints.items():
        lines.append(f'  "{a}" -- "{b}" [label="{edge}"];')
    lines.append("}")
    return "\n".join(lines)


_VERTEX_LINE = re.compile(
    r"vertex\s+(?P<id>\S+)(?:\s+exceptional\s+m=(?P<m>\d+))?\s*:\s*(?P<edges>.*)"
)


def parse_tree(
    lines: Iterable[str], path: str = "<tree>", first_line: int = 1
) -> BrauerTree:
    rotation: list[tuple[VertexId, tuple[EdgeId, ...]]] = []
    exceptional, multiplicity = None, 1
    for offset, raw in enumerate(lines):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        match = _VERTEX_LINE.fullmatch(line)
        if not match:
            raise BlockFileError(path, first_line + offset, f"bad tree line {line!r}")
        names = match.group("edges").split(",")
        edges = tuple(name.strip() for name in names if name.strip())
        rotation.append((match.group("id"), edges))
        if match.group("m"):
            exceptional, multiplicity = match.group("id"), int(match.group("m"))
    if exceptional is None:
        raise BlockFileError(path, None, "tree has no exceptional vertex")
    try:
        return BrauerTree(
            tuple(rotation), exceptional=exceptional, multiplicity=multiplicity
        )
    except ValueError as exc:
        raise BlockFileError(path, None, f"invalid tree: {exc}") from exc
