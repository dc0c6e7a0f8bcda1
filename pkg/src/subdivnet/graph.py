"""Finite connected weighted networks.

A :class:`Network` is an immutable value: an ordered vertex tuple and an
ordered tuple of conductance-weighted edges, each stored with its endpoints
in canonical (lexicographic) order. The vertex order fixed here is the row
and column order of every matrix computed downstream.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (
    BadSizeError,
    DisconnectedError,
    DuplicateEdgeError,
    DuplicateVertexError,
    InvalidVertexError,
    LoopEdgeError,
    NonPositiveConductanceError,
    UnknownVertexError,
)

__all__ = [
    "Edge",
    "Network",
    "build_network",
    "canonical_pair",
    "degree",
    "generate",
    "random_network",
]


class Edge(NamedTuple):
    u: str
    v: str
    c: float


def canonical_pair(x: str, y: str) -> tuple[str, str]:
    return (x, y) if x <= y else (y, x)


@dataclass(frozen=True)
class Network:
    """Validated network. Build instances with :func:`build_network`."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def index(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.vertices)}

    @cached_property
    def _conductance(self) -> dict[tuple[str, str], float]:
        return {(e.u, e.v): e.c for e in self.edges}

    @cached_property
    def _neighbors(self) -> dict[str, tuple[str, ...]]:
        nbrs: dict[str, list[str]] = {x: [] for x in self.vertices}
        for e in self.edges:
            nbrs[e.u].append(e.v)
            nbrs[e.v].append(e.u)
        return {x: tuple(ys) for x, ys in nbrs.items()}

    def position(self, x: str) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {x!r}") from None

    def neighbors(self, x: str) -> tuple[str, ...]:
        self.position(x)
        return self._neighbors[x]

    def conductance(self, x: str, y: str) -> float:
        """c(x, y), zero when x and y are not adjacent."""
        self.position(x)
        self.position(y)
        return self._conductance.get(canonical_pair(x, y), 0.0)

    def has_edge(self, x: str, y: str) -> bool:
        return canonical_pair(x, y) in self._conductance

    @cached_property
    def laplacian(self) -> np.ndarray:
        """Dense combinatorial Laplacian in vertex order (read-only)."""
        L = np.zeros((self.n, self.n))
        for e in self.edges:
            i, j = self.index[e.u], self.index[e.v]
            L[i, i] += e.c
            L[j, j] += e.c
            L[i, j] -= e.c
            L[j, i] -= e.c
        L.setflags(write=False)
        return L

    @cached_property
    def degrees(self) -> np.ndarray:
        k = np.zeros(self.n)
        for e in self.edges:
            k[self.index[e.u]] += e.c
            k[self.index[e.v]] += e.c
        k.setflags(write=False)
        return k

    def combinatorial_degree(self, x: str) -> int:
        return len(self.neighbors(x))

    def is_unit_conductance(self) -> bool:
        return all(e.c == 1.0 for e in self.edges)

    def regular_degree(self) -> int | None:
        """Common number of neighbours if the graph is regular, else None."""
        counts = {len(ys) for ys in self._neighbors.values()}
        return counts.pop() if len(counts) == 1 else None

    def __repr__(self) -> str:
        return f"Network(n={self.n}, m={self.m})"


def _check_label(x: object) -> str:
    if not isinstance(x, str) or not x or any(ch.isspace() for ch in x):
        raise InvalidVertexError(
            f"vertex label must be a nonempty string without whitespace, got {x!r}"
        )
    return x


def build_network(
    vertices: Sequence[str], edges: Iterable[tuple[str, str, float]]
) -> Network:
    """Validate and build a network.

    Edges may be given with endpoints in either order; they are stored as
    ``(min, max)``. Raises a :class:`~subdivnet.errors.NetworkError` subclass
    naming the offending vertex or edge.
    """
    verts = tuple(_check_label(x) for x in vertices)
    seen: set[str] = set()
    for x in verts:
        if x in seen:
            raise DuplicateVertexError(f"duplicate vertex {x!r}")
        seen.add(x)
    if len(verts) < 2:
        raise BadSizeError(f"a network needs at least 2 vertices, got {len(verts)}")

    stored: list[Edge] = []
    pairs: set[tuple[str, str]] = set()
    for u, v, c in edges:
        for x in (u, v):
            if x not in seen:
                raise UnknownVertexError(f"edge ({u!r}, {v!r}) uses unknown vertex {x!r}")
        if u == v:
            raise LoopEdgeError(f"loop at vertex {u!r}")
        pair = canonical_pair(u, v)
        if pair in pairs:
            raise DuplicateEdgeError(f"duplicate edge {pair}")
        try:
            c = float(c)
        except (TypeError, ValueError):
            raise NonPositiveConductanceError(
                f"edge {pair} has non-numeric conductance {c!r}"
            ) from None
        if not (math.isfinite(c) and c > 0.0):
            raise NonPositiveConductanceError(
                f"edge {pair} has conductance {c!r}; must be finite and > 0"
            )
        pairs.add(pair)
        stored.append(Edge(pair[0], pair[1], c))
    if not stored:
        raise BadSizeError("a network needs at least one edge")

    net = Network(verts, tuple(stored))
    _check_connected(net)
    return net


def _check_connected(net: Network) -> None:
    start = net.vertices[0]
    reached = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in net._neighbors[x]:
            if y not in reached:
                reached.add(y)
                queue.append(y)
    if len(reached) != net.n:
        missing = [x for x in net.vertices if x not in reached]
        raise DisconnectedError(
            f"network is disconnected; {missing[0]!r} not reachable from {start!r}"
        )


def degree(net: Network, x: str) -> float:
    """k(x), the sum of conductances of edges incident to x."""
    return float(net.degrees[net.position(x)])


def _label(i: int) -> str:
    return f"x_{i}"


def generate(kind: str, size: int, *conductances: float) -> Network:
    """Standard families with labels ``x_0, x_1, ...``.

    ``path`` (size >= 2), ``cycle`` and ``complete`` (size >= 3) take one
    conductance, default 1. ``wheel`` takes spoke ``a`` then rim ``c``; its
    hub is ``x_0`` and the rim is ``x_1 .. x_size``.
    """
    minimum = {"path": 2, "cycle": 3, "complete": 3, "wheel": 3}
    if kind not in minimum:
        raise ValueError(f"unknown network kind {kind!r}")
    if not isinstance(size, (int, np.integer)) or size < minimum[kind]:
        raise BadSizeError(f"{kind} needs size >= {minimum[kind]}, got {size!r}")
    nparams = 2 if kind == "wheel" else 1
    if len(conductances) > nparams:
        raise TypeError(f"{kind} takes at most {nparams} conductance values")
    params = list(conductances) + [1.0] * (nparams - len(conductances))
    for c in params:
        if not (math.isfinite(c) and c > 0):
            raise NonPositiveConductanceError(f"conductance must be > 0, got {c!r}")

    if kind == "wheel":
        a, c = params
        verts = [_label(i) for i in range(size + 1)]
        edges = [(verts[0], verts[i], a) for i in range(1, size + 1)]
        edges += [(verts[i], verts[i % size + 1], c) for i in range(1, size + 1)]
        return build_network(verts, edges)

    (c,) = params
    verts = [_label(i) for i in range(size)]
    if kind == "path":
        edges = [(verts[i], verts[i + 1], c) for i in range(size - 1)]
    elif kind == "cycle":
        edges = [(verts[i], verts[(i + 1) % size], c) for i in range(size)]
    else:
        edges = [(verts[i], verts[j], c) for i in range(size) for j in range(i + 1, size)]
    return build_network(verts, edges)


def random_network(
    rng: np.random.Generator,
    n: int,
    extra_edge_prob: float = 0.15,
    conductance_range: tuple[float, float] = (0.1, 10.0),
) -> Network:
    """Random connected network: a random spanning tree plus extra edges.

    Conductances are log-uniform on ``conductance_range``.
    """
    if n < 2:
        raise BadSizeError(f"random network needs n >= 2, got {n}")
    lo, hi = np.log(conductance_range[0]), np.log(conductance_range[1])
    verts = [_label(i) for i in range(n)]
    order = rng.permutation(n)
    pairs = set()
    for k in range(1, n):
        parent = order[rng.integers(k)]
        pairs.add(tuple(sorted((int(order[k]), int(parent)))))
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in pairs and rng.random() < extra_edge_prob:
                pairs.add((i, j))
    edges = [
        (verts[i], verts[j], float(np.exp(rng.uniform(lo, hi))))
        for i, j in sorted(pairs)
    ]
    return build_network(verts, edges)
