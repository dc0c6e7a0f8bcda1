"""Electrically compatible subdivision of a network.

Every edge ``{x, y}`` with conductance ``c`` is replaced by a path
``x - v_xy - y``. The two new conductances obey the series rule
``1/c = 1/c(x, v_xy) + 1/c(y, v_xy)``; one scalar ``t`` in (0, 1) per edge
picks the split::

    c(x, v_xy) = c / t        c(y, v_xy) = c / (1 - t)

where ``x`` is the edge's designated first endpoint. ``t = 1/2`` is the
standard subdivision. Effective resistances between old vertices are
unchanged by any such split.

The closed forms here express the Green kernel, effective resistances and
Kirchhoff index of the subdivided network through the base network's Green
kernel, without factoring anything on the larger network.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

import numpy as np

from .errors import (
    DimensionMismatchError,
    DomainMismatchError,
    DuplicateVertexError,
    NotOrthogonalToOnesError,
    NotRegularError,
    NotUnitConductanceError,
    SplitOutOfRangeError,
    UnknownEdgeError,
)
from .graph import Network, build_network, canonical_pair
from .potential import KernelMatrix, VertexFunction, solve_poisson

__all__ = [
    "STANDARD_SPLIT",
    "SubdividedNetwork",
    "SubdivisionGreenContext",
    "alpha",
    "contract",
    "extend",
    "green_context",
    "green_subdivision",
    "green_subdivision_standard_regular",
    "kirchhoff_subdivision",
    "kirchhoff_subdivision_standard",
    "kirchhoff_subdivision_standard_regular",
    "new_vertex_label",
    "resistance_subdivision",
    "resistance_subdivision_standard",
    "series_residual",
    "solve_poisson_on_subdivision",
    "subdivide",
]

STANDARD_SPLIT = 0.5


def new_vertex_label(x: str, y: str) -> str:
    """Label of the vertex inserted in edge {x, y}; symmetric in x and y."""
    lo, hi = canonical_pair(x, y)
    return f"s({lo}|{hi})"


def _check_split(edge, t) -> float:
    try:
        t = float(t)
    except (TypeError, ValueError):
        raise SplitOutOfRangeError(f"split for edge {edge} is not a number: {t!r}") from None
    if not (0.0 < t < 1.0):
        raise SplitOutOfRangeError(f"split for edge {edge} must lie in (0, 1), got {t!r}")
    return t


@dataclass(frozen=True, eq=False)
class SubdividedNetwork:
    """A base network, its subdivision, and the per-edge split parameters.

    ``splits`` maps each canonical base edge ``(x, y)`` (``x < y``) to ``t``
    measured from ``x``. The derived network lists the base vertices first,
    then one new vertex per base edge in edge order.
    """

    base: Network
    derived: Network
    new_vertex: Mapping[tuple[str, str], str]
    splits: Mapping[tuple[str, str], float]

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def order(self) -> int:
        """n + m, the number of vertices of the subdivided network."""
        return self.base.n + self.base.m

    @cached_property
    def _edge_arrays(self):
        idx = self.base.index
        ex = np.array([idx[e.u] for e in self.base.edges])
        ey = np.array([idx[e.v] for e in self.base.edges])
        c = np.array([e.c for e in self.base.edges])
        t = np.array([self.splits[(e.u, e.v)] for e in self.base.edges])
        return ex, ey, c, t

    @cached_property
    def alpha_first(self) -> np.ndarray:
        """alpha(x, y) = 1 - t for each edge, x its first endpoint."""
        return 1.0 - self._edge_arrays[3]

    @cached_property
    def alpha_second(self) -> np.ndarray:
        """alpha(y, x) = t for each edge."""
        return self._edge_arrays[3].copy()

    @cached_property
    def new_degrees(self) -> np.ndarray:
        """k(v_xy) = c/t + c/(1-t) for each edge, in edge order."""
        _, _, c, t = self._edge_arrays
        return c / t + c / (1.0 - t)

    @cached_property
    def transfer(self) -> np.ndarray:
        """m x n matrix A with A[e, x] = alpha(x, y), A[e, y] = alpha(y, x).

        Row e averages a function on V into the value seen at v_e; the
        transpose distributes values at new vertices back onto V.
        """
        ex, ey, _, _ = self._edge_arrays
        A = np.zeros((self.m, self.n))
        rows = np.arange(self.m)
        A[rows, ex] = self.alpha_first
        A[rows, ey] = self.alpha_second
        A.setflags(write=False)
        return A

    @cached_property
    def pi(self) -> np.ndarray:
        """pi^S(x) = sum of alpha(x, y) over neighbours y, in base vertex order."""
        return self.transfer.sum(axis=0)

    def edge_key(self, x: str, y: str) -> tuple[str, str]:
        key = canonical_pair(x, y)
        if key not in self.splits:
            raise UnknownEdgeError(f"({x!r}, {y!r}) is not an edge of the base network")
        return key


def subdivide(
    net: Network,
    splits: Mapping[tuple[str, str], float] | None = None,
    default: float = STANDARD_SPLIT,
) -> SubdividedNetwork:
    """Insert a vertex in every edge of ``net``.

    A key ``(x, y)`` of ``splits`` makes ``x`` the designated first endpoint,
    so ``(y, x): t`` is the same split as ``(x, y): 1 - t``. Edges without
    an entry get ``default``.
    """
    default = _check_split("default", default)
    canon: dict[tuple[str, str], float] = {}
    for (x, y), t in (splits or {}).items():
        key = canonical_pair(x, y)
        if not net.has_edge(x, y):
            raise UnknownEdgeError(f"split given for ({x!r}, {y!r}), which is not an edge")
        t = _check_split(key, t)
        canon[key] = t if key == (x, y) else 1.0 - t
    for e in net.edges:
        canon.setdefault((e.u, e.v), default)

    new_vertex: dict[tuple[str, str], str] = {}
    taken = set(net.vertices)
    derived_edges = []
    for e in net.edges:
        v = new_vertex_label(e.u, e.v)
        if v in taken:
            raise DuplicateVertexError(f"new vertex label {v!r} collides with an existing vertex")
        taken.add(v)
        new_vertex[(e.u, e.v)] = v
        t = canon[(e.u, e.v)]
        derived_edges.append((e.u, v, e.c / t))
        derived_edges.append((e.v, v, e.c / (1.0 - t)))
    derived = build_network(list(net.vertices) + list(new_vertex.values()), derived_edges)
    return SubdividedNetwork(net, derived, new_vertex, canon)


def alpha(sub: SubdividedNetwork, x: str, y: str) -> float:
    """c(x, v_xy) / k(v_xy); zero when x and y are not adjacent."""
    sub.base.position(x)
    sub.base.position(y)
    key = canonical_pair(x, y)
    if key not in sub.splits:
        return 0.0
    t = sub.splits[key]
    return 1.0 - t if key[0] == x else t


@dataclass(frozen=True, eq=False)
class SubdivisionGreenContext:
    """Query-independent constants shared by all closed-form kernel entries.

    ``pi`` is pi^S in base vertex order, ``Gpi`` the vector G pi^S, and
    ``beta`` the additive constant common to every entry of G^S.
    """

    labels: tuple[str, ...]
    pi: np.ndarray
    Gpi: np.ndarray
    beta: float

    @property
    def pi_S(self) -> dict[str, float]:
        return {x: float(p) for x, p in zip(self.labels, self.pi)}


def _check_base_kernel(sub: SubdividedNetwork, K: KernelMatrix, what="Green kernel") -> None:
    if K.labels != sub.base.vertices:
        raise DimensionMismatchError(
            f"{what} is indexed by {K.n} labels that do not match the base network"
        )


def green_context(sub: SubdividedNetwork, G: KernelMatrix) -> SubdivisionGreenContext:
    _check_base_kernel(sub, G)
    pi = sub.pi
    Gpi = G.matrix @ pi
    s = sub.order
    beta = (float(pi @ Gpi) + float(np.sum(1.0 / sub.new_degrees))) / s**2
    return SubdivisionGreenContext(sub.base.vertices, pi, Gpi, beta)


def _split_function(sub: SubdividedNetwork, h: VertexFunction) -> tuple[np.ndarray, np.ndarray]:
    if h.labels != sub.derived.vertices:
        raise DomainMismatchError("function is not defined on the subdivided vertex set")
    return h.values[: sub.n], h.values[sub.n :]


def contract(sub: SubdividedNetwork, h: VertexFunction) -> VertexFunction:
    """Contraction to V: h(x) + sum over y ~ x of alpha(x, y) h(v_xy)."""
    h_old, h_new = _split_function(sub, h)
    return VertexFunction(sub.base.vertices, h_old + sub.transfer.T @ h_new)


def extend(sub: SubdividedNetwork, u: VertexFunction, h: VertexFunction) -> VertexFunction:
    """Extension of ``u`` to the subdivided vertex set with respect to ``h``.

    At new vertices: h(v_xy)/k(v_xy) + alpha(x, y) u(x) + alpha(y, x) u(y),
    which makes the subdivided Laplacian of the result equal h there.
    """
    if u.labels != sub.base.vertices:
        raise DomainMismatchError("u is not defined on the base vertex set")
    _, h_new = _split_function(sub, h)
    at_new = h_new / sub.new_degrees + sub.transfer @ u.values
    return VertexFunction(sub.derived.vertices, np.concatenate([u.values, at_new]))


def solve_poisson_on_subdivision(sub: SubdividedNetwork, h: VertexFunction) -> VertexFunction:
    """Zero-mean solution of the Poisson problem on the subdivided network.

    Solved on the base network: contract h, solve there, extend the
    solution back and shift it to zero mean.
    """
    h_old, h_new = _split_function(sub, h)
    mass = h.values.sum()
    if abs(mass) > 1e-9 * np.abs(h.values).sum():
        raise NotOrthogonalToOnesError(f"<h, 1> = {mass:.3e}; Poisson problem unsolvable")
    u = solve_poisson(sub.base, contract(sub, h))
    uh = extend(sub, u, h)
    lam = -(
        np.sum(h_new / sub.new_degrees) + np.sum(sub.transfer @ u.values)
    ) / sub.order
    return VertexFunction(uh.labels, uh.values + lam)


def green_subdivision(
    sub: SubdividedNetwork, G: KernelMatrix, ctx: SubdivisionGreenContext | None = None
) -> KernelMatrix:
    """Green kernel of the subdivided network from the base Green kernel."""
    _check_base_kernel(sub, G)
    if ctx is None:
        ctx = green_context(sub, G)
    elif ctx.labels != sub.base.vertices:
        raise DimensionMismatchError("context was built for a different base network")
    s = sub.order
    A = sub.transfer
    k = sub.new_degrees
    Gm = G.matrix
    w = ctx.Gpi
    Aw = A @ w

    old_old = Gm - (w[:, None] + w[None, :]) / s + ctx.beta
    new_old = A @ Gm - (Aw[:, None] + w[None, :]) / s - 1.0 / (s * k)[:, None] + ctx.beta
    inv_sk = 1.0 / (s * k)
    new_new = (
        A @ Gm @ A.T
        - (Aw[:, None] + Aw[None, :]) / s
        + np.diag(1.0 / k)
        - inv_sk[:, None]
        - inv_sk[None, :]
        + ctx.beta
    )
    GS = np.block([[old_old, new_old.T], [new_old, new_new]])
    return KernelMatrix(sub.derived.vertices, 0.5 * (GS + GS.T))


def _require_unit(net: Network) -> None:
    if not net.is_unit_conductance():
        bad = next(e for e in net.edges if e.c != 1.0)
        raise NotUnitConductanceError(
            f"edge ({bad.u!r}, {bad.v!r}) has conductance {bad.c}; unit conductances required"
        )


def _require_regular(net: Network) -> int:
    k = net.regular_degree()
    if k is None:
        raise NotRegularError("network is not regular")
    return k


def _standard_transfer(net: Network) -> np.ndarray:
    B = np.zeros((net.m, net.n))
    for e_idx, e in enumerate(net.edges):
        B[e_idx, net.index[e.u]] = 0.5
        B[e_idx, net.index[e.v]] = 0.5
    return B


def _standard_labels(net: Network) -> list[str]:
    return list(net.vertices) + [new_vertex_label(e.u, e.v) for e in net.edges]


def green_subdivision_standard_regular(net: Network, G: KernelMatrix) -> KernelMatrix:
    """Green kernel of the standard subdivision of a k-regular unit network."""
    _require_unit(net)
    k = _require_regular(net)
    if G.labels != net.vertices:
        raise DimensionMismatchError("Green kernel does not match the network")
    n = net.n
    B = _standard_transfer(net)
    Gm = G.matrix
    denom = n * (2 + k) ** 2
    old_old = Gm + k / (2 * denom)
    new_old = B @ Gm - 1.0 / denom
    new_new = B @ Gm @ B.T + 0.25 * np.eye(net.m) - (4 + k) / (2 * denom)
    GS = np.block([[old_old, new_old.T], [new_old, new_new]])
    return KernelMatrix(_standard_labels(net), GS)


def resistance_subdivision(sub: SubdividedNetwork, R: KernelMatrix) -> KernelMatrix:
    """All-pairs effective resistances of the subdivided network.

    Resistances between old vertices are copied from the base network.
    """
    _check_base_kernel(sub, R, "resistance matrix")
    A = sub.transfer
    k = sub.new_degrees
    Rm = R.matrix
    ex, ey, _, _ = sub._edge_arrays
    # alpha(x,y) alpha(y,x) R(x,y) per edge
    q = sub.alpha_first * sub.alpha_second * Rm[ex, ey]
    inv_k = 1.0 / k

    old_new = Rm @ A.T + (inv_k - q)[None, :]
    new_new = A @ Rm @ A.T + (inv_k - q)[:, None] + (inv_k - q)[None, :]
    # the triple product is symmetric only up to rounding
    new_new = 0.5 * (new_new + new_new.T)
    np.fill_diagonal(new_new, 0.0)
    RS = np.block([[Rm, old_new], [old_new.T, new_new]])
    return KernelMatrix(sub.derived.vertices, RS)


def resistance_subdivision_standard(net: Network, R: KernelMatrix) -> KernelMatrix:
    """Resistances of the standard subdivision of a unit-conductance network."""
    _require_unit(net)
    if R.labels != net.vertices:
        raise DimensionMismatchError("resistance matrix does not match the network")
    Rm = R.matrix
    E = np.array([[net.index[e.u], net.index[e.v]] for e in net.edges])
    x, y = E[:, 0], E[:, 1]
    r_edge = Rm[x, y]
    # (1 + 2R(x,z) + 2R(x,t) - R(z,t)) / 4
    old_new = (1.0 + 2.0 * Rm[:, x] + 2.0 * Rm[:, y] - r_edge[None, :]) / 4.0
    cross = Rm[np.ix_(x, x)] + Rm[np.ix_(x, y)] + Rm[np.ix_(y, x)] + Rm[np.ix_(y, y)]
    new_new = (2.0 - r_edge[:, None] - r_edge[None, :] + cross) / 4.0
    np.fill_diagonal(new_new, 0.0)
    RS = np.block([[Rm, old_new], [old_new.T, new_new]])
    return KernelMatrix(_standard_labels(net), RS)


def kirchhoff_subdivision(
    sub: SubdividedNetwork, G: KernelMatrix, ctx: SubdivisionGreenContext | None = None
) -> float:
    """Kirchhoff index of the subdivided network from base-network data."""
    _check_base_kernel(sub, G)
    if ctx is None:
        ctx = green_context(sub, G)
    n, s = sub.n, sub.order
    Gm = G.matrix
    d = np.diag(Gm)
    kirchhoff = n * d.sum()
    ex, ey, _, _ = sub._edge_arrays
    R_edge = d[ex] + d[ey] - 2.0 * Gm[ex, ey]
    return float(
        s / n * kirchhoff
        + s * (d @ ctx.pi)
        - ctx.pi @ ctx.Gpi
        - s * np.sum(sub.alpha_first * sub.alpha_second * R_edge)
        + (s - 1) * np.sum(1.0 / sub.new_degrees)
    )


def _standard_common(net: Network, G: KernelMatrix) -> tuple[float, np.ndarray]:
    _require_unit(net)
    if G.labels != net.vertices:
        raise DimensionMismatchError("Green kernel does not match the network")
    pi = np.array([0.5 * net.combinatorial_degree(x) for x in net.vertices])
    return net.n * G.trace(), pi


def kirchhoff_subdivision_standard(net: Network, G: KernelMatrix) -> float:
    """Kirchhoff index of the standard subdivision of a unit-conductance network."""
    kirchhoff, pi = _standard_common(net, G)
    n, m = net.n, net.m
    Gm = G.matrix
    return float(
        (n + m) / n * kirchhoff
        + (n + m) * (np.diag(Gm) @ pi)
        - pi @ Gm @ pi
        + (m * m - n * n + n) / 4.0
    )


def kirchhoff_subdivision_standard_regular(net: Network, G: KernelMatrix) -> float:
    """Kirchhoff index of the standard subdivision of a k-regular unit network."""
    kirchhoff, _ = _standard_common(net, G)
    k = _require_regular(net)
    n = net.n
    return (k + 2) ** 2 / 4.0 * kirchhoff + ((k * k - 4) * n * n + 4 * n) / 16.0


def series_residual(sub: SubdividedNetwork) -> float:
    """Largest relative violation of the series rule over all edges."""
    _, _, c, t = sub._edge_arrays
    c1, c2 = c / t, c / (1.0 - t)
    return float(np.max(np.abs((1.0 / c1 + 1.0 / c2) * c - 1.0)))

