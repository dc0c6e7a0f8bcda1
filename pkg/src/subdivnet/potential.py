"""Brute-force discrete potential theory on a network.

Laplacian, Poisson solver, Green kernel (group inverse of the Laplacian),
effective resistances and the Kirchhoff index, computed with dense linear
algebra. These are the reference values every closed form is checked
against.

Both the Poisson solver and the Green kernel factor the shifted matrix
``L + J/n`` (``J`` the all-ones matrix). It is symmetric positive definite
for a connected network, and for ``<f, 1> = 0`` its solution ``u`` satisfies
``L u = f`` with ``<u, 1> = 0``; its inverse minus ``J/n`` is the group
inverse of ``L``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np
from scipy import linalg

from .errors import (
    DimensionMismatchError,
    DomainMismatchError,
    NotOrthogonalToOnesError,
    SolveFailureError,
    UnknownVertexError,
)
from .graph import Network

__all__ = [
    "KernelMatrix",
    "VertexFunction",
    "effective_resistance",
    "green_kernel",
    "kirchhoff_index",
    "kirchhoff_index_from_resistances",
    "laplacian_apply",
    "resistance_matrix",
    "solve_poisson",
]


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class VertexFunction:
    """A real function on a labelled vertex set, stored in vertex order."""

    labels: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "values", _frozen(self.values))
        if self.values.shape != (len(self.labels),):
            raise DomainMismatchError(
                f"{len(self.labels)} labels but values of shape {self.values.shape}"
            )

    @classmethod
    def from_mapping(cls, net: Network, mapping: Mapping[str, float]) -> VertexFunction:
        """Build from ``{label: value}``; the keys must be exactly ``net``'s vertices."""
        missing = [x for x in net.vertices if x not in mapping]
        extra = [x for x in mapping if x not in net.index]
        if missing or extra:
            raise DomainMismatchError(f"missing vertices {missing}, extra vertices {extra}")
        return cls(net.vertices, [mapping[x] for x in net.vertices])

    @classmethod
    def zeros(cls, net: Network) -> VertexFunction:
        return cls(net.vertices, np.zeros(net.n))

    @classmethod
    def dirac(cls, net: Network, x: str) -> VertexFunction:
        vals = np.zeros(net.n)
        vals[net.position(x)] = 1.0
        return cls(net.vertices, vals)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.labels)}

    def __getitem__(self, x: str) -> float:
        try:
            return float(self.values[self._index[x]])
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {x!r}") from None

    def __len__(self) -> int:
        return len(self.labels)

    def total(self) -> float:
        """<u, 1>."""
        return float(self.values.sum())

    def as_dict(self) -> dict[str, float]:
        return {x: float(v) for x, v in zip(self.labels, self.values)}

    def _check_same(self, other: VertexFunction) -> None:
        if self.labels != other.labels:
            raise DomainMismatchError("vertex functions live on different vertex sets")

    def __add__(self, other: VertexFunction) -> VertexFunction:
        self._check_same(other)
        return VertexFunction(self.labels, self.values + other.values)

    def __sub__(self, other: VertexFunction) -> VertexFunction:
        self._check_same(other)
        return VertexFunction(self.labels, self.values - other.values)

    def __neg__(self) -> VertexFunction:
        return VertexFunction(self.labels, -self.values)

    def __mul__(self, scalar: float) -> VertexFunction:
        return VertexFunction(self.labels, self.values * scalar)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"VertexFunction({self.as_dict()})"


@dataclass(frozen=True, eq=False)
class KernelMatrix:
    """Dense symmetric kernel (Green kernel or resistance matrix) with labels."""

    labels: tuple[str, ...]
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "matrix", _frozen(self.matrix))
        n = len(self.labels)
        if self.matrix.shape != (n, n):
            raise DimensionMismatchError(
                f"{n} labels but matrix of shape {self.matrix.shape}"
            )

    @cached_property
    def index(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.labels)}

    @property
    def n(self) -> int:
        return len(self.labels)

    def position(self, x: str) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {x!r}") from None

    def __getitem__(self, pair: tuple[str, str]) -> float:
        x, y = pair
        return float(self.matrix[self.position(x), self.position(y)])

    def trace(self) -> float:
        return float(np.trace(self.matrix))

    def reindexed(self, labels: Sequence[str]) -> KernelMatrix:
        """Same kernel with rows and columns permuted into ``labels`` order."""
        if sorted(labels) != sorted(self.labels):
            raise DimensionMismatchError("reindexing needs the same label set")
        idx = [self.position(x) for x in labels]
        return KernelMatrix(labels, self.matrix[np.ix_(idx, idx)])

    def max_abs_diff(self, other: KernelMatrix) -> float:
        """Largest entrywise deviation, matching entries by label."""
        other = other.reindexed(self.labels)
        return float(np.max(np.abs(self.matrix - other.matrix)))

    def __repr__(self) -> str:
        return f"KernelMatrix(n={self.n})"


def _values_on(net: Network, u: VertexFunction) -> np.ndarray:
    if u.labels != net.vertices:
        raise DomainMismatchError("function is not defined on the network's vertex set")
    return u.values


def laplacian_apply(net: Network, u: VertexFunction) -> VertexFunction:
    """L(u)(x) = sum over neighbours y of c(x, y) (u(x) - u(y))."""
    return VertexFunction(net.vertices, net.laplacian @ _values_on(net, u))


def _shifted_factor(net: Network):
    shifted = net.laplacian + np.full((net.n, net.n), 1.0 / net.n)
    try:
        return linalg.cho_factor(shifted, lower=True, check_finite=True)
    except linalg.LinAlgError as exc:
        raise SolveFailureError(f"Cholesky factorization failed: {exc}") from exc


def solve_poisson(net: Network, f: VertexFunction) -> VertexFunction:
    """Unique solution of L(u) = f with <u, 1> = 0.

    Requires ``|<f, 1>| <= 1e-9 * sum|f|``.
    """
    fv = _values_on(net, f)
    mass = fv.sum()
    if abs(mass) > 1e-9 * np.abs(fv).sum():
        raise NotOrthogonalToOnesError(f"<f, 1> = {mass:.3e}; Poisson problem unsolvable")
    u = linalg.cho_solve(_shifted_factor(net), fv)
    return VertexFunction(net.vertices, u)


def green_kernel(net: Network) -> KernelMatrix:
    """Green kernel G, the group inverse of the Laplacian.

    Each column G_y solves L(G_y) = e_y - 1/n with <G_y, 1> = 0.
    """
    n = net.n
    inv = linalg.cho_solve(_shifted_factor(net), np.eye(n))
    G = inv - 1.0 / n
    # cho_solve leaves rounding-level asymmetry
    G = 0.5 * (G + G.T)
    return KernelMatrix(net.vertices, G)


def effective_resistance(G: KernelMatrix, x: str, y: str) -> float:
    """R(x, y) = G(x, x) + G(y, y) - 2 G(x, y)."""
    i, j = G.position(x), G.position(y)
    if i == j:
        return 0.0
    M = G.matrix
    return float(M[i, i] + M[j, j] - 2.0 * M[i, j])


def resistance_matrix(G: KernelMatrix) -> KernelMatrix:
    d = np.diag(G.matrix)
    R = d[:, None] + d[None, :] - 2.0 * G.matrix
    np.fill_diagonal(R, 0.0)
    return KernelMatrix(G.labels, R)


def kirchhoff_index(G: KernelMatrix) -> float:
    """n times the trace of the Green kernel."""
    return G.n * G.trace()


def kirchhoff_index_from_resistances(R: KernelMatrix) -> float:
    """Half the sum of all pairwise effective resistances."""
    return 0.5 * float(R.matrix.sum())
