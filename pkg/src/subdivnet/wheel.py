"""Closed forms for the wheel and its standard subdivision.

The wheel W_n has hub ``x_0`` joined by spokes of conductance ``a`` to the
rim cycle ``x_1 .. x_n`` whose edges have conductance ``c``. Rim indices are
cyclic (``x_{n+1} = x_1``). In the standard subdivision, ``y_i`` sits on the
spoke ``x_0 x_i`` and ``z_i`` on the rim edge ``x_i x_{i+1}``.

All expressions are driven by Chebyshev polynomials evaluated at
``p = 1 + a/(2c) > 1``, with the usual seeds ``U_{-1} = 0, U_0 = 1`` and
``T_0 = 1, T_1 = x``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadSizeError,
    IndexBelowMinusOneError,
    IndexOutOfRangeError,
    NegativeIndexError,
    NonPositiveConductanceError,
)
from .potential import KernelMatrix
from .subdivision import new_vertex_label

__all__ = [
    "WheelSpec",
    "chebyshev_T",
    "chebyshev_U",
    "g_ij",
    "generic_label_map",
    "subdivided_wheel_labels",
    "wheel_green",
    "wheel_subdivision_green",
    "wheel_subdivision_kirchhoff",
]


def chebyshev_T(m: int, x: float) -> float:
    """Chebyshev polynomial of the first kind, by upward recurrence."""
    if m < 0:
        raise NegativeIndexError(f"T_m needs m >= 0, got {m}")
    prev, cur = 1.0, x
    if m == 0:
        return prev
    for _ in range(m - 1):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur


def chebyshev_U(m: int, x: float) -> float:
    """Chebyshev polynomial of the second kind; U_{-1} = 0."""
    if m < -1:
        raise IndexBelowMinusOneError(f"U_m needs m >= -1, got {m}")
    prev, cur = 0.0, 1.0
    if m == -1:
        return prev
    for _ in range(m):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur


@dataclass(frozen=True)
class WheelSpec:
    n: int
    a: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)) or self.n < 3:
            raise BadSizeError(f"wheel needs n >= 3, got {self.n!r}")
        for name in ("a", "c"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val > 0):
                raise NonPositiveConductanceError(f"{name} must be > 0, got {val!r}")

    @property
    def p(self) -> float:
        return 1.0 + self.a / (2.0 * self.c)


def _rim_table(spec: WheelSpec) -> np.ndarray:
    """g as a function of the rim index difference d = 0 .. n-1."""
    n, p = spec.n, spec.p
    denom = 2.0 * spec.c * (chebyshev_T(n, p) - 1.0)
    return np.array(
        [(chebyshev_U(n - 1 - d, p) + chebyshev_U(d - 1, p)) / denom for d in range(n)]
    )


def g_ij(spec: WheelSpec, i: int, j: int) -> float:
    """(U_{n-1-|i-j|}(p) + U_{|i-j|-1}(p)) / (2c (T_n(p) - 1)) for rim indices 1..n."""
    n = spec.n
    for idx in (i, j):
        if not 1 <= idx <= n:
            raise IndexOutOfRangeError(f"rim index must be in 1..{n}, got {idx}")
    d = abs(i - j)
    p = spec.p
    return (chebyshev_U(n - 1 - d, p) + chebyshev_U(d - 1, p)) / (
        2.0 * spec.c * (chebyshev_T(n, p) - 1.0)
    )


def _rim_matrix(spec: WheelSpec, shift: int = 0) -> np.ndarray:
    """Matrix of g_{i, j+shift} over rim indices, j+shift taken cyclically."""
    n = spec.n
    table = _rim_table(spec)
    i = np.arange(1, n + 1)[:, None]
    j = (np.arange(1, n + 1)[None, :] - 1 + shift) % n + 1
    return table[np.abs(i - j)]


def _x_labels(n: int) -> list[str]:
    return [f"x_{i}" for i in range(n + 1)]


def wheel_green(spec: WheelSpec) -> KernelMatrix:
    """Green kernel of W_n over ``x_0 .. x_n``."""
    n, a = spec.n, spec.a
    scale = a * (n + 1) ** 2
    G = np.empty((n + 1, n + 1))
    G[0, 0] = n / scale
    G[0, 1:] = G[1:, 0] = -1.0 / scale
    G[1:, 1:] = -(n + 2) / scale + _rim_matrix(spec)
    return KernelMatrix(_x_labels(n), G)


def subdivided_wheel_labels(n: int) -> list[str]:
    return _x_labels(n) + [f"y_{i}" for i in range(1, n + 1)] + [f"z_{i}" for i in range(1, n + 1)]


def generic_label_map(n: int) -> dict[str, str]:
    """Map ``y_i``/``z_i`` names to the labels :func:`subdivide` gives the same vertices."""
    mapping = {x: x for x in _x_labels(n)}
    for i in range(1, n + 1):
        mapping[f"y_{i}"] = new_vertex_label("x_0", f"x_{i}")
        mapping[f"z_{i}"] = new_vertex_label(f"x_{i}", f"x_{i % n + 1}")
    return mapping


def wheel_subdivision_green(spec: WheelSpec, *, printed_zz: bool = False) -> KernelMatrix:
    """Green kernel of the standard subdivision of W_n.

    Vertex order is ``x_0..x_n, y_1..y_n, z_1..z_n``.

    The z_i/z_j block is ``(p+1)/2 g_ij + K - 1/(2c(3n+1))`` with no extra
    term on the diagonal: the ``(p+1)/2`` factor already accounts for it.
    ``printed_zz=True`` adds ``1/(4c)`` on that diagonal, reproducing the
    form as it is usually quoted, which disagrees with the group inverse.
    """
    n, a, c, p = spec.n, spec.a, spec.c, spec.p
    s = 3 * n + 1
    g = _rim_matrix(spec)
    g_next = _rim_matrix(spec, shift=1)
    K = (n * (a - 34 * c) - 20 * c) / (4 * a * c * s**2)
    head = n * (a + 26 * c) / s
    eye = np.eye(n)

    xx = g + K
    xy = 0.5 * g + K + 1.0 / (a * s)
    xz = 0.5 * (g + g_next) + K - 1.0 / (4 * c * s)
    yy = 0.25 * g + eye / (4 * a) + K + 2.0 / (a * s)
    yz = 0.25 * (g + g_next) + K - (a - 4 * c) / (4 * a * c * s)
    zz = 0.5 * (p + 1) * g + K - 1.0 / (2 * c * s)
    if printed_zz:
        zz = zz + eye / (4 * c)

    N = s
    G = np.empty((N, N))
    X, Y, Z = slice(1, n + 1), slice(n + 1, 2 * n + 1), slice(2 * n + 1, N)
    G[0, 0] = n * (a + 26 * c) / (4 * a * c * s**2)
    hub_rows = [
        (X, (head - 10 * c) / (4 * a * c * s)),
        (Y, (head - 6 * c) / (4 * a * c * s)),
        (Z, (head - (a + 10 * c)) / (4 * a * c * s)),
    ]
    for blk, val in hub_rows:
        G[0, blk] = G[blk, 0] = val
    G[X, X] = xx
    G[X, Y] = xy
    G[Y, X] = xy.T
    G[X, Z] = xz
    G[Z, X] = xz.T
    G[Y, Y] = yy
    G[Y, Z] = yz
    G[Z, Y] = yz.T
    G[Z, Z] = zz
    return KernelMatrix(subdivided_wheel_labels(n), G)


def wheel_subdivision_kirchhoff(spec: WheelSpec) -> float:
    """Kirchhoff index of the standard subdivision of W_n."""
    n, a, c, p = spec.n, spec.a, spec.c, spec.p
    cheb = 7 * chebyshev_U(n - 1, p) + 2 * chebyshev_U(n - 2, p) + 2
    return (3 * n * n * (a + c) - 25 * c * n) / (4 * a * c) + n * (3 * n + 1) * cheb / (
        8 * c * (chebyshev_T(n, p) - 1)
    )
