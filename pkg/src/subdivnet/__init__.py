"""Electrical-network numerics for weighted graphs and their subdivisions.

Brute-force Green kernels, effective resistances and Kirchhoff indices, plus
closed forms for electrically compatible subdivisions and for the wheel.
"""
from .errors import NetworkError
from .graph import Edge, Network, build_network, degree, generate, random_network
from .potential import (
    KernelMatrix,
    VertexFunction,
    effective_resistance,
    green_kernel,
    kirchhoff_index,
    kirchhoff_index_from_resistances,
    laplacian_apply,
    resistance_matrix,
    solve_poisson,
)
from .subdivision import (
    SubdividedNetwork,
    SubdivisionGreenContext,
    alpha,
    contract,
    extend,
    green_context,
    green_subdivision,
    green_subdivision_standard_regular,
    kirchhoff_subdivision,
    kirchhoff_subdivision_standard,
    kirchhoff_subdivision_standard_regular,
    resistance_subdivision,
    resistance_subdivision_standard,
    solve_poisson_on_subdivision,
    subdivide,
)
from .wheel import (
    WheelSpec,
    chebyshev_T,
    chebyshev_U,
    g_ij,
    wheel_green,
    wheel_subdivision_green,
    wheel_subdivision_kirchhoff,
)

__version__ = "0.1.0"
