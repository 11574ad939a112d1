"""Momentum-space analysis of the three-state walk.

The Fourier transform block-diagonalizes one step of the walk into a 3x3
unitary at each momentum k. This module evaluates that operator's dispersion
relation and eigenvectors in closed form, reconstructs real-space amplitudes
by midpoint quadrature over momentum, and computes the oscillatory kernels
whose decay separates the stationary (localized) part of the wavefunction
from the vanishing remainder.

Numerical notes
---------------
Eigenvector components have the shape 1/(1 + e^{i phi}). They are evaluated
through the half-angle identity 1 + e^{i phi} = 2 cos(phi/2) e^{i phi/2},
which removes the catastrophic cancellation of computing 1 + cos(phi) near
phi = pi. The same factor cos(phi/2) appears under the normalization constant,
so the ratio stays fully accurate even at the removable singularity of the
stationary branch at momentum +-pi.

Quadrature uses midpoint nodes k_j = -pi + (j + 1/2) 2 pi / G with even G.
Even G guarantees no node lands on k = 0, the one momentum where the
eigenvector formula genuinely degenerates; an odd G would place a node there
exactly. All integrands are smooth periodic functions on the grid, so the
midpoint rule converges spectrally.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .walk import ChiralVector, QubitState, coin_matrix

__all__ = [
    "DEFAULT_GRID_SIZE",
    "SingularMomentumError",
    "DispersionPoint",
    "EigenSystem",
    "QuadratureGrid",
    "OscillatoryKernels",
    "RemainderMatrix",
    "dispersion",
    "fourier_operator",
    "eigensystem",
    "default_grid",
    "wavefunction",
    "stationary_component_integral",
    "j_kernel",
    "k_kernel",
    "oscillatory_kernels",
    "remainder_matrix",
    "oscillatory_remainder",
]

#: Default number of momentum quadrature nodes.
DEFAULT_GRID_SIZE = 16384

#: Smallest grid accepted by the wavefunction quadratures.
MIN_GRID_SIZE = 256


class SingularMomentumError(ValueError):
    """Raised for momenta where the moving eigenvectors are not defined.

    At k = 0 (mod 2 pi) the two moving branches collapse onto the doubly
    degenerate eigenvalue -1 and no preferred eigenbasis exists; the closed
    form would return direction-dependent garbage there.
    """


@dataclass(frozen=True)
class DispersionPoint:
    """Dispersion data of the moving branches at one momentum.

    ``theta`` is the positive eigenphase; the three eigenphases of the
    momentum-space operator are 0, +theta, and -theta.
    """

    momentum: float
    cos_theta: float
    sin_theta: float
    theta: float


@dataclass(frozen=True)
class EigenSystem:
    """Eigenphases and orthonormal eigenvectors at one momentum."""

    momentum: float
    phases: tuple[float, float, float]
    vectors: tuple[ChiralVector, ChiralVector, ChiralVector]


@dataclass(frozen=True)
class QuadratureGrid:
    """Uniform midpoint grid over momentum space [-pi, pi).

    The size must be even: an odd midpoint grid contains the node k = 0,
    which the eigenvector formula cannot handle (see module notes). Midpoint
    construction keeps every node strictly inside (-pi, pi) and away from 0.
    """

    size: int

    def __post_init__(self) -> None:
        if self.size < 2 or self.size % 2 != 0:
            raise ValueError("quadrature grid size must be an even integer >= 2")

    def nodes(self) -> np.ndarray:
        """The midpoint momentum nodes, ascending."""
        return -np.pi + (np.arange(self.size) + 0.5) * (2.0 * np.pi / self.size)


def default_grid() -> QuadratureGrid:
    """The package-default quadrature grid."""
    return QuadratureGrid(DEFAULT_GRID_SIZE)


def dispersion(k: float) -> DispersionPoint:
    """Evaluate the dispersion relation at momentum ``k``.

    Returns the point with ``cos_theta = -(2 + cos k)/3`` and the
    non-negative branch ``sin_theta = sqrt((5 + cos k)(1 - cos k))/3``;
    ``theta`` is the angle with those cosine and sine, landing in (0, pi].
    The relation is 2 pi periodic, so any real ``k`` is accepted.
    """
    cos_k = np.cos(k)
    # 1 - cos k written as 2 sin^2(k/2) to avoid cancellation near k = 0.
    one_minus = 2.0 * np.sin(0.5 * k) ** 2
    cos_theta = -(2.0 + cos_k) / 3.0
    sin_theta = np.sqrt((5.0 + cos_k) * one_minus) / 3.0
    theta = np.arctan2(sin_theta, cos_theta)
    return DispersionPoint(
        momentum=float(k),
        cos_theta=float(cos_theta),
        sin_theta=float(sin_theta),
        theta=float(theta),
    )


def fourier_operator(k: float) -> np.ndarray:
    """One step of the walk at momentum ``k``: diag(e^{ik}, 1, e^{-ik}) coin."""
    shift = np.diag(np.exp(1j * k * np.array([1.0, 0.0, -1.0])))
    return shift @ coin_matrix()


def _eigenvector_components(theta: np.ndarray, k: np.ndarray) -> np.ndarray:
    """Normalized eigenvector(s) for eigenphase ``theta`` at momentum ``k``.

    Broadcasts over any common shape of ``theta`` and ``k``; the result has
    one extra trailing axis of length 3 (the chirality components).
    """
    theta = np.asarray(theta, dtype=float)
    k = np.asarray(k, dtype=float)
    half = 0.5 * np.stack(
        np.broadcast_arrays(theta - k, theta, theta + k), axis=-1
    )
    cos_half = np.cos(half)
    # 1/(1 + cos phi) = 1/(2 cos^2(phi/2)); the normalization is
    # c = 2 / sum of those three reciprocals.
    weights = 1.0 / (2.0 * cos_half**2)
    c = 2.0 / np.sum(weights, axis=-1, keepdims=True)
    return np.sqrt(c) * np.exp(-1j * half) / (2.0 * cos_half)


def eigensystem(k: float) -> EigenSystem:
    """Closed-form eigenphases and eigenvectors at momentum ``k``.

    Raises
    ------
    SingularMomentumError
        If ``k`` is 0 modulo 2 pi, where the moving eigenvectors degenerate.
    """
    if float(np.remainder(k, 2.0 * np.pi)) == 0.0:
        raise SingularMomentumError(
            "eigenvectors are singular at momentum 0 (degenerate -1 eigenvalue)"
        )
    point = dispersion(k)
    phases = (0.0, point.theta, -point.theta)
    vectors = tuple(
        ChiralVector.from_array(_eigenvector_components(np.float64(phase), np.float64(k)))
        for phase in phases
    )
    return EigenSystem(momentum=float(k), phases=phases, vectors=vectors)


@functools.lru_cache(maxsize=8)
def _eigen_tableau(size: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Cached per-grid eigendata: nodes k, phases theta, vectors V[j, node, :]."""
    k = QuadratureGrid(size).nodes()
    cos_k = np.cos(k)
    one_minus = 2.0 * np.sin(0.5 * k) ** 2
    theta = np.arctan2(np.sqrt((5.0 + cos_k) * one_minus) / 3.0, -(2.0 + cos_k) / 3.0)
    vectors = np.stack(
        [
            _eigenvector_components(np.zeros_like(k), k),
            _eigenvector_components(theta, k),
            _eigenvector_components(-theta, k),
        ]
    )
    for a in (k, theta, vectors):
        a.setflags(write=False)
    return k, theta, vectors


@functools.lru_cache(maxsize=8)
def _kernel_tableau(size: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Cached per-grid kernel data: nodes, phases, and integrand weights."""
    k, theta, _ = _eigen_tableau(size)
    cos_k = np.cos(k)
    one_minus = 2.0 * np.sin(0.5 * k) ** 2
    inv_five = 1.0 / (5.0 + cos_k)
    inv_root = 1.0 / np.sqrt((5.0 + cos_k) * one_minus)
    for a in (inv_five, inv_root):
        a.setflags(write=False)
    return k, theta, inv_five, inv_root


def _require_grid(grid: QuadratureGrid | None) -> QuadratureGrid:
    return grid if grid is not None else default_grid()


def wavefunction(
    n: int, t: int, q: QubitState, grid: QuadratureGrid | None = None
) -> ChiralVector:
    """Amplitudes at site ``n`` after ``t`` steps, by momentum quadrature.

    Evaluates the inverse Fourier integral of the spectrally decomposed
    evolution: the initial state is projected on the three eigenbranches at
    every momentum node, each branch advanced by its eigenphase, and the
    plane-wave factor e^{ikn} restores position space. Agrees with direct
    evolution to quadrature precision.

    Parameters
    ----------
    n, t : int
        Site index and non-negative step count.
    q : QubitState
        Normalized initial internal state.
    grid : QuadratureGrid, optional
        Momentum grid; defaults to the package default. Must have at least
        ``MIN_GRID_SIZE`` nodes.
    """
    grid = _require_grid(grid)
    if grid.size < MIN_GRID_SIZE:
        raise ValueError(f"quadrature grid too small (need >= {MIN_GRID_SIZE} nodes)")
    if t < 0:
        raise ValueError("step count must be non-negative")
    k, theta, vectors = _eigen_tableau(grid.size)
    q_arr = q.as_array()
    branch_phases = (np.zeros_like(theta), theta, -theta)
    amplitude = np.zeros(3, dtype=complex)
    for j in range(3):
        coefficients = vectors[j].conj() @ q_arr
        factor = np.exp(1j * (branch_phases[j] * t + k * n))
        amplitude += (factor * coefficients) @ vectors[j]
    amplitude /= grid.size
    return ChiralVector.from_array(amplitude)


def stationary_component_integral(
    n: int, l: int, q: QubitState, grid: QuadratureGrid | None = None
) -> complex:
    """Stationary-branch amplitude at site ``n``, chirality ``l`` in {1, 2, 3}.

    Quadrature of the eigenphase-0 branch alone. The phase factor e^{i 0 t}
    is identically 1, so the result carries no time dependence and the
    operation takes no time argument. Its squared modulus is the localized
    limit probability component.
    """
    grid = _require_grid(grid)
    if grid.size < MIN_GRID_SIZE:
        raise ValueError(f"quadrature grid too small (need >= {MIN_GRID_SIZE} nodes)")
    if l not in (1, 2, 3):
        raise ValueError("chirality index must be 1, 2, or 3")
    k, _, vectors = _eigen_tableau(grid.size)
    coefficients = vectors[0].conj() @ q.as_array()
    amplitude = (np.exp(1j * k * n) * coefficients) @ vectors[0] / grid.size
    return complex(amplitude[l - 1])


@dataclass(frozen=True)
class OscillatoryKernels:
    """The pair of oscillatory integrals controlling the remainder at one (n, t)."""

    j_value: float
    k_value: float


def j_kernel(n: int, t: int, grid: QuadratureGrid | None = None) -> float:
    """Oscillatory kernel (1/2 pi) integral of cos(kn) cos(theta_k t)/(5 + cos k).

    Vanishes as t grows (Riemann-Lebesgue); at t = 0 it reduces to the
    time-free integral 1/(2 sqrt 6) for n = 0.
    """
    grid = _require_grid(grid)
    k, theta, inv_five, _ = _kernel_tableau(grid.size)
    return float(np.mean(np.cos(k * n) * np.cos(theta * t) * inv_five))


def k_kernel(n: int, t: int, grid: QuadratureGrid | None = None) -> float:
    """Oscillatory kernel with weight 1/sqrt((5 + cos k)(1 - cos k)).

    The weight diverges at k = 0 but the integrand stays bounded: for integer
    t the factor sin(theta_k t) vanishes linearly in |k| there. Midpoint
    nodes of an even grid never touch k = 0.
    """
    grid = _require_grid(grid)
    if t < 0:
        raise ValueError("step count must be non-negative")
    k, theta, _, inv_root = _kernel_tableau(grid.size)
    return float(np.mean(np.cos(k * n) * np.sin(theta * t) * inv_root))


def oscillatory_kernels(
    n: int, t: int, grid: QuadratureGrid | None = None
) -> OscillatoryKernels:
    """Both oscillatory kernels at (n, t)."""
    return OscillatoryKernels(
        j_value=j_kernel(n, t, grid), k_value=k_kernel(n, t, grid)
    )


@dataclass(frozen=True)
class RemainderMatrix:
    """3x3 matrix mapping the initial state to the moving-branch amplitude."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        e = np.array(self.entries, dtype=complex)
        if e.shape != (3, 3):
            raise ValueError("remainder matrix must be 3x3")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)


def remainder_matrix(
    n: int, t: int, grid: QuadratureGrid | None = None
) -> RemainderMatrix:
    """Assemble the moving-branch matrix at (n, t) from the oscillatory kernels.

    The nine entries combine the j and k kernels at sites n - 1, n, n + 1;
    structural identities (the middle entry is 4 J at n, the corners are
    -2 J at n +- 1) follow directly from the assembly.
    """
    j_prev, j_here, j_next = (j_kernel(n + d, t, grid) for d in (-1, 0, 1))
    k_prev, k_here, k_next = (k_kernel(n + d, t, grid) for d in (-1, 0, 1))
    m = np.empty((3, 3), dtype=complex)
    m[0, 0] = 3.0 * j_here + 0.5 * (j_prev + j_next + (k_prev - k_next))
    m[2, 2] = 3.0 * j_here + 0.5 * (j_prev + j_next - (k_prev - k_next))
    m[0, 1] = -(j_here + j_next + (k_here - k_next))
    m[2, 1] = -(j_here + j_prev + (k_here - k_prev))
    m[0, 2] = -2.0 * j_next
    m[2, 0] = -2.0 * j_prev
    m[1, 0] = -(j_here + j_prev + (k_prev - k_here))
    m[1, 2] = -(j_here + j_next + (k_next - k_here))
    m[1, 1] = 4.0 * j_here
    return RemainderMatrix(entries=m)


def oscillatory_remainder(
    n: int, t: int, q: QubitState, grid: QuadratureGrid | None = None
) -> ChiralVector:
    """Moving-branch amplitude at (n, t): the wavefunction minus its localized part.

    Applying the remainder matrix to the initial state gives the sum of the
    two moving branches of the spectral decomposition. Adding the stationary
    branch amplitude reconstructs the full wavefunction.
    """
    m = remainder_matrix(n, t, grid)
    return ChiralVector.from_array(m.entries @ q.as_array())
