"""State model and exact direct evolution of the three-state quantum walk.

The walker carries three internal (chirality) components: a left mover, a
stayer, and a right mover. One time step applies the Grover-type coin to the
internal state and then routes each component one site left, nowhere, or one
site right. Evolution is implemented on a finite window of the infinite line
(the window grows with the light cone, so no amplitude is ever truncated) and
on cycles with an odd number of sites.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

import numpy as np

__all__ = [
    "QubitState",
    "ChiralVector",
    "LineState",
    "CycleState",
    "SiteProbability",
    "Distribution",
    "coin_matrix",
    "projector_matrices",
    "initial_line_state",
    "step_line",
    "evolve_line",
    "initial_cycle_state",
    "step_cycle",
    "evolve_cycle",
    "distribution",
]

#: Tolerance for accepting a caller-supplied initial state as normalized.
NORM_TOLERANCE = 1e-9

#: Tolerance for internal probability-conservation checks.
CONSERVATION_TOLERANCE = 1e-12


def _coin() -> np.ndarray:
    # Diagonal -1/3, off-diagonal 2/3. Real orthogonal and symmetric.
    m = np.full((3, 3), 2.0, dtype=complex)
    np.fill_diagonal(m, -1.0)
    return m / 3.0


@dataclass(frozen=True)
class QubitState:
    """Initial internal state (alpha, beta, gamma) of the walker at the origin.

    Parameters
    ----------
    alpha, beta, gamma : complex
        Amplitudes of the left-moving, staying, and right-moving chirality
        components. The vector must have unit norm.

    Raises
    ------
    ValueError
        If ``|alpha|^2 + |beta|^2 + |gamma|^2`` deviates from 1 by more than
        ``NORM_TOLERANCE``.
    """

    alpha: complex
    beta: complex
    gamma: complex

    def __post_init__(self) -> None:
        norm_sq = abs(self.alpha) ** 2 + abs(self.beta) ** 2 + abs(self.gamma) ** 2
        if abs(norm_sq - 1.0) > NORM_TOLERANCE:
            raise ValueError(
                f"initial state is not normalized: |state|^2 = {norm_sq!r}"
            )

    def as_array(self) -> np.ndarray:
        """Return the state as a length-3 complex array."""
        return np.array([self.alpha, self.beta, self.gamma], dtype=complex)


@dataclass(frozen=True)
class ChiralVector:
    """Complex amplitude triple at a single site.

    Components are ordered (left mover, stayer, right mover).
    """

    left: complex
    zero: complex
    right: complex

    @classmethod
    def from_array(cls, a: np.ndarray) -> "ChiralVector":
        return cls(complex(a[0]), complex(a[1]), complex(a[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.left, self.zero, self.right], dtype=complex)

    def probability(self) -> float:
        """Total probability carried by this site."""
        return abs(self.left) ** 2 + abs(self.zero) ** 2 + abs(self.right) ** 2


def _check_total_probability(amplitudes: np.ndarray, what: str) -> None:
    total = float(np.sum(np.abs(amplitudes) ** 2))
    if abs(total - 1.0) > CONSERVATION_TOLERANCE:
        raise ValueError(f"{what} breaks probability conservation: total = {total!r}")


def _frozen_amplitudes(amplitudes: np.ndarray) -> np.ndarray:
    a = np.array(amplitudes, dtype=complex)
    if a.ndim != 2 or a.shape[1] != 3:
        raise ValueError("amplitude field must have shape (sites, 3)")
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class LineState:
    """Wavefunction on a finite window of the infinite line.

    Attributes
    ----------
    origin_offset : int
        Site index of the first row of ``amplitudes``.
    amplitudes : numpy.ndarray
        Read-only complex array of shape (window, 3); row ``i`` holds the
        chirality amplitudes at site ``origin_offset + i``.
    time : int
        Number of steps taken since the initial state.
    """

    origin_offset: int
    amplitudes: np.ndarray
    time: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "amplitudes", _frozen_amplitudes(self.amplitudes))
        if self.time < 0:
            raise ValueError("time must be a non-negative step count")
        _check_total_probability(self.amplitudes, "line state")

    @property
    def sites(self) -> range:
        return range(self.origin_offset, self.origin_offset + self.amplitudes.shape[0])

    def amplitude(self, n: int) -> ChiralVector:
        """Amplitudes at site ``n`` (zero outside the stored window)."""
        i = n - self.origin_offset
        if 0 <= i < self.amplitudes.shape[0]:
            return ChiralVector.from_array(self.amplitudes[i])
        return ChiralVector(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class CycleState:
    """Wavefunction on a cycle of ``n_sites`` sites (``n_sites`` odd)."""

    n_sites: int
    amplitudes: np.ndarray
    time: int

    def __post_init__(self) -> None:
        if self.n_sites < 3 or self.n_sites % 2 == 0:
            raise ValueError("cycle size must be an odd integer >= 3")
        object.__setattr__(self, "amplitudes", _frozen_amplitudes(self.amplitudes))
        if self.amplitudes.shape[0] != self.n_sites:
            raise ValueError("amplitude field does not match the cycle size")
        if self.time < 0:
            raise ValueError("time must be a non-negative step count")
        _check_total_probability(self.amplitudes, "cycle state")

    def amplitude(self, n: int) -> ChiralVector:
        """Amplitudes at site ``n`` (site indices taken modulo the cycle size)."""
        return ChiralVector.from_array(self.amplitudes[n % self.n_sites])


@dataclass(frozen=True)
class SiteProbability:
    """Probability at one site, total and per chirality component."""

    total: float
    left: float
    zero: float
    right: float


@dataclass(frozen=True)
class Distribution:
    """Per-site, per-chirality probabilities of a walk state."""

    entries: Mapping[int, SiteProbability] = field(repr=False)

    def __getitem__(self, n: int) -> SiteProbability:
        return self.entries[n]

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def sites(self) -> list[int]:
        return sorted(self.entries)

    def total(self, n: int) -> float:
        """Total probability at site ``n``; zero for sites outside the window."""
        entry = self.entries.get(n)
        return entry.total if entry is not None else 0.0

    def sum_total(self) -> float:
        return sum(entry.total for entry in self.entries.values())


def coin_matrix() -> np.ndarray:
    """Return the 3x3 coin operator.

    The matrix has every diagonal entry -1/3 and every off-diagonal entry
    2/3. It is unitary (real orthogonal) and each row sums to 1, so the
    uniform chirality vector is invariant.
    """
    return _coin()


def projector_matrices() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return the row pieces (U_L, U_0, U_R) of the coin operator.

    U_L keeps only the first row of the coin (the component routed one site
    to the left), U_0 the middle row (the component that stays), U_R the
    last row (routed right). They sum to the full coin matrix.
    """
    coin = _coin()
    pieces = []
    for row in range(3):
        p = np.zeros((3, 3), dtype=complex)
        p[row] = coin[row]
        pieces.append(p)
    return pieces[0], pieces[1], pieces[2]


def initial_line_state(q: QubitState) -> LineState:
    """Place the walker at the origin of the line with internal state ``q``."""
    return LineState(origin_offset=0, amplitudes=q.as_array()[None, :], time=0)


def _shifted_update(amplitudes: np.ndarray, up: np.ndarray, down: np.ndarray) -> np.ndarray:
    # One step of the local rule: new(n) = U_L old(n+1) + U_0 old(n) + U_R old(n-1),
    # with `up` holding old(n+1) and `down` holding old(n-1) row-aligned to n.
    # Right-multiplying row-stacked states by the transposed operator applies
    # the operator to each site's column vector at once.
    u_l, u_0, u_r = projector_matrices()
    return up @ u_l.T + amplitudes @ u_0.T + down @ u_r.T


def step_line(s: LineState) -> LineState:
    """Advance a line state by one step, widening the window by one site per side."""
    w = s.amplitudes.shape[0]
    padded = np.zeros((w + 2, 3), dtype=complex)
    padded[1:-1] = s.amplitudes
    up = np.zeros_like(padded)
    up[:-1] = padded[1:]
    down = np.zeros_like(padded)
    down[1:] = padded[:-1]
    new_amplitudes = _shifted_update(padded, up, down)
    return LineState(
        origin_offset=s.origin_offset - 1,
        amplitudes=new_amplitudes,
        time=s.time + 1,
    )


def evolve_line(q: QubitState, t: int) -> LineState:
    """Evolve the walker for ``t`` steps on the line from the origin.

    Parameters
    ----------
    q : QubitState
        Normalized initial internal state.
    t : int
        Non-negative number of steps.

    Returns
    -------
    LineState
        The state after ``t`` steps; its window spans exactly [-t, t].
    """
    if t < 0:
        raise ValueError("step count must be non-negative")
    state = initial_line_state(q)
    for _ in range(t):
        state = step_line(state)
    return state


def initial_cycle_state(q: QubitState, n_sites: int) -> CycleState:
    """Place the walker at site 0 of a cycle with ``n_sites`` sites (odd)."""
    if n_sites < 3 or n_sites % 2 == 0:
        raise ValueError("cycle size must be an odd integer >= 3")
    amplitudes = np.zeros((n_sites, 3), dtype=complex)
    amplitudes[0] = q.as_array()
    return CycleState(n_sites=n_sites, amplitudes=amplitudes, time=0)


def step_cycle(s: CycleState) -> CycleState:
    """Advance a cycle state by one step (site indices wrap modulo the size)."""
    up = np.roll(s.amplitudes, -1, axis=0)
    down = np.roll(s.amplitudes, 1, axis=0)
    new_amplitudes = _shifted_update(s.amplitudes, up, down)
    return CycleState(n_sites=s.n_sites, amplitudes=new_amplitudes, time=s.time + 1)


def evolve_cycle(q: QubitState, n_sites: int, t: int) -> CycleState:
    """Evolve the walker for ``t`` steps on a cycle of ``n_sites`` sites."""
    if t < 0:
        raise ValueError("step count must be non-negative")
    state = initial_cycle_state(q, n_sites)
    for _ in range(t):
        state = step_cycle(state)
    return state


def distribution(s: LineState | CycleState) -> Distribution:
    """Per-site probabilities of a state, broken down by chirality."""
    probs = np.abs(s.amplitudes) ** 2
    if isinstance(s, CycleState):
        site_indices = range(s.n_sites)
    else:
        site_indices = s.sites
    entries = {}
    for i, n in enumerate(site_indices):
        left, zero, right = (float(p) for p in probs[i])
        entries[n] = SiteProbability(
            total=left + zero + right, left=left, zero=zero, right=right
        )
    return Distribution(entries=entries)
