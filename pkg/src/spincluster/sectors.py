"""Total-spin sector bookkeeping for the complete-graph Heisenberg cluster.

N spin-1/2 particles coupled pairwise with uniform strength J/(N-1),
anisotropy Delta on the z-z part and a field B along z.  Because the
Hamiltonian depends only on the total spin S and its z component m, the
2^N dimensional problem collapses to the sector ladder

    S = N/2, N/2 - 1, ..., (0 or 1/2),

where sector S occurs g(N, S) times and carries the 2S+1 levels

    E(S, m) = J/(N-1) * (S(S+1) - 3N/4 + Delta*(m^2 - N/4)) + B*m.

The additive constants are kept so that <H>/N is the physical energy per
site.  Spin labels are handled as twice-spin integers throughout; no
half-integer float bookkeeping.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DomainError, InvalidClusterError

__all__ = [
    "ClusterSpec",
    "SpinSector",
    "EnergyLevel",
    "sector_spins",
    "spin_sectors",
    "degeneracy",
    "enumerate_levels",
    "spectrum",
]


@dataclass(frozen=True)
class ClusterSpec:
    """One physical cluster: size n >= 2, coupling j != 0, anisotropy, field."""

    n: int
    j: float
    delta: float = 0.0
    b: float = 0.0

    def __post_init__(self) -> None:
        n = self.n
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
            raise InvalidClusterError(f"n must be an integer, got {n!r}")
        if n < 2:
            raise InvalidClusterError(f"n must be at least 2, got {n}")
        object.__setattr__(self, "n", int(n))
        for name in ("j", "delta", "b"):
            value = getattr(self, name)
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise InvalidClusterError(f"{name} must be a real number, got {value!r}") from None
            if not math.isfinite(value):
                raise InvalidClusterError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.j == 0.0:
            raise InvalidClusterError("j must be nonzero; j = 0 leaves no coupling to scale by")


@dataclass(frozen=True)
class SpinSector:
    """A total-spin sector: twice_s = 2S, g = number of copies of the sector."""

    twice_s: int
    g: int

    @property
    def s(self) -> float:
        return self.twice_s / 2.0


@dataclass(frozen=True)
class EnergyLevel:
    """One (S, m) level with its energy and total multiplicity g(N, S)."""

    twice_s: int
    twice_m: int
    energy: float
    multiplicity: int

    @property
    def s(self) -> float:
        return self.twice_s / 2.0

    @property
    def m(self) -> float:
        return self.twice_m / 2.0


def _twice_spins(n: int) -> range:
    # S runs from N/2 down to 0 (even N) or 1/2 (odd N); ascending here.
    return range(n % 2, n + 1, 2)


def sector_spins(n: int) -> list[float]:
    """Ordered (ascending) list of total-spin values S for an n-site cluster."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 2:
        raise InvalidClusterError(f"n must be an integer >= 2, got {n!r}")
    return [ts / 2.0 for ts in _twice_spins(int(n))]


def degeneracy(n: int, s: float) -> int:
    """Number of copies g(N, S) of sector S, as an exact integer.

    g(N, S) = C(N, N/2 - S) * (2S + 1) / (N/2 + S + 1); the division is
    exact, which is asserted rather than trusted to float arithmetic.
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 2:
        raise InvalidClusterError(f"n must be an integer >= 2, got {n!r}")
    n = int(n)
    ts = 2 * s
    tsi = int(round(float(ts)))
    if abs(float(ts) - tsi) > 0.0:
        raise DomainError(f"s must be integer or half-integer, got {s!r}")
    if tsi < 0 or tsi > n or (n - tsi) % 2 != 0:
        raise DomainError(f"s = {s!r} is outside the sector ladder of n = {n}")
    numer = math.comb(n, (n - tsi) // 2) * (tsi + 1)
    denom = (n + tsi) // 2 + 1
    assert numer % denom == 0, "sector multiplicity must be an exact integer"
    return numer // denom


def spin_sectors(n: int) -> list[SpinSector]:
    """All sectors of an n-site cluster, ascending in S."""
    return [SpinSector(ts, degeneracy(n, ts / 2.0)) for ts in _twice_spins(int(n))]


def enumerate_levels(spec: ClusterSpec) -> list[EnergyLevel]:
    """Every (S, m) level of the cluster, ascending in S then in m.

    Energies include the additive constants (-3N/4 and -Delta*N/4 inside
    the bracket) so that the thermal mean of `energy` is <H> directly.
    """
    n, j, delta, b = spec.n, spec.j, spec.delta, spec.b
    pref = j / (n - 1)
    levels: list[EnergyLevel] = []
    for ts in _twice_spins(n):
        g = degeneracy(n, ts / 2.0)
        s = ts / 2.0
        base_s = s * (s + 1.0) - 0.75 * n
        for tm in range(-ts, ts + 1, 2):
            m = tm / 2.0
            # written as base + b*m so a zero-field table plus B*m
            # reproduces these floats bit for bit
            energy = pref * (base_s + delta * (m * m - 0.25 * n)) + b * m
            levels.append(EnergyLevel(ts, tm, energy, g))
    return levels


def spectrum(spec: ClusterSpec) -> np.ndarray:
    """The full 2^n eigenvalue multiset, sorted ascending."""
    levels = enumerate_levels(spec)
    values = np.fromiter(
        _repeat_energies(levels), dtype=np.float64, count=sum(lv.multiplicity for lv in levels)
    )
    values.sort()
    return values


def _repeat_energies(levels: Iterable[EnergyLevel]):
    for lv in levels:
        for _ in range(lv.multiplicity):
            yield lv.energy
