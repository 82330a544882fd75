"""Thermal averages over the sector spectrum.

Everything downstream needs four moments of the Gibbs ensemble,

    z1 = <S_z>,  z2 = <S_z^2>,  s2 = <S^2>,  h = <H>,

taken over the level list of `sectors.enumerate_levels` with weights
g(N,S) * exp(-beta E).  The exponentials are shifted by the minimum energy
(log-sum-exp), so beta up to 1e6 stays finite.  T = 0 is handled exactly:
an equal-weight, multiplicity-weighted mixture over all levels within
ENERGY_DEGENERACY_TOL of the ground energy.

Pair correlators follow by permutation symmetry alone:

    mu     = z1 / N                      per-site magnetization <s_z>
    G_zz   = (z2 - N/4)   / (N(N-1))     <s_iz s_jz>
    G_plus = (s2 - z2 - N/2) / (N(N-1))  <s_ix s_jx> + <s_iy s_jy>
    eps    = J*(G_plus + (1+Delta)*G_zz) + mu*B = <H>/N
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConsistencyError, DomainError
from .sectors import ClusterSpec, enumerate_levels

__all__ = [
    "ENERGY_DEGENERACY_TOL",
    "Temperature",
    "Moments",
    "Correlations",
    "log_partition",
    "moments",
    "correlations",
    "correlation_values",
    "averages_batch",
    "level_means",
]

ENERGY_DEGENERACY_TOL = 1e-9


@dataclass(frozen=True)
class Temperature:
    """Absolute temperature in units of |J| (k_B = 1).  value >= 0."""

    value: float

    def __post_init__(self) -> None:
        try:
            v = float(self.value)
        except (TypeError, ValueError):
            raise DomainError(f"temperature must be a real number, got {self.value!r}") from None
        if not math.isfinite(v) or v < 0.0:
            raise DomainError(f"temperature must be finite and >= 0, got {self.value!r}")
        object.__setattr__(self, "value", v)

    @property
    def beta(self) -> float:
        if self.value == 0.0:
            raise DomainError("beta is undefined at T = 0; use the ground-state path")
        return 1.0 / self.value


@dataclass(frozen=True)
class Moments:
    """Shifted log partition function and the four thermal moments.

    ln Z = log_z_shifted - beta * e_min (caller reconstructs).  At T = 0,
    log_z_shifted is the log of the ground-manifold multiplicity, the
    beta -> infinity limit of ln Z + beta * e_min.
    """

    log_z_shifted: float
    e_min: float
    z1: float
    z2: float
    s2: float
    h_mean: float

    def __post_init__(self) -> None:
        # soft internal checks; violations mean a kernel bug, not bad input
        if self.z2 < self.z1 * self.z1 - 1e-9:
            raise ConsistencyError(f"<Sz^2> = {self.z2} below <Sz>^2 = {self.z1 ** 2}")
        if self.z2 > self.s2 + 1e-9 or self.s2 < -1e-9:
            raise ConsistencyError(f"moment ordering violated: z2={self.z2}, s2={self.s2}")


@dataclass(frozen=True)
class Correlations:
    """Per-site magnetization and symmetric pair correlators."""

    mu: float
    gzz: float
    gplus: float
    epsilon: float

    def __post_init__(self) -> None:
        if abs(self.mu) > 0.5 + 1e-9:
            raise ConsistencyError(f"|mu| = {abs(self.mu)} exceeds 1/2")
        if 0.25 + self.mu + self.gzz < -1e-12 or 0.25 - self.mu + self.gzz < -1e-12:
            raise ConsistencyError(
                f"pair occupations negative: mu={self.mu}, gzz={self.gzz}"
            )


@lru_cache(maxsize=512)
def _base_arrays(n: int, j: float, delta: float):
    """Zero-field level table for (n, j, delta): energies, m, m^2, S(S+1), g."""
    levels = enumerate_levels(ClusterSpec(n, j, delta, 0.0))
    e0 = np.array([lv.energy for lv in levels])
    m = np.array([lv.m for lv in levels])
    m2 = m * m
    s2 = np.array([lv.s * (lv.s + 1.0) for lv in levels])
    g = np.array([float(lv.multiplicity) for lv in levels])
    for a in (e0, m, m2, s2, g):
        a.flags.writeable = False
    return e0, m, m2, s2, g


def _level_arrays(spec: ClusterSpec):
    e0, m, m2, s2, g = _base_arrays(spec.n, spec.j, spec.delta)
    e = e0 + spec.b * m if spec.b != 0.0 else e0
    return e, m, m2, s2, g


def level_means(n, j, delta, b, t_values, values):
    """Thermal means of arbitrary per-level quantities, many temperatures.

    `values` has one row per quantity, columns aligned with the level
    order of `sectors.enumerate_levels`.  Returns (means with shape
    (n_quantities, n_temperatures), log_z_shifted, e_min).  Entries with
    t = 0 use the degenerate ground manifold; t > 0 entries share one
    vectorized log-sum-exp kernel.  Weighted means of nonnegative rows
    stay nonnegative: no cancellation is introduced here.
    """
    e, _m, _m2, _s2, g = _level_arrays(ClusterSpec(int(n), float(j), float(delta), float(b)))
    t = np.atleast_1d(np.asarray(t_values, dtype=np.float64)).ravel()
    if np.any(~np.isfinite(t)) or np.any(t < 0.0):
        raise DomainError("temperatures must be finite and >= 0")
    values = np.atleast_2d(np.asarray(values, dtype=np.float64))
    if values.shape[1] != e.size:
        raise DomainError(f"expected {e.size} level columns, got {values.shape[1]}")
    e_min = float(e.min())

    means = np.empty((values.shape[0], t.size))
    logz = np.empty_like(t)
    hot = t > 0.0
    if np.any(hot):
        beta = 1.0 / t[hot]
        w = g * np.exp(np.outer(beta, e_min - e))  # shape (nT, nLevels)
        z = w.sum(axis=1)
        means[:, hot] = (values @ w.T) / z
        logz[hot] = np.log(z)
    if not np.all(hot):
        cold = ~hot
        wg = g * ((e - e_min) <= ENERGY_DEGENERACY_TOL)
        z0 = wg.sum()
        means[:, cold] = ((values @ wg) / z0)[:, None]
        logz[cold] = np.log(z0)
    return means, logz, e_min


def averages_batch(n, j, delta, b, t_values):
    """Thermal moments (z1, z2, s2, h, log_z_shifted, e_min) over t_values."""
    e, m, m2, s2v, _g = _level_arrays(ClusterSpec(int(n), float(j), float(delta), float(b)))
    means, logz, e_min = level_means(n, j, delta, b, t_values, np.vstack([m, m2, s2v, e]))
    return means[0], means[1], means[2], means[3], logz, e_min


def moments(spec: ClusterSpec, t: Temperature) -> Moments:
    """The four thermal moments of one cluster at one temperature."""
    z1, z2, s2, h, logz, e_min = averages_batch(
        spec.n, spec.j, spec.delta, spec.b, np.array([t.value])
    )
    return Moments(float(logz[0]), e_min, float(z1[0]), float(z2[0]), float(s2[0]), float(h[0]))


def log_partition(spec: ClusterSpec, t: Temperature) -> tuple[float, float]:
    """(log_z_shifted, e_min) at t > 0; ln Z = log_z_shifted - beta * e_min."""
    if t.value == 0.0:
        raise DomainError("log_partition needs t > 0; at T = 0 use moments()")
    e, _m, _m2, _s2, g = _level_arrays(spec)
    e_min = float(e.min())
    beta = t.beta
    return float(np.log(np.sum(g * np.exp(beta * (e_min - e))))), e_min


def correlation_values(n, j, delta, b, z1, z2, s2):
    """(mu, gzz, gplus, epsilon) from the moments; scalar or array alike."""
    pairs = n * (n - 1.0)
    mu = z1 / n
    gzz = (z2 - 0.25 * n) / pairs
    gplus = (s2 - z2 - 0.5 * n) / pairs
    epsilon = j * (gplus + (1.0 + delta) * gzz) + mu * b
    return mu, gzz, gplus, epsilon


def correlations(spec: ClusterSpec, t: Temperature) -> Correlations:
    """Pair correlators of the thermal state; checks eps == <H>/N on the way."""
    mom = moments(spec, t)
    mu, gzz, gplus, eps = correlation_values(
        spec.n, spec.j, spec.delta, spec.b, mom.z1, mom.z2, mom.s2
    )
    per_site = mom.h_mean / spec.n
    if abs(eps - per_site) > 1e-10 * max(1.0, abs(per_site)):
        raise ConsistencyError(
            f"energy bookkeeping mismatch: eps = {eps} vs <H>/N = {per_site}"
        )
    return Correlations(float(mu), float(gzz), float(gplus), float(eps))
