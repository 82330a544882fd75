"""Brute-force cross-check in the full 2^n product basis.

Independent of the sector algebra on purpose: the Hamiltonian is built
state by state from bit masks (bit i set = site i up), diagonalized one
S_z block at a time (k up spins, m = k - n/2), and the thermal two-site
state comes from an explicit partial trace.  Agreement with the sector
engine is the main correctness evidence, so nothing here reuses the
sector-side energy formula.

Per block, the matrix elements are

    diag  = J/(n-1) * (1 + Delta) * (m^2 - n/4) + B*m
    off   = J/(n-1)   between states that swap one up-down pair

(the flip-flop part of 2 sum_{i<j} s_i . s_j).  Capped at n = 12; the
dense blocks grow as C(n, n/2).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import entanglement, sectors
from .errors import CapacityError, DomainError, NumericalError
from .sectors import ClusterSpec
from .thermo import ENERGY_DEGENERACY_TOL, Temperature

__all__ = [
    "ORACLE_N_MAX",
    "SectorBasis",
    "DenseBlock",
    "ReducedPairState",
    "sector_basis",
    "build_block",
    "full_spectrum",
    "thermal_pair_state",
    "oracle_concurrence",
    "random_points",
    "comparison_report",
    "OracleReport",
]

ORACLE_N_MAX = 12


@dataclass(frozen=True)
class SectorBasis:
    """All product states with k up spins, as bit masks in ascending order."""

    k: int
    states: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class DenseBlock:
    """One dense S_z block of the Hamiltonian."""

    dim: int
    entries: np.ndarray


@dataclass(frozen=True, eq=False)
class ReducedPairState:
    """Two-site thermal state from the partial trace; validated on build."""

    rho: np.ndarray

    def __post_init__(self) -> None:
        rho = self.rho
        if rho.shape != (4, 4):
            raise NumericalError(f"reduced state must be 4x4, got {rho.shape}")
        if np.max(np.abs(rho - rho.T)) > 1e-12:
            raise NumericalError("reduced state lost its symmetry")
        if abs(float(np.trace(rho)) - 1.0) > 1e-12:
            raise NumericalError(f"reduced state trace {np.trace(rho)} drifted from 1")
        if float(np.linalg.eigvalsh(rho)[0]) < -1e-12:
            raise NumericalError("reduced state is not PSD")


def _check_capacity(n: int) -> None:
    if n > ORACLE_N_MAX:
        raise CapacityError(f"brute force is capped at n = {ORACLE_N_MAX}, got n = {n}")


def sector_basis(n: int, k: int) -> SectorBasis:
    """Basis of the k-up-spins block of an n-site cluster."""
    _check_capacity(n)
    if k < 0 or k > n:
        raise DomainError(f"k must lie in [0, {n}], got {k}")
    states = tuple(s for s in range(1 << n) if bin(s).count("1") == k)
    return SectorBasis(k, states)


def build_block(spec: ClusterSpec, k: int) -> DenseBlock:
    """Dense Hamiltonian block for k up spins."""
    _check_capacity(spec.n)
    basis = sector_basis(spec.n, k)
    states = basis.states
    index = {s: a for a, s in enumerate(states)}
    n = spec.n
    pref = spec.j / (n - 1)
    m = k - 0.5 * n
    diag = pref * (1.0 + spec.delta) * (m * m - 0.25 * n) + spec.b * m
    dim = len(states)
    h = np.zeros((dim, dim))
    for a, s in enumerate(states):
        h[a, a] = diag
        ups = [i for i in range(n) if (s >> i) & 1]
        downs = [i for i in range(n) if not (s >> i) & 1]
        for i in ups:
            for jdx in downs:
                b = s ^ ((1 << i) | (1 << jdx))
                h[a, index[b]] += pref
    return DenseBlock(dim, h)


@lru_cache(maxsize=8)
def _diagonalized(spec: ClusterSpec):
    """(states, eigenvalues, eigenvectors) for every S_z block of spec."""
    out = []
    for k in range(spec.n + 1):
        basis = sector_basis(spec.n, k)
        block = build_block(spec, k)
        evals, evecs = np.linalg.eigh(block.entries)
        out.append((basis.states, evals, evecs))
    return tuple(out)


def full_spectrum(spec: ClusterSpec) -> np.ndarray:
    """All 2^n eigenvalues, sorted ascending."""
    values = np.concatenate([evals for _states, evals, _v in _diagonalized(spec)])
    values.sort()
    return values


def thermal_pair_state(
    spec: ClusterSpec, t: Temperature, sites: tuple[int, int] = (0, 1)
) -> ReducedPairState:
    """Partial trace of the Gibbs state down to two sites.

    Weights are exp(-beta (E - E_min)) for t > 0 and the flat ground
    manifold (within ENERGY_DEGENERACY_TOL) at t = 0.  Only matrix
    elements between states sharing the same rest-of-cluster bits survive
    the trace, so the Gibbs block is evaluated entry by entry where
    needed instead of being formed in full.

    `sites` are 0-based; the reduced basis is (++, +-, -+, --) with the
    first slot belonging to sites[0].
    """
    i0, i1 = sites
    if i0 == i1 or not (0 <= i0 < spec.n) or not (0 <= i1 < spec.n):
        raise DomainError(f"sites must be two distinct indices in [0, {spec.n}), got {sites}")
    blocks = _diagonalized(spec)
    e_min = min(float(evals[0]) for _s, evals, _v in blocks)
    pair_bits = (1 << i0) | (1 << i1)

    rho = np.zeros((4, 4))
    z_total = 0.0
    for states, evals, vecs in blocks:
        if t.value == 0.0:
            w = ((evals - e_min) <= ENERGY_DEGENERACY_TOL).astype(np.float64)
        else:
            w = np.exp(-(evals - e_min) / t.value)
        z_total += float(w.sum())
        groups: dict[int, list[tuple[int, int]]] = {}
        for row, s in enumerate(states):
            label = 2 * (1 - ((s >> i0) & 1)) + (1 - ((s >> i1) & 1))
            groups.setdefault(s & ~pair_bits, []).append((row, label))
        vw = vecs * w
        for members in groups.values():
            for ra, pa in members:
                for rb, pb in members:
                    rho[pa, pb] += float(np.dot(vw[ra], vecs[rb]))
    rho /= z_total
    rho = 0.5 * (rho + rho.T)
    return ReducedPairState(rho)


def oracle_concurrence(spec: ClusterSpec, t: Temperature) -> float:
    """Concurrence by explicit diagonalization and the general Wootters form."""
    return entanglement.wootters(thermal_pair_state(spec, t).rho)


# --------------------------------------------------------------------------
# randomized engine-vs-oracle comparison, shared by tests and the CLI
# --------------------------------------------------------------------------

T_CHOICES = (0.0, 0.1, 0.5, 1.0, 2.0, 10.0)


@dataclass(frozen=True)
class OracleReport:
    """Result of a randomized comparison run."""

    rows: tuple[tuple[int, float, float, float, float, float, float], ...]
    max_abs_diff: float
    max_spectrum_dev: float
    concurrence_tol: float = 1e-8
    spectrum_tol: float = 1e-9

    @property
    def passed(self) -> bool:
        return self.max_abs_diff <= self.concurrence_tol and (
            self.max_spectrum_dev <= self.spectrum_tol
        )


def random_points(n_max: int, count: int, seed: int):
    """Reproducible random (spec, temperature) pairs for comparison runs."""
    _check_capacity(n_max)
    if n_max < 2:
        raise DomainError(f"n_max must be at least 2, got {n_max}")
    rng = np.random.default_rng(seed)
    points = []
    for _ in range(count):
        n = int(rng.integers(2, n_max + 1))
        j = float(rng.choice((1.0, -1.0)))
        delta = float(rng.uniform(-3.0, 3.0))
        b = float(rng.uniform(0.0, 3.0))
        t = float(rng.choice(T_CHOICES))
        points.append((ClusterSpec(n, j, delta, b), Temperature(t)))
    return points


def comparison_report(n_max: int = 10, count: int = 200, seed: int = 42) -> OracleReport:
    """Engine vs brute force on random points, plus spectra side by side."""
    rows = []
    max_dc = 0.0
    max_spec = 0.0
    for spec, t in random_points(n_max, count, seed):
        c_engine = entanglement.thermal_entanglement(spec, t).concurrence
        c_oracle = oracle_concurrence(spec, t)
        max_dc = max(max_dc, abs(c_engine - c_oracle))
        dev = float(np.max(np.abs(sectors.spectrum(spec) - full_spectrum(spec))))
        max_spec = max(max_spec, dev)
        rows.append((spec.n, spec.j, spec.delta, spec.b, t.value, c_engine, c_oracle))
    return OracleReport(tuple(rows), max_dc, max_spec)
