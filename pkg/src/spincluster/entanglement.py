"""Pairwise entanglement measures for the thermal two-site state.

Permutation symmetry plus [H, S_z] = 0 force the reduced state of any two
sites into the form (basis ++, +-, -+, --)

    rho = [[u+, 0, 0, 0 ],
           [0,  w, z, 0 ],
           [0,  z, w, 0 ],
           [0,  0, 0, u-]]

with u+- = 1/4 +- mu + G_zz, w = 1/4 - G_zz, z = G_plus (real).  For this
form the Wootters concurrence collapses to

    C = 2 * max(0, |z| - sqrt(u+ u-)),

and at B = 0, Delta = 0 everything is a function of the single scaled
energy x = eps/J:

    C = 2 * max(0, (2/3)|x| - |1/4 + x/3|),

nonzero only below x = -1/4.  The entanglement of formation follows from C
through the binary entropy (base-2 logs).

A deliberate epsilon: any gap |z| - sqrt(u+ u-) at or below 1e-12 counts
as exactly zero.  Separable boundary cases land at +-1e-16 of rounding
noise, and downstream claims about exact vanishing must not hinge on the
sign of that noise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import thermo
from .errors import ConsistencyError, DomainError, InvalidClusterError
from .sectors import ClusterSpec, enumerate_levels
from .thermo import Temperature

__all__ = [
    "CONCURRENCE_ZERO_TOL",
    "PairDensity",
    "EntanglementPoint",
    "pair_density",
    "pair_matrix",
    "concurrence",
    "concurrence_xxx_zero_field",
    "wootters",
    "eof",
    "rescaled_concurrence",
    "thermal_entanglement",
    "concurrence_batch",
]

CONCURRENCE_ZERO_TOL = 1e-12

# sigma_y tensor sigma_y is real in this basis: a signed anti-diagonal
_SYSY = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)


@dataclass(frozen=True)
class PairDensity:
    """The four independent entries of the symmetric two-site state."""

    u_plus: float
    u_minus: float
    w: float
    z: float

    def __post_init__(self) -> None:
        tr = self.u_plus + self.u_minus + 2.0 * self.w
        if abs(tr - 1.0) > 1e-9:
            raise ConsistencyError(f"pair state trace {tr} is not 1")
        if min(self.u_plus, self.u_minus, self.w) < -1e-10:
            raise ConsistencyError("pair state has a negative occupation")
        if abs(self.z) > self.w + 1e-9:
            raise ConsistencyError(f"|z| = {abs(self.z)} exceeds w = {self.w}")


@dataclass(frozen=True)
class EntanglementPoint:
    """Concurrence, its (N-1)-rescaled value, and entanglement of formation."""

    concurrence: float
    rescaled: float
    eof: float


@lru_cache(maxsize=256)
def _pair_table(n: int):
    """Exact per-level pair elements (u+, u-, w, z) as a (4, L) table.

    For the normalized projector onto one (S, m) eigenspace, every entry
    of the two-site state is an integer over 4N(N-1):

        u+- : N(N-2) +- 2(N-1)*(2m) + (2m)^2
        w   : N^2 - (2m)^2
        z   : 2S(2S+2) - (2m)^2 - 2N

    The u numerators equal (|2m| -+ (N-1))^2 - 1 with |2m| = N mod 2
    parities, so they are nonnegative and hit zero exactly for the Dicke
    levels; thermally averaging these tables (weighted means of
    nonnegative columns) keeps tiny occupations at full relative
    precision instead of exposing them to cancellation.
    """
    denom = 4.0 * n * (n - 1)
    rows = [[], [], [], []]
    for lv in enumerate_levels(ClusterSpec(n, 1.0, 0.0, 0.0)):
        tm, ts = lv.twice_m, lv.twice_s
        rows[0].append(n * (n - 2) + 2 * (n - 1) * tm + tm * tm)
        rows[1].append(n * (n - 2) - 2 * (n - 1) * tm + tm * tm)
        rows[2].append(n * n - tm * tm)
        rows[3].append(ts * (ts + 2) - tm * tm - 2 * n)
    table = np.array(rows, dtype=np.float64) / denom
    table.flags.writeable = False
    return table


def pair_elements_batch(spec: ClusterSpec, t_values):
    """Thermal (u+, u-, w, z) arrays over t_values, cancellation-free."""
    means, _logz, _e_min = thermo.level_means(
        spec.n, spec.j, spec.delta, spec.b, t_values, _pair_table(spec.n)
    )
    u_plus, u_minus, w, z = means
    if min(u_plus.min(), u_minus.min(), (w - np.abs(z)).min()) < -1e-10:
        raise ConsistencyError("reduced pair state not PSD")
    return u_plus, u_minus, w, z


def pair_density(corr: thermo.Correlations) -> PairDensity:
    """Two-site reduced state from the pair correlators.

    PSD is checked (eigenvalues u+, u-, w +- z must clear -1e-10) and
    harmless rounding negatives are clamped to zero.
    """
    u_plus = 0.25 + corr.mu + corr.gzz
    u_minus = 0.25 - corr.mu + corr.gzz
    w = 0.25 - corr.gzz
    z = corr.gplus
    if min(u_plus, u_minus, w - abs(z)) < -1e-10:
        raise ConsistencyError(
            f"reduced pair state not PSD: u+={u_plus}, u-={u_minus}, w={w}, z={z}"
        )
    return PairDensity(max(u_plus, 0.0), max(u_minus, 0.0), max(w, 0.0), z)


def pair_matrix(pd: PairDensity) -> np.ndarray:
    """The explicit 4x4 matrix in the (++, +-, -+, --) basis."""
    return np.array(
        [
            [pd.u_plus, 0.0, 0.0, 0.0],
            [0.0, pd.w, pd.z, 0.0],
            [0.0, pd.z, pd.w, 0.0],
            [0.0, 0.0, 0.0, pd.u_minus],
        ]
    )


def _concurrence_from_elements(u_plus, u_minus, z):
    """C = 2 max(0, |z| - sqrt(u+ u-)), array-safe, with the zero snap."""
    prod = np.maximum(np.multiply(u_plus, u_minus), 0.0)
    d = np.abs(z) - np.sqrt(prod)
    return np.where(d > CONCURRENCE_ZERO_TOL, 2.0 * d, 0.0)


def concurrence(pd: PairDensity) -> float:
    """Concurrence of the symmetric pair state."""
    return float(_concurrence_from_elements(pd.u_plus, pd.u_minus, pd.z))


def concurrence_xxx_zero_field(x: float) -> float:
    """Closed-form concurrence at Delta = 0, B = 0 from x = eps/J alone."""
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"x must be finite, got {x!r}")
    d = (2.0 / 3.0) * abs(x) - abs(0.25 + x / 3.0)
    return float(np.where(d > CONCURRENCE_ZERO_TOL, 2.0 * d, 0.0))


def wootters(rho) -> float:
    """Wootters concurrence of an arbitrary real symmetric 4x4 density matrix.

    Works on the symmetrized product A = sqrt(rho) (sy x sy) sqrt(rho):
    its eigenvalue magnitudes equal the usual lambda_i = sqrt(eig(rho
    rho_tilde)) but stay first-order accurate near zero, where taking a
    square root of an eigenvalue would amplify rounding noise.

    Parameters
    ----------
    rho : array_like, shape (4, 4)
        Real symmetric, PSD within -1e-10, unit trace within 1e-10.

    Returns
    -------
    float
        max(0, lambda_1 - lambda_2 - lambda_3 - lambda_4).
    """
    rho = np.asarray(rho, dtype=np.float64)
    if rho.shape != (4, 4):
        raise DomainError(f"rho must be 4x4, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise DomainError("rho has non-finite entries")
    if np.max(np.abs(rho - rho.T)) > 1e-10:
        raise DomainError("rho must be symmetric (real states only)")
    tr = float(np.trace(rho))
    if abs(tr - 1.0) > 1e-10:
        raise DomainError(f"rho must have unit trace, got {tr}")
    rho = 0.5 * (rho + rho.T)
    evals, vecs = np.linalg.eigh(rho)
    if evals[0] < -1e-10:
        raise DomainError(f"rho is not PSD: min eigenvalue {evals[0]}")
    sqrt_rho = (vecs * np.sqrt(np.clip(evals, 0.0, None))) @ vecs.T
    a = sqrt_rho @ _SYSY @ sqrt_rho
    lam = np.sort(np.abs(np.linalg.eigvalsh(a)))
    return float(max(0.0, lam[3] - lam[2] - lam[1] - lam[0]))


def eof(c):
    """Entanglement of formation from the concurrence (base-2 entropy).

    Accepts a scalar or an array; NaN passes through untouched so flagged
    scan points stay flagged.
    """
    arr = np.asarray(c, dtype=np.float64)
    finite = np.isfinite(arr)
    if np.any((arr[finite] < -1e-12) | (arr[finite] > 1.0 + 1e-12)):
        raise DomainError("concurrence must lie in [0, 1]")
    cc = np.clip(arr, 0.0, 1.0)
    lam = 0.5 * (1.0 - np.sqrt(np.clip(1.0 - cc * cc, 0.0, None)))
    out = _h2(lam)
    out = np.where(finite, out, arr)
    return float(out) if np.ndim(c) == 0 else out


def _h2(p):
    # binary entropy with the 0 log 0 = 0 convention
    q = 1.0 - p
    safe_p = np.where(p > 0.0, p, 1.0)
    safe_q = np.where(q > 0.0, q, 1.0)
    return -(p * np.log2(safe_p) + q * np.log2(safe_q))


def rescaled_concurrence(c: float, n: int) -> float:
    """(N - 1) * C, the natural per-pair scale in the complete-graph model."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 2:
        raise InvalidClusterError(f"n must be an integer >= 2, got {n!r}")
    c = float(c)
    if math.isnan(c):
        return c
    if c < -1e-12 or c > 1.0 + 1e-12:
        raise DomainError(f"concurrence must lie in [0, 1], got {c}")
    return (int(n) - 1) * min(max(c, 0.0), 1.0)


def thermal_entanglement(spec: ClusterSpec, t: Temperature) -> EntanglementPoint:
    """Concurrence, rescaled concurrence, and Eof of the thermal pair state."""
    mom = thermo.moments(spec, t)
    _mu, _gzz, _gplus, eps = thermo.correlation_values(
        spec.n, spec.j, spec.delta, spec.b, mom.z1, mom.z2, mom.s2
    )
    per_site = mom.h_mean / spec.n
    if abs(eps - per_site) > 1e-10 * max(1.0, abs(per_site)):
        raise ConsistencyError(f"energy bookkeeping mismatch: {eps} vs {per_site}")
    u_plus, u_minus, w, z = pair_elements_batch(spec, np.array([t.value]))
    pd = PairDensity(
        max(float(u_plus[0]), 0.0),
        max(float(u_minus[0]), 0.0),
        max(float(w[0]), 0.0),
        float(z[0]),
    )
    c = concurrence(pd)
    return EntanglementPoint(c, rescaled_concurrence(c, spec.n), eof(c))


def concurrence_batch(spec: ClusterSpec, t_values) -> np.ndarray:
    """Concurrence of one cluster at many temperatures (vectorized path).

    Shares the level-table formulas with the scalar path; results agree
    to rounding (the underlying matrix product may reorder reductions).
    """
    u_plus, u_minus, _w, z = pair_elements_batch(spec, t_values)
    return np.asarray(_concurrence_from_elements(u_plus, u_minus, z))
