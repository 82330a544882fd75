"""Thermal moments, partition function, correlators."""
import math

import numpy as np
import pytest

from spincluster import (
    ClusterSpec,
    ConsistencyError,
    Correlations,
    DomainError,
    Moments,
    Temperature,
    correlations,
    log_partition,
    moments,
)
from spincluster.thermo import averages_batch, level_means


def lnz(spec: ClusterSpec, t: float) -> float:
    shifted, e_min = log_partition(spec, Temperature(t))
    return shifted - e_min / t


def test_temperature_validation():
    assert Temperature(0.0).value == 0.0
    assert Temperature(2.0).beta == 0.5
    with pytest.raises(DomainError):
        Temperature(-0.1)
    with pytest.raises(DomainError):
        Temperature(float("inf"))
    with pytest.raises(DomainError):
        Temperature(float("nan"))
    with pytest.raises(DomainError):
        Temperature("warm")  # type: ignore[arg-type]
    with pytest.raises(DomainError):
        Temperature(0.0).beta


def test_partition_function_two_sites():
    # two sites: singlet at -3/2, triplet at +1/2; Z = exp(3b/2) + 3 exp(-b/2)
    z = math.exp(lnz(ClusterSpec(2, 1.0), 1.0))
    assert z == pytest.approx(6.301281049475965, rel=1e-12)
    for t in (0.3, 1.7, 8.0):
        beta = 1.0 / t
        expected = math.exp(1.5 * beta) + 3.0 * math.exp(-0.5 * beta)
        assert math.exp(lnz(ClusterSpec(2, 1.0), t)) == pytest.approx(expected, rel=1e-12)


def test_partition_function_three_sites():
    # two sectors only: 4 states at -3/4 and 4 at +3/4
    for t in (0.25, 1.0, 3.0):
        beta = 1.0 / t
        expected = 4.0 * (math.exp(0.75 * beta) + math.exp(-0.75 * beta))
        assert math.exp(lnz(ClusterSpec(3, 1.0), t)) == pytest.approx(expected, rel=1e-12)


def test_log_partition_rejects_zero_temperature():
    with pytest.raises(DomainError):
        log_partition(ClusterSpec(3, 1.0), Temperature(0.0))


def test_ground_manifold_moments_by_hand():
    # n=4 ferromagnet: ground sector S=2, five equally weighted m levels
    mom = moments(ClusterSpec(4, -1.0), Temperature(0.0))
    assert mom.log_z_shifted == pytest.approx(math.log(5.0), abs=1e-15)
    assert mom.e_min == pytest.approx(-1.0, abs=1e-15)
    assert mom.z1 == pytest.approx(0.0, abs=1e-15)
    assert mom.z2 == pytest.approx(2.0, abs=1e-14)
    assert mom.s2 == pytest.approx(6.0, abs=1e-14)
    assert mom.h_mean == pytest.approx(-1.0, abs=1e-14)


def test_ground_correlators_by_hand():
    corr = correlations(ClusterSpec(4, -1.0), Temperature(0.0))
    assert corr.mu == pytest.approx(0.0, abs=1e-15)
    assert corr.gzz == pytest.approx(1.0 / 12.0, abs=1e-14)
    assert corr.gplus == pytest.approx(1.0 / 6.0, abs=1e-14)
    assert corr.epsilon == pytest.approx(-0.25, abs=1e-14)


def test_infinite_temperature_limit():
    # uniform mixture: <S_z> = 0, <S_z^2> = n/4, <S^2> = 3n/4
    z1, z2, s2, _h, _logz, _e_min = averages_batch(4, 1.0, 0.7, 0.9, np.array([1e12]))
    assert abs(z1[0]) < 1e-6
    assert z2[0] == pytest.approx(1.0, abs=1e-6)
    assert s2[0] == pytest.approx(3.0, abs=1e-6)


def test_zero_temperature_continuity():
    # a gapped point: T=1e-3 weights on excited levels are ~exp(-100)
    spec = ClusterSpec(5, -1.0, -1.2, 0.3)
    m0 = moments(spec, Temperature(0.0))
    m1 = moments(spec, Temperature(1e-3))
    for a, b in (
        (m0.z1, m1.z1),
        (m0.z2, m1.z2),
        (m0.s2, m1.s2),
        (m0.h_mean, m1.h_mean),
    ):
        assert a == pytest.approx(b, abs=1e-12)


def test_extreme_beta_stays_finite():
    spec = ClusterSpec(5, -1.0, -1.2, 0.3)
    mom = moments(spec, Temperature(1e-6))
    for value in (mom.z1, mom.z2, mom.s2, mom.h_mean, mom.log_z_shifted):
        assert math.isfinite(value)
    ground = moments(spec, Temperature(0.0))
    assert mom.h_mean == pytest.approx(ground.h_mean, abs=1e-9)


def test_batch_matches_single_calls():
    # BLAS may reorder the reduction between the one-column and the
    # many-column product, so demand agreement to rounding, not bitwise
    spec = ClusterSpec(6, 1.0, -0.8, 1.1)
    ts = np.array([0.0, 0.3, 0.7, 2.5])
    z1, z2, s2, h, logz, _ = averages_batch(spec.n, spec.j, spec.delta, spec.b, ts)
    for i, t in enumerate(ts):
        mom = moments(spec, Temperature(float(t)))
        assert mom.z1 == pytest.approx(z1[i], rel=1e-14, abs=1e-14)
        assert mom.z2 == pytest.approx(z2[i], rel=1e-14)
        assert mom.s2 == pytest.approx(s2[i], rel=1e-14)
        assert mom.h_mean == pytest.approx(h[i], rel=1e-14, abs=1e-14)
        assert mom.log_z_shifted == pytest.approx(logz[i], rel=1e-14, abs=1e-14)


def test_level_means_input_validation():
    with pytest.raises(DomainError):
        level_means(3, 1.0, 0.0, 0.0, np.array([0.5]), np.zeros((1, 3)))  # wrong width
    with pytest.raises(DomainError):
        level_means(3, 1.0, 0.0, 0.0, np.array([-0.5]), np.zeros((1, 8)))
    with pytest.raises(DomainError):
        level_means(3, 1.0, 0.0, 0.0, np.array([float("nan")]), np.zeros((1, 8)))


def test_derivative_route_to_magnetization():
    # mu = -(1/(n beta)) d lnZ / dB, central difference
    spec = ClusterSpec(3, 1.0, 0.4, 0.7)
    t = 0.9
    h = 1e-6
    up = lnz(ClusterSpec(3, 1.0, 0.4, 0.7 + h), t)
    dn = lnz(ClusterSpec(3, 1.0, 0.4, 0.7 - h), t)
    mu_fd = -(up - dn) / (2.0 * h * 3.0 / t)
    assert correlations(spec, Temperature(t)).mu == pytest.approx(mu_fd, abs=1e-8)


def test_moment_invariants_guarded():
    with pytest.raises(ConsistencyError):
        Moments(0.0, 0.0, z1=1.0, z2=0.5, s2=3.0, h_mean=0.0)
    with pytest.raises(ConsistencyError):
        Moments(0.0, 0.0, z1=0.0, z2=4.0, s2=3.0, h_mean=0.0)
    with pytest.raises(ConsistencyError):
        Correlations(mu=0.6, gzz=0.0, gplus=0.0, epsilon=0.0)
    with pytest.raises(ConsistencyError):
        Correlations(mu=0.4, gzz=-0.7, gplus=0.0, epsilon=0.0)


def test_energy_is_never_heated_away():
    # <H> must be non-decreasing in T (positive heat capacity)
    ts = np.linspace(0.02, 4.0, 60)
    for spec in (ClusterSpec(5, 1.0, 1.5, 0.8), ClusterSpec(8, -1.0, -0.5, 0.2)):
        _z1, _z2, _s2, h, _logz, _ = averages_batch(spec.n, spec.j, spec.delta, spec.b, ts)
        assert np.all(np.diff(h) >= -1e-8)
