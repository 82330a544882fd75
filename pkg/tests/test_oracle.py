"""Brute-force diagonalization cross-checks."""
import math

import numpy as np
import pytest

from spincluster import (
    CapacityError,
    ClusterSpec,
    DomainError,
    NumericalError,
    Temperature,
    oracle_concurrence,
    thermal_entanglement,
    thermal_pair_state,
)
from spincluster import comparison_report, spectrum
from spincluster.oracle import (
    ORACLE_N_MAX,
    ReducedPairState,
    build_block,
    full_spectrum,
    random_points,
    sector_basis,
)


def test_sector_basis_enumeration():
    basis = sector_basis(4, 2)
    assert basis.states == (3, 5, 6, 9, 10, 12)
    assert sector_basis(3, 0).states == (0,)
    assert sector_basis(3, 3).states == (7,)
    with pytest.raises(DomainError):
        sector_basis(4, 5)


def test_two_site_blocks_by_hand():
    # k=1 block in basis (01, 10): diagonal -1/2, flip-flop 1
    block = build_block(ClusterSpec(2, 1.0), 1)
    assert np.allclose(block.entries, [[-0.5, 1.0], [1.0, -0.5]], atol=1e-15)
    # k=0: single state, m=-1, E = (1)(1 - 1/2) = 1/2
    block0 = build_block(ClusterSpec(2, 1.0), 0)
    assert np.allclose(block0.entries, [[0.5]], atol=1e-15)


def test_full_spectrum_matches_sector_ladder():
    cases = [
        ClusterSpec(3, -1.0, 0.0, 1.1),
        ClusterSpec(4, 1.0, 0.7, 0.9),
        ClusterSpec(5, -1.0, -1.3, 0.4),
        ClusterSpec(6, 1.0, 2.5, 0.0),
    ]
    for spec in cases:
        dev = np.max(np.abs(full_spectrum(spec) - spectrum(spec)))
        assert dev < 1e-9


def test_two_site_thermal_state_closed_form():
    # n=2 partial trace is the identity operation, so the reduced state
    # must equal the explicit two-qubit Gibbs state:
    #   u+- = exp(-b/2)/Z, w = (exp(-b/2) + exp(3b/2))/(2Z),
    #   z = (exp(-b/2) - exp(3b/2))/(2Z)
    t = 0.7
    beta = 1.0 / t
    lo = math.exp(-0.5 * beta)
    hi = math.exp(1.5 * beta)
    z_part = 3.0 * lo + hi
    expected = np.zeros((4, 4))
    expected[0, 0] = expected[3, 3] = lo / z_part
    expected[1, 1] = expected[2, 2] = (lo + hi) / (2.0 * z_part)
    expected[1, 2] = expected[2, 1] = (lo - hi) / (2.0 * z_part)
    rho = thermal_pair_state(ClusterSpec(2, 1.0), Temperature(t)).rho
    assert np.max(np.abs(rho - expected)) < 1e-12


def test_infinite_temperature_state_is_maximally_mixed():
    rho = thermal_pair_state(ClusterSpec(5, 1.0, 0.8, 1.3), Temperature(1e6)).rho
    assert np.max(np.abs(rho - np.eye(4) / 4.0)) < 1e-6


def test_reduced_state_site_independence():
    spec = ClusterSpec(4, -1.0, 0.9, 1.2)
    t = Temperature(0.35)
    base = thermal_pair_state(spec, t, sites=(0, 1)).rho
    for sites in ((1, 2), (0, 3), (2, 3), (1, 0)):
        other = thermal_pair_state(spec, t, sites=sites).rho
        assert np.max(np.abs(other - base)) < 1e-12


def test_site_argument_validation():
    spec = ClusterSpec(4, 1.0)
    t = Temperature(1.0)
    with pytest.raises(DomainError):
        thermal_pair_state(spec, t, sites=(0, 0))
    with pytest.raises(DomainError):
        thermal_pair_state(spec, t, sites=(0, 4))
    with pytest.raises(DomainError):
        thermal_pair_state(spec, t, sites=(-1, 2))


def test_field_sign_symmetry():
    # flipping B flips all spins; the concurrence cannot notice
    spec_up = ClusterSpec(5, 1.0, 0.8, 1.3)
    spec_dn = ClusterSpec(5, 1.0, 0.8, -1.3)
    for t in (0.0, 0.2, 1.0):
        c_up = oracle_concurrence(spec_up, Temperature(t))
        c_dn = oracle_concurrence(spec_dn, Temperature(t))
        assert c_up == pytest.approx(c_dn, abs=1e-10)


def test_capacity_cap():
    with pytest.raises(CapacityError):
        sector_basis(ORACLE_N_MAX + 1, 1)
    with pytest.raises(CapacityError):
        full_spectrum(ClusterSpec(ORACLE_N_MAX + 1, 1.0))
    with pytest.raises(CapacityError):
        random_points(ORACLE_N_MAX + 1, 5, 0)


def test_engine_agreement_at_fixed_points():
    points = [
        (3, 1.0, 5.0, 0.0, 0.0),
        (4, -1.0, -2.0, 0.5, 0.2),
        (6, 1.0, 0.0, 1.1, 0.1),
        (7, -1.0, -1.0, 0.0, 0.01),
        (8, 1.0, 1.7, 2.3, 1.0),
    ]
    for n, j, delta, b, t in points:
        spec = ClusterSpec(n, j, delta, b)
        c_engine = thermal_entanglement(spec, Temperature(t)).concurrence
        c_oracle = oracle_concurrence(spec, Temperature(t))
        assert c_engine == pytest.approx(c_oracle, abs=1e-10)


def test_random_points_reproducible():
    a = random_points(8, 20, seed=5)
    b = random_points(8, 20, seed=5)
    assert [(s.n, s.j, s.delta, s.b, t.value) for s, t in a] == [
        (s.n, s.j, s.delta, s.b, t.value) for s, t in b
    ]
    for spec, t in a:
        assert 2 <= spec.n <= 8
        assert spec.j in (1.0, -1.0)
        assert -3.0 <= spec.delta <= 3.0
        assert 0.0 <= spec.b <= 3.0
        assert t.value in (0.0, 0.1, 0.5, 1.0, 2.0, 10.0)


def test_comparison_report_small_run():
    report = comparison_report(n_max=6, count=30, seed=3)
    assert len(report.rows) == 30
    assert report.passed
    assert report.max_abs_diff < 1e-10
    assert report.max_spectrum_dev < 1e-10


def test_reduced_state_validation():
    with pytest.raises(NumericalError):
        ReducedPairState(np.eye(3))
    bad = np.eye(4) / 4.0
    bad[0, 1] = 1e-6
    with pytest.raises(NumericalError):
        ReducedPairState(bad)
    with pytest.raises(NumericalError):
        ReducedPairState(np.eye(4) / 2.0)
    with pytest.raises(NumericalError):
        ReducedPairState(np.diag([1.5, -0.5, 0.0, 0.0]))
