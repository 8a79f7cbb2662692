"""Tests for the reduced series, its analytic ceiling, and the shell sums.

The brute-force oracle below evaluates the double sum over a rectangular
(k, q) window directly, with no shell bookkeeping, and was used to freeze
the reference values before the adaptive implementation existed.
"""

import math

import pytest

from openosc import (
    ChemicalPotentialError,
    DomainError,
    GasParams,
    StatisticsKind,
    Thermo,
    TruncationPolicy,
    equilibrium_effective_energy,
    equilibrium_particle_number,
    mean_particle_number,
    quartic_reciprocal_tail,
    reduced_series,
    reduced_series_bound,
    verify_series_estimates,
)
from openosc.summation import geom_tail0, geom_tail1, geom_tail2

RG = GasParams.reduced()
BOSE = StatisticsKind.BOSE
FERMI = StatisticsKind.FERMI


def brute_reduced_series(mu, kind, k_max=30, q_max=800):
    """Rectangular double sum over (k, q); no shells, no reindexing."""
    sign = -1.0 if kind is BOSE else 1.0
    c = math.exp(0.5 - mu)
    total = 0.0
    for k in range(-k_max, k_max + 1):
        for q in range(q_max + 1):
            r = k * k + q
            if r > 700:
                break
            total += r / (c * math.exp(r) + sign)
    return total


@pytest.mark.parametrize("m", [0, 1, 2, 5, 17])
@pytest.mark.parametrize("x", [math.exp(-1.0), 0.3])
def test_geometric_tail_closed_forms(m, x):
    for p, tail in ((0, geom_tail0), (1, geom_tail1), (2, geom_tail2)):
        direct = 0.0
        r = m
        while True:
            term = r**p * x**r
            direct += term
            r += 1
            if term < 1e-22 and r > m + 5:
                break
        assert tail(m, x) == pytest.approx(direct, rel=1e-12, abs=1e-15)


# Values frozen from brute_reduced_series at generous cutoffs.
FROZEN_S = {
    (BOSE, -2.0): 0.25259860934315087,
    (BOSE, -1.0): 0.7055620645580514,
    (BOSE, 0.0): 2.0863336313469034,
    (BOSE, 0.4): 3.3694515151814506,
    (FERMI, -1.0): 0.6508830047783457,
    (FERMI, 0.0): 1.668193460705131,
    (FERMI, 1.0): 3.9891701495294107,
    (FERMI, 2.0): 8.615222646393846,
}


@pytest.mark.parametrize("kind,mu", sorted(FROZEN_S, key=repr))
def test_reduced_series_matches_frozen_oracle(kind, mu):
    result = reduced_series(mu, kind)
    assert result.converged
    assert abs(result.value - FROZEN_S[(kind, mu)]) <= result.tail_bound + 1e-11


@pytest.mark.parametrize("kind,mu", sorted(FROZEN_S, key=repr))
def test_reduced_series_matches_live_rectangular_sum(kind, mu):
    result = reduced_series(mu, kind)
    brute = brute_reduced_series(mu, kind)
    assert result.value == pytest.approx(brute, rel=1e-11, abs=1e-12)


@pytest.mark.parametrize("kind,mu", sorted(FROZEN_S, key=repr))
def test_reduced_series_stays_below_its_ceiling(kind, mu):
    result = reduced_series(mu, kind)
    assert result.value + result.tail_bound <= reduced_series_bound(mu)


def test_reduced_series_bose_domain():
    with pytest.raises(ChemicalPotentialError):
        reduced_series(0.5, BOSE)
    with pytest.raises(ChemicalPotentialError):
        reduced_series(1.0, BOSE)
    # Fermions carry no such limit.
    assert reduced_series(3.0, FERMI).converged


def test_reduced_series_reports_shell_terms():
    result = reduced_series(0.0, FERMI)
    # Shell r contributes 2*floor(sqrt(r)) + 1 lattice points.
    assert result.terms_used > result.value
    assert result.terms_used < 5000


def test_reduced_series_non_convergence_is_reported():
    policy = TruncationPolicy(rel_tol=1e-10, abs_tol=1e-30, max_terms=5)
    result = reduced_series(0.0, FERMI, policy)
    assert not result.converged
    assert result.tail_bound > 0.0


def test_reduced_series_monotone_in_mu():
    for kind in (FERMI, BOSE):
        grid = (-2.0, -1.0, 0.0, 0.4) if kind is BOSE else (-1.0, 0.0, 1.0, 2.0)
        values = [reduced_series(mu, kind).value for mu in grid]
        assert all(a < b for a, b in zip(values, values[1:]))


def test_bose_series_dominates_fermi_at_equal_mu():
    for mu in (-2.0, -1.0, 0.0, 0.4):
        assert reduced_series(mu, BOSE).value > reduced_series(mu, FERMI).value


def test_ceiling_value_at_the_bose_edge():
    # exp(0) * (4pi^4/3 + 16pi^6/189 + 8pi^8/315), frozen from a
    # 50-digit evaluation: 452.24479849159915...
    assert reduced_series_bound(0.5) == pytest.approx(452.2447984915991, abs=1e-6)


def test_ceiling_scales_exponentially_in_mu():
    for mu in (-3.0, 0.0, 1.7):
        ratio = reduced_series_bound(mu) / reduced_series_bound(0.0)
        assert ratio == pytest.approx(math.exp(mu), rel=1e-13)


def brute_equilibrium(mu, kind, weight, k_max=40, q_max=760):
    """Rectangular oracle for the physical-units shell sums (reduced gas)."""
    sign = -1.0 if kind is BOSE else 1.0
    total = 0.0
    for k in range(-k_max, k_max + 1):
        for q in range(q_max + 1):
            e = k * k + q + 0.5
            x = e - mu
            if x > 700.0:
                break
            n = 1.0 / (math.exp(x) + sign)
            w = {"energy": e, "effective": e - mu, "count": 1.0}[weight]
            total += w * n
    return total


def test_equilibrium_energy_fermi_reference():
    t = Thermo(1.0, 0.0)
    result = equilibrium_effective_energy(t, RG, FERMI)
    assert result.converged
    # Frozen rectangular value 2.332058401313134.
    assert abs(result.value - 2.332058401313134) <= result.tail_bound + 1e-10
    assert result.value == pytest.approx(brute_equilibrium(0.0, FERMI, "energy"), rel=1e-10)


def test_equilibrium_particle_number_reference():
    t = Thermo(1.0, 0.0)
    result = equilibrium_particle_number(t, RG, FERMI)
    assert abs(result.value - 1.3277298812159957) <= result.tail_bound + 1e-10


def test_equilibrium_bose_branch():
    t = Thermo(1.0, 0.3)
    result = equilibrium_effective_energy(t, RG, BOSE)
    assert result.converged
    assert result.value == pytest.approx(brute_equilibrium(0.3, BOSE, "energy"), rel=1e-9)
    with pytest.raises(ChemicalPotentialError):
        equilibrium_effective_energy(Thermo(1.0, 0.5), RG, BOSE)


def test_equilibrium_shifted_weight_identity():
    """Raw minus mu-shifted energy must equal mu times the particle number."""
    for kind, mu in ((FERMI, 1.6), (BOSE, 0.3)):
        t = Thermo(1.0, mu)
        raw = equilibrium_effective_energy(t, RG, kind)
        shifted = equilibrium_effective_energy(t, RG, kind, mu_shifted=True)
        number = equilibrium_particle_number(t, RG, kind)
        slack = raw.tail_bound + shifted.tail_bound + abs(mu) * number.tail_bound
        assert abs((raw.value - shifted.value) - mu * number.value) <= slack + 1e-9


def test_equilibrium_reduces_to_series_plus_zero_point():
    """In reduced units the raw energy is S(mu) plus half the mean number."""
    for kind, mu in ((FERMI, 0.0), (FERMI, 1.0), (BOSE, -1.0), (BOSE, 0.3)):
        t = Thermo(1.0, mu)
        raw = equilibrium_effective_energy(t, RG, kind)
        s = reduced_series(mu, kind)
        n = equilibrium_particle_number(t, RG, kind)
        gap = abs(raw.value - s.value - 0.5 * n.value)
        assert gap <= raw.tail_bound + s.tail_bound + 0.5 * n.tail_bound + 1e-9


def test_equilibrium_vanishes_at_deep_negative_mu():
    result = equilibrium_effective_energy(Thermo(1.0, -30.0), RG, FERMI)
    assert result.converged
    assert result.value < 1e-11


def test_ladder_and_gas_means_are_distinct_sums():
    # Sanity guard: the one-ladder mean has no translational copies, so it
    # must be strictly below the gas count at the same reservoir.
    ladder = mean_particle_number(Thermo(1.0, 0.0), RG.osc, FERMI)
    gas = equilibrium_particle_number(Thermo(1.0, 0.0), RG, FERMI)
    assert ladder.value < gas.value


def test_quartic_tail_validation():
    with pytest.raises(DomainError):
        quartic_reciprocal_tail(0)
    with pytest.raises(DomainError):
        quartic_reciprocal_tail(-3)


def test_quartic_tail_against_polygamma():
    """The self-summed estimate must sit just above the special-function value."""
    special = pytest.importorskip("scipy.special")
    for a in (1, 2, 5, 10, 100, 400):
        upper = quartic_reciprocal_tail(a)
        exact = float(special.polygamma(3, a)) / 6.0
        assert upper >= exact - 1e-15
        assert upper - exact <= 2e-12


def test_quartic_tail_first_values():
    # sum_{r>=1} r^-4 = pi^4/90.
    assert quartic_reciprocal_tail(1) == pytest.approx(math.pi**4 / 90.0, rel=1e-12)
    assert quartic_reciprocal_tail(2) == pytest.approx(
        math.pi**4 / 90.0 - 1.0, rel=1e-10
    )


def test_verify_series_estimates_all_pass():
    report = verify_series_estimates()
    assert report.passed
    names = [c.name for c in report.checks]
    assert names == [
        "zeta-partial-p4",
        "zeta-partial-p6",
        "zeta-partial-p8",
        "polygamma-tail",
        "exp-minorant",
    ]
    for check in report.checks:
        assert check.passed, check


def test_verify_series_estimates_gaps_within_bounds():
    report = verify_series_estimates(zeta_terms=500)
    by_name = {c.name: c for c in report.checks}
    for p in (4, 6, 8):
        check = by_name[f"zeta-partial-p{p}"]
        assert check.observed <= check.bound
        assert check.observed > 0.0


def test_verify_series_estimates_validation():
    with pytest.raises(DomainError):
        verify_series_estimates(zeta_terms=0)
    with pytest.raises(DomainError):
        verify_series_estimates(grid_step=0.0)


def test_truncation_policy_validation():
    with pytest.raises(DomainError):
        TruncationPolicy(rel_tol=0.0)
    with pytest.raises(DomainError):
        TruncationPolicy(abs_tol=-1.0)
    with pytest.raises(DomainError):
        TruncationPolicy(max_terms=0)


def test_truncation_policy_satisfied_rule():
    policy = TruncationPolicy(rel_tol=1e-3, abs_tol=1e-6)
    assert policy.satisfied(10.0, 0.009)
    assert not policy.satisfied(10.0, 0.011)
    assert policy.satisfied(0.0, 1e-7)
