"""Tests for the exhaustive Fock-space oracle.

The closed forms under test are the elementary single-level results
n = 1/(e^x + 1) and n = x-geometric means, evaluated directly here so the
enumeration has an external standard to meet.
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from openosc import (
    ChemicalPotentialError,
    Configuration,
    DomainError,
    EnumerationLimitError,
    FermionClass,
    ModeSet,
    OscillatorParams,
    StatisticsKind,
    Thermo,
    classify_fermion_state,
    enumerate_configurations,
    gc_average_occupation,
    ground_state_search,
    occupation_number,
)

BOSE = StatisticsKind.BOSE
FERMI = StatisticsKind.FERMI
REDUCED = OscillatorParams()


def ladder(q_max):
    return ModeSet.from_oscillator(REDUCED, q_max)


def test_mode_set_from_oscillator():
    modes = ladder(4)
    assert modes.energies == (0.5, 1.5, 2.5, 3.5, 4.5)
    assert len(modes) == 5


def test_mode_set_validation():
    with pytest.raises(DomainError):
        ModeSet(())
    with pytest.raises(DomainError):
        ModeSet((1.0, math.inf))
    with pytest.raises(DomainError):
        ModeSet.from_oscillator(REDUCED, -1)


def test_configuration_energy():
    cfg = Configuration((2, 0, 1))
    assert cfg.total == 3
    assert cfg.energy(ModeSet((0.5, 1.5, 2.5))) == pytest.approx(3.5)


def test_enumeration_counts():
    assert len(list(enumerate_configurations(ladder(1), BOSE, cutoff=2))) == 9
    assert len(list(enumerate_configurations(ladder(1), FERMI))) == 4
    assert len(list(enumerate_configurations(ladder(0), BOSE, cutoff=0))) == 1


def test_enumeration_is_lexicographic():
    configs = [c.counts for c in enumerate_configurations(ladder(1), BOSE, cutoff=2)]
    assert configs[:4] == [(0, 0), (0, 1), (0, 2), (1, 0)]
    assert configs == sorted(configs)


def test_fermi_cutoff_is_ignored():
    # Exclusion wins over any requested per-mode ceiling.
    configs = list(enumerate_configurations(ladder(1), FERMI, cutoff=9))
    assert max(max(c.counts) for c in configs) == 1


def test_enumeration_cap_refused_up_front():
    gen = enumerate_configurations(ladder(23), FERMI)
    with pytest.raises(EnumerationLimitError):
        next(gen)


def test_enumeration_cutoff_validation():
    with pytest.raises(DomainError):
        list(enumerate_configurations(ladder(1), BOSE, cutoff=-1))


@pytest.mark.parametrize("mu", [-1.0, 0.0, 1.6])
def test_fermi_averages_match_the_logistic_form(mu):
    t = Thermo(1.0, mu)
    modes = ladder(4)
    means = gc_average_occupation(modes, t, FERMI)
    for e, n in zip(modes.energies, means):
        assert abs(n - occupation_number(e, t, FERMI)) < 1e-12


def test_fermi_average_half_filling_at_mu():
    means = gc_average_occupation(ModeSet((0.7,)), Thermo(1.0, 0.7), FERMI)
    assert means[0] == pytest.approx(0.5, abs=1e-15)


def test_fermi_average_cold_limit():
    # At beta = 600 the closest gap beta*|e - mu| is 60, so the two bound
    # modes saturate and the rest empty out to machine precision.
    t = Thermo(600.0, 1.6)
    means = gc_average_occupation(ladder(4), t, FERMI)
    assert means[0] == pytest.approx(1.0, abs=1e-12)
    assert means[1] == pytest.approx(1.0, abs=1e-12)
    assert means[2] < 1e-12


@pytest.mark.parametrize("x", [0.5, math.exp(-0.5), math.exp(-2.0)])
def test_bose_single_mode_truncated_average(x):
    # One mode with Boltzmann ratio x, truncated at 60 particles, against
    # the closed geometric mean x/(1 - x).
    energy = -math.log(x)
    t = Thermo(1.0, 0.0)
    means = gc_average_occupation(ModeSet((energy,)), t, BOSE, cutoff=60)
    closed = 1.0 / math.expm1(energy)
    assert abs(means[0] - closed) < 1e-10


def test_bose_truncation_error_shrinks_with_cutoff():
    energy = 0.5
    t = Thermo(1.0, 0.0)
    closed = 1.0 / math.expm1(energy)
    errors = []
    for cutoff in (5, 10, 20, 40, 60):
        mean = gc_average_occupation(ModeSet((energy,)), t, BOSE, cutoff=cutoff)[0]
        errors.append(abs(mean - closed))
    assert all(a > b for a, b in zip(errors, errors[1:]))


def test_bose_truncation_error_scale():
    # The finite cap at M removes a geometric tail; the observed error must
    # sit below (M+2) x^(M+1) / (1-x)^2 which dominates that tail.
    t = Thermo(1.0, 0.0)
    for energy, cutoff in ((0.5, 12), (0.5, 25), (2.0, 8)):
        x = math.exp(-energy)
        mean = gc_average_occupation(ModeSet((energy,)), t, BOSE, cutoff=cutoff)[0]
        closed = 1.0 / math.expm1(energy)
        scale = (cutoff + 2) * x ** (cutoff + 1) / (1.0 - x) ** 2
        assert abs(mean - closed) <= scale


def test_bose_multi_mode_average():
    # Independent modes factorise, so each per-mode mean carries only its
    # own single-mode truncation error (about 3e-12 at cutoff 60).
    t = Thermo(1.0, 0.0)
    modes = ModeSet((0.5, 1.5, 2.5))
    means = gc_average_occupation(modes, t, BOSE, cutoff=60)
    for e, n in zip(modes.energies, means):
        assert n == pytest.approx(1.0 / math.expm1(e), abs=1e-10)


def test_bose_average_rejects_mode_at_or_below_mu():
    with pytest.raises(ChemicalPotentialError) as err:
        gc_average_occupation(ladder(2), Thermo(1.0, 0.5), BOSE, cutoff=10)
    assert "[0]" in str(err.value)


def test_average_handles_deeply_negative_exponents():
    # mu far above every level: weights span e^{+large}; the factored
    # offset must keep the sums finite.
    means = gc_average_occupation(ladder(3), Thermo(10.0, 50.0), FERMI)
    assert all(n == pytest.approx(1.0, abs=1e-12) for n in means)


def test_ground_state_fermi_fills_bound_levels():
    result = ground_state_search(ladder(4), 1.6, FERMI)
    assert result.bounded
    assert result.configuration.counts == (1, 1, 0, 0, 0)
    assert result.energy == pytest.approx(-1.2, abs=1e-12)


def test_ground_state_bose_unbounded_below():
    result = ground_state_search(ladder(4), 1.6, BOSE, cutoff=6)
    assert not result.bounded
    assert result.energy is None
    assert result.configuration is None


def test_ground_state_bose_vacuum():
    result = ground_state_search(ladder(4), 0.3, BOSE, cutoff=6)
    assert result.bounded
    assert result.energy == 0.0
    assert result.configuration.counts == (0, 0, 0, 0, 0)


def test_ground_state_boundary_mode_stays_empty():
    # e - mu = 0 on the first mode: occupying it is free but not better,
    # and the first minimiser in enumeration order is the vacuum.
    result = ground_state_search(ModeSet((0.5, 1.5)), 0.5, BOSE, cutoff=4)
    assert result.bounded
    assert result.energy == 0.0
    assert result.configuration.counts == (0, 0)


@given(
    q_max=st.integers(1, 6),
    mu_times_20=st.integers(-40, 130),
)
@settings(max_examples=80)
def test_fermi_ground_state_is_the_bound_set(q_max, mu_times_20):
    """Exhaustive search must occupy exactly the levels classified BOUND."""
    mu = mu_times_20 / 20.0 + 0.01  # offset keeps mu off every level edge
    result = ground_state_search(ladder(q_max), mu, FERMI)
    assert result.bounded
    for q, n in enumerate(result.configuration.counts):
        bound = classify_fermion_state(q, mu, REDUCED) is FermionClass.BOUND
        assert (n == 1) == bound
