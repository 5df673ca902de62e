import math
from fractions import Fraction

import numpy as np
import pytest

from fermichip import constants as C
from fermichip import rfdress as rf
from fermichip import trapfield as tf


def benchmark_ip():
    rb = C.builtin_species()["Rb87"]
    b0 = 1.214 * C.GAUSS
    b_prime = 2 * math.pi * 1230.0 * math.sqrt(rb.mass * b0 / C.MU_B)
    b_pp = (2 * math.pi * 13.7) ** 2 * rb.mass / C.MU_B
    return tf.AnalyticIPField(b0, b_prime, b_pp)


def rf_field(khz, amplitude_mg=200.0, pol=(0.0, 0.0, 1.0)):
    return rf.RFField(amplitude_mg * 1e-3 * C.GAUSS, 2 * math.pi * khz * 1e3, pol)


KHZ = C.H_PLANCK * 1e3  # J per kHz


# -- detuning and Rabi ------------------------------------------------------------------

def test_rb_detuning_below_resonance(rb22):
    model = benchmark_ip()
    delta, _ = rf.detuning_and_rabi(model, rf_field(800.0), rb22, np.zeros(3))
    assert delta / KHZ == pytest.approx(-49.57, abs=0.05)
    assert delta / KHZ == pytest.approx(-50.0, abs=1.0)


def test_k_detuning_above_resonance(k92):
    model = benchmark_ip()
    delta, _ = rf.detuning_and_rabi(model, rf_field(860.0), k92, np.zeros(3))
    assert delta / KHZ == pytest.approx(482.4, abs=0.1)


def test_rabi_coupling_value(rb22):
    model = benchmark_ip()
    _, rabi = rf.detuning_and_rabi(model, rf_field(860.0), rb22, np.zeros(3))
    assert rabi / KHZ == pytest.approx(69.98, abs=0.02)
    assert rabi / KHZ == pytest.approx(70.0, abs=0.5)


def test_rabi_projection_depends_on_polarization(rb22):
    model = benchmark_ip()
    # DC field at the center points along y: polarization along y couples nothing
    _, rabi_parallel = rf.detuning_and_rabi(
        model, rf_field(860.0, pol=(0.0, 1.0, 0.0)), rb22, np.zeros(3)
    )
    assert rabi_parallel / KHZ == pytest.approx(0.0, abs=1e-9)
    # at 45 degrees the perpendicular share is sin(45)
    _, rabi_45 = rf.detuning_and_rabi(
        model, rf_field(860.0, pol=(0.0, 1.0, 1.0)), rb22, np.zeros(3)
    )
    assert rabi_45 / KHZ == pytest.approx(69.98 / math.sqrt(2.0), abs=0.05)


def test_near_field_amplitude_law():
    field = rf.RFField(
        2e-7,
        2 * math.pi * 1e6,
        (0, 0, 1),
        source_line=((0.0, 0.0, 0.0), (0.0, 1.0, 0.0)),
        reference_distance=80e-6,
    )
    assert field.amplitude_at(np.array([0.0, 0.0, 80e-6])) == pytest.approx(2e-7)
    assert field.amplitude_at(np.array([0.0, 0.0, 160e-6])) == pytest.approx(1e-7)
    assert field.amplitude_at(np.array([160e-6, 0.03, 0.0])) == pytest.approx(1e-7)


# -- adiabatic connection -----------------------------------------------------------------

def test_adiabatic_branch_stretched_states(k92, rb22):
    omega = 70.0 * KHZ
    assert rf.adiabatic_branch(rb22, -50.0 * KHZ, omega) == Fraction(2)
    assert rf.adiabatic_branch(rb22, +50.0 * KHZ, omega) == Fraction(-2)
    assert rf.adiabatic_branch(k92, +482.0 * KHZ, omega) == Fraction(-9, 2)
    assert rf.adiabatic_branch(k92, -40.0 * KHZ, omega) == Fraction(9, 2)


def test_adiabatic_branch_interior_state(registry):
    state = registry.state("Rb87", 2, 1)
    assert rf.adiabatic_branch(state, -10.0 * KHZ, 30.0 * KHZ) == Fraction(1)
    assert rf.adiabatic_branch(state, +10.0 * KHZ, 30.0 * KHZ) == Fraction(-1)


# -- dressed potentials --------------------------------------------------------------------

def test_zero_rabi_limit_kinked_at_resonance(rb22):
    model = benchmark_ip()
    field = rf.RFField(0.0, 2 * math.pi * 860e3, (0, 0, 1))
    scan = rf.dressed_potential(model, field, rb22, np.zeros(3), (1, 0, 0), 5e-6,
                                m_f_prime=Fraction(2))
    assert np.allclose(scan.u_eff, 2.0 * np.abs(scan.delta), rtol=1e-12)
    # |delta| has a genuine kink: the derivative jumps sign across resonance
    assert scan.delta.max() > 0 > scan.delta.min()


def test_rb_double_well_and_k_single_well(k92, rb22):
    model = benchmark_ip()
    ramp_on = 2 * math.pi * 800e3
    scan_rb = rf.dressed_potential(
        model, rf_field(860.0), rb22, np.zeros(3), (1, 0, 0), 10e-6,
        connect_at_omega=ramp_on,
    )
    assert scan_rb.m_f_prime == Fraction(2)
    wells = rf.characterize_wells(scan_rb)
    assert wells.topology == "double"
    assert wells.separation == pytest.approx(3.59e-6, rel=0.01)
    assert wells.barrier_height / KHZ == pytest.approx(1.55, abs=0.05)
    for repulsion in wells.level_repulsion:
        assert repulsion / KHZ == pytest.approx(70.0, abs=1.0)
    # symmetric trap: wells mirror each other
    assert wells.well_positions[0] == pytest.approx(-wells.well_positions[1], rel=1e-6)

    scan_k = rf.dressed_potential(
        model, rf_field(860.0), k92, np.zeros(3), (1, 0, 0), 10e-6,
        connect_at_omega=ramp_on,
    )
    assert scan_k.m_f_prime == Fraction(-9, 2)
    wells_k = rf.characterize_wells(scan_k)
    assert wells_k.topology == "single"
    assert abs(wells_k.well_positions[0]) < 0.05e-6


def test_k_single_well_curvature_nearly_undressed(k92):
    model = benchmark_ip()
    scan = rf.dressed_potential(
        model, rf_field(860.0), k92, np.zeros(3), (1, 0, 0), 2e-6,
        connect_at_omega=2 * math.pi * 800e3,
    )
    s, u = scan.positions, scan.u_eff
    h = s[1] - s[0]
    i0 = int(np.argmin(np.abs(s)))
    curv_dressed = (u[i0 + 1] - 2 * u[i0] + u[i0 - 1]) / h**2
    pts = np.stack([s, np.zeros_like(s), np.zeros_like(s)], axis=-1)
    u_bare = C.magnetic_moment(k92) * np.linalg.norm(model.field(pts), axis=-1)
    curv_bare = (u_bare[i0 + 1] - 2 * u_bare[i0] + u_bare[i0 - 1]) / h**2
    assert curv_dressed == pytest.approx(curv_bare, rel=0.05)


def test_below_resonance_single_well(rb22):
    model = benchmark_ip()
    scan = rf.dressed_potential(model, rf_field(800.0), rb22, np.zeros(3), (1, 0, 0), 3e-6)
    assert scan.m_f_prime == Fraction(2)
    wells = rf.characterize_wells(scan)
    assert wells.topology == "single"
    assert abs(wells.well_positions[0]) < 0.05e-6


def test_scan_invariant_enforced(rb22):
    model = benchmark_ip()
    scan = rf.dressed_potential(model, rf_field(860.0), rb22, np.zeros(3), (1, 0, 0), 5e-6)
    with pytest.raises(ValueError):
        rf.DressedPotentialScan(
            state=scan.state,
            m_f_prime=scan.m_f_prime,
            positions=scan.positions,
            u_eff=scan.u_eff * 1.001,
            delta=scan.delta,
            rabi=scan.rabi,
            axis=scan.axis,
            center=scan.center,
        )


def test_rwa_warning_and_violation(rb22):
    model = benchmark_ip()
    with pytest.warns(rf.RWAWarning):
        rf.dressed_potential(
            model,
            rf.RFField(0.5 * C.GAUSS, 2 * math.pi * 860e3, (0, 0, 1)),
            rb22,
            np.zeros(3),
            (1, 0, 0),
            2e-6,
        )
    with pytest.raises(rf.RWAViolationError):
        rf.dressed_potential(
            model,
            rf.RFField(1.5 * C.GAUSS, 2 * math.pi * 860e3, (0, 0, 1)),
            rb22,
            np.zeros(3),
            (1, 0, 0),
            2e-6,
        )


def test_level_ordering_and_resonant_gap(rb22):
    model = benchmark_ip()
    field = rf_field(860.0)
    scans = {
        m: rf.dressed_potential(
            model, field, rb22, np.zeros(3), (1, 0, 0), 5e-6, m_f_prime=Fraction(m)
        )
        for m in range(-2, 3)
    }
    sample = [scans[m].u_eff[1234] for m in range(-2, 3)]
    assert all(a < b for a, b in zip(sample, sample[1:]))
    # at the resonance point the adjacent-level gap equals the local Rabi energy
    scan = scans[1]
    i_res = int(np.argmin(np.abs(scan.delta)))
    gap = scans[2].u_eff[i_res] - scans[1].u_eff[i_res]
    assert gap == pytest.approx(float(scan.rabi[i_res]), rel=1e-3)


def test_avoided_crossing_floor(rb22):
    model = benchmark_ip()
    scan = rf.dressed_potential(
        model, rf_field(860.0), rb22, np.zeros(3), (1, 0, 0), 10e-6,
        m_f_prime=Fraction(2),
    )
    gap = np.hypot(scan.delta, scan.rabi)  # adjacent-level spacing
    assert gap.min() >= scan.rabi.min() > 0


def test_ambiguous_topology_raises(rb22):
    s = np.linspace(-5e-6, 5e-6, 2001)
    rabi = np.full_like(s, 10.0 * KHZ)
    delta = 50.0 * KHZ * np.sin(s / 1e-6)  # several resonance crossings
    scan = rf.DressedPotentialScan(
        state=rb22,
        m_f_prime=Fraction(2),
        positions=s,
        u_eff=2.0 * np.hypot(delta, rabi),
        delta=delta,
        rabi=rabi,
        axis=np.array([1.0, 0.0, 0.0]),
        center=np.zeros(3),
    )
    with pytest.raises(rf.TopologyError):
        rf.characterize_wells(scan)


# -- evaporation knife ------------------------------------------------------------------------

def test_knife_depth_round_trip(rb22):
    b0 = 5.7 * C.GAUSS
    target = 8.0 * C.K_B * 300e-6  # eta_Rb = 8 at 300 uK
    omega = (target / float(rb22.m_F) + float(rb22.g_F) * C.MU_B * b0) / C.HBAR
    assert rf.rf_knife_depth(rb22, b0, omega) == pytest.approx(target, rel=1e-12)


def test_knife_zero_depth_at_bottom(rb22):
    b0 = 2.0 * C.GAUSS
    omega_bottom = float(rb22.g_F) * C.MU_B * b0 / C.HBAR
    assert rf.rf_knife_depth(rb22, b0, omega_bottom) == pytest.approx(0.0, abs=1e-40)


def test_knife_engaged_at_sweep_end(rb22):
    # sweep endpoint 3.65 MHz with B0 = 2.6 G: bottom splitting is 1.82 MHz
    b0 = 2.6 * C.GAUSS
    bottom_hz = float(rb22.g_F) * C.MU_B * b0 / C.H_PLANCK
    assert bottom_hz == pytest.approx(1.82e6, rel=1e-3)
    depth = rf.rf_knife_depth(rb22, b0, 2 * math.pi * 3.65e6)
    assert depth > 0


def test_knife_not_engaged_raises(rb22):
    b0 = 2.6 * C.GAUSS
    with pytest.raises(rf.KnifeNotEngagedError):
        rf.rf_knife_depth(rb22, b0, 2 * math.pi * 1.0e6)


# -- eta relation -------------------------------------------------------------------------------

def test_eta_coefficients_exact(k92, rb22):
    slope, field_coeff = rf.eta_relation_coefficients(k92, rb22)
    assert slope == Fraction(9, 4)
    assert field_coeff == Fraction(5, 4)
    assert isinstance(slope, Fraction) and isinstance(field_coeff, Fraction)


def test_eta_always_above_nine_quarters(k92, rb22):
    for temp in (1e-7, 1e-6, 1e-4):
        eta_k = rf.eta_relation(k92, rb22, 8.0, 5.7 * C.GAUSS, temp)
        assert eta_k > 2.25 * 8.0


def test_eta_zero_field_limit(k92, rb22):
    assert rf.eta_relation(k92, rb22, 8.0, 0.0, 1e-6) == pytest.approx(18.0, rel=1e-14)


def test_eta_pure_dfg_floor(registry, rb22):
    states = [registry.state("K40", "9/2", Fraction(m, 2)) for m in range(-9, 10, 2)]
    eta_min, argmin = rf.eta_min_over_sublevels(states, rb22, 0.0, 5.7 * C.GAUSS, 220e-9)
    assert argmin.m_F == Fraction(1, 2)
    assert eta_min == pytest.approx(241.7, abs=0.2)
    assert eta_min > 220.0


def test_eta_monotone_decreasing_in_temperature(k92, rb22):
    temps = np.geomspace(5e-8, 5e-4, 12)
    etas = [rf.eta_relation(k92, rb22, 8.0, 5.7 * C.GAUSS, t) for t in temps]
    assert all(a > b for a, b in zip(etas, etas[1:]))


def test_k_only_depth(k92, rb22):
    depth = rf.k_only_evaporation_depth(k92, rb22, 5.7 * C.GAUSS)
    assert depth / C.K_B * 1e6 == pytest.approx(478.6, abs=0.5)
    assert depth / C.K_B * 1e6 == pytest.approx(480.0, abs=5.0)
    assert rf.k_only_evaporation_depth(k92, rb22, 0.0) == 0.0


def test_k_only_depth_no_selectivity_if_equal_g(registry, rb22):
    fake_k = registry.state("K40", "9/2", "9/2", g_F="1/2")
    assert rf.k_only_evaporation_depth(fake_k, rb22, 5.7 * C.GAUSS) == 0.0
