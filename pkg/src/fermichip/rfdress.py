"""RF-dressed adiabatic potentials (rotating-wave approximation) and
species-selective evaporation relations for two-species mixtures.

Dressed potentials: U_eff(r) = m_F' sqrt(delta(r)^2 + Omega(r)^2) with

    delta(r) = hbar w_RF - g_F mu_B B_DC(r)      (local detuning)
    Omega(r) = g_F mu_B B_RFperp(r) / 2          (local Rabi coupling)

delta is negative where the RF runs below the local Zeeman splitting; the
worked single/double-well scenarios and the evaporation-knife algebra both
use this sign.  B_RFperp is the RF amplitude component perpendicular to the
local static field direction.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .constants import HBAR, K_B, MU_B, SpinState

__all__ = [
    "RFField",
    "DressedPotentialScan",
    "DoubleWellReport",
    "RWAWarning",
    "RWAViolationError",
    "KnifeNotEngagedError",
    "TopologyError",
    "detuning_and_rabi",
    "adiabatic_branch",
    "dressed_potential",
    "characterize_wells",
    "rf_knife_depth",
    "eta_relation",
    "eta_relation_coefficients",
    "eta_min_over_sublevels",
    "k_only_evaporation_depth",
]


class RWAWarning(UserWarning):
    """RF amplitude large enough that the rotating-wave form is suspect."""


class RWAViolationError(ValueError):
    """RF amplitude comparable to the static field; RWA form invalid."""


class KnifeNotEngagedError(ValueError):
    """RF frequency below the trap bottom: no depth limit for this species."""


class TopologyError(RuntimeError):
    """Extremum counts inconsistent with a single- or double-well potential."""


@dataclass
class RFField:
    """RF dressing field: amplitude (T), angular frequency (rad/s), polarization axis.

    With source_line=((point), (direction)) and reference_distance set, the
    amplitude follows the near-field 1/d law of a chip antenna wire; otherwise
    it is uniform.
    """

    amplitude: float
    omega: float
    polarization: tuple[float, float, float]
    source_line: tuple[tuple, tuple] | None = None
    reference_distance: float | None = None

    def __post_init__(self):
        if self.amplitude < 0:
            raise ValueError("RF amplitude must be nonnegative")
        p = np.asarray(self.polarization, dtype=float)
        self.polarization = tuple(p / np.linalg.norm(p))

    def amplitude_at(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        if self.source_line is None:
            return np.broadcast_to(self.amplitude, r.shape[:-1]).copy()
        point, direction = self.source_line
        point = np.asarray(point, dtype=float)
        u = np.asarray(direction, dtype=float)
        u = u / np.linalg.norm(u)
        rel = r - point
        perp = rel - (rel @ u)[..., None] * u
        d = np.linalg.norm(perp, axis=-1)
        return self.amplitude * self.reference_distance / d


def detuning_and_rabi(model, rf: RFField, state: SpinState, r):
    """Local (delta, Omega) in J at position(s) r, shaped (..., 3)."""
    r = np.asarray(r, dtype=float)
    b_vec = model.field(r)
    b_dc = np.linalg.norm(b_vec, axis=-1)
    if np.any(b_dc <= 0):
        raise ValueError("static field vanishes at a requested point")
    g = abs(float(state.g_F))
    delta = HBAR * rf.omega - g * MU_B * b_dc
    b_hat = b_vec / b_dc[..., None]
    pol = np.asarray(rf.polarization, dtype=float)
    sin_theta = np.linalg.norm(np.cross(np.broadcast_to(pol, b_hat.shape), b_hat), axis=-1)
    b_perp = rf.amplitude_at(r) * sin_theta
    rabi = g * MU_B * b_perp / 2.0
    return delta, rabi


def _spin_matrices(f: Fraction):
    d = int(2 * f) + 1
    m = np.array([float(-f + k) for k in range(d)])
    sz = np.diag(m)
    fp = np.zeros((d, d))
    for k in range(d - 1):
        fp[k + 1, k] = math.sqrt(float(f) * (float(f) + 1.0) - m[k] * (m[k] + 1.0))
    sx = 0.5 * (fp + fp.T)
    return m, sz, sx


def adiabatic_branch(state: SpinState, delta0: float, rabi0: float, steps: int = 60) -> Fraction:
    """Dressed branch m_F' that the populated bare state joins as the RF
    amplitude ramps up from zero, found by eigenvector continuity.

    For delta(0) < 0 a stretched m_F = +F state connects to m_F' = +F; for
    delta(0) > 0 it connects to m_F' = -F.
    """
    f = state.F
    m, sz, sx = _spin_matrices(f)
    idx = int(np.argmin(np.abs(m - float(state.m_F))))
    vec = np.zeros(len(m))
    vec[idx] = 1.0
    if rabi0 == 0:
        branch = -float(state.m_F) * math.copysign(1.0, delta0) if delta0 != 0 else float(state.m_F)
        return Fraction(branch).limit_denominator(2)
    for omega in np.linspace(rabi0 / steps, rabi0, steps):
        h = -delta0 * sz + omega * sx
        vals, vecs = np.linalg.eigh(h)
        idx = int(np.argmax(np.abs(vecs.T @ vec)))
        vec = vecs[:, idx]
    scale = math.hypot(delta0, rabi0)
    branch = vals[idx] / scale
    return Fraction(round(2.0 * branch), 2)


@dataclass
class DressedPotentialScan:
    """Adiabatic potential sampled along a line through the trap."""

    state: SpinState
    m_f_prime: Fraction
    positions: np.ndarray      # signed offsets s along the axis, m
    u_eff: np.ndarray          # J
    delta: np.ndarray          # J
    rabi: np.ndarray           # J
    axis: np.ndarray
    center: np.ndarray
    connected: bool = True     # m_f_prime came from the adiabatic-connection rule

    def __post_init__(self):
        expect = float(self.m_f_prime) * np.hypot(self.delta, self.rabi)
        if not np.allclose(self.u_eff, expect, rtol=1e-10, atol=0.0):
            raise ValueError("scan inconsistent: U_eff != m_F' sqrt(delta^2 + Omega^2)")


def dressed_potential(
    model,
    rf: RFField,
    state: SpinState,
    center,
    axis=(1.0, 0.0, 0.0),
    half_range: float = 10e-6,
    npoints: int = 4096,
    m_f_prime: Fraction | None = None,
    connect_at_omega: float | None = None,
) -> DressedPotentialScan:
    """Sample the RWA dressed potential along `axis` through `center`.

    The populated branch is chosen by adiabatic connection from the bare m_F
    state unless m_f_prime is given.  When the RF amplitude was ramped on at a
    different frequency than the one being scanned (amplitude ramp followed by
    a frequency sweep), pass that ramp frequency as connect_at_omega: the
    branch label is set by the detuning sign at ramp-on and survives the
    sweep.  Raises RWAViolationError when B_RF >= B_DC anywhere on the scan
    and warns above 0.3 B_DC.
    """
    center = np.asarray(center, dtype=float)
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    s = np.linspace(-half_range, half_range, npoints)
    pts = center[None, :] + s[:, None] * axis[None, :]
    delta, rabi = detuning_and_rabi(model, rf, state, pts)

    b_dc_min = float(np.min(np.linalg.norm(model.field(pts), axis=-1)))
    amp = float(np.max(rf.amplitude_at(pts)))
    if amp >= b_dc_min:
        raise RWAViolationError(
            f"B_RF = {amp:.3e} T >= min B_DC = {b_dc_min:.3e} T on the scan"
        )
    if amp >= 0.3 * b_dc_min:
        warnings.warn(
            f"B_RF = {amp:.3e} T is above 0.3 min B_DC = {0.3*b_dc_min:.3e} T; "
            "rotating-wave potentials become inaccurate",
            RWAWarning,
        )

    connected = m_f_prime is None
    if m_f_prime is None:
        i0 = int(np.argmin(np.abs(s)))
        delta0 = float(delta[i0])
        if connect_at_omega is not None:
            delta0 = float(delta[i0]) + HBAR * (connect_at_omega - rf.omega)
        m_f_prime = adiabatic_branch(state, delta0, float(rabi[i0]))
    u_eff = float(m_f_prime) * np.hypot(delta, rabi)
    return DressedPotentialScan(
        state=state,
        m_f_prime=m_f_prime,
        positions=s,
        u_eff=u_eff,
        delta=delta,
        rabi=rabi,
        axis=axis,
        center=center,
        connected=connected,
    )


def _parabolic_refine(s, u, i):
    if i == 0 or i == len(s) - 1:
        return s[i], u[i]
    denom = u[i - 1] - 2.0 * u[i] + u[i + 1]
    if denom == 0:
        return s[i], u[i]
    h = s[1] - s[0]
    shift = 0.5 * (u[i - 1] - u[i + 1]) / denom
    return s[i] + shift * h, u[i] - 0.25 * (u[i - 1] - u[i + 1]) * shift


@dataclass
class DoubleWellReport:
    topology: str                    # "single" | "double"
    well_positions: list[float]      # m
    separation: float                # m (0 for single)
    barrier_height: float            # J above the lower well (0 for single)
    level_repulsion: list[float]     # Omega at the wells, J


def characterize_wells(scan: DressedPotentialScan) -> DoubleWellReport:
    """Locate the extrema of a dressed-potential scan and classify its topology."""
    s, u = scan.positions, scan.u_eff
    du = np.diff(u)
    sign = np.sign(du)
    nz = sign != 0
    minima, maxima = [], []
    last_sign = 0
    for i in range(len(sign)):
        if not nz[i]:
            continue
        if last_sign < 0 and sign[i] > 0:
            minima.append(i)
        elif last_sign > 0 and sign[i] < 0:
            maxima.append(i)
        last_sign = sign[i]
    # interior extrema only; refine positions parabolically
    wells = [_parabolic_refine(s, u, i) for i in minima]
    bumps = [_parabolic_refine(s, u, i) for i in maxima]

    def rabi_at(pos):
        return float(np.interp(pos, s, scan.rabi))

    if len(wells) == 1 and not bumps:
        pos = wells[0][0]
        return DoubleWellReport("single", [pos], 0.0, 0.0, [rabi_at(pos)])
    if len(wells) == 2 and len(bumps) == 1:
        (s1, u1), (s2, u2) = sorted(wells)
        sb, ub = bumps[0]
        if not (s1 < sb < s2):
            raise TopologyError("interior maximum does not separate the two minima")
        barrier = ub - min(u1, u2)
        return DoubleWellReport(
            "double", [s1, s2], abs(s2 - s1), barrier, [rabi_at(s1), rabi_at(s2)]
        )
    raise TopologyError(
        f"ambiguous topology: {len(wells)} minima and {len(bumps)} interior maxima"
    )


def rf_knife_depth(state: SpinState, b0: float, omega_rf: float) -> float:
    """Evaporation-knife trap depth U_td = m_F (hbar w_RF - g_F mu_B B0), J.

    Requires the knife to be engaged (hbar w_RF above the bottom splitting);
    otherwise the RF imposes no depth limit on this species and
    KnifeNotEngagedError is raised.
    """
    g = float(state.g_F)
    bottom = g * MU_B * b0
    if HBAR * omega_rf < bottom:
        raise KnifeNotEngagedError(
            f"hbar w_RF = {HBAR*omega_rf:.3e} J below the trap bottom splitting "
            f"{bottom:.3e} J: no depth limit imposed on {state}"
        )
    return float(state.m_F) * (HBAR * omega_rf - bottom)


def eta_relation_coefficients(state_target: SpinState, state_ref: SpinState):
    """Exact rational (slope, field-term) coefficients of the eta relation.

    eta_target = slope * eta_ref + field_coeff * mu_B B0 / (k_B T);
    slope = m_target/m_ref and field_coeff = m_target (g_ref - g_target).
    For the stretched K40/Rb87 pair these are exactly 9/4 and 5/4.
    """
    slope = state_target.m_F / state_ref.m_F
    field_coeff = state_target.m_F * (state_ref.g_F - state_target.g_F)
    return slope, field_coeff


def eta_relation(
    state_target: SpinState,
    state_ref: SpinState,
    eta_ref: float,
    b0: float,
    temperature: float,
) -> float:
    """Truncation parameter of the target species given eta of the reference
    species sharing the same RF knife, bottom field B0 and temperature."""
    if not temperature > 0:
        raise ValueError("temperature must be positive")
    if b0 < 0:
        raise ValueError("B0 must be nonnegative")
    slope, field_coeff = eta_relation_coefficients(state_target, state_ref)
    return float(slope) * eta_ref + float(field_coeff) * MU_B * b0 / (K_B * temperature)


def eta_min_over_sublevels(
    states: list[SpinState],
    state_ref: SpinState,
    eta_ref: float,
    b0: float,
    temperature: float,
) -> tuple[float, SpinState]:
    """Smallest eta among the given (trappable) sublevels, with its state."""
    trappable = [st for st in states if st.trappable]
    if not trappable:
        raise ValueError("no trappable sublevels supplied")
    etas = [(eta_relation(st, state_ref, eta_ref, b0, temperature), st) for st in trappable]
    return min(etas, key=lambda pair: pair[0])


def k_only_evaporation_depth(state_target: SpinState, state_ref: SpinState, b0: float) -> float:
    """Maximum target-species depth reachable without ejecting the reference
    species: U_td = m_target (g_ref - g_target) mu_B B0 (J), attained with the
    knife parked at the reference species' bottom frequency."""
    _, field_coeff = eta_relation_coefficients(state_target, state_ref)
    return float(field_coeff) * MU_B * b0
