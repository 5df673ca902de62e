"""Thermodynamics of the harmonically trapped ideal Fermi gas.

Grand-canonical relations for a 3D harmonic trap with density of states
g(eps) = eps^2 / (2 (hbar wbar)^3):

    N = (beta hbar wbar)^-3 f_3(Z),      E = 3 k_B T (beta hbar wbar)^-3 f_4(Z),
    E_F = hbar wbar (6 N)^(1/3),         6 f_3(Z) = (beta E_F)^3.

Includes a brute-force discrete-sum oracle over oscillator levels for
finite-size cross-checks.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.optimize import brentq
from scipy.special import expit

from .constants import HBAR, K_B, SpinState
from .polylog import bose_fn, fermi_fn

__all__ = [
    "HarmonicTrap",
    "TrappedGasState",
    "occupation",
    "fermi_energy",
    "atom_number_from_fermi_energy",
    "fugacity_from_reduced_temperature",
    "reduced_temperature_from_fugacity",
    "chemical_potential_approx",
    "total_energy",
    "energy_per_particle",
    "degeneracy_parameter",
    "bose_degeneracy_parameter",
    "thermal_wavelength",
    "capacity_1d",
    "discrete_sum_oracle",
    "write_thermo_scan_csv",
]

# T/T_F at which Z = 1, i.e. (6 f_3(1))^(-1/3); used to pick root brackets.
_T_AT_UNIT_FUGACITY = 0.569667


@dataclass(frozen=True)
class HarmonicTrap:
    """Triaxial harmonic trap, angular frequencies in rad/s."""

    omega_x: float
    omega_y: float
    omega_z: float
    trap_depth: float | None = None  # J, optional

    def __post_init__(self):
        if min(self.omega_x, self.omega_y, self.omega_z) <= 0:
            raise ValueError("all trap frequencies must be positive")

    @classmethod
    def from_frequencies_hz(cls, fx, fy, fz, trap_depth=None):
        tau = 2.0 * math.pi
        return cls(tau * fx, tau * fy, tau * fz, trap_depth)

    @classmethod
    def isotropic(cls, omega, trap_depth=None):
        return cls(omega, omega, omega, trap_depth)

    @property
    def omega_bar(self) -> float:
        """Geometric mean (wx wy wz)^(1/3)."""
        return (self.omega_x * self.omega_y * self.omega_z) ** (1.0 / 3.0)

    @property
    def omegas(self) -> np.ndarray:
        return np.array([self.omega_x, self.omega_y, self.omega_z])


def occupation(epsilon, mu, temperature):
    """Mean occupation 1/(exp(beta(eps-mu)) + 1), bounded in [0, 1]."""
    if not temperature > 0:
        raise ValueError("temperature must be positive")
    beta = 1.0 / (K_B * temperature)
    return expit(-beta * (np.asarray(epsilon, dtype=float) - mu))


def fermi_energy(n_atoms: float, trap: HarmonicTrap) -> float:
    """E_F = hbar wbar (6 N)^(1/3) in J."""
    if n_atoms < 1:
        raise ValueError("need at least one atom")
    return HBAR * trap.omega_bar * (6.0 * n_atoms) ** (1.0 / 3.0)


def atom_number_from_fermi_energy(e_fermi: float, trap: HarmonicTrap) -> float:
    """Inverse of fermi_energy: N = (E_F / hbar wbar)^3 / 6."""
    return (e_fermi / (HBAR * trap.omega_bar)) ** 3 / 6.0


def fugacity_from_reduced_temperature(t: float) -> float:
    """Solve 6 f_3(Z) = t^-3 for the fugacity Z at reduced temperature t = T/T_F.

    Bracketed root find in ln Z, relative tolerance better than 1e-10;
    monotone decreasing in t.
    """
    if not t > 0:
        raise ValueError("reduced temperature must be positive")
    target = t**-3

    def g(ln_z):
        return 6.0 * fermi_fn(3.0, math.exp(ln_z)) - target

    # g is monotone increasing in ln Z; pick the side of Z = 1 by its sign there
    if g(0.0) >= 0.0:
        lo, hi = math.log(1e-300), 0.0
    else:
        # ln Z stays below 1/t; cap the bracket so exp() cannot overflow
        hi = min(3.0 / t + 1.0, 708.0)
        if 1.0 / t > 700.0:
            raise ValueError(
                f"t = {t} too deep in the degenerate regime: the fugacity "
                "overflows double precision (need t > ~0.0015)"
            )
        lo = 0.0
    try:
        ln_z = brentq(g, lo, hi, xtol=1e-13, rtol=8.9e-16, maxiter=200)
    except (ValueError, RuntimeError) as exc:
        raise RuntimeError(
            f"fugacity root find failed for t={t} on ln Z bracket [{lo}, {hi}]: {exc}"
        )
    return math.exp(ln_z)


def reduced_temperature_from_fugacity(z: float) -> float:
    """t = T/T_F at which the fugacity equals z: t = (6 f_3(z))^(-1/3)."""
    return (6.0 * fermi_fn(3.0, z)) ** (-1.0 / 3.0)


def chemical_potential_approx(t: float, regime: str) -> float:
    """Sommerfeld / Boltzmann closed forms for mu/E_F at reduced temperature t.

    regime="low":  1 - (pi^2/3) t^2      (good to 1% for t <= 0.2)
    regime="high": -t ln(6 t^3)          (good to 1% for t >= 2)

    Labeled approximations only; exact inversion goes through
    fugacity_from_reduced_temperature.
    """
    if not t > 0:
        raise ValueError("reduced temperature must be positive")
    if regime == "low":
        return 1.0 - (math.pi**2 / 3.0) * t * t
    if regime == "high":
        return -t * math.log(6.0 * t**3)
    raise ValueError("regime must be 'low' or 'high'")


@dataclass
class TrappedGasState:
    """A spin-polarized ideal Fermi gas of N atoms at temperature T in a trap."""

    state: SpinState
    trap: HarmonicTrap
    n_atoms: float
    temperature: float  # K

    def __post_init__(self):
        if self.n_atoms < 1:
            raise ValueError("need at least one atom")
        if not self.temperature > 0:
            raise ValueError("temperature must be positive")

    @property
    def mass(self) -> float:
        return self.state.species.mass

    @cached_property
    def fermi_energy(self) -> float:
        return fermi_energy(self.n_atoms, self.trap)

    @property
    def fermi_temperature(self) -> float:
        return self.fermi_energy / K_B

    @property
    def t_reduced(self) -> float:
        return self.temperature / self.fermi_temperature

    @cached_property
    def fugacity(self) -> float:
        return fugacity_from_reduced_temperature(self.t_reduced)

    @property
    def chemical_potential(self) -> float:
        return K_B * self.temperature * math.log(self.fugacity)

    @property
    def thermal_wavelength(self) -> float:
        return thermal_wavelength(self.mass, self.temperature)

    @classmethod
    def from_reduced_temperature(cls, state, trap, n_atoms, t_over_tf):
        e_f = fermi_energy(n_atoms, trap)
        return cls(state, trap, n_atoms, t_over_tf * e_f / K_B)


def thermal_wavelength(mass: float, temperature: float) -> float:
    """Thermal de Broglie wavelength sqrt(2 pi hbar^2 / (M k_B T))."""
    return math.sqrt(2.0 * math.pi * HBAR * HBAR / (mass * K_B * temperature))


def total_energy(gas: TrappedGasState) -> float:
    """E = 3 k_B T (beta hbar wbar)^-3 f_4(Z) in J."""
    kt = K_B * gas.temperature
    x = kt / (HBAR * gas.trap.omega_bar)
    return 3.0 * kt * x**3 * fermi_fn(4.0, gas.fugacity)


def energy_per_particle(gas: TrappedGasState) -> float:
    """E/N = 3 k_B T f_4(Z) / f_3(Z) in J."""
    z = gas.fugacity
    return 3.0 * K_B * gas.temperature * fermi_fn(4.0, z) / fermi_fn(3.0, z)


def degeneracy_parameter(z: float) -> float:
    """Central phase-space density n_0 Lambda_T^3 = f_3/2(Z) of the Fermi gas."""
    return fermi_fn(1.5, z)


def bose_degeneracy_parameter(z: float) -> float:
    """Ideal-Bose counterpart g_3/2(Z); reaches zeta(3/2) ~ 2.612 at Z = 1."""
    return bose_fn(1.5, z)


def capacity_1d(trap: HarmonicTrap, tolerance: float = 0.01) -> float:
    """Number of fermions the 1D regime can hold: the trap aspect ratio.

    Requires the two transverse frequencies to agree within `tolerance`
    (the trap must be axially symmetric for the 1D picture to apply).
    Integer capacity is the floor of the returned ratio.
    """
    om = sorted([trap.omega_x, trap.omega_y, trap.omega_z])
    omega_parallel, perp_lo, perp_hi = om
    if perp_hi - perp_lo > tolerance * perp_hi:
        raise ValueError(
            f"trap is not axially symmetric: transverse frequencies {perp_lo:g}, "
            f"{perp_hi:g} differ by more than {tolerance:.0%}"
        )
    omega_perp = math.sqrt(perp_lo * perp_hi)
    return omega_perp / omega_parallel


def discrete_sum_oracle(
    trap: HarmonicTrap,
    mu: float,
    temperature: float,
    cutoff: int,
    include_zero_point: bool = True,
) -> tuple[float, float]:
    """Brute-force (N, E) over discrete 3D oscillator levels.

    With include_zero_point=True the levels sit at hbar(wx(nx+1/2) + ...), and
    mu is measured from the bottom of the potential, matching the continuum
    convention U(0) = 0.  With False, energies are measured from the ground
    state (mu relative to the lowest level).  E is returned in the same
    reference frame as the levels.

    `cutoff` is the maximum oscillator shell index per axis; it must be large
    enough that the occupancy of the cutoff shell is below 1e-12.
    """
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    beta = 1.0 / (K_B * temperature)
    omegas = trap.omegas
    zero_point = 0.5 * HBAR * float(omegas.sum()) if include_zero_point else 0.0

    e_top = HBAR * float(omegas.min()) * cutoff + zero_point
    occ_top = float(expit(-beta * (e_top - mu)))
    if occ_top >= 1e-12:
        raise ValueError(
            f"cutoff too small: occupancy at the cutoff shell is {occ_top:.2e} >= 1e-12"
        )

    iso = np.allclose(omegas, omegas[0], rtol=1e-12)
    if iso:
        # Isotropic fast path: shell s has degeneracy (s+1)(s+2)/2.
        s = np.arange(cutoff + 1, dtype=float)
        degeneracy = 0.5 * (s + 1.0) * (s + 2.0)
        energies = HBAR * omegas[0] * s + zero_point
        occ = expit(-beta * (energies - mu))
        n_total = float(degeneracy @ occ)
        e_total = float(degeneracy @ (occ * energies))
        return n_total, e_total

    # General anisotropic case: vectorize over (ny, nz) planes per nx slice.
    e_min_axis = HBAR * omegas
    n_max = np.floor((e_top - zero_point) / e_min_axis).astype(int)
    n_max = np.minimum(n_max, cutoff)
    plane_states = (n_max[1] + 1) * (n_max[2] + 1)
    if plane_states > 4e7:
        raise ValueError("anisotropic enumeration too large; reduce cutoff or temperature")
    ny = np.arange(n_max[1] + 1.0)
    nz = np.arange(n_max[2] + 1.0)
    e_plane = HBAR * (omegas[1] * ny[:, None] + omegas[2] * nz[None, :]) + zero_point
    n_total = 0.0
    e_total = 0.0
    for nx in range(n_max[0] + 1):
        e = e_plane + HBAR * omegas[0] * nx
        occ = expit(-beta * (e - mu))
        n_total += float(occ.sum())
        e_total += float((occ * e).sum())
    return n_total, e_total


def write_thermo_scan_csv(path, gas_factory, t_values) -> None:
    """Emit a degeneracy scan as CSV.

    gas_factory(t) must return a TrappedGasState at reduced temperature t.
    Columns: T_over_TF, Z, mu_over_EF, E_per_N_over_EF, n0_lambda3.
    """
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["T_over_TF", "Z", "mu_over_EF", "E_per_N_over_EF", "n0_lambda3"])
        for t in t_values:
            gas = gas_factory(t)
            z = gas.fugacity
            writer.writerow(
                [
                    f"{t:.17g}",
                    f"{z:.17g}",
                    f"{gas.chemical_potential / gas.fermi_energy:.17g}",
                    f"{energy_per_particle(gas) / gas.fermi_energy:.17g}",
                    f"{degeneracy_parameter(z):.17g}",
                ]
            )
