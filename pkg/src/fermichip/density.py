"""In-trap and time-of-flight density distributions of the trapped ideal gas.

The harmonic potential convention is U(0) = 0.  Finite-temperature in-trap
density: n(r) = Lambda_T^-3 f_3/2(Z exp(-beta U(r))).  Free expansion for a
time t stretches each axis by lambda_i = sqrt(1 + w_i^2 t^2); the column
density imaged along z is

    ncol(x, y, t) = N / (2 pi r_x r_y f_3(Z)) * f_2(Z exp(-x^2/2r_x^2 - y^2/2r_y^2)),

with r_i^2(t) = (w_i^-2 + t^2) k_B T / M.
"""

from __future__ import annotations

import csv
import struct
from dataclasses import dataclass

import numpy as np

from .constants import HBAR, K_B, AtomSpecies
from .polylog import fermi_fn
from .thermo import HarmonicTrap, TrappedGasState

__all__ = [
    "DensityProfile",
    "ThomasFermiExtent",
    "TofRescaling",
    "density_finite_T",
    "density_zero_T",
    "uniform_density_zero_T",
    "tof_rescale",
    "density_tof",
    "cloud_radii",
    "column_density_fermi",
    "column_density_boltzmann",
    "write_profile_csv",
    "write_raster",
    "read_raster",
]

RASTER_MAGIC = b"FCHIP1"


@dataclass
class DensityProfile:
    """Sampled density: positions in m, values in m^-3 (3D) or m^-2 (column)."""

    positions: np.ndarray
    values: np.ndarray
    gas: TrappedGasState | None = None
    expansion_time: float = 0.0
    kind: str = "3d"

    def __post_init__(self):
        self.positions = np.asarray(self.positions, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if not np.all(np.isfinite(self.values)):
            raise ValueError("profile contains non-finite values")
        if np.any(self.values < 0.0):
            raise ValueError("densities must be nonnegative")

    @classmethod
    def sample(cls, gas: TrappedGasState, axes, t: float = 0.0) -> "DensityProfile":
        """Sample the (possibly expanded) 3D density on a regular grid.

        axes are three 1D coordinate arrays; the grid integral reproduces the
        atom number to grid resolution.
        """
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
        values = density_tof(gas, t, grid) if t > 0 else density_finite_T(gas, grid)
        return cls(grid, values, gas, t, "3d")

    def integrated_number(self) -> float:
        """Voxel sum over the regular grid, in atoms."""
        if self.positions.ndim != 4:
            raise ValueError("integrated_number needs a 3D grid profile")
        voxel = 1.0
        for axis in range(3):
            coord = np.moveaxis(self.positions[..., axis], axis, 0)
            voxel *= float(coord[1, 0, 0] - coord[0, 0, 0])
        return float(self.values.sum() * abs(voxel))


@dataclass(frozen=True)
class ThomasFermiExtent:
    """Zero-temperature cloud radii sqrt(2 E_F / M w_i^2) per axis."""

    x: float
    y: float
    z: float

    @property
    def mean(self) -> float:
        return (self.x * self.y * self.z) ** (1.0 / 3.0)

    @classmethod
    def from_state(cls, gas: TrappedGasState) -> "ThomasFermiExtent":
        e_f, m = gas.fermi_energy, gas.mass
        om = gas.trap.omegas
        r = np.sqrt(2.0 * e_f / (m * om**2))
        return cls(*r)


def _fermi32_safe(w: np.ndarray) -> np.ndarray:
    """f_3/2 with underflowed (w == 0) entries mapped to 0."""
    w = np.asarray(w, dtype=float)
    out = np.zeros_like(w)
    pos = w > 0.0
    if pos.any():
        out[pos] = fermi_fn(1.5, w[pos])
    return out


def _harmonic_potential(gas: TrappedGasState, r: np.ndarray) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    om = gas.trap.omegas
    return 0.5 * gas.mass * np.sum((om * r) ** 2, axis=-1)


def density_finite_T(gas: TrappedGasState, r) -> float | np.ndarray:
    """In-trap density n(r) = Lambda^-3 f_3/2(Z e^(-beta U(r))), r shaped (..., 3)."""
    r = np.asarray(r, dtype=float)
    beta = 1.0 / (K_B * gas.temperature)
    w = gas.fugacity * np.exp(-beta * _harmonic_potential(gas, r))
    out = gas.thermal_wavelength**-3 * _fermi32_safe(w)
    return float(out) if out.ndim == 0 else out


def density_zero_T(gas: TrappedGasState, r) -> float | np.ndarray:
    """Zero-temperature profile (8N / pi^2 Rbar^3) (1 - sum x_i^2/X_i^2)^(3/2)."""
    r = np.asarray(r, dtype=float)
    tf = ThomasFermiExtent.from_state(gas)
    radii = np.array([tf.x, tf.y, tf.z])
    arg = 1.0 - np.sum((r / radii) ** 2, axis=-1)
    arg = np.maximum(arg, 0.0)
    out = 8.0 * gas.n_atoms / (np.pi**2 * tf.mean**3) * arg**1.5
    return float(out) if out.ndim == 0 else out


def uniform_density_zero_T(e_fermi: float, species: AtomSpecies) -> float:
    """Density of a uniform zero-T Fermi gas, (1/6 pi^2) (2 M E_F / hbar^2)^(3/2)."""
    if not e_fermi > 0:
        raise ValueError("Fermi energy must be positive")
    return (2.0 * species.mass * e_fermi / HBAR**2) ** 1.5 / (6.0 * np.pi**2)


@dataclass(frozen=True)
class TofRescaling:
    """Free-expansion rescaling report after time t.

    stretch            lambda_i = sqrt(1 + w_i^2 t^2) per axis
    omega_rescaled     w_i * lambda_i (the frequency-rescaling form)
    renorm             prod_i (1/lambda_i), the analytic factor that keeps the
                       rescaled in-trap formula normalized to N
    radii              Gaussian-equivalent cloud sizes r_i(t)
    """

    stretch: np.ndarray
    omega_rescaled: np.ndarray
    renorm: float
    radii: np.ndarray


def cloud_radii(gas: TrappedGasState, t: float) -> np.ndarray:
    """r_i(t) = sqrt((w_i^-2 + t^2) k_B T / M) for i = x, y, z."""
    if t < 0:
        raise ValueError("expansion time must be nonnegative")
    om = gas.trap.omegas
    return np.sqrt((om**-2.0 + t * t) * K_B * gas.temperature / gas.mass)


def tof_rescale(gas: TrappedGasState, t: float) -> TofRescaling:
    """Rescaling factors describing free expansion for time t (t=0 is identity)."""
    if t < 0:
        raise ValueError("expansion time must be nonnegative")
    om = gas.trap.omegas
    stretch = np.sqrt(1.0 + (om * t) ** 2)
    return TofRescaling(
        stretch=stretch,
        omega_rescaled=om * stretch,
        renorm=float(np.prod(1.0 / stretch)),
        radii=cloud_radii(gas, t),
    )


def density_tof(gas: TrappedGasState, t: float, r) -> float | np.ndarray:
    """3D density after expansion time t: axes stretch by lambda_i, amplitude
    renormalizes by prod(1/lambda_i) so the integral stays N."""
    resc = tof_rescale(gas, t)
    r = np.asarray(r, dtype=float)
    beta = 1.0 / (K_B * gas.temperature)
    om_eff = gas.trap.omegas / resc.stretch
    u = 0.5 * gas.mass * np.sum((om_eff * r) ** 2, axis=-1)
    w = gas.fugacity * np.exp(-beta * u)
    out = resc.renorm * gas.thermal_wavelength**-3 * _fermi32_safe(w)
    return float(out) if out.ndim == 0 else out


def _f2_safe(w: np.ndarray) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    out = np.zeros_like(w)
    pos = w > 0.0
    if pos.any():
        out[pos] = fermi_fn(2.0, w[pos])
    return out


def column_density_fermi(gas: TrappedGasState, t: float, x, y) -> float | np.ndarray:
    """Column density along z after expansion time t, in m^-2."""
    rx, ry, _ = cloud_radii(gas, t)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = gas.fugacity
    w = z * np.exp(-0.5 * (x / rx) ** 2 - 0.5 * (y / ry) ** 2)
    out = gas.n_atoms / (2.0 * np.pi * rx * ry * fermi_fn(3.0, z)) * _f2_safe(w)
    return float(out) if out.ndim == 0 else out


def column_density_boltzmann(
    n_atoms: float,
    temperature: float,
    trap: HarmonicTrap,
    species: AtomSpecies,
    t: float,
    x,
    y,
) -> float | np.ndarray:
    """Classical (Boltzmann) column density with the same r_i(t) definitions."""
    om = trap.omegas
    r = np.sqrt((om**-2.0 + t * t) * K_B * temperature / species.mass)
    rx, ry = r[0], r[1]
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = (
        n_atoms
        / (2.0 * np.pi * rx * ry)
        * np.exp(-0.5 * (x / rx) ** 2 - 0.5 * (y / ry) ** 2)
    )
    return float(out) if out.ndim == 0 else out


def write_profile_csv(path, positions, values, header=("position_m", "value")) -> None:
    positions = np.atleast_2d(np.asarray(positions, dtype=float))
    values = np.asarray(values, dtype=float).ravel()
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        if positions.shape[0] == values.size and positions.shape[1] in (1, 2, 3):
            cols = ["x_m", "y_m", "z_m"][: positions.shape[1]] + [header[-1]]
            writer.writerow(cols)
            for pos, val in zip(positions, values):
                writer.writerow([f"{p:.17g}" for p in pos] + [f"{val:.17g}"])
        else:
            writer.writerow(header)
            for pos, val in zip(positions.ravel(), values):
                writer.writerow([f"{pos:.17g}", f"{val:.17g}"])


def write_raster(path, values: np.ndarray, pitch: float) -> None:
    """Row-major float64 raster with a 32-byte header: magic, dims, pixel pitch (m)."""
    values = np.ascontiguousarray(values, dtype=">f8")
    if values.ndim != 2:
        raise ValueError("raster must be a 2D array")
    ny, nx = values.shape
    header = struct.pack(">6sxxIId", RASTER_MAGIC, ny, nx, float(pitch))
    header += b"\x00" * (32 - len(header))
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(values.tobytes())


def read_raster(path) -> tuple[np.ndarray, float]:
    with open(path, "rb") as fh:
        header = fh.read(32)
        if header[:6] != RASTER_MAGIC:
            raise ValueError(f"not a raster file (bad magic {header[:6]!r})")
        ny, nx, pitch = struct.unpack(">IId", header[8:24])
        data = np.frombuffer(fh.read(ny * nx * 8), dtype=">f8").reshape(ny, nx)
    return data.astype(float), pitch
