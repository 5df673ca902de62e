"""Physical constants in SI units and the registry of atomic species and spin states.

Everything internal to the package is SI; the unit multipliers below convert
interface values (gauss, microkelvin, kHz, micrometres) at the boundary.
g-factors, F and m_F are stored as exact rationals because the species-selective
evaporation algebra relies on exact ratios like 9/4 and 5/4.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path


@dataclass(frozen=True)
class PhysicalConstants:
    """Bundle of the constants used throughout, SI units."""

    hbar: float               # J s
    h: float                  # J s
    k_B: float                # J / K
    mu_B: float               # J / T
    mu_0: float               # T m / A
    atomic_mass_unit: float   # kg


# 2019 SI exact values where applicable, CODATA 2018 otherwise.
H_PLANCK = 6.62607015e-34
HBAR = H_PLANCK / (2.0 * math.pi)
K_B = 1.380649e-23
MU_B = 9.2740100783e-24
MU_0 = 1.25663706212e-6
ATOMIC_MASS_UNIT = 1.66053906660e-27
G_EARTH = 9.80665  # m / s^2

CODATA = PhysicalConstants(HBAR, H_PLANCK, K_B, MU_B, MU_0, ATOMIC_MASS_UNIT)

# Unit multipliers: value_in_unit * multiplier -> SI.
GAUSS = 1e-4             # T
GAUSS_PER_CM = 1e-2      # T/m
GAUSS_PER_CM2 = 1.0      # T/m^2
MICROKELVIN = 1e-6       # K
NANOKELVIN = 1e-9        # K
MICROMETER = 1e-6        # m
NANOMETER = 1e-9         # m
MILLISECOND = 1e-3       # s
KHZ = 1e3                # Hz
MHZ = 1e6                # Hz


def _as_fraction(x) -> Fraction:
    """Coerce int, string ("9/2") or exactly-representable float to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        frac = Fraction(x)
        if frac.denominator in (1, 2):
            return frac
        raise ValueError(
            f"{x!r} is not an exact (half-)integer; pass a string like '2/9' instead"
        )
    raise TypeError(f"cannot interpret {x!r} as a rational quantum number")


@dataclass(frozen=True)
class AtomSpecies:
    """An atomic species: label, mass and (optionally) its s-wave scattering length."""

    name: str
    mass: float                                  # kg
    s_wave_scattering_length: float | None = None  # m

    def __post_init__(self):
        if not self.mass > 0:
            raise ValueError("species mass must be positive")


@dataclass(frozen=True)
class SpinState:
    """Hyperfine Zeeman state |F, m_F> of a species, with its Lande g_F."""

    species: AtomSpecies
    F: Fraction
    m_F: Fraction
    g_F: Fraction

    def __post_init__(self):
        object.__setattr__(self, "F", _as_fraction(self.F))
        object.__setattr__(self, "m_F", _as_fraction(self.m_F))
        object.__setattr__(self, "g_F", _as_fraction(self.g_F))
        if abs(self.m_F) > self.F:
            raise ValueError(f"|m_F|={self.m_F} exceeds F={self.F}")

    @property
    def trappable(self) -> bool:
        """Magnetically trappable (weak-field seeking) iff m_F * g_F > 0."""
        return self.m_F * self.g_F > 0

    @property
    def moment_factor(self) -> Fraction:
        """Exact m_F * g_F."""
        return self.m_F * self.g_F

    def __str__(self):
        return f"{self.species.name}|{self.F},{self.m_F}>"


def magnetic_moment(state: SpinState) -> float:
    """Effective magnetic moment m_F * g_F * mu_B in J/T.

    The Zeeman potential in a static trap is U(r) = magnetic_moment(state) * |B(r)|.
    """
    return float(state.moment_factor) * MU_B


class SpeciesRegistry:
    """Species plus per-manifold g-factors, loadable from a JSON data file."""

    def __init__(self, species: dict[str, AtomSpecies], g_factors: dict[str, dict[Fraction, Fraction]]):
        self.species = dict(species)
        self.g_factors = {k: dict(v) for k, v in g_factors.items()}

    def __getitem__(self, name: str) -> AtomSpecies:
        return self.species[name]

    def names(self) -> list[str]:
        return sorted(self.species)

    def state(self, name: str, F, m_F, g_F=None) -> SpinState:
        F = _as_fraction(F)
        m_F = _as_fraction(m_F)
        if g_F is None:
            try:
                g_F = self.g_factors[name][F]
            except KeyError:
                raise KeyError(f"no g_F on record for {name} F={F}; pass g_F explicitly")
        return SpinState(self.species[name], F, m_F, _as_fraction(g_F))

    def stretched_state(self, name: str) -> SpinState:
        """The |F, m_F=F> state of the largest tabulated manifold."""
        F = max(self.g_factors[name])
        return self.state(name, F, F)

    def to_dict(self) -> dict:
        out = {}
        for name, sp in self.species.items():
            manifolds = [
                {"F": str(F), "g_F": str(g)}
                for F, g in sorted(self.g_factors.get(name, {}).items())
            ]
            a = sp.s_wave_scattering_length
            out[name] = {
                "mass_u": sp.mass / ATOMIC_MASS_UNIT,
                "scattering_length_nm": None if a is None else a / NANOMETER,
                "manifolds": manifolds,
            }
        return {"species": out}

    @classmethod
    def from_dict(cls, doc: dict) -> "SpeciesRegistry":
        species = {}
        g_factors = {}
        for name, rec in doc["species"].items():
            a = rec.get("scattering_length_nm")
            species[name] = AtomSpecies(
                name,
                rec["mass_u"] * ATOMIC_MASS_UNIT,
                None if a is None else a * NANOMETER,
            )
            g_factors[name] = {
                _as_fraction(m["F"]): _as_fraction(m["g_F"]) for m in rec.get("manifolds", [])
            }
        return cls(species, g_factors)

    def dump_json(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True))

    @classmethod
    def load_json(cls, path) -> "SpeciesRegistry":
        return cls.from_dict(json.loads(Path(path).read_text()))


def builtin_species() -> SpeciesRegistry:
    """K40 and Rb87 with their ground-manifold g-factors.

    Rb87 carries the s-wave scattering length 5.3 nm used by the evaporation
    design rules; spin-polarized K40 has no s-wave channel at these temperatures.
    """
    k40 = AtomSpecies("K40", 39.96399848 * ATOMIC_MASS_UNIT, None)
    rb87 = AtomSpecies("Rb87", 86.909180527 * ATOMIC_MASS_UNIT, 5.3e-9)
    return SpeciesRegistry(
        {"K40": k40, "Rb87": rb87},
        {
            "K40": {Fraction(9, 2): Fraction(2, 9)},
            "Rb87": {Fraction(2): Fraction(1, 2)},
        },
    )
