import pytest

from fermichip import constants as C
from fermichip import thermo


@pytest.fixture(scope="session")
def registry():
    return C.builtin_species()


@pytest.fixture(scope="session")
def k92(registry):
    return registry.stretched_state("K40")


@pytest.fixture(scope="session")
def rb22(registry):
    return registry.stretched_state("Rb87")


@pytest.fixture(scope="session")
def science_trap():
    # transverse 823 Hz (x, z), axial 46 Hz
    return thermo.HarmonicTrap.from_frequencies_hz(823.0, 46.0, 823.0)


@pytest.fixture(scope="session")
def cold_gas(k92, science_trap):
    return thermo.TrappedGasState.from_reduced_temperature(k92, science_trap, 4e4, 0.2)
