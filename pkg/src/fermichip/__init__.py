"""Degenerate Fermi gases in atom-chip microtraps: thermodynamics, density and
time-of-flight profiles, wire-trap magnetostatics, RF-dressed potentials,
evaporation design rules and profile fitting."""

__version__ = "0.1.0"

from . import (  # noqa: F401
    constants,
    density,
    evaporation,
    imagefit,
    polylog,
    rfdress,
    thermo,
    trapfield,
)
