"""Casimir energy between a ferromagnetic and a non-magnetic mirror.

Energies and forces per unit area from reflection matrices at imaginary
frequency, the magneto-optical (Kerr) contributions to first order in the
off-diagonal permittivity, and the magnetic anisotropy they induce.
"""

__version__ = "0.1.0"

from .casimir import (QuadratureConfig, EnergyDecomposition, EnergyResult,
                      casimir_energy_decomposed, casimir_energy_general,
                      casimir_force, casimir_force_decomposed, ideal_energy,
                      ideal_force, magnetic_energy, magnetic_force)
from .anisotropy import (AmplitudeCurve, AngularScan, ExperimentEstimate,
                         amplitude_vs_distance, disk_force, proximity_force,
                         scaling_exponent, scan_inplane, scan_outofplane,
                         torque)
from .reflection import (Ferromagnet, IsotropicMetal, PerfectMirror,
                         UniaxialPlate)
from . import materials
