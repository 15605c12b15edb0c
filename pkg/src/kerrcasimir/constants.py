"""Unit conventions.

Frequencies and energies are photon energies in eV, lengths in nm. The
only dimensional constant needed inside the integrals is hbar*c; SI
conversion happens once, on the way out.
"""

from scipy import constants as _c

#: hbar * c in eV nm (197.327...)
HBAR_C = _c.hbar * _c.c / _c.e * 1e9

#: 1 eV/nm^2 expressed in J/m^2
EV_NM2_TO_J_M2 = _c.e * 1e18

#: 1 eV/nm^3 expressed in N/m^2
EV_NM3_TO_N_M2 = _c.e * 1e27

#: hbar in eV s, for converting angular frequencies given in rad/s
HBAR_EV_S = _c.hbar / _c.e


def rad_per_s_to_ev(omega):
    """Photon energy in eV of an angular frequency in rad/s."""
    return omega * HBAR_EV_S
