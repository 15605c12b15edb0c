"""Splitting the magnetic part of the energy by Kerr geometry.

To second order in the off-diagonal permittivity of Fe the energy reads
E0 + E_perp cos^2(theta) + (E_par1 + E_par2) sin^2(theta). The polar term
E_perp wins at large distances and the transverse one E_par2 at short
ones. The sign of E_perp - E_par1 - E_par2 gives the easy axis.
"""

import numpy as np

from kerrcasimir import casimir_energy_decomposed, magnetic_energy
from kerrcasimir.anisotropy import default_distance_grid
from kerrcasimir.materials import gold, iron

au, fe = gold(), iron()
print(f"{'D (nm)':>8} {'E_perp':>11} {'E_par1':>11} {'E_par2':>11} "
      f"{'anisotropy':>11}  easy axis")
for d in default_distance_grid(1, 5000, 3):
    dec = casimir_energy_decomposed(au, fe, d)
    axis = "perpendicular" if dec.anisotropy < 0 else "in-plane"
    print(f"{d:8.1f} {dec.e_perp:11.3e} {dec.e_par1:11.3e} {dec.e_par2:11.3e} "
          f"{dec.anisotropy:11.3e}  {axis}")

# the perturbative split against the full calculation
d = 30.0
dec = casimir_energy_decomposed(au, fe, d)
for label, theta in (("polar", 0.0), ("in-plane", np.pi / 2)):
    exact = magnetic_energy(au, fe.oriented(theta=theta), d).value
    approx = dec.total(theta) - dec.e0
    print(f"\n{label:>8} at {d:g} nm: exact {exact:.6e}, second order {approx:.6e}, "
          f"relative difference {abs(exact / approx - 1):.1e}", end="")
print()
