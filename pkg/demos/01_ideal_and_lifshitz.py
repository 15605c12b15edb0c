"""Casimir energy between ordinary mirrors.

Two perfect mirrors give the textbook closed form. Real metals fall short
of it, more so at short distances where the plasma frequency limits how
well they reflect. Run: python demos/01_ideal_and_lifshitz.py
"""

import numpy as np

from kerrcasimir import (PerfectMirror, casimir_energy_general, casimir_force,
                         ideal_energy, ideal_force)
from kerrcasimir.materials import gold, iron

ideal = PerfectMirror()
print("Perfect mirrors against the closed form")
print(f"{'D (nm)':>8} {'E (J/m^2)':>12} {'E/E_ideal':>10} {'F/F_ideal':>10}")
for d in (100.0, 1000.0):
    e = casimir_energy_general(ideal, ideal, d).value
    f = casimir_force(ideal, ideal, d).value
    print(f"{d:8.0f} {e:12.4e} {e / ideal_energy(d):10.6f} {f / ideal_force(d):10.6f}")

# metals: the ratio to the ideal result approaches one only slowly
au, fe = gold(), iron().without_kerr()
print("\nAu-Fe (no magneto-optics) relative to perfect mirrors")
print(f"{'D (nm)':>8} {'E (J/m^2)':>12} {'E/E_ideal':>10}")
for d in np.logspace(0, 4, 9):
    e = casimir_energy_general(au, fe, d).value
    print(f"{d:8.1f} {e:12.4e} {e / ideal_energy(d):10.4f}")
