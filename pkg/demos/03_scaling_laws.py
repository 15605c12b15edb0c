"""Power laws of the Kerr contributions.

Slopes of log|E| or log|F| against log D, fitted over half a decade at
either end of the distance range.
"""

from kerrcasimir import casimir_energy_decomposed, casimir_force_decomposed
from kerrcasimir.anisotropy import (bottom_half_decade, default_distance_grid,
                                    scaling_exponent, top_half_decade)
from kerrcasimir.materials import gold, iron

au, fe = gold(), iron()
grid = default_distance_grid()
windows = {"small D": bottom_half_decade(grid), "large D": top_half_decade(grid)}
energies = [casimir_energy_decomposed(au, fe, d) for d in grid]
forces = [casimir_force_decomposed(au, fe, d) for d in grid]

for quantity, rows in (("energy", energies), ("force", forces)):
    print(f"\n{quantity} exponents")
    for wname, window in windows.items():
        parts = []
        for term in ("e_perp", "e_par1", "e_par2"):
            s = scaling_exponent(grid, [getattr(r, term) for r in rows], window)
            parts.append(f"{term[2:]} {s:6.2f}")
        print(f"  {wname:>7} ({window[0]:.0f}-{window[1]:.0f} nm): " + "  ".join(parts))
