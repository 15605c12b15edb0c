"""Building mirrors from your own optical data.

Tables of (energy, Re eps, Im eps) are continued to imaginary frequency
with a Kramers-Kronig transform, and a Drude term covers the frequencies
below the table. Here a table is written from a Drude-Lorentz spectrum
and read back, standing in for measured data.
"""

import tempfile
from pathlib import Path

from kerrcasimir import Ferromagnet, casimir_energy_decomposed
from kerrcasimir.dielectric import (DrudeParams, TwoOscillatorModel,
                                    TwoOscillatorParams, composite_metal_model,
                                    read_table, write_table)
from kerrcasimir.materials import FE_DRUDE, iron_eps_xy, synthetic_table
from kerrcasimir.reflection import IsotropicMetal, UniaxialPlate
from kerrcasimir.anisotropy import scan_inplane

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "fe.csv"
    write_table(path, synthetic_table("fe_eps"))
    table = read_table(path)
print(f"read {len(table)} rows from {table.energy[0]:g} to {table.energy[-1]:g} eV")

eps = composite_metal_model(table, FE_DRUDE)
for w in (0.01, 0.1, 1.0, 10.0):
    print(f"  eps(i {w:5.2f} eV) = {float(eps(w)):.4g}")

# same data, a made-up Drude metal as the partner
fe = Ferromagnet(eps, iron_eps_xy())
partner = IsotropicMetal(composite_metal_model(table, DrudeParams(5.0, 0.05)))
dec = casimir_energy_decomposed(partner, fe, 50.0)
print(f"\nanisotropy at 50 nm: {dec.anisotropy:.3e} J/m^2")

# a hypothetical uniaxial crystal from two-oscillator parameters
o = TwoOscillatorModel(TwoOscillatorParams(c_ir=2.0, c_uv=1.5, w_ir=0.1, w_uv=12.0))
e = TwoOscillatorModel(TwoOscillatorParams(c_ir=4.0, c_uv=1.3, w_ir=0.1, w_uv=14.0))
s = scan_inplane(UniaxialPlate(o, e), fe, 20.0)
print(f"hypothetical crystal at 20 nm: {s.fit_class}, amplitude {s.fit_amplitude:.2e} J/m^2")
