"""Sizes of the effects in plausible experiments.

Force on a 10 um disk when the Fe magnetisation flips from in-plane to
out-of-plane, the proximity-force signal of a 100 um sphere above a
BaTiO3 plate, and the peak torque on a 100 um BaTiO3 disk.
"""

from kerrcasimir import casimir_force_decomposed
from kerrcasimir.anisotropy import (disk_force_estimate, proximity_force_estimate,
                                    scan_inplane, torque, torque_estimate)
from kerrcasimir.materials import crystal, gold, iron

disk = disk_force_estimate(casimir_force_decomposed(gold(), iron(), 100.0), 10.0)
print(f"Fe-Au disk, R = 10 um, D = 100 nm: {disk.value * 1e15:.2f} fN")

scan = scan_inplane(crystal("batio3"), iron(), 10.0)
sphere = proximity_force_estimate(scan, 100.0)
peak = torque_estimate(scan, 100.0)
print(f"BaTiO3 sphere, R = 100 um, D = 10 nm: {sphere.value * 1e18:.0f} aN")
print(f"BaTiO3 disk, R = 100 um, D = 10 nm: peak torque {peak.value:.2e} N*m")

angles, tau = torque(scan, 100.0)
print("\ntorque against delta_phi")
for a, t in zip(angles[::2], tau[::2]):
    print(f"  {a:5.3f} rad  {t: .2e} N*m")
