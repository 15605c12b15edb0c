"""In-plane magnetisation over a birefringent crystal.

The energy depends on the angle between the in-plane magnetisation and
the optical axis as A sin^2(delta_phi). A > 0 puts the minimum on the
axis (class sin2) and A < 0 puts it at right angles (class cos2).
"""

from kerrcasimir.anisotropy import scan_inplane
from kerrcasimir.materials import crystal, iron

fe = iron()
for d in (10.0, 5000.0):
    print(f"\nD = {d:g} nm")
    for name in ("quartz", "calcite", "batio3"):
        s = scan_inplane(crystal(name), fe, d)
        print(f"  {name:8s} {s.fit_class:5s} amplitude {s.fit_amplitude:.3e} J/m^2 "
              f"(fit residual {s.fit_offset_residual:.1e})")

s = scan_inplane(crystal("calcite"), fe, 10.0)
print("\ncalcite at 10 nm, dE against delta_phi")
for a, e in zip(s.angles, s.delta_e):
    print(f"  {a:5.3f} rad  {e:.3e}")
