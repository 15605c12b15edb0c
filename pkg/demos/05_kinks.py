"""Where the in-plane anisotropy changes class.

The signed amplitude passes through zero at a kink, and the easy
direction switches between the optical axis and its normal. This sweep
takes about a minute.
"""

from kerrcasimir.anisotropy import amplitude_vs_distance
from kerrcasimir.materials import crystal, iron

fe = iron()
for name in ("quartz", "calcite", "batio3"):
    curve = amplitude_vs_distance(crystal(name), fe, workers=2)
    spans = ", ".join(f"{lo:.0f}-{hi:.0f} nm" for lo, hi in curve.kinks)
    print(f"{name:8s} {len(curve.kinks)} kink(s): {spans}")
    signs = "".join("+" if a > 0 else "-" for a in curve.signed_amplitude)
    print(f"         sign of A from 1 nm to 5 um: {signs}")
