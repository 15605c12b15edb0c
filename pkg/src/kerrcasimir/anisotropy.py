"""Observables built on the energy integrals.

Angular scans with sin^2 / cos^2 classification, amplitude-vs-distance
curves with kink detection, power-law exponents and the estimators for
force and torque measurements.

Angles: ``delta_phi`` is the in-plane angle between the magnetisation and
the optical axis of the uniaxial plate; ``theta`` the polar angle of the
magnetisation from the plate normal.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .casimir import (DEFAULT_QUADRATURE, ENERGY, casimir_energy_decomposed,
                      lifshitz_integral)
from .quadrature import IntegrationError

log = logging.getLogger(__name__)

SIN2 = "sin2"
COS2 = "cos2"
MIXED = "mixed"

# residual (relative to amplitude) above which a scan is not classified
MIXED_THRESHOLD = 0.05

UM = 1e-6


@dataclass(frozen=True)
class AngularScan:
    """Energy vs angle, shifted so that the minimum is zero.

    ``fit_amplitude`` is |A| of the fit ``c + A sin^2(angle)``; the sign of
    A is kept in ``signed_amplitude`` (positive: sin^2 class, minimum at
    angle 0; negative: cos^2 class, minimum at pi/2).
    """

    distance: float
    angles: np.ndarray
    delta_e: np.ndarray
    fit_amplitude: float
    fit_class: str
    fit_offset_residual: float
    signed_amplitude: float
    errors: np.ndarray = field(default=None, repr=False)


@dataclass(frozen=True)
class AmplitudeCurve:
    """Signed anisotropy amplitude (J/m^2) on a distance grid (nm)."""

    distances: np.ndarray
    signed_amplitude: np.ndarray
    kinks: list
    scans: list = field(default_factory=list, repr=False)
    failures: list = field(default_factory=list)


@dataclass(frozen=True)
class ExperimentEstimate:
    geometry: str        # "disk" or "sphere"
    radius: float        # um
    distance: float      # nm
    value: float         # N, or N*m for a torque
    unit: str


def fit_sin2(angles, delta_e):
    """Least-squares fit of ``c + A sin^2``; returns (A, c, rms/|A|)."""
    angles = np.asarray(angles, dtype=float)
    y = np.asarray(delta_e, dtype=float)
    basis = np.stack([np.ones_like(angles), np.sin(angles) ** 2], axis=1)
    (c, amp), *_ = np.linalg.lstsq(basis, y, rcond=None)
    rms = float(np.sqrt(np.mean((basis @ [c, amp] - y) ** 2)))
    rel = rms / abs(amp) if amp != 0 else (0.0 if rms == 0 else np.inf)
    return float(amp), float(c), rel


def _classify(amp, rel):
    if rel > MIXED_THRESHOLD:
        return MIXED
    return SIN2 if amp >= 0 else COS2


def _make_scan(d, angles, energies, errors=None):
    delta = energies - energies.min()
    amp, _, rel = fit_sin2(angles, delta)
    return AngularScan(d, angles, delta, abs(amp), _classify(amp, rel), rel,
                       amp, errors)


def _angles(n):
    if n < 8:
        raise ValueError("need at least 8 angles")
    return np.pi * np.arange(n) / n


def scan_inplane(a, b, d, n_angles=16, q=DEFAULT_QUADRATURE):
    """In-plane scan of a uniaxial plate ``a`` against a magnet ``b``.

    The magnetisation lies in the plane (theta = pi/2) at the angle
    delta_phi from the optical axis, sampled uniformly on [0, pi). All
    angles share one integration mesh, and only the magnetic part of the
    energy is integrated (the rest does not depend on the angle).
    """
    angles = _angles(n_angles)
    mag = b.oriented(theta=np.pi / 2, phi=np.asarray(a.zeta) + angles)
    vals, errs, _ = lifshitz_integral(a, mag, d, q, ENERGY, b.without_kerr())
    return _make_scan(d, angles, np.asarray(vals), np.asarray(errs))


def scan_outofplane(a, b, d, n_angles=16, q=DEFAULT_QUADRATURE):
    """Polar-angle scan from the perturbative decomposition.

    ``signed_amplitude`` is the coefficient of sin^2(theta), i.e.
    -(E_perp - E_par1 - E_par2). Positive: minimum at theta = 0, easy
    axis perpendicular to the plates (class sin2); negative: in-plane
    easy axis (class cos2).
    """
    dec = casimir_energy_decomposed(a, b, d, q)
    angles = _angles(n_angles)
    energies = dec.anisotropy * np.cos(angles) ** 2
    return _make_scan(d, angles, energies)


def easy_axis(scan):
    """'perpendicular' or 'in-plane' for a polar-angle scan."""
    return "perpendicular" if scan.signed_amplitude > 0 else "in-plane"


def default_distance_grid(d_min=1.0, d_max=5000.0, per_decade=12):
    n = int(round(per_decade * np.log10(d_max / d_min))) + 1
    return np.logspace(np.log10(d_min), np.log10(d_max), n)


def _scan_or_none(a, b, d, n_angles, q):
    try:
        return scan_inplane(a, b, d, n_angles, q)
    except (IntegrationError, FloatingPointError, ValueError) as exc:
        log.warning("scan at D = %g nm failed: %s", d, exc)
        return exc


def amplitude_vs_distance(a, b, d_grid=None, q=DEFAULT_QUADRATURE,
                          n_angles=16, refine=True, workers=1):
    """Signed in-plane amplitude over a distance grid, with kinks.

    A kink is reported as an interval ``(d_lo, d_hi)`` over which the
    signed amplitude changes sign; with ``refine`` the interval is halved
    once (in log D). Failed points are recorded in ``failures`` and
    skipped.
    """
    d_grid = default_distance_grid() if d_grid is None else np.asarray(d_grid, float)
    if np.any(np.diff(d_grid) <= 0):
        raise ValueError("distance grid must be strictly increasing")

    def run(ds):
        if workers > 1:
            with ThreadPoolExecutor(workers) as pool:
                return list(pool.map(lambda d: _scan_or_none(a, b, d, n_angles, q), ds))
        return [_scan_or_none(a, b, d, n_angles, q) for d in ds]

    results = run(d_grid)
    failures = [(float(d), str(r)) for d, r in zip(d_grid, results)
                if isinstance(r, Exception)]
    scans = [r if isinstance(r, AngularScan) else None for r in results]
    amp = np.array([s.signed_amplitude if s else np.nan for s in scans])

    # exact zeros carry no sign; the neighbours bracket the crossing
    ok = np.flatnonzero(np.isfinite(amp) & (amp != 0))
    brackets = [(d_grid[i], d_grid[j]) for i, j in zip(ok[:-1], ok[1:])
                if np.sign(amp[i]) != np.sign(amp[j])]
    signs = {d_grid[i]: np.sign(amp[i]) for i in ok}
    kinks = []
    if refine and brackets:
        mids = [np.sqrt(lo * hi) for lo, hi in brackets]
        for (lo, hi), m, r in zip(brackets, mids, run(mids)):
            if isinstance(r, AngularScan) and r.signed_amplitude != 0:
                same_as_lo = np.sign(r.signed_amplitude) == signs[lo]
                kinks.append((m, hi) if same_as_lo else (lo, m))
            else:
                kinks.append((lo, hi))
    else:
        kinks = brackets
    return AmplitudeCurve(d_grid, amp, [(float(x), float(y)) for x, y in kinks],
                          scans, failures)


def scaling_exponent(distances, values, window=None):
    """Least-squares slope of log|value| against log D.

    ``window`` is ``(d_lo, d_hi)`` in nm (inclusive); by default all
    points are used. Raises ValueError for fewer than 5 points or a sign
    change inside the window.
    """
    d = np.asarray(distances, dtype=float)
    v = np.asarray(values, dtype=float)
    if window is not None:
        lo, hi = window
        sel = (d >= lo * (1 - 1e-12)) & (d <= hi * (1 + 1e-12))
        d, v = d[sel], v[sel]
    if len(d) < 5:
        raise ValueError(f"need at least 5 points in the window, got {len(d)}")
    if not (np.all(v > 0) or np.all(v < 0)):
        raise ValueError("values change sign inside the window; "
                         "exponent undefined across a kink")
    return float(np.polyfit(np.log(d), np.log(np.abs(v)), 1)[0])


def top_half_decade(d_grid):
    d_max = np.max(d_grid)
    return d_max / np.sqrt(10.0), d_max


def bottom_half_decade(d_grid):
    d_min = np.min(d_grid)
    return d_min, d_min * np.sqrt(10.0)


# -- experimental estimators ----------------------------------------------------

def _radius_m(radius):
    if not radius >= 0:
        raise ValueError("radius must be >= 0")
    return radius * UM


def disk_force(f_area, radius):
    """Force (N) on a disk of ``radius`` um: f_area * pi R^2."""
    return f_area * np.pi * _radius_m(radius) ** 2


def proximity_force(delta_e, curvature_radius):
    """Force (N) on a sphere of ``curvature_radius`` um: 2 pi R dE."""
    return 2.0 * np.pi * _radius_m(curvature_radius) * delta_e


def torque(scan, plate_radius, angles=None):
    """(angles, torque in N*m) for plates of ``plate_radius`` um.

    Uses the derivative of the fitted A sin^2 form, A sin(2 angle) pi R^2;
    a mixed scan falls back to a periodic finite-difference derivative of
    the samples (angles are then the scan's own).
    """
    area = np.pi * _radius_m(plate_radius) ** 2
    if scan.fit_class != MIXED:
        ang = scan.angles if angles is None else np.asarray(angles, float)
        return ang, scan.signed_amplitude * np.sin(2.0 * ang) * area
    # samples are uniform on [0, pi) and pi-periodic
    e = scan.delta_e
    h = np.pi / len(e)
    deriv = (np.roll(e, -1) - np.roll(e, 1)) / (2.0 * h)
    return scan.angles, deriv * area


def peak_torque(scan, plate_radius):
    """Largest |torque| (N*m); at delta_phi = pi/4 for a classified scan."""
    if scan.fit_class != MIXED:
        return abs(scan.signed_amplitude) * np.pi * _radius_m(plate_radius) ** 2
    return float(np.max(np.abs(torque(scan, plate_radius)[1])))


def disk_force_estimate(force_decomposition, radius):
    """Amplitude of the magnetisation-dependent force on a disk.

    ``force_decomposition`` is a force split (see
    :func:`~kerrcasimir.casimir.casimir_force_decomposed`); its
    ``anisotropy`` is the difference between out-of-plane and in-plane
    magnetisation.
    """
    f = abs(force_decomposition.anisotropy)
    return ExperimentEstimate("disk", radius, force_decomposition.distance,
                              disk_force(f, radius), "N")


def proximity_force_estimate(scan, curvature_radius):
    return ExperimentEstimate("sphere", curvature_radius, scan.distance,
                              proximity_force(scan.fit_amplitude, curvature_radius),
                              "N")


def torque_estimate(scan, plate_radius):
    return ExperimentEstimate("disk", plate_radius, scan.distance,
                              peak_torque(scan, plate_radius), "N*m")
