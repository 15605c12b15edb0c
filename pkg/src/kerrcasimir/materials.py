"""Sample material data: Au, Fe and three birefringent crystals.

The optical tables shipped in ``data/`` are synthetic. They are generated
from Drude-Lorentz spectra with the Drude parameters used for the low
frequency extrapolation (Au: 9 eV / 35 meV, Fe: 3.54 eV / 19 meV) plus
interband oscillators of roughly the right size, and they cover the same
energy windows as the usual handbook tables. Replace them with measured
data via :func:`kerrcasimir.dielectric.read_table` when available.

The crystals use the two-oscillator form with literature constants
(rad/s converted to eV).
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

import numpy as np

from .constants import rad_per_s_to_ev
from .dielectric import (CONDUCTIVITY, DIAGONAL, OFF_DIAGONAL, DrudeModel, DrudeParams,
                         OpticalDataTable, TwoOscillatorModel,
                         TwoOscillatorParams, composite_metal_model,
                         KramersKronigModel, read_table)
from .reflection import Ferromagnet, IsotropicMetal, UniaxialPlate

AU_DRUDE = DrudeParams(9.0, 0.035)
FE_DRUDE = DrudeParams(3.54, 0.019)

# Lorentz terms (strength eV^2, resonance eV, width eV)
AU_INTERBAND = [
    (0.024 * 9.03**2, 0.415, 0.241),
    (0.010 * 9.03**2, 0.830, 0.345),
    (0.071 * 9.03**2, 2.969, 0.870),
    (0.601 * 9.03**2, 4.304, 2.494),
    (4.384 * 9.03**2, 13.32, 2.214),
]
FE_INTERBAND = [
    (45.0, 1.0, 2.0),
    (60.0, 3.0, 4.0),
    (100.0, 8.0, 10.0),
]
# eps_xy = i K / (x (g - i x)) from free carriers (K eV^2, g eV), plus
# one interband Lorentz term
FE_HALL = (0.3, 0.019)
FE_GYROTROPIC = [
    (1.5 * 1.5**2, 1.5, 1.5),
]

# (energy range in eV, rows per decade) of the shipped tables
TABLE_RANGES = {
    "au_eps": (0.1, 1e4),
    "fe_eps": (1e-3, 1e4),
    "fe_epsxy": (0.1, 6.0),
}
ROWS_PER_DECADE = 60


def lorentz_sum(x, terms):
    """Sum of s/(w0^2 - x^2 - i g x) at real frequency ``x`` (complex)."""
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape, dtype=complex)
    for s, w0, g in terms:
        out += s / (w0 * w0 - x * x - 1j * g * x)
    return out


def lorentz_sum_imaginary(w, terms):
    """Same sum at imaginary frequency ``i*w`` (real)."""
    w = np.asarray(w, dtype=float)
    out = np.zeros(w.shape)
    for s, w0, g in terms:
        out += s / (w0 * w0 + w * w + g * w)
    return out


def drude_lorentz(x, drude, terms):
    """Complex permittivity of a Drude metal with interband oscillators."""
    x = np.asarray(x, dtype=float)
    wp, g = drude.plasma_frequency, drude.relaxation_rate
    return 1.0 - wp * wp / (x * (x + 1j * g)) + lorentz_sum(x, terms)


def iron_gyrotropic(x):
    """Model eps_xy of Fe at real frequency ``x`` (complex)."""
    x = np.asarray(x, dtype=float)
    k, g = FE_HALL
    return 1j * k / (x * (g - 1j * x)) + lorentz_sum(x, FE_GYROTROPIC)


def iron_gyrotropic_imaginary(w):
    """Same model at imaginary frequency ``i*w`` (real)."""
    w = np.asarray(w, dtype=float)
    k, g = FE_HALL
    return k / (w * (g + w)) + lorentz_sum_imaginary(w, FE_GYROTROPIC)


def synthetic_table(name):
    """Regenerate one of the shipped tables from its analytic model."""
    lo, hi = TABLE_RANGES[name]
    n = int(round(ROWS_PER_DECADE * np.log10(hi / lo))) + 1
    x = np.logspace(np.log10(lo), np.log10(hi), n)
    if name == "au_eps":
        eps, kind = drude_lorentz(x, AU_DRUDE, AU_INTERBAND), DIAGONAL
    elif name == "fe_eps":
        eps, kind = drude_lorentz(x, FE_DRUDE, FE_INTERBAND), DIAGONAL
    else:
        eps, kind = iron_gyrotropic(x), OFF_DIAGONAL
    return OpticalDataTable(x, eps.real, eps.imag, kind)


def data_path(name):
    return resources.files("kerrcasimir") / "data" / f"{name}.csv"


@lru_cache(maxsize=None)
def load_table(name):
    kind = OFF_DIAGONAL if name.endswith("xy") else DIAGONAL
    with resources.as_file(data_path(name)) as p:
        return read_table(p, kind)


@lru_cache(maxsize=None)
def gold_eps():
    return composite_metal_model(load_table("au_eps"), AU_DRUDE)


@lru_cache(maxsize=None)
def iron_eps():
    return composite_metal_model(load_table("fe_eps"), FE_DRUDE)


@lru_cache(maxsize=None)
def iron_eps_xy():
    # conductivity kernel: keeps the free-carrier 1/w growth below the table
    return KramersKronigModel(load_table("fe_epsxy"), kernel=CONDUCTIVITY)


def gold(drude_only=False):
    """Isotropic Au mirror."""
    return IsotropicMetal(DrudeModel(AU_DRUDE) if drude_only else gold_eps())


def iron(theta=0.0, phi=0.0, drude_only=False):
    """Fe mirror magnetised along (theta, phi).

    With ``drude_only`` the diagonal response is the bare Drude model; the
    off-diagonal one always comes from the tabulated eps_xy.
    """
    exx = DrudeModel(FE_DRUDE) if drude_only else iron_eps()
    return Ferromagnet(exx, iron_eps_xy(), theta, phi)


def _p(c_ir, w_ir, c_uv, w_uv):
    return TwoOscillatorParams(c_ir=c_ir, c_uv=c_uv,
                               w_ir=rad_per_s_to_ev(w_ir),
                               w_uv=rad_per_s_to_ev(w_uv))


# (ordinary, extraordinary)
CRYSTALS = {
    "quartz": (_p(1.93, 2.093e14, 1.359, 2.032e16),
               _p(1.98, 2.093e14, 1.394, 2.032e16)),
    "calcite": (_p(5.30, 2.691e14, 1.683, 1.660e16),
                _p(6.30, 2.691e14, 1.182, 2.134e16)),
    "batio3": (_p(3595.0, 0.850e14, 4.128, 0.7819e16),
               _p(145.0, 0.850e14, 4.064, 0.7834e16)),
}


def crystal(name, zeta=0.0):
    """Uniaxial plate of quartz, calcite or BaTiO3 with axis at ``zeta``."""
    o, e = CRYSTALS[name.lower()]
    return UniaxialPlate(TwoOscillatorModel(o), TwoOscillatorModel(e), zeta)
