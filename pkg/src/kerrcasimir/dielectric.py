"""Dielectric response on the imaginary frequency axis.

All energies in eV. A model is a callable ``eps(w)`` returning the real
value of the response at frequency ``i*w``; ``kind`` tells whether it is a
diagonal (or ordinary/extraordinary) component, which must satisfy
``eps >= 1`` and decrease monotonically, or an off-diagonal one, which
only has to decay.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import integrate
from scipy.interpolate import CubicSpline

DIAGONAL = "diagonal"
OFF_DIAGONAL = "off-diagonal"


class TableError(ValueError):
    """Malformed optical data table."""


@dataclass(frozen=True)
class DrudeParams:
    """hbar*omega_p and hbar/tau, both in eV."""

    plasma_frequency: float
    relaxation_rate: float

    def __post_init__(self):
        if not self.plasma_frequency > 0:
            raise ValueError("plasma_frequency must be > 0")
        if not self.relaxation_rate > 0:
            raise ValueError("relaxation_rate must be > 0")

    def loss(self, x):
        """Im eps of the Drude model at real frequency ``x``."""
        x = np.asarray(x, dtype=float)
        g = self.relaxation_rate
        return self.plasma_frequency**2 * g / (x * (x * x + g * g))


@dataclass(frozen=True)
class TwoOscillatorParams:
    c_ir: float
    c_uv: float
    w_ir: float
    w_uv: float

    def __post_init__(self):
        for name in ("c_ir", "c_uv", "w_ir", "w_uv"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")
        if not self.w_ir < self.w_uv:
            raise ValueError(
                f"w_ir ({self.w_ir}) must be below w_uv ({self.w_uv})")


@dataclass(frozen=True)
class OpticalDataTable:
    """Real-frequency data: columns energy (eV), Re eps, Im eps."""

    energy: np.ndarray
    eps_real: np.ndarray
    eps_imag: np.ndarray
    kind: str = DIAGONAL

    def __post_init__(self):
        for name in ("energy", "eps_real", "eps_imag"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.kind not in (DIAGONAL, OFF_DIAGONAL):
            raise TableError(f"unknown table kind {self.kind!r}")
        problems = table_problems(self.energy, self.eps_imag, self.kind)
        if problems:
            raise TableError("; ".join(problems))

    def __len__(self):
        return len(self.energy)


def table_problems(energy, eps_imag, kind=DIAGONAL):
    """List row-level problems with a table (empty if it is valid).

    Row numbers are 1-based data rows, i.e. not counting the header.
    """
    energy = np.asarray(energy, dtype=float)
    eps_imag = np.asarray(eps_imag, dtype=float)
    out = []
    if energy.size == 0:
        return ["table is empty"]
    if energy.shape != eps_imag.shape:
        return ["column lengths differ"]
    if not np.all(np.isfinite(energy)) or not np.all(np.isfinite(eps_imag)):
        out.append("non-finite values present")
    if energy[0] <= 0:
        out.append("row 1: photon energy must be > 0")
    for i in np.flatnonzero(np.diff(energy) <= 0):
        out.append(f"row {i + 2}: energy {energy[i + 1]:g} eV is not above "
                   f"the previous row ({energy[i]:g} eV)")
    if kind == DIAGONAL:
        for i in np.flatnonzero(eps_imag < 0):
            out.append(f"row {i + 1}: eps_imag = {eps_imag[i]:g} < 0 for a "
                       "diagonal component")
    return out


def read_table(path, kind=DIAGONAL):
    """Load a CSV with header ``energy_ev,eps_real,eps_imag``."""
    path = Path(path)
    rows = []
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise TableError(f"{path}: empty file")
        if [h.strip() for h in header] != ["energy_ev", "eps_real", "eps_imag"]:
            raise TableError(f"{path}: line 1: expected header "
                             f"'energy_ev,eps_real,eps_imag', got {header}")
        for lineno, row in enumerate(reader, start=2):
            if not row or not "".join(row).strip():
                continue
            if len(row) != 3:
                raise TableError(f"{path}: line {lineno}: expected 3 columns")
            try:
                rows.append([float(x) for x in row])
            except ValueError as exc:
                raise TableError(f"{path}: line {lineno}: {exc}") from None
    data = np.array(rows, dtype=float).reshape(-1, 3)
    try:
        return OpticalDataTable(data[:, 0], data[:, 1], data[:, 2], kind)
    except TableError as exc:
        raise TableError(f"{path}: {exc}") from None


def write_table(path, table):
    with Path(path).open("w", newline="") as fh:
        fh.write("energy_ev,eps_real,eps_imag\n")
        for e, re_, im in zip(table.energy, table.eps_real, table.eps_imag):
            fh.write(f"{e:.10g},{re_:.10g},{im:.10g}\n")


# -- closed-form models ------------------------------------------------------

def _positive(w):
    w = np.asarray(w, dtype=float)
    if np.any(~(w > 0)):
        raise ValueError("frequency must be > 0 on the imaginary axis")
    return w


def drude_epsilon(p, w):
    """1 + wp^2 / (w (w + 1/tau)) at imaginary frequency ``i*w``."""
    w = _positive(w)
    return 1.0 + p.plasma_frequency**2 / (w * (w + p.relaxation_rate))


def two_oscillator_epsilon(p, w):
    w = np.asarray(w, dtype=float)
    if np.any(w < 0):
        raise ValueError("frequency must be >= 0")
    return (1.0 + p.c_ir / (1.0 + (w / p.w_ir) ** 2)
            + p.c_uv / (1.0 + (w / p.w_uv) ** 2))


# -- Kramers-Kronig -------------------------------------------------------------

def _y_minus_atan(y):
    # y - arctan(y) without cancellation for small y
    y = np.asarray(y, dtype=float)
    small = y < 0.05
    ys = np.where(small, y, 0.0)
    y2 = ys * ys
    series = ys * y2 * (1 / 3 - y2 * (1 / 5 - y2 * (1 / 7 - y2 / 9)))
    return np.where(small, series, y - np.arctan(np.where(small, 1.0, y)))


def _z_minus_log1p(z):
    # z - log(1 + z) without cancellation for small z
    z = np.asarray(z, dtype=float)
    small = np.abs(z) < 0.05
    zs = np.where(small, z, 0.0)
    series = zs * zs * (1 / 2 - zs * (1 / 3 - zs * (1 / 4 - zs * (1 / 5 - zs / 6))))
    return np.where(small, series, z - np.log1p(np.where(small, 0.0, z)))


def _kk_segments(x, loss, w):
    """(2/pi) * integral of x*loss(x)/(x^2+w^2) over the table range.

    ``loss`` is interpolated linearly between the nodes ``x``, and each
    segment is integrated in closed form, so the only error is the one of
    the interpolation itself.
    """
    w = np.atleast_1d(np.asarray(w, dtype=float))[:, None]
    x1, x2 = x[:-1][None, :], x[1:][None, :]
    l1, l2 = loss[:-1][None, :], loss[1:][None, :]
    slope = (l2 - l1) / (x2 - x1)
    icpt = l1 - slope * x1
    # integral of (a x + b x^2)/(x^2 + w^2)
    log_part = 0.5 * np.log1p((x2 * x2 - x1 * x1) / (x1 * x1 + w * w))
    atan_part = w * (_y_minus_atan(x2 / w) - _y_minus_atan(x1 / w))
    seg = icpt * log_part + slope * atan_part
    return (2.0 / np.pi) * seg.sum(axis=1)


def _kk_segments_conductivity(x, re_part, w):
    """-(2/(pi w)) * integral of x^2 re(x)/(x^2+w^2) over the table range.

    Same piecewise-linear scheme as :func:`_kk_segments`.
    """
    w = np.atleast_1d(np.asarray(w, dtype=float))[:, None]
    x1, x2 = x[:-1][None, :], x[1:][None, :]
    r1, r2 = re_part[:-1][None, :], re_part[1:][None, :]
    slope = (r2 - r1) / (x2 - x1)
    icpt = r1 - slope * x1
    # integral of x^2/(x^2+w^2) and of x^3/(x^2+w^2)
    quad_part = w * (_y_minus_atan(x2 / w) - _y_minus_atan(x1 / w))
    z = (x2 * x2 - x1 * x1) / (x1 * x1 + w * w)
    cubic_part = 0.5 * (x1 * x1 * z + w * w * _z_minus_log1p(z))
    seg = icpt * quad_part + slope * cubic_part
    return -(2.0 / np.pi) * seg.sum(axis=1) / w[:, 0]


def _drude_tail(drude, x_min, w):
    """(2/pi) * integral_0^x_min of x*drude_loss(x)/(x^2+w^2) dx."""
    g = drude.relaxation_rate
    wp2 = drude.plasma_frequency**2
    out = np.empty(len(w))
    for i, wi in enumerate(w):
        def f(x):
            return wp2 * g / ((x * x + g * g) * (x * x + wi * wi))
        pts = [p for p in (wi, g) if 0 < p < x_min]
        val, _ = integrate.quad(f, 0.0, x_min, points=pts or None,
                                epsabs=0.0, epsrel=1e-10, limit=200)
        out[i] = val
    return (2.0 / np.pi) * out


def kk_diagonal(table, w, drude=None):
    """Imaginary-axis value of a diagonal component from its loss spectrum.

    ``1 + (2/pi) int_0^inf x eps''(x) / (x^2 + w^2) dx`` with eps''
    interpolated linearly inside the table, zero above it, and, if
    ``drude`` is given, the Drude loss below the first row.
    """
    if table.kind != DIAGONAL:
        raise TableError("kk_diagonal needs a diagonal table")
    if len(table) == 0:
        raise TableError("table is empty")
    w_arr = _positive(np.atleast_1d(w))
    val = 1.0 + _kk_segments(table.energy, table.eps_imag, w_arr)
    if drude is not None:
        val = val + _drude_tail(drude, table.energy[0], w_arr)
    return val if np.ndim(w) else float(val[0])


PERMITTIVITY = "permittivity"
CONDUCTIVITY = "conductivity"


def kk_offdiagonal(table, w, kernel=PERMITTIVITY):
    """Imaginary-axis value of eps_xy; zero outside the tabulated range.

    ``kernel="permittivity"`` applies the diagonal kernel to Im eps_xy:
    ``(2/pi) int x Im eps_xy(x) / (x^2 + w^2) dx``.

    ``kernel="conductivity"`` continues the Hall conductivity
    ``-i x eps_xy(x)`` instead:
    ``-(2/(pi w)) int x^2 Re eps_xy(x) / (x^2 + w^2) dx``. On complete
    data both agree; on a band-limited table the second keeps the 1/w
    growth that free carriers give at low frequency, which the first
    cuts off at the lowest tabulated energy.
    """
    if table.kind != OFF_DIAGONAL:
        raise TableError("kk_offdiagonal needs an off-diagonal table")
    if len(table) == 0:
        raise TableError("table is empty")
    w_arr = _positive(np.atleast_1d(w))
    if kernel == PERMITTIVITY:
        val = _kk_segments(table.energy, table.eps_imag, w_arr)
    elif kernel == CONDUCTIVITY:
        val = _kk_segments_conductivity(table.energy, table.eps_real, w_arr)
    else:
        raise ValueError(f"unknown kernel {kernel!r}")
    return val if np.ndim(w) else float(val[0])


# -- model objects --------------------------------------------------------------

class DielectricModel:
    """Base class: ``model(w)`` gives eps(i w) for ``w`` in eV."""

    kind = DIAGONAL
    provenance = "abstract"

    def __call__(self, w):
        raise NotImplementedError

    def scaled(self, factor):
        """Model multiplied by ``factor`` (off-diagonal components only)."""
        if self.kind != OFF_DIAGONAL:
            raise ValueError("only off-diagonal responses can be scaled")
        return ScaledModel(self, factor)


class ConstantModel(DielectricModel):
    provenance = "constant"

    def __init__(self, value, kind=DIAGONAL):
        self.value = float(value)
        self.kind = kind

    def __call__(self, w):
        return np.full(np.shape(w), self.value) if np.ndim(w) else self.value

    def __repr__(self):
        return f"ConstantModel({self.value}, kind={self.kind!r})"


class ScaledModel(DielectricModel):
    provenance = "scaled"

    def __init__(self, base, factor):
        self.base = base
        self.factor = float(factor)
        self.kind = base.kind

    def __call__(self, w):
        return self.factor * self.base(w)


class DrudeModel(DielectricModel):
    provenance = "drude"

    def __init__(self, params):
        self.params = params

    def __call__(self, w):
        return drude_epsilon(self.params, w)


class TwoOscillatorModel(DielectricModel):
    provenance = "two-oscillator"

    def __init__(self, params):
        self.params = params

    def __call__(self, w):
        return two_oscillator_epsilon(self.params, w)


class InterpolatedModel(DielectricModel):
    """Cubic spline through samples on a log-spaced frequency grid.

    Diagonal responses are interpolated as log(eps - 1) vs log(w) and
    extrapolated linearly in that plane; off-diagonal ones as eps vs
    log(w), scaling as ``w**low_power`` below the grid and decaying as
    w**-2 above it (the large-w behaviour of any band-limited dispersion
    integral).
    """

    def __init__(self, grid, values, kind=DIAGONAL, provenance="interpolated",
                 low_power=0.0):
        self.grid = np.asarray(grid, dtype=float)
        self.values = np.asarray(values, dtype=float)
        self.kind = kind
        self.provenance = provenance
        self.low_power = float(low_power)
        self._lx = np.log(self.grid)
        if kind == DIAGONAL:
            ly = np.log(np.maximum(self.values - 1.0, 1e-300))
            self._spline = CubicSpline(self._lx, ly)
            self._lo_slope = (ly[1] - ly[0]) / (self._lx[1] - self._lx[0])
            self._hi_slope = (ly[-1] - ly[-2]) / (self._lx[-1] - self._lx[-2])
            self._ly = ly
        else:
            self._spline = CubicSpline(self._lx, self.values)

    def __call__(self, w):
        scalar = np.ndim(w) == 0
        lw = np.log(_positive(np.atleast_1d(w)))
        inside = np.clip(lw, self._lx[0], self._lx[-1])
        v = self._spline(inside)
        lo = lw < self._lx[0]
        hi = lw > self._lx[-1]
        if self.kind == DIAGONAL:
            v = np.where(lo, self._ly[0] + self._lo_slope * (lw - self._lx[0]), v)
            v = np.where(hi, self._ly[-1] + self._hi_slope * (lw - self._lx[-1]), v)
            v = 1.0 + np.exp(v)
        else:
            v = np.where(lo, self.values[0]
                         * np.exp(self.low_power * (lw - self._lx[0])), v)
            v = np.where(hi, self.values[-1] * np.exp(-2 * (lw - self._lx[-1])), v)
        return float(v[0]) if scalar else v


def log_grid(w_min=1e-9, w_max=1e8, per_decade=40):
    n = int(round(per_decade * math.log10(w_max / w_min))) + 1
    return np.logspace(math.log10(w_min), math.log10(w_max), n)


class KramersKronigModel(DielectricModel):
    """Imaginary-axis response obtained from a real-frequency loss table.

    Direct evaluation costs one pass over the table per frequency; the
    integrators call :meth:`fast`, a cached :class:`InterpolatedModel`
    built on a dense log grid.
    """

    def __init__(self, table, drude=None, kernel=PERMITTIVITY):
        if table.kind == OFF_DIAGONAL and drude is not None:
            raise ValueError("Drude extension applies to diagonal tables only")
        if kernel not in (PERMITTIVITY, CONDUCTIVITY):
            raise ValueError(f"unknown kernel {kernel!r}")
        self.table = table
        self.drude = drude
        self.kernel = kernel
        self.kind = table.kind
        self.provenance = "composite" if drude is not None else "kramers-kronig-table"
        self._fast = None

    def exact(self, w):
        if self.kind == DIAGONAL:
            return kk_diagonal(self.table, w, self.drude)
        return kk_offdiagonal(self.table, w, self.kernel)

    def fast(self):
        if self._fast is None:
            grid = log_grid()
            low = -1.0 if self.kernel == CONDUCTIVITY else 0.0
            self._fast = InterpolatedModel(grid, self.exact(grid), self.kind,
                                           self.provenance, low_power=low)
        return self._fast

    def __call__(self, w):
        return self.fast()(w)


def composite_metal_model(table, drude):
    """Tabulated loss inside the table range, Drude loss below it.

    Warns when the two loss functions disagree by more than 50% at the
    splice point (a sign that the Drude parameters do not describe the
    low-energy end of the data).
    """
    if len(table) == 0:
        raise TableError("table is empty")
    if table.kind != DIAGONAL:
        raise TableError("composite model needs a diagonal table")
    x0 = table.energy[0]
    d_loss = float(drude.loss(x0))
    t_loss = float(table.eps_imag[0])
    if abs(d_loss - t_loss) > 0.5 * max(abs(t_loss), abs(d_loss)):
        warnings.warn(
            f"Drude loss {d_loss:.4g} and table loss {t_loss:.4g} differ by "
            f"more than 50% at the splice energy {x0:g} eV",
            stacklevel=2,
        )
    return KramersKronigModel(table, drude)


def fast_model(model):
    """The cheapest equivalent evaluator for use inside integrands."""
    if isinstance(model, KramersKronigModel):
        return model.fast()
    if isinstance(model, ScaledModel):
        return ScaledModel(fast_model(model.base), model.factor)
    return model


def check_model(model, w_min=1e-4, w_max=1e4, n=100):
    """Violations of the diagonal-model invariants on a log grid."""
    if model.kind != DIAGONAL:
        return []
    w = np.logspace(math.log10(w_min), math.log10(w_max), n)
    eps = np.asarray(model(w), dtype=float)
    out = []
    if not np.all(np.isfinite(eps)):
        out.append("non-finite eps(i w)")
    bad = np.flatnonzero(eps < 1.0)
    if bad.size:
        out.append(f"eps(i w) < 1 at w = {w[bad[0]]:.3g} eV")
    rise = np.flatnonzero(np.diff(eps) > 1e-12 * np.abs(eps[1:]))
    if rise.size:
        out.append(f"eps(i w) increases near w = {w[rise[0]]:.3g} eV")
    return out
