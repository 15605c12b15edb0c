"""Reflection matrices at imaginary frequency and wavevector.

A point of the integration domain is described by two energies: ``w``
(hbar times the imaginary frequency) and ``kc`` (hbar*c times the decay
constant of the vacuum field between the plates), with ``0 < w < kc``.
Matrices are written in the (s, p) basis of the incidence plane, with the
p axis unchanged upon reflection. Orientation angles of a mirror are
measured from the lab X axis; the incidence plane makes the angle ``psi``
with X, so only the differences ``phi - psi`` and ``zeta - psi`` enter.

Magneto-optical coefficients that are odd in the in-plane wavevector
(longitudinal and transverse Kerr terms) are purely imaginary on the
imaginary axis: the factor sqrt(w^2 - kc^2) is taken as
``1j * sqrt(kc^2 - w^2)``. Every other coefficient is real.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .dielectric import ConstantModel, DIAGONAL, OFF_DIAGONAL, fast_model


@dataclass(frozen=True)
class SpectralPoint:
    w: float
    kperp_c: float

    def __post_init__(self):
        if not 0 < self.w < self.kperp_c:
            raise ValueError("need 0 < w < kperp_c")


def _wk(p):
    if isinstance(p, SpectralPoint):
        return p.w, p.kperp_c
    w, kc = p
    return np.asarray(w, dtype=float), np.asarray(kc, dtype=float)


@dataclass(frozen=True, eq=False)
class ReflectionMatrix:
    r_ss: np.ndarray
    r_sp: np.ndarray
    r_ps: np.ndarray
    r_pp: np.ndarray

    def as_array(self):
        """Entries stacked into trailing 2x2 axes."""
        ss, sp, ps, pp = np.broadcast_arrays(self.r_ss, self.r_sp,
                                             self.r_ps, self.r_pp)
        return np.stack([np.stack([ss, sp], -1), np.stack([ps, pp], -1)], -2)


# -- isotropic and magneto-optical coefficients ------------------------------------

def _xi(eps, w, kc):
    return np.sqrt(w * w * (eps - 1.0) + kc * kc)


def xi(eps_xx, p):
    """sqrt(w^2 (eps - 1) + kc^2): decay constant inside the medium, times hbar c."""
    w, kc = _wk(p)
    eps_xx = np.asarray(eps_xx, dtype=float)
    if np.any(eps_xx < 1.0):
        raise ValueError("eps(i w) < 1 is unphysical on the imaginary axis")
    return _xi(eps_xx, w, kc)


def fresnel_ss(p, eps_xx):
    w, kc = _wk(p)
    x = xi(eps_xx, (w, kc))
    return (kc - x) / (kc + x)


def fresnel_pp(p, eps_xx):
    w, kc = _wk(p)
    x = xi(eps_xx, (w, kc))
    return (eps_xx * kc - x) / (eps_xx * kc + x)


def _inplane(w, kc):
    # sqrt(w^2 - kc^2) on the branch i*sqrt(kc^2 - w^2)
    return 1j * np.sqrt(np.maximum(kc * kc - w * w, 0.0))


def _kerr(eps, exy, w, kc):
    x = _xi(eps, w, kc)
    a = kc + x
    b = eps * kc + x
    s = _inplane(w, kc)
    polar = -kc * w * exy / (a * b)
    longitudinal = polar * s / x
    transverse = 2.0 * s * exy * kc / (b * b)
    return polar, longitudinal, transverse


def kerr_polar(p, eps_xx, eps_xy):
    w, kc = _wk(p)
    xi(eps_xx, (w, kc))
    return _kerr(np.asarray(eps_xx, float), np.asarray(eps_xy, float), w, kc)[0]


def kerr_longitudinal(p, eps_xx, eps_xy):
    w, kc = _wk(p)
    xi(eps_xx, (w, kc))
    return _kerr(np.asarray(eps_xx, float), np.asarray(eps_xy, float), w, kc)[1]


def kerr_transverse(p, eps_xx, eps_xy):
    w, kc = _wk(p)
    xi(eps_xx, (w, kc))
    return _kerr(np.asarray(eps_xx, float), np.asarray(eps_xy, float), w, kc)[2]


# -- uniaxial plate, optical axis in the surface plane ---------------------------------

class SingularGeometryError(ArithmeticError):
    pass


def uniaxial_coefficients(eps_o, eps_e, w, kc, zeta):
    """(r_ss, r_sp, r_pp) of a uniaxial plate; r_ps = -r_sp.

    ``zeta`` is the angle between the optical axis and the normal to the
    incidence plane.
    """
    alpha = np.sin(zeta)
    beta = -np.cos(zeta)
    w2 = w * w
    xo = _xi(eps_o, w, kc)
    xa2 = (eps_o - alpha**2) * w2 + (alpha * kc) ** 2
    xe = np.sqrt(xo * xo + (eps_e - eps_o) / eps_o * xa2)
    dxe = xe - xo
    q = xo / (eps_o * kc)
    r = xo / kc
    dprime = (kc + xo) * (q + 1.0) * xa2 + dxe * (
        xa2 + r * (w2 * beta**2 + (alpha * kc) ** 2))
    if np.any(dprime == 0):
        raise SingularGeometryError("D' vanished")
    mixed = w2 * beta**2 - (alpha * kc) ** 2
    rss = ((kc - xo) * (q + 1.0) * xa2 - dxe * (xa2 + r * mixed)) / dprime
    rpp = (-(kc + xo) * (q - 1.0) * xa2 + dxe * (xa2 - r * mixed)) / dprime
    rsp = 2.0 * alpha * beta * xo * (xo - xe) * w / dprime
    return rss, rsp, rpp


# -- mirrors ----------------------------------------------------------------------

class Mirror:
    """A semi-infinite plate seen through its reflection matrix."""

    def matrix(self, w, kc, psi=0.0):
        raise NotImplementedError

    def fast(self):
        """Copy whose dielectric models are cheap to evaluate."""
        return self


@dataclass(frozen=True, eq=False)
class PerfectMirror(Mirror):
    """Ideal conductor: r_ss = -1, r_pp = +1 at every point."""

    def matrix(self, w, kc, psi=0.0):
        shape = np.broadcast_shapes(np.shape(w), np.shape(kc), np.shape(psi))
        one = np.ones(shape)
        return ReflectionMatrix(-one, 0.0 * one, 0.0 * one, one)


@dataclass(frozen=True, eq=False)
class IsotropicMetal(Mirror):
    eps: object

    def matrix(self, w, kc, psi=0.0):
        e = self.eps(w)
        x = _xi(e, w, kc)
        rss = (kc - x) / (kc + x)
        rpp = (e * kc - x) / (e * kc + x)
        shape = np.broadcast_shapes(np.shape(rss), np.shape(psi))
        zero = np.zeros(shape)
        return ReflectionMatrix(rss + zero, zero, zero, rpp + zero)

    def fast(self):
        return replace(self, eps=fast_model(self.eps))


@dataclass(frozen=True, eq=False)
class Ferromagnet(Mirror):
    """Magnetised mirror, Kerr terms to first order in eps_xy.

    ``theta`` is the polar angle of the magnetisation from the plate
    normal and ``phi`` its azimuth from the X axis. Either may be an
    array, which then broadcasts against ``psi``.
    """

    eps_xx: object
    eps_xy: object
    theta: object = 0.0
    phi: object = 0.0

    def matrix(self, w, kc, psi=0.0):
        e = self.eps_xx(w)
        g = self.eps_xy(w)
        x = _xi(e, w, kc)
        rss = (kc - x) / (kc + x)
        rpp = (e * kc - x) / (e * kc + x)
        polar, longi, trans = _kerr(e, g, w, kc)
        ph = np.asarray(self.phi) - psi
        st, ct = np.sin(self.theta), np.cos(self.theta)
        odd = np.sin(ph) * st * longi
        even = ct * polar
        return ReflectionMatrix(
            rss + 0.0 * ph, even + odd, even - odd,
            rpp + np.cos(ph) * st * trans,
        )

    def without_kerr(self):
        return IsotropicMetal(self.eps_xx)

    def with_kerr_scale(self, factor):
        return replace(self, eps_xy=self.eps_xy.scaled(factor))

    def oriented(self, theta=None, phi=None):
        return replace(self,
                       theta=self.theta if theta is None else theta,
                       phi=self.phi if phi is None else phi)

    def fast(self):
        return replace(self, eps_xx=fast_model(self.eps_xx),
                       eps_xy=fast_model(self.eps_xy))


@dataclass(frozen=True, eq=False)
class UniaxialPlate(Mirror):
    """Birefringent plate with its optical axis in the surface plane.

    ``zeta`` is the angle between the optical axis and the X axis.
    """

    eps_o: object
    eps_e: object
    zeta: object = 0.0

    def matrix(self, w, kc, psi=0.0):
        rss, rsp, rpp = uniaxial_coefficients(
            self.eps_o(w), self.eps_e(w), w, kc, np.asarray(self.zeta) - psi)
        return ReflectionMatrix(rss, rsp, -rsp, rpp)

    def isotropic(self):
        return IsotropicMetal(self.eps_o)

    def rotated(self, zeta):
        return replace(self, zeta=zeta)

    def fast(self):
        return replace(self, eps_o=fast_model(self.eps_o),
                       eps_e=fast_model(self.eps_e))


def vacuum():
    """A 'mirror' that reflects nothing (eps = 1)."""
    return IsotropicMetal(ConstantModel(1.0))


def magnetic_reflection_matrix(spec, p, incidence_azimuth=0.0):
    w, kc = _wk(p)
    return spec.matrix(w, kc, incidence_azimuth)


def uniaxial_reflection_matrix(spec, p, incidence_azimuth=0.0):
    w, kc = _wk(p)
    return spec.matrix(w, kc, incidence_azimuth)


def check_mirror(mirror):
    """Model-kind sanity of the dielectric functions a mirror refers to."""
    problems = []
    pairs = {
        IsotropicMetal: (("eps", DIAGONAL),),
        Ferromagnet: (("eps_xx", DIAGONAL), ("eps_xy", OFF_DIAGONAL)),
        UniaxialPlate: (("eps_o", DIAGONAL), ("eps_e", DIAGONAL)),
    }
    for name, kind in pairs.get(type(mirror), ()):
        model = getattr(mirror, name)
        if getattr(model, "kind", None) != kind:
            problems.append(f"{name} should be a response of kind {kind!r}")
    return problems
