import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kerrcasimir.casimir import (ENERGY, QuadratureConfig, casimir_energy_decomposed,
                                 casimir_energy_general, casimir_force,
                                 casimir_force_decomposed, ideal_energy,
                                 ideal_force, lifshitz_integral,
                                 magnetic_energy, magnetic_force)
from kerrcasimir.constants import EV_NM2_TO_J_M2
from kerrcasimir.dielectric import DrudeModel
from kerrcasimir.materials import AU_DRUDE, crystal, gold
from kerrcasimir.quadrature import IntegrationError
from kerrcasimir.reflection import (IsotropicMetal, PerfectMirror,
                                    UniaxialPlate, vacuum)
from oracles import lifshitz_isotropic

PM = PerfectMirror()


@settings(max_examples=10)
@given(st.floats(1.0, 1e4))
def test_ideal_mirrors(d):
    e = casimir_energy_general(PM, PM, d)
    f = casimir_force(PM, PM, d)
    assert e.value == pytest.approx(ideal_energy(d), rel=1e-7)
    assert f.value == pytest.approx(ideal_force(d), rel=1e-7)
    assert e.value < 0 < f.value


def test_ideal_closed_forms():
    # 1 um: 0.433 nJ/m^2 and 1.3 mN/m^2
    assert ideal_energy(1000.0) == pytest.approx(-4.3338e-10, rel=1e-4)
    assert ideal_force(1000.0) == pytest.approx(1.3001e-3, rel=1e-4)


def test_vacuum_gives_zero():
    assert casimir_energy_general(vacuum(), gold(), 10.0).value == 0.0


def test_against_textbook_lifshitz_drude():
    m = DrudeModel(AU_DRUDE)
    ref = lifshitz_isotropic(m, m, 50.0) * EV_NM2_TO_J_M2
    ours = casimir_energy_general(IsotropicMetal(m), IsotropicMetal(m), 50.0,
                                  QuadratureConfig(rel_tol=1e-10)).value
    assert ours == pytest.approx(ref, rel=1e-8)


def test_against_textbook_lifshitz_two_metals(au, fe):
    a, b = au.fast(), fe.without_kerr().fast()
    ref = lifshitz_isotropic(a.eps, b.eps, 7.0) * EV_NM2_TO_J_M2
    ours = casimir_energy_general(au, fe.without_kerr(), 7.0,
                                  QuadratureConfig(rel_tol=1e-10)).value
    assert ours == pytest.approx(ref, rel=1e-7)


def test_swap_isotropic_mirrors(au, fe):
    b = fe.without_kerr()
    e1 = casimir_energy_general(au, b, 20.0).value
    e2 = casimir_energy_general(b, au, 20.0).value
    assert e1 == pytest.approx(e2, rel=1e-9)


def test_metals_weaker_than_ideal(au, fe):
    for d in (10.0, 100.0, 1000.0):
        e = casimir_energy_general(au, fe, d).value
        assert ideal_energy(d) < e < 0


def _central(fn, d, h):
    # per metre, to compare with forces in N/m^2
    return (fn(d + h) - fn(d - h)) / (2 * h * 1e-9)


@pytest.mark.parametrize("d", [3.0, 80.0])
def test_force_is_energy_derivative(au, fe, d):
    q = QuadratureConfig(rel_tol=1e-10)
    b = fe.oriented(theta=0.6, phi=0.4)
    fd = _central(lambda x: casimir_energy_general(au, b, x, q).value, d, 1e-4 * d)
    assert casimir_force(au, b, d, q).value == pytest.approx(fd, rel=1e-5)
    fd = _central(lambda x: magnetic_energy(au, b, x, q).value, d, 1e-4 * d)
    assert magnetic_force(au, b, d, q).value == pytest.approx(fd, rel=1e-5)


def test_decomposed_force_is_energy_derivative(au, fe):
    q = QuadratureConfig(rel_tol=1e-10)
    d, h = 15.0, 0.0015
    lo = casimir_energy_decomposed(au, fe, d - h, q)
    hi = casimir_energy_decomposed(au, fe, d + h, q)
    f = casimir_force_decomposed(au, fe, d, q)
    for name in ("e0", "e_perp", "e_par1", "e_par2"):
        fd = (getattr(hi, name) - getattr(lo, name)) / (2 * h * 1e-9)
        assert getattr(f, name) == pytest.approx(fd, rel=1e-5), name


def test_e0_matches_nonmagnetic_energy(au, fe):
    dec = casimir_energy_decomposed(au, fe, 30.0)
    ref = casimir_energy_general(au, fe.without_kerr(), 30.0).value
    assert dec.e0 == pytest.approx(ref, rel=1e-6)


@pytest.mark.parametrize("theta,part", [(0.0, "perp"), (np.pi / 2, "par")])
def test_magnetic_energy_matches_decomposition(au, fe, theta, part):
    q = QuadratureConfig(rel_tol=1e-9)
    dec = casimir_energy_decomposed(au, fe, 30.0, q)
    exact = magnetic_energy(au, fe.oriented(theta=theta), 30.0, q).value
    expected = dec.e_perp if part == "perp" else dec.e_par1 + dec.e_par2
    assert exact == pytest.approx(expected, rel=1e-4)


def test_decomposition_total(au, fe):
    dec = casimir_energy_decomposed(au, fe, 30.0)
    assert dec.total(0.0) == pytest.approx(dec.e0 + dec.e_perp)
    assert dec.total(np.pi / 2) == pytest.approx(dec.e0 + dec.e_par1 + dec.e_par2)
    assert dec.anisotropy == pytest.approx(dec.total(0.0) - dec.total(np.pi / 2))


def test_kerr_terms_scale_quadratically(au, fe):
    full = casimir_energy_decomposed(au, fe, 10.0)
    half = casimir_energy_decomposed(au, fe.with_kerr_scale(0.5), 10.0)
    for name in ("e_perp", "e_par1", "e_par2"):
        assert getattr(half, name) == pytest.approx(getattr(full, name) / 4, rel=1e-6)
    assert half.e0 == pytest.approx(full.e0, rel=1e-10)


def test_isotropic_plate_azimuthal_invariance(fe):
    eps = crystal("quartz").eps_o
    plate = UniaxialPlate(eps, eps, 0.0)
    b = fe.oriented(theta=np.pi / 2)
    zetas = np.linspace(0, np.pi, 7)
    vals, _, _ = lifshitz_integral(plate.rotated(zetas), b, 10.0)
    np.testing.assert_allclose(vals, vals[0], rtol=1e-12)
    # rotating the magnetisation over an isotropic metal changes nothing either
    vals, _, _ = lifshitz_integral(gold(), b.oriented(phi=zetas), 10.0)
    np.testing.assert_allclose(vals, vals[0], rtol=1e-12)


def test_vectorised_angles_match_scalar_calls(fe):
    a = crystal("calcite")
    phis = np.array([0.0, 0.7, 2.0])
    q = QuadratureConfig(rel_tol=1e-9)
    vals, _, _ = lifshitz_integral(a, fe.oriented(np.pi / 2, phis), 25.0, q,
                                   ENERGY, fe.without_kerr())
    for p, v in zip(phis, vals):
        ref = magnetic_energy(a, fe.oriented(np.pi / 2, p), 25.0, q).value
        assert v == pytest.approx(ref, rel=1e-7)


def test_psi_rule_converges(fe):
    b = fe.oriented(1.0, 0.8)
    e = {n: casimir_energy_general(crystal("batio3", 0.3), b, 10.0,
                                   QuadratureConfig(rel_tol=1e-10, phi_samples=n)).value
         for n in (16, 32, 64)}
    assert e[32] == pytest.approx(e[64], rel=1e-7)
    assert abs(e[32] - e[64]) < 0.2 * abs(e[16] - e[64])
    # smooth psi dependence: few nodes are already exact
    a = crystal("quartz", 0.3)
    e8 = casimir_energy_general(a, b, 10.0, QuadratureConfig(phi_samples=8)).value
    e32 = casimir_energy_general(a, b, 10.0).value
    assert e8 == pytest.approx(e32, rel=1e-7)


def test_magnet_over_metal_needs_only_low_harmonics(au, fe):
    b = fe.oriented(1.0, 0.8)
    e8 = casimir_energy_general(au, b, 10.0, QuadratureConfig(phi_samples=8)).value
    assert e8 == pytest.approx(casimir_energy_general(au, b, 10.0).value, rel=1e-12)


def test_distance_validation(au):
    with pytest.raises(ValueError):
        casimir_energy_general(au, au, 0.0)
    with pytest.raises(ValueError):
        casimir_energy_general(au, au, -5.0)
    with pytest.warns(UserWarning, match="atomic"):
        casimir_energy_general(au, au, 0.05)


def test_quadrature_config_validation():
    for kw in ({"rel_tol": 0}, {"abs_tol": -1}, {"phi_samples": 7},
               {"phi_samples": 4}, {"max_subdivisions": 0}):
        with pytest.raises(ValueError):
            QuadratureConfig(**kw)
    assert QuadratureConfig().replace(rel_tol=1e-3).rel_tol == 1e-3


def test_budget_exhaustion_reports_partial(au, fe):
    with pytest.raises(IntegrationError) as exc:
        casimir_energy_general(au, fe, 10.0,
                               QuadratureConfig(rel_tol=1e-14, max_subdivisions=20))
    assert exc.value.partial.value < 0


def test_decomposition_type_checks(fe):
    with pytest.raises(TypeError):
        casimir_energy_decomposed(crystal("quartz"), fe, 10.0)
    with pytest.raises(TypeError):
        casimir_energy_decomposed(gold(), gold(), 10.0)


def test_decomposition_signs(au, fe):
    for d in (1.0, 100.0):
        dec = casimir_energy_decomposed(au, fe, d)
        assert dec.e0 < 0
        assert dec.e_perp > 0 and dec.e_par1 > 0 and dec.e_par2 > 0
