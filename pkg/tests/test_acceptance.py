"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py``; the summary lines appear even
without ``-s``.
"""

import time

import numpy as np
import pytest
from scipy.optimize import brentq

from kerrcasimir import (QuadratureConfig, casimir_energy_decomposed,
                         casimir_energy_general, casimir_force,
                         casimir_force_decomposed, ideal_energy, ideal_force,
                         magnetic_energy)
from kerrcasimir.anisotropy import (COS2, SIN2, amplitude_vs_distance,
                                    bottom_half_decade, default_distance_grid,
                                    disk_force_estimate, proximity_force_estimate,
                                    scaling_exponent, scan_inplane,
                                    top_half_decade, torque_estimate)
from kerrcasimir.casimir import lifshitz_integral
from kerrcasimir.dielectric import OpticalDataTable, kk_diagonal
from kerrcasimir.materials import (crystal, gold, iron, lorentz_sum,
                                   lorentz_sum_imaginary)
from kerrcasimir.reflection import (IsotropicMetal, PerfectMirror, UniaxialPlate,
                                    fresnel_pp, fresnel_ss, uniaxial_coefficients)


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    return emit


def within(x, target, tol):
    return abs(x - target) <= tol


def test_criterion_1_ideal_mirrors(report):
    t0 = time.perf_counter()
    worst = 0.0
    for d in (100.0, 1000.0):
        e = casimir_energy_general(PerfectMirror(), PerfectMirror(), d).value
        f = casimir_force(PerfectMirror(), PerfectMirror(), d).value
        worst = max(worst, abs(e / ideal_energy(d) - 1), abs(f / ideal_force(d) - 1))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-3 and elapsed < 10
    report(1, ok, f"max relative deviation {worst:.1e} (< 1e-3), {elapsed:.1f} s (< 10 s)")
    assert worst < 1e-3
    assert elapsed < 10


def test_criterion_2_perturbative_order(report):
    t0 = time.perf_counter()
    q = QuadratureConfig(rel_tol=1e-10)
    a, d = gold(), 30.0
    lams = np.array([1.0, 0.5, 0.25])
    slopes = {}
    for label, theta in (("polar", 0.0), ("in-plane", np.pi / 2)):
        errs = []
        for lam in lams:
            b = iron(theta=theta).with_kerr_scale(lam)
            dec = casimir_energy_decomposed(a, b, d, q)
            approx = dec.total(theta) - dec.e0
            errs.append(magnetic_energy(a, b, d, q).value - approx)
        errs = np.array(errs)
        same_sign = np.all(errs > 0) or np.all(errs < 0)
        slopes[label] = np.polyfit(np.log(lams), np.log(np.abs(errs)), 1)[0] \
            if same_sign else np.nan
    elapsed = time.perf_counter() - t0
    ok = all(within(s, 4.0, 0.3) for s in slopes.values()) and elapsed < 120
    detail = ", ".join(f"{k} error ~ lambda^{v:.3f}" for k, v in slopes.items())
    report(2, ok, f"{detail} (4 +- 0.3), {elapsed:.1f} s (< 120 s)")
    for s in slopes.values():
        assert within(s, 4.0, 0.3)
    assert elapsed < 120


def _orderings(a, b, ds):
    decs = [casimir_energy_decomposed(a, b, d) for d in ds]
    far = all(abs(x.e_perp) > max(abs(x.e_par1), abs(x.e_par2))
              for d, x in zip(ds, decs) if d >= 100)
    near = all(abs(x.e_par2) > max(abs(x.e_perp), abs(x.e_par1))
               for d, x in zip(ds, decs) if d <= 2)
    return far, near


def _crossover(a, b):
    def g(log_d):
        x = casimir_energy_decomposed(a, b, np.exp(log_d))
        return np.log(abs(x.e_par2) / abs(x.e_perp))
    return float(np.exp(brentq(g, 0.0, np.log(1000.0), xtol=1e-4)))


def test_criterion_3_kerr_ordering(report):
    t0 = time.perf_counter()
    ds = np.logspace(0, np.log10(5000), 12)
    far, near = _orderings(gold(), iron(), ds)
    cross = _crossover(gold(), iron())
    d_far, d_near = _orderings(gold(drude_only=True), iron(drude_only=True), ds)
    d_cross = _crossover(gold(drude_only=True), iron(drude_only=True))
    elapsed = time.perf_counter() - t0
    ok = far and near and cross < 10 and d_far and d_near and elapsed < 600
    report(3, ok, f"perp dominant D>=100: {far}, transverse dominant D<=2: {near}, "
                  f"crossover {cross:.2f} nm (< 10); bare Drude: {d_far}/{d_near}, "
                  f"crossover {d_cross:.1f} nm; {elapsed:.1f} s")
    assert far and near
    assert cross < 10
    assert d_far and d_near
    assert elapsed < 600


def test_criterion_4_scaling_laws(report):
    a, b = gold(), iron()
    grid = default_distance_grid()
    top = grid[grid >= top_half_decade(grid)[0] * (1 - 1e-12)]
    bottom = grid[grid <= bottom_half_decade(grid)[1] * (1 + 1e-12)]
    e_perp = [casimir_energy_decomposed(a, b, d).e_perp for d in top]
    forces = [casimir_force_decomposed(a, b, d) for d in bottom]
    s_energy = scaling_exponent(top, e_perp)
    s_trans = scaling_exponent(bottom, [f.e_par2 for f in forces])
    s_polar = scaling_exponent(bottom, [f.e_perp for f in forces])
    s_long = scaling_exponent(bottom, [f.e_par1 for f in forces])
    checks = [within(s_energy, -6.5, 0.3), within(s_trans, -3.0, 0.3),
              within(s_polar, -1.0, 0.5), within(s_long, -1.0, 0.5)]
    report(4, all(checks),
           f"polar energy {s_energy:.2f} over {top[0]:.0f}-{top[-1]:.0f} nm (-6.5 +- 0.3); "
           f"forces over {bottom[0]:.0f}-{bottom[-1]:.2f} nm: transverse {s_trans:.2f} "
           f"(-3 +- 0.3), polar {s_polar:.2f}, longitudinal {s_long:.2f} (-1 +- 0.5)")
    assert within(s_energy, -6.5, 0.3)
    assert within(s_trans, -3.0, 0.3)
    assert within(s_polar, -1.0, 0.5)
    assert within(s_long, -1.0, 0.5)


def test_criterion_5_estimates(report):
    disk = disk_force_estimate(casimir_force_decomposed(gold(), iron(), 100.0), 10.0)
    scan = scan_inplane(crystal("batio3"), iron(), 10.0)
    prox = proximity_force_estimate(scan, 100.0)
    tq = torque_estimate(scan, 100.0)
    f_fn, p_an = disk.value * 1e15, prox.value * 1e18
    checks = [0.5 <= f_fn <= 50, 6 <= p_an <= 600, 1e-22 <= tq.value <= 1e-20]
    report(5, all(checks),
           f"disk force {f_fn:.2f} fN [0.5, 50]; proximity force {p_an:.0f} aN [6, 600]; "
           f"peak torque {tq.value:.3g} N*m [1e-22, 1e-20]")
    assert 0.5 <= f_fn <= 50
    assert 6 <= p_an <= 600
    assert 1e-22 <= tq.value <= 1e-20


EXPECTED_CLASSES = {
    10.0: {"quartz": SIN2, "calcite": COS2, "batio3": COS2},
    5000.0: {"quartz": COS2, "calcite": COS2, "batio3": SIN2},
}


def test_criterion_6_angular_classes(report):
    b = iron()
    bad, amps = [], {}
    for d, expected in EXPECTED_CLASSES.items():
        for name, cls in expected.items():
            s = scan_inplane(crystal(name), b, d)
            amps[d, name] = s.fit_amplitude
            if s.fit_class != cls or s.fit_offset_residual >= 0.01:
                bad.append(f"{name}@{d:g}nm={s.fit_class}"
                           f"(res {s.fit_offset_residual:.1e})")
    order_ok = all(amps[d, "batio3"] > amps[d, "calcite"] > amps[d, "quartz"]
                   for d in EXPECTED_CLASSES)
    ok = not bad and order_ok
    report(6, ok, f"class/residual mismatches: {bad or 'none'}; "
                  f"amplitude order BaTiO3 > calcite > quartz: {order_ok}")
    assert not bad
    assert order_ok


@pytest.mark.slow
def test_criterion_7_kink_counts(report):
    expected = {"quartz": 1, "calcite": 2, "batio3": 1}
    b = iron()
    found, where = {}, {}
    for name in expected:
        curve = amplitude_vs_distance(crystal(name), b)
        assert not curve.failures
        found[name] = len(curve.kinks)
        where[name] = ", ".join(f"{lo:.0f}-{hi:.0f}" for lo, hi in curve.kinks)
    ok = found == expected
    report(7, ok, "kinks over 1 nm - 5 um: " + "; ".join(
        f"{k} {found[k]} (expect {v}) at [{where[k]}] nm" for k, v in expected.items()))
    assert found == expected


def test_criterion_8_invariants(report):
    rng = np.random.default_rng(8)
    results = {}

    n = 10_000
    kc = 10 ** rng.uniform(-3, 3, n)
    w = rng.uniform(0, 1, n) * kc
    eo, ee = 10 ** rng.uniform(0, 4, n), 10 ** rng.uniform(0, 4, n)
    zeta = rng.uniform(-np.pi, np.pi, n)
    mats = [IsotropicMetal(lambda x: eo).matrix(w, kc),
            UniaxialPlate(lambda x: eo, lambda x: ee, zeta).matrix(w, kc),
            iron(rng.uniform(0, np.pi, n), rng.uniform(-np.pi, np.pi, n)).matrix(w, kc, zeta),
            crystal("batio3", zeta).matrix(w, kc)]
    results["|r| <= 1"] = max(np.abs(m.as_array()).max() for m in mats) <= 1 + 1e-12

    rss, rsp, rpp = uniaxial_coefficients(eo, eo, w, kc, zeta)
    dev = max(np.abs(rss - fresnel_ss((w, kc), eo)).max(),
              np.abs(rpp - fresnel_pp((w, kc), eo)).max(), np.abs(rsp).max())
    results["uniaxial->isotropic"] = dev <= 1e-12

    fe = iron(theta=np.pi / 2)
    eps = crystal("quartz").eps_o
    zetas = np.linspace(0, np.pi, 7)
    vals, _, _ = lifshitz_integral(UniaxialPlate(eps, eps, zetas), fe, 10.0)
    results["azimuthal invariance"] = np.allclose(vals, vals[0], rtol=1e-12, atol=0)

    ang = np.linspace(0, 2 * np.pi, 17)[:-1]
    vals, _, _ = lifshitz_integral(crystal("calcite"), fe.oriented(phi=ang), 10.0,
                                   baseline=fe.without_kerr())
    s = scan_inplane(crystal("calcite"), iron(), 10.0)
    e = s.delta_e
    results["scan pi-periodic"] = np.allclose(vals[:8], vals[8:], rtol=1e-9, atol=0)
    results["scan symmetric"] = np.allclose(e[1:], e[1:][::-1], rtol=0,
                                            atol=1e-6 * e.max())

    sl, w0, g = 20.0, 2.0, 0.5
    x = np.logspace(-4, 4, 3201)
    eps_x = 1 + lorentz_sum(x, [(sl, w0, g)])
    table = OpticalDataTable(x, eps_x.real, eps_x.imag)
    wi = np.logspace(-2, 2, 41)
    exact = 1 + lorentz_sum_imaginary(wi, [(sl, w0, g)])
    kk_dev = np.max(np.abs(kk_diagonal(table, wi) / exact - 1))
    results["KK Lorentz oracle"] = kk_dev < 5e-3

    failed = [k for k, v in results.items() if not v]
    report(8, not failed, f"{len(results)} invariants, failed: {failed or 'none'} "
                          f"(KK deviation {kk_dev:.1e})")
    assert not failed
