"""Command-line front end: JSON run configurations in, CSV/JSON tables out.

    kerrcasimir energy        --config run.json [--out f] [--format csv|json]
    kerrcasimir decompose     ...
    kerrcasimir scan-angle    ...
    kerrcasimir scan-distance ...
    kerrcasimir validate      --config run.json

A configuration is a JSON object::

    {
      "mirror_a": {"model": "crystal", "name": "batio3"},
      "mirror_b": {"model": "iron"},
      "distances": [10, 100]            or {"min": 1, "max": 5000, "per_decade": 12},
      "angles": 16,
      "quadrature": {"rel_tol": 1e-7, "phi_samples": 16},
      "radii_um": {"disk": 10, "sphere": 100, "plate": 100}
    }

Mirror models: ``perfect``, ``gold``, ``iron``, ``crystal``, ``isotropic``,
``ferromagnet`` and ``uniaxial``; the last three take dielectric specs
(``{"drude": {...}}``, ``{"two_oscillator": {...}}``, ``{"constant": x}``
or ``{"table": "file.csv", "drude": {...}}``). Relative paths are taken
relative to the configuration file.

Exit status: 0 success, 1 configuration error, 2 numeric failure (the
output is still written, failed points as NaN).
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from . import anisotropy as an
from . import materials
from .casimir import (QuadratureConfig, casimir_energy_decomposed,
                      casimir_energy_general, casimir_force,
                      casimir_force_decomposed, magnetic_energy)
from .dielectric import (CONDUCTIVITY, DIAGONAL, OFF_DIAGONAL, PERMITTIVITY,
                         ConstantModel, DrudeModel, DrudeParams,
                         KramersKronigModel, TableError, TwoOscillatorModel,
                         TwoOscillatorParams, check_model,
                         composite_metal_model, read_table)
from .quadrature import IntegrationError
from .reflection import (Ferromagnet, IsotropicMetal, PerfectMirror,
                         UniaxialPlate, check_mirror)

log = logging.getLogger("kerrcasimir")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending field."""


# -- configuration ----------------------------------------------------------------

def load_config(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}, column {exc.colno}: "
                          f"{exc.msg}") from None
    if not isinstance(cfg, dict):
        raise ConfigError(f"{path}: top level must be an object")
    return cfg


def config_digest(cfg, overrides=None):
    blob = json.dumps({"config": cfg, "overrides": overrides or {}},
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _get(obj, key, where, kind=None, default=...):
    if key not in obj:
        if default is ...:
            raise ConfigError(f"{where}: missing field '{key}'")
        return default
    val = obj[key]
    if kind is float:
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            raise ConfigError(f"{where}.{key}: expected a number, got {val!r}")
        return float(val)
    if kind is not None and not isinstance(val, kind):
        raise ConfigError(f"{where}.{key}: expected {kind.__name__}, got {val!r}")
    return val


def _drude(spec, where):
    try:
        return DrudeParams(_get(spec, "plasma_frequency", where, float),
                           _get(spec, "relaxation_rate", where, float))
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{where}: {exc}") from None


def _two_osc(spec, where):
    try:
        return TwoOscillatorParams(**{k: _get(spec, k, where, float)
                                      for k in ("c_ir", "c_uv", "w_ir", "w_uv")})
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{where}: {exc}") from None


def _table(spec, key, where, base, kind):
    path = Path(_get(spec, key, where, str))
    if not path.is_absolute():
        path = base / path
    if not path.exists():
        raise ConfigError(f"{where}.{key}: file not found: {path}")
    try:
        return read_table(path, kind)
    except TableError as exc:
        raise ConfigError(str(exc)) from None


def build_dielectric(spec, where, base):
    if not isinstance(spec, dict):
        raise ConfigError(f"{where}: expected an object")
    if "constant" in spec:
        val = _get(spec, "constant", where, float)
        if val < 1:
            raise ConfigError(f"{where}.constant: must be >= 1")
        return ConstantModel(val)
    if "two_oscillator" in spec:
        return TwoOscillatorModel(_two_osc(spec["two_oscillator"],
                                           f"{where}.two_oscillator"))
    if "table" in spec:
        table = _table(spec, "table", where, base, DIAGONAL)
        if "drude" in spec:
            return composite_metal_model(table, _drude(spec["drude"], f"{where}.drude"))
        return KramersKronigModel(table)
    if "drude" in spec:
        return DrudeModel(_drude(spec["drude"], f"{where}.drude"))
    raise ConfigError(f"{where}: need one of constant, drude, two_oscillator, table")


def build_mirror(spec, where, base=Path(".")):
    if not isinstance(spec, dict):
        raise ConfigError(f"{where}: expected an object")
    model = _get(spec, "model", where, str)
    angle = lambda k: _get(spec, k, where, float, 0.0)
    if model == "perfect":
        return PerfectMirror()
    if model == "gold":
        return materials.gold(drude_only=_get(spec, "drude_only", where, bool, False))
    if model == "iron":
        m = materials.iron(angle("theta"), angle("phi"),
                           drude_only=_get(spec, "drude_only", where, bool, False))
    elif model == "crystal":
        name = _get(spec, "name", where, str)
        if name.lower() not in materials.CRYSTALS:
            raise ConfigError(f"{where}.name: unknown crystal {name!r} "
                              f"(known: {', '.join(materials.CRYSTALS)})")
        return materials.crystal(name, angle("zeta"))
    elif model == "isotropic":
        return IsotropicMetal(build_dielectric(_get(spec, "eps", where),
                                               f"{where}.eps", base))
    elif model == "uniaxial":
        return UniaxialPlate(
            build_dielectric(_get(spec, "ordinary", where), f"{where}.ordinary", base),
            build_dielectric(_get(spec, "extraordinary", where),
                             f"{where}.extraordinary", base),
            angle("zeta"))
    elif model == "ferromagnet":
        exx = build_dielectric(_get(spec, "eps_xx", where), f"{where}.eps_xx", base)
        kernel = _get(spec, "kernel", where, str, CONDUCTIVITY)
        if kernel not in (PERMITTIVITY, CONDUCTIVITY):
            raise ConfigError(f"{where}.kernel: must be '{PERMITTIVITY}' "
                              f"or '{CONDUCTIVITY}'")
        exy = KramersKronigModel(
            _table(spec, "eps_xy_table", where, base, OFF_DIAGONAL), kernel=kernel)
        m = Ferromagnet(exx, exy, angle("theta"), angle("phi"))
    else:
        raise ConfigError(f"{where}.model: unknown model {model!r}")
    scale = _get(spec, "kerr_scale", where, float, 1.0)
    return m if scale == 1.0 else m.with_kerr_scale(scale)


def build_distances(cfg):
    spec = _get(cfg, "distances", "config")
    if isinstance(spec, (int, float)) and not isinstance(spec, bool):
        d = np.array([float(spec)])
    elif isinstance(spec, list):
        if not spec:
            raise ConfigError("config.distances: empty list")
        try:
            d = np.array(spec, dtype=float)
        except (TypeError, ValueError):
            raise ConfigError("config.distances: list must hold numbers") from None
    elif isinstance(spec, dict):
        lo = _get(spec, "min", "config.distances", float)
        hi = _get(spec, "max", "config.distances", float)
        per = _get(spec, "per_decade", "config.distances", float, 12.0)
        if not 0 < lo < hi or per <= 0:
            raise ConfigError("config.distances: need 0 < min < max, per_decade > 0")
        d = an.default_distance_grid(lo, hi, per)
    else:
        raise ConfigError("config.distances: expected number, list or object")
    if np.any(~(d > 0)):
        raise ConfigError("config.distances: distances must be > 0 nm")
    return d


def build_quadrature(cfg, rel_tol=None):
    spec = dict(cfg.get("quadrature", {}))
    if rel_tol is not None:
        spec["rel_tol"] = rel_tol
    allowed = {"rel_tol", "abs_tol", "max_subdivisions", "phi_samples", "u_max"}
    extra = set(spec) - allowed
    if extra:
        raise ConfigError(f"config.quadrature: unknown field(s) {sorted(extra)}")
    try:
        return QuadratureConfig(**spec)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"config.quadrature: {exc}") from None


class Run:
    """A parsed configuration."""

    def __init__(self, cfg, base=Path("."), rel_tol=None, threads=1):
        self.cfg = cfg
        self.a = build_mirror(_get(cfg, "mirror_a", "config"), "mirror_a", base)
        self.b = build_mirror(_get(cfg, "mirror_b", "config"), "mirror_b", base)
        self.distances = build_distances(cfg)
        self.q = build_quadrature(cfg, rel_tol)
        self.n_angles = int(_get(cfg, "angles", "config", float, 16))
        if self.n_angles < 8:
            raise ConfigError("config.angles: need at least 8")
        self.radii = _get(cfg, "radii_um", "config", dict, {})
        self.threads = max(1, int(threads))
        self.digest = config_digest(cfg, {"rel_tol": rel_tol} if rel_tol else None)

    def map(self, fn, items):
        if self.threads > 1:
            with ThreadPoolExecutor(self.threads) as pool:
                return list(pool.map(fn, items))
        return [fn(x) for x in items]


# -- commands -----------------------------------------------------------------------

class Table:
    """Rows with unit-tagged columns, plus a free-form summary."""

    def __init__(self, columns):
        self.columns = columns          # [(name, unit)]
        self.rows = []
        self.summary = {}
        self.failures = []


def _safe(fn, d, failures):
    try:
        return fn(d)
    except (IntegrationError, FloatingPointError, ArithmeticError, ValueError) as exc:
        failures.append({"distance_nm": float(d), "error": str(exc)})
        return None


def cmd_energy(run):
    magnetic = isinstance(run.b, Ferromagnet)
    cols = [("distance", "nm"), ("energy", "J/m^2"), ("energy_error", "J/m^2"),
            ("force", "N/m^2"), ("force_error", "N/m^2")]
    if magnetic:
        cols.append(("magnetic_energy", "J/m^2"))
    t = Table(cols)

    def point(d):
        e = casimir_energy_general(run.a, run.b, d, run.q)
        f = casimir_force(run.a, run.b, d, run.q)
        row = [d, e.value, e.estimated_error, f.value, f.estimated_error]
        if magnetic:
            row.append(magnetic_energy(run.a, run.b, d, run.q).value)
        return row

    for d, row in zip(run.distances, run.map(lambda d: _safe(point, d, t.failures),
                                             run.distances)):
        t.rows.append(row if row else [d] + [np.nan] * (len(cols) - 1))
    return t


def cmd_decompose(run):
    t = Table([("distance", "nm"), ("e0", "J/m^2"), ("e_perp", "J/m^2"),
               ("e_par1", "J/m^2"), ("e_par2", "J/m^2"), ("anisotropy", "J/m^2"),
               ("f_perp", "N/m^2"), ("f_par1", "N/m^2"), ("f_par2", "N/m^2"),
               ("force_anisotropy", "N/m^2"), ("disk_force", "N")])
    radius = float(run.radii.get("disk", 10.0))

    def point(d):
        e = casimir_energy_decomposed(run.a, run.b, d, run.q)
        f = casimir_force_decomposed(run.a, run.b, d, run.q)
        return [d, e.e0, e.e_perp, e.e_par1, e.e_par2, e.anisotropy,
                f.e_perp, f.e_par1, f.e_par2, f.anisotropy,
                an.disk_force(abs(f.anisotropy), radius)]

    for d, row in zip(run.distances, run.map(lambda d: _safe(point, d, t.failures),
                                             run.distances)):
        t.rows.append(row if row else [d] + [np.nan] * 10)
    ok = [r for r in t.rows if np.isfinite(r[5])]
    t.summary = {
        "disk_radius_um": radius,
        "easy_axis": {f"{r[0]:.6g}": "perpendicular" if r[5] < 0 else "in-plane"
                      for r in ok},
    }
    return t


def _scan(run, d):
    if isinstance(run.a, UniaxialPlate):
        return an.scan_inplane(run.a, run.b, d, run.n_angles, run.q)
    return an.scan_outofplane(run.a, run.b, d, run.n_angles, run.q)


def cmd_scan_angle(run):
    if not isinstance(run.b, Ferromagnet):
        raise ConfigError("mirror_b: angle scans need a ferromagnetic mirror")
    angle = "delta_phi" if isinstance(run.a, UniaxialPlate) else "theta"
    t = Table([("distance", "nm"), (angle, "rad"), ("delta_e", "J/m^2"),
               ("fit", "J/m^2"), ("torque", "N*m")])
    sphere = float(run.radii.get("sphere", 100.0))
    plate = float(run.radii.get("plate", 100.0))
    scans = run.map(lambda d: _safe(lambda x: _scan(run, x), d, t.failures),
                    run.distances)
    t.summary["scans"] = []
    for d, s in zip(run.distances, scans):
        if s is None:
            continue
        _, tau = an.torque(s, plate)
        fit = s.signed_amplitude * np.sin(s.angles) ** 2
        fit = fit - fit.min()
        for row in zip(np.full(len(s.angles), d), s.angles, s.delta_e, fit, tau):
            t.rows.append(list(row))
        entry = {"distance_nm": float(d), "fit_class": s.fit_class,
                 "amplitude_j_m2": s.fit_amplitude,
                 "signed_amplitude_j_m2": s.signed_amplitude,
                 "fit_residual": s.fit_offset_residual}
        if angle == "delta_phi":
            entry["proximity_force_n"] = an.proximity_force(s.fit_amplitude, sphere)
            entry["peak_torque_n_m"] = an.peak_torque(s, plate)
        else:
            entry["easy_axis"] = an.easy_axis(s)
        t.summary["scans"].append(entry)
    t.summary["radii_um"] = {"sphere": sphere, "plate": plate}
    return t


def cmd_scan_distance(run):
    if not isinstance(run.a, UniaxialPlate) or not isinstance(run.b, Ferromagnet):
        raise ConfigError("scan-distance needs a uniaxial mirror_a and a "
                          "ferromagnetic mirror_b")
    curve = an.amplitude_vs_distance(run.a, run.b, run.distances, run.q,
                                     run.n_angles, workers=run.threads)
    t = Table([("distance", "nm"), ("signed_amplitude", "J/m^2"),
               ("amplitude", "J/m^2"), ("fit_residual", "1")])
    for d, s in zip(curve.distances, curve.scans):
        if s is None:
            t.rows.append([d, np.nan, np.nan, np.nan])
        else:
            t.rows.append([d, s.signed_amplitude, s.fit_amplitude,
                           s.fit_offset_residual])
    t.failures = [{"distance_nm": d, "error": e} for d, e in curve.failures]
    t.summary = {"kinks_nm": [list(k) for k in curve.kinks],
                 "kink_count": len(curve.kinks),
                 "classes": [s.fit_class if s else None for s in curve.scans]}
    return t


COMMANDS = {
    "energy": cmd_energy,
    "decompose": cmd_decompose,
    "scan-angle": cmd_scan_angle,
    "scan-distance": cmd_scan_distance,
}


def validate(cfg, base=Path(".")):
    """Diagnostics for a configuration (empty list when it is usable)."""
    out = []
    try:
        run = Run(cfg, base)
    except ConfigError as exc:
        return [str(exc)]
    for label, m in (("mirror_a", run.a), ("mirror_b", run.b)):
        out += [f"{label}: {p}" for p in check_mirror(m)]
        for attr in ("eps", "eps_xx", "eps_o", "eps_e"):
            model = getattr(m, attr, None)
            if model is not None:
                out += [f"{label}.{attr}: {p}" for p in check_model(model)]
    if np.any(np.diff(run.distances) <= 0) and len(run.distances) > 1:
        out.append("config.distances: not strictly increasing")
    return out


# -- output -------------------------------------------------------------------------

def _fmt(x):
    if isinstance(x, (float, np.floating)):
        return "nan" if not np.isfinite(x) else format(float(x), ".12g")
    return str(x)


def render(table, command, digest, fmt):
    if fmt == "json":
        doc = {
            "tool": "kerrcasimir", "version": __version__,
            "config_digest": digest, "command": command,
            "columns": [{"name": n, "unit": u} for n, u in table.columns],
            "rows": [[None if isinstance(v, float) and not np.isfinite(v)
                      else float(v) for v in r] for r in table.rows],
            "summary": table.summary,
            "failures": table.failures,
        }
        return json.dumps(doc, indent=2, sort_keys=True, default=float) + "\n"
    buf = io.StringIO()
    buf.write(f"# kerrcasimir {__version__} {command} config_digest={digest}\n")
    if table.summary:
        buf.write("# summary " + json.dumps(table.summary, sort_keys=True,
                                             default=float) + "\n")
    buf.write(",".join(f"{n}({u})" for n, u in table.columns) + "\n")
    for r in table.rows:
        buf.write(",".join(_fmt(v) for v in r) + "\n")
    return buf.getvalue()


def _parser():
    p = argparse.ArgumentParser(prog="kerrcasimir", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in list(COMMANDS) + ["validate"]:
        s = sub.add_parser(name)
        s.add_argument("--config", required=True, help="JSON run configuration")
        s.add_argument("--out", help="output file (default: stdout)")
        s.add_argument("--format", choices=("csv", "json"), default="csv")
        s.add_argument("--rel-tol", type=float, help="override quadrature rel_tol")
        s.add_argument("--threads", type=int, default=1)
        s.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None):
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    base = Path(args.config).resolve().parent
    try:
        cfg = load_config(args.config)
        if args.command == "validate":
            problems = validate(cfg, base)
            for msg in problems:
                print(msg)
            if not problems:
                print("ok")
            return EXIT_CONFIG if problems else EXIT_OK
        run = Run(cfg, base, args.rel_tol, args.threads)
        table = COMMANDS[args.command](run)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    text = render(table, args.command, run.digest, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    for f in table.failures:
        print(f"numeric failure at D = {f['distance_nm']:g} nm: {f['error']}",
              file=sys.stderr)
    return EXIT_NUMERIC if table.failures else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
