"""Config-driven experiment runner.

One flat config (TOML file, overridden by CLI flags) selects a geometry and
an operation; every JSON record carries the sha256 of the resolved config so
artifacts are traceable, and all output is deterministic: fixed summation
orders, sorted keys, no wall-clock anywhere.  Floating-point values are
emitted at 17 significant digits (CSV/stderr) or as exact round-trip JSON
numbers.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import hashlib
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, fields

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

import numpy as np

from .asymptotics import (
    diffraction_coefficient_mode,
    diffraction_kernel,
    verify_theorem_1_1,
    verify_theorem_1_2,
)
from .bessel import bessel_j, bessel_j_deriv, bessel_y, bessel_y_deriv
from .cross_section import (
    BoundaryCondition,
    ConeGeometry,
    CrossSectionSpec,
    build_cross_section,
    modes,
)
from .errors import ConekitError, ConfigInvalid
from .kernel import halfwave_mode_kernel, sine_mode_kernel_batch
from .radiation import (
    radiation_field_mode,
    scattering_matrix_from_radiation,
    scattering_operator_kernel_mode,
)
from .scattering import (
    extract_in_out,
    radial_solution,
    scattering_eigenvalue,
    scattering_kernel,
)

__all__ = ["ExperimentConfig", "run", "main"]

_OPERATIONS = (
    "modes",
    "bessel-table",
    "kernel",
    "scattering",
    "diffraction",
    "radiation",
    "verify",
)

_BESSEL_NUS = (0.0, 0.3, 0.5, 1.0, 2.7, 5.0, 10.5, 30.0)
_BESSEL_ZS = (0.1, 1.0, 10.0, 50.0, 200.0)


def _f17(x: float) -> str:
    return format(float(x), ".17g")


def _jf(x) -> float:
    # identity on the value; pins the printed form to 17 significant digits
    return float(_f17(x))


def _jc(z) -> dict:
    z = complex(z)
    return {"im": _jf(z.imag), "re": _jf(z.real)}


@dataclass(frozen=True)
class ExperimentConfig:
    operation: str = "verify"
    # geometry
    model: str = "circle"
    n: int = 2
    circumference: float = 2.0 * math.pi
    length: float = math.pi
    bc: str = "dirichlet"
    table_path: str = ""
    # mode selection
    modes: int = 8
    mode_index: int = 1
    # base points and spectral parameters
    lam: tuple = (1.0,)
    r: float = 1.0
    r_prime: float = 1.0
    theta: float = 0.0
    theta_prime: float = 1.0
    abel_eps: float = 0.1
    j_max: int = 8000
    lambda_max: float = 1.0e3
    # kernel traces
    kernel: str = "sine"
    t_min: float = 0.5
    t_max: float = 6.0
    t_points: int = 56
    # radiation
    s_min: float = -6.0
    s_max: float = 4.0
    s_step: float = 0.25
    r_ladder: tuple = (200.0, 400.0, 800.0)
    # tolerances
    tol_bessel: float = 1.0e-10
    tol_wronskian: float = 1.0e-9
    tol_scattering: float = 1.0e-6
    tol_theorem11: float = 1.0e-4
    tol_half: float = 1.0e-3
    slope_band: float = 0.15
    tol_identity: float = 1.0e-12
    tol_vanishing: float = 1.0e-3
    tol_radiation: float = 1.0e-3
    # artifacts
    out: str = ""
    emit: str = "jsonl,csv"


def config_to_dict(cfg: ExperimentConfig) -> dict:
    d = asdict(cfg)
    for k, v in d.items():
        if isinstance(v, tuple):
            d[k] = list(v)
    return d


def config_from_dict(d: dict) -> ExperimentConfig:
    names = {f.name for f in fields(ExperimentConfig)}
    unknown = sorted(set(d) - names)
    if unknown:
        raise ConfigInvalid(f"unknown config key {unknown[0]!r}")
    kw = {}
    for k, v in d.items():
        if isinstance(v, list):
            kw[k] = tuple(v)
        else:
            kw[k] = v
    return ExperimentConfig(**kw)


def config_hash(cfg: ExperimentConfig) -> str:
    d = config_to_dict(cfg)
    # the artifact directory is plumbing, not experiment identity: the same
    # experiment written to two directories must produce identical reports
    d.pop("out")
    blob = json.dumps(d, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def validate(cfg: ExperimentConfig) -> None:
    def bad(key, why):
        raise ConfigInvalid(f"config key {key!r}: {why}")

    if cfg.operation not in _OPERATIONS:
        bad("operation", f"must be one of {_OPERATIONS}")
    if cfg.model not in ("circle", "interval", "sphere2", "tabulated"):
        bad("model", "must be circle | interval | sphere2 | tabulated")
    if cfg.bc not in ("dirichlet", "neumann"):
        bad("bc", "must be dirichlet | neumann")
    if cfg.kernel not in ("sine", "halfwave"):
        bad("kernel", "must be sine | halfwave")
    if cfg.n < 2:
        bad("n", "total dimension must be >= 2")
    if cfg.modes < 1:
        bad("modes", "must be >= 1")
    if not (0 <= cfg.mode_index < cfg.modes):
        bad("mode_index", f"must lie in [0, modes) = [0, {cfg.modes})")
    if cfg.model == "circle" and cfg.circumference <= 0:
        bad("circumference", "must be > 0")
    if cfg.model == "interval" and cfg.length <= 0:
        bad("length", "must be > 0")
    if cfg.model == "tabulated" and not cfg.table_path:
        bad("table_path", "required for the tabulated model")
    if len(cfg.lam) < 1 or any(v == 0 for v in cfg.lam):
        bad("lam", "needs at least one nonzero value")
    for key in ("r", "r_prime", "abel_eps", "lambda_max", "s_step"):
        if getattr(cfg, key) <= 0:
            bad(key, "must be > 0")
    if cfg.j_max < 1:
        bad("j_max", "must be >= 1")
    if cfg.t_points < 2 or cfg.t_max <= cfg.t_min:
        bad("t_points", "t grid needs t_max > t_min and >= 2 points")
    if cfg.s_max <= cfg.s_min:
        bad("s_max", "s grid needs s_max > s_min")
    if len(cfg.r_ladder) < 2 or any(
        b <= a for a, b in zip(cfg.r_ladder, cfg.r_ladder[1:])
    ):
        bad("r_ladder", "must be strictly increasing with >= 2 rungs")
    for key in (
        "tol_bessel",
        "tol_wronskian",
        "tol_scattering",
        "tol_theorem11",
        "tol_half",
        "slope_band",
        "tol_identity",
        "tol_vanishing",
        "tol_radiation",
    ):
        if getattr(cfg, key) <= 0:
            bad(key, "tolerances must be positive")
    for fmt in cfg.emit.split(","):
        if fmt not in ("jsonl", "csv"):
            bad("emit", "comma list over {jsonl, csv}")


def _thread_cap() -> int:
    raw = os.environ.get("CONEKIT_THREADS", "")
    try:
        cap = int(raw) if raw else 1
    except ValueError:
        raise ConfigInvalid(f"CONEKIT_THREADS must be an integer, got {raw!r}")
    return max(cap, 1)


def _ordered_map(fn, items):
    """Map preserving input order; parallel only when CONEKIT_THREADS > 1."""
    cap = _thread_cap()
    if cap == 1:
        return [fn(it) for it in items]
    with concurrent.futures.ThreadPoolExecutor(max_workers=cap) as ex:
        return list(ex.map(fn, items))


def build_geometry(cfg: ExperimentConfig):
    if cfg.model == "circle":
        spec = CrossSectionSpec(kind="circle", circumference=cfg.circumference)
        need_n = 2
    elif cfg.model == "interval":
        spec = CrossSectionSpec(
            kind="interval", length=cfg.length, bc=BoundaryCondition(cfg.bc)
        )
        need_n = 2
    elif cfg.model == "sphere2":
        spec = CrossSectionSpec(kind="sphere2")
        need_n = 3
    else:
        with open(cfg.table_path) as fh:
            spec = CrossSectionSpec(kind="tabulated", table_text=fh.read())
        need_n = 2
    if cfg.n != need_n:
        raise ConfigInvalid(f"config key 'n': model {cfg.model!r} requires n = {need_n}")
    geom = ConeGeometry(n=cfg.n, cross_section=build_cross_section(spec))
    return geom, modes(geom, cfg.modes)


def _point(cfg: ExperimentConfig, value: float):
    # sphere2 points are (polar, azimuth); scalar config angles sit on the
    # azimuth = 0 meridian, which reaches every geodesic distance
    if cfg.model == "sphere2":
        return (value, 0.0)
    return value


# ---------------------------------------------------------------- operations


def _cmd_modes(cfg, geom, mode_list):
    records, rows = [], [("index", "mu", "nu")]
    ok = True
    for m in mode_list:
        mu = math.sqrt(m.mu_sq)
        dev = abs(m.nu**2 - m.mu_sq - geom.alpha**2)
        ok = ok and dev <= 1e-12
        records.append(
            {
                "check": "mode-spectrum",
                "index": m.index,
                "mu": _jf(mu),
                "nu": _jf(m.nu),
                "shift_identity_dev": _jf(dev),
                "pass": dev <= 1e-12,
            }
        )
        rows.append((str(m.index), _f17(mu), _f17(m.nu)))
    return records, {"modes.csv": rows}, ok


def _cmd_bessel_table(cfg, geom, mode_list):
    records, rows = [], [("nu", "z", "J", "Y", "wronskian_rel_dev")]
    ok = True
    for nu in _BESSEL_NUS:
        for z in _BESSEL_ZS:
            j, y = float(bessel_j(nu, z)), float(bessel_y(nu, z))
            jp, yp = float(bessel_j_deriv(nu, z)), float(bessel_y_deriv(nu, z))
            wron = (j * yp - jp * y) * (math.pi * z / 2.0) - 1.0
            good = abs(wron) <= cfg.tol_wronskian
            ok = ok and good
            records.append(
                {
                    "check": "bessel-wronskian",
                    "nu": _jf(nu),
                    "z": _jf(z),
                    "J": _jf(j),
                    "Y": _jf(y),
                    "wronskian_rel_dev": _jf(wron),
                    "pass": good,
                }
            )
            rows.append((_f17(nu), _f17(z), _f17(j), _f17(y), _f17(wron)))
    return records, {"bessel_table.csv": rows}, ok


def _cmd_kernel(cfg, geom, mode_list):
    mode = mode_list[cfg.mode_index]
    ts = np.linspace(cfg.t_min, cfg.t_max, cfg.t_points)
    rows = [("t", "value_re", "value_im", "est_err")]
    if cfg.kernel == "sine":
        vals, errs = sine_mode_kernel_batch(geom, mode, ts, cfg.r, cfg.r_prime)
        for t, v, e in zip(ts, vals, errs):
            rows.append((_f17(t), _f17(v), _f17(0.0), _f17(e)))
        peak = float(np.max(np.abs(vals)))
        err = float(np.max(errs))
    else:
        peak, err = 0.0, 0.0
        for t in ts:
            kv = halfwave_mode_kernel(geom, mode, float(t), cfg.r, cfg.r_prime)
            rows.append((_f17(t), _f17(kv.value.real), _f17(kv.value.imag), _f17(kv.est_err)))
            peak = max(peak, abs(kv.value))
            err = max(err, kv.est_err)
    records = [
        {
            "check": "kernel-trace",
            "kernel": cfg.kernel,
            "mode_index": mode.index,
            "nu": _jf(mode.nu),
            "r": _jf(cfg.r),
            "r_prime": _jf(cfg.r_prime),
            "points": cfg.t_points,
            "peak_abs": _jf(peak),
            "max_est_err": _jf(err),
            "pass": bool(np.isfinite(peak)),
        }
    ]
    return records, {"kernel_trace.csv": rows}, bool(np.isfinite(peak))


def _scattering_case(geom, cfg, mode, lam):
    target = scattering_eigenvalue(geom, mode, "+" if lam > 0 else "-")
    r_max = 60.0 * (mode.nu + 1.0) / abs(lam)
    sol = radial_solution(geom, mode, abs(lam), r_max, source="ode-integrated")
    fit = extract_in_out(sol, geom)
    ratio = fit.a_plus / fit.a_minus
    err = abs(ratio - target)
    return {
        "check": "scattering-ode",
        "mode_index": mode.index,
        "nu": _jf(mode.nu),
        "lambda": _jf(lam),
        "ratio": _jc(ratio),
        "target": _jc(target),
        "abs_err": _jf(err),
        "fit_residual": _jf(fit.fit_residual),
        "pass": err <= cfg.tol_scattering,
    }


def _cmd_scattering(cfg, geom, mode_list):
    cases = [(m, lam) for lam in cfg.lam for m in mode_list]
    records = _ordered_map(lambda c: _scattering_case(geom, cfg, c[0], c[1]), cases)
    ok = all(r["pass"] for r in records)
    return records, {}, ok


def _cmd_diffraction(cfg, geom, mode_list):
    records = []
    dk = diffraction_kernel(
        geom, _point(cfg, cfg.theta), _point(cfg, cfg.theta_prime),
        cfg.r, cfg.r_prime, cfg.abel_eps, cfg.j_max,
    )
    records.append(
        {
            "check": "diffraction-kernel",
            "theta": _jf(cfg.theta),
            "theta_prime": _jf(cfg.theta_prime),
            "r": _jf(cfg.r),
            "r_prime": _jf(cfg.r_prime),
            "value": _jc(dk.value),
            "est_err": _jf(dk.est_err),
            "pass": True,
        }
    )
    for m in mode_list:
        records.append(
            {
                "check": "diffraction-coefficient",
                "mode_index": m.index,
                "nu": _jf(m.nu),
                "K0": _jc(diffraction_coefficient_mode(geom, m, cfg.r, cfg.r_prime)),
                "pass": True,
            }
        )
    return records, {}, True


def _cmd_radiation(cfg, geom, mode_list):
    mode = mode_list[cfg.mode_index]
    n_s = int(round((cfg.s_max - cfg.s_min) / cfg.s_step)) + 1
    s_grid = np.linspace(cfg.s_min, cfg.s_max, n_s)
    trace = radiation_field_mode(geom, mode, cfg.r_prime, s_grid, cfg.r_ladder)
    rows = [("s", "w", "est_err")]
    for s, w, e in zip(trace.s_grid, trace.values, trace.est_err):
        rows.append((_f17(s), _f17(w), _f17(e)))
    records = [
        {
            "check": "radiation-trace",
            "mode_index": mode.index,
            "nu": _jf(mode.nu),
            "r_prime": _jf(cfg.r_prime),
            "ladder_residuals": [_jf(v) for v in trace.extrapolation_residuals],
            "pass": True,
        }
    ]
    ok = True
    ktrace = scattering_operator_kernel_mode(geom, mode, np.arange(-32.0, 32.0 + 1e-12, 0.1), cfg.r_ladder)
    for lam in cfg.lam:
        S = scattering_matrix_from_radiation(geom, mode, lam, kernel_trace=ktrace)
        target = scattering_eigenvalue(geom, mode, "+" if lam > 0 else "-")
        err = abs(S - target)
        good = err <= cfg.tol_radiation
        ok = ok and good
        records.append(
            {
                "check": "radiation-smatrix",
                "mode_index": mode.index,
                "nu": _jf(mode.nu),
                "lambda": _jf(lam),
                "S": _jc(S),
                "target": _jc(target),
                "abs_err": _jf(err),
                "pass": good,
            }
        )
    return records, {"radiation_trace.csv": rows}, ok


def _cmd_verify(cfg, geom, mode_list):
    records = []

    # mode spectrum shift identity
    dev = max(abs(m.nu**2 - m.mu_sq - geom.alpha**2) for m in mode_list)
    records.append(
        {"check": "mode-spectrum", "max_dev": _jf(dev), "pass": dev <= 1e-12}
    )

    # Wronskian on the reference grid
    worst = 0.0
    for nu in _BESSEL_NUS:
        for z in _BESSEL_ZS:
            wron = (
                float(bessel_j(nu, z)) * float(bessel_y_deriv(nu, z))
                - float(bessel_j_deriv(nu, z)) * float(bessel_y(nu, z))
            ) * (math.pi * z / 2.0) - 1.0
            worst = max(worst, abs(wron))
    records.append(
        {
            "check": "bessel-wronskian",
            "max_rel_dev": _jf(worst),
            "pass": worst <= cfg.tol_wronskian,
        }
    )

    # ODE route to the scattering matrix
    cases = [(m, lam) for lam in cfg.lam for m in mode_list]
    records.extend(_ordered_map(lambda c: _scattering_case(geom, cfg, c[0], c[1]), cases))

    # Theorem 1.1 / 1.2 per mode
    def _theorem_case(mode):
        rmin = min(cfg.r, cfg.r_prime)
        lo = max(1.05 * 3.0 * (mode.nu + 1.0) / rmin, 10.0)
        grid11 = np.geomspace(lo, cfg.lambda_max, 160)
        rep = verify_theorem_1_1(
            geom, mode, cfg.r, cfg.r_prime, grid11, tol=cfg.tol_theorem11
        )
        grid12 = np.geomspace(max(lo, 100.0), 1.0e4, 160)
        _, int_fit, half_ok, slope_ok = verify_theorem_1_2(
            geom,
            mode,
            cfg.r,
            cfg.r_prime,
            grid12,
            half_tol=cfg.tol_half,
            slope_band=cfg.slope_band,
        )
        rec11 = {
            "check": "theorem-1.1",
            "mode_index": mode.index,
            "nu": _jf(mode.nu),
            "extracted_K0": _jc(rep.extracted_K0),
            "predicted_K0": _jc(rep.predicted),
            "rel_err": _jf(rep.rel_err),
            "pass": rep.passes,
        }
        rec12 = {
            "check": "theorem-1.2",
            "mode_index": mode.index,
            "nu": _jf(mode.nu),
            "half_coeffs_small": half_ok,
            "remainder_slope": _jf(int_fit.decay_slope)
            if not math.isnan(int_fit.decay_slope)
            else None,
            "remainder_decays": slope_ok,
            "pass": half_ok and slope_ok,
        }
        return [rec11, rec12]

    for pair in _ordered_map(_theorem_case, mode_list):
        records.extend(pair)

    # kernel-level Theorem 1.1 identity (shared-summand exactness)
    dk = diffraction_kernel(
        geom, _point(cfg, cfg.theta), _point(cfg, cfg.theta_prime),
        cfg.r, cfg.r_prime, cfg.abel_eps, cfg.j_max,
    )
    sk = scattering_kernel(
        geom, "+", _point(cfg, cfg.theta), _point(cfg, cfg.theta_prime), cfg.abel_eps, cfg.j_max
    )
    lhs = dk.value * 2.0 * math.pi * (cfg.r * cfg.r_prime) ** ((geom.n - 1.0) / 2.0)
    iden = abs(lhs - sk.value)
    records.append(
        {
            "check": "kernel-identity",
            "theta": _jf(cfg.theta),
            "theta_prime": _jf(cfg.theta_prime),
            "abs_dev": _jf(iden),
            "pass": iden <= cfg.tol_identity,
        }
    )

    # finite propagation speed of the sine kernel
    mode = mode_list[cfg.mode_index]
    r, rp = (cfg.r, cfg.r_prime) if cfg.r != cfg.r_prime else (cfg.r, cfg.r + 2.0)
    gap = abs(r - rp)
    ts = np.array([0.25 * gap, 0.5 * gap, 0.75 * gap])
    vals, errs = sine_mode_kernel_batch(geom, mode, ts, r, rp)
    for t, v, e in zip(ts, vals, errs):
        records.append(
            {
                "check": "finite-propagation",
                "mode_index": mode.index,
                "t": _jf(t),
                "abs_value": _jf(abs(v)),
                "est_err": _jf(e),
                "pass": bool(abs(v) <= e),
            }
        )

    ok = all(r["pass"] for r in records)
    return records, {}, ok


_RUNNERS = {
    "modes": _cmd_modes,
    "bessel-table": _cmd_bessel_table,
    "kernel": _cmd_kernel,
    "scattering": _cmd_scattering,
    "diffraction": _cmd_diffraction,
    "radiation": _cmd_radiation,
    "verify": _cmd_verify,
}


def run(cfg: ExperimentConfig, stream=None):
    """Execute one configured operation; returns (exit_status, records)."""
    validate(cfg)
    digest = config_hash(cfg)
    geom, mode_list = build_geometry(cfg)
    records, traces, ok = _RUNNERS[cfg.operation](cfg, geom, mode_list)
    emit = cfg.emit.split(",")
    lines = []
    for rec in records:
        rec = dict(rec)
        rec["config_sha256"] = digest
        lines.append(json.dumps(rec, sort_keys=True, separators=(",", ":")))
    if stream is None:
        stream = sys.stdout
    if "jsonl" in emit:
        for line in lines:
            print(line, file=stream)
    if cfg.out:
        os.makedirs(cfg.out, exist_ok=True)
        if "jsonl" in emit:
            with open(os.path.join(cfg.out, "report.jsonl"), "w") as fh:
                fh.write("\n".join(lines) + "\n")
        if "csv" in emit:
            for name, rows in traces.items():
                with open(os.path.join(cfg.out, name), "w") as fh:
                    fh.write("\n".join(",".join(row) for row in rows) + "\n")
    return (0 if ok else 1), records


# ----------------------------------------------------------------- CLI layer


def _add_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="TOML config file; flags override its keys")
    p.add_argument("--model", choices=["circle", "interval", "sphere2", "tabulated"])
    p.add_argument("--n", type=int)
    p.add_argument("--circumference", type=float)
    p.add_argument("--length", type=float)
    p.add_argument("--bc", choices=["dirichlet", "neumann"])
    p.add_argument("--table", dest="table_path")
    p.add_argument("--modes", type=int)
    p.add_argument("--mode-index", dest="mode_index", type=int)
    p.add_argument("--lam", help="comma-separated lambda values")
    p.add_argument("--r", type=float)
    p.add_argument("--r-prime", dest="r_prime", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--theta-prime", dest="theta_prime", type=float)
    p.add_argument("--abel-eps", dest="abel_eps", type=float)
    p.add_argument("--j-max", dest="j_max", type=int)
    p.add_argument("--lambda-max", dest="lambda_max", type=float)
    p.add_argument("--kernel", choices=["sine", "halfwave"])
    p.add_argument("--t-min", dest="t_min", type=float)
    p.add_argument("--t-max", dest="t_max", type=float)
    p.add_argument("--t-points", dest="t_points", type=int)
    p.add_argument("--s-min", dest="s_min", type=float)
    p.add_argument("--s-max", dest="s_max", type=float)
    p.add_argument("--s-step", dest="s_step", type=float)
    p.add_argument("--r-ladder", dest="r_ladder", help="comma-separated radii")
    p.add_argument("--out", help="artifact directory")


def _build_config(op: str, ns: argparse.Namespace) -> ExperimentConfig:
    base = config_to_dict(ExperimentConfig())
    if ns.config:
        try:
            with open(ns.config, "rb") as fh:
                file_cfg = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigInvalid(f"config file {ns.config!r}: {exc}")
        for k, v in file_cfg.items():
            if k not in base:
                raise ConfigInvalid(f"unknown config key {k!r} in {ns.config!r}")
            base[k] = v
    for key in base:
        val = getattr(ns, key, None)
        if val is None:
            continue
        if key in ("lam", "r_ladder") and isinstance(val, str):
            try:
                val = [float(v) for v in val.split(",") if v]
            except ValueError:
                raise ConfigInvalid(f"config key {key!r}: not a comma list of numbers")
        base[key] = val
    base["operation"] = op
    return config_from_dict(base)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="conekit", description="wave diffraction on product cones"
    )
    sub = parser.add_subparsers(dest="operation", required=True)
    for op in _OPERATIONS:
        _add_flags(sub.add_parser(op))
    ns = parser.parse_args(argv)
    try:
        cfg = _build_config(ns.operation, ns)
        status, _ = run(cfg)
        return status
    except ConfigInvalid as exc:
        print(f"conekit: invalid config: {exc}", file=sys.stderr)
        return 2
    except ConekitError as exc:
        print(
            f"conekit: {ns.operation} failed in "
            f"{type(exc).__module__}.{type(exc).__name__}: {exc}",
            file=sys.stderr,
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
