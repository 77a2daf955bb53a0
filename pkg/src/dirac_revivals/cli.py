"""Command-line surface emitting the reproduction datasets.

Subcommands: spectral, survival, timescales, density, observables,
validate.  Flags override a flat `key = value` config file; outputs are
deterministic (identical config -> byte-identical files).  Exit codes:
0 ok, 1 validation failure, 2 I/O error, 3 bad configuration.

The validation tolerance can be overridden with DIRAC_REVIVALS_TOL.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import dataio
from .catstate import (CatSpec, expand, expand_oracle, gaussian_fit,
                       oracle_raw_overlaps, spectral_function)
from .density import density_grid
from .evolution import (autocorrelation_series, kz_for_ab_ratio, survival_series,
                        time_scales)
from .landau import LevelIndex, PhysicalParams, one_particle_params
from .observables import (GeneratorId, correlation_series, expectation_series,
                          matrix_element)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_CONFIG = 3

_CONFIG_KEYS = {
    "mass": float, "kz": float, "eB": float, "a": float, "symmetry": str,
    "ab_ratio": float, "tail_eps": float, "tmin": float, "tmax": float,
    "samples": int, "smin": float, "smax": float, "ns": int, "nt": int,
    "out": str, "format": str,
}


class ConfigError(Exception):
    pass


def read_config_file(path: str) -> dict:
    """Flat `key = value` lines; '#' starts a comment."""
    values: dict = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _CONFIG_KEYS[key](val)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {val!r}") from exc
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dirac-revivals",
        description="Dirac cat states in relativistic Landau levels: datasets for "
                    "spectra, survival probability, densities and spin-parity observables.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--config", help="flat key = value config file (flags win)")
        sp.add_argument("--mass", type=float, default=None, help="fermion mass M")
        sp.add_argument("--kz", type=float, default=None, help="longitudinal momentum")
        sp.add_argument("--eB", type=float, default=None, help="magnetic coupling (positive)")
        sp.add_argument("--a", type=float, default=None, help="cat distance parameter")
        sp.add_argument("--symmetry", choices=("S", "A"), default=None)
        sp.add_argument("--ab-ratio", dest="ab_ratio", type=float, default=None,
                        help="solve kz from A/B at the fitted mean level (conflicts with --kz)")
        sp.add_argument("--tail-eps", dest="tail_eps", type=float, default=None,
                        help="discarded-probability bound of the truncation")
        sp.add_argument("--out", default=None, help="output path ('-' for stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default=None)

    sp = sub.add_parser("spectral", help="spectral lines (energy, weight)")
    add_common(sp)

    sp = sub.add_parser("survival", help="|C(t)| series")
    add_common(sp)
    sp.add_argument("--tmin", type=float, default=None)
    sp.add_argument("--tmax", type=float, default=None)
    sp.add_argument("--samples", type=int, default=None)
    sp.add_argument("--complex", action="store_true", dest="complex_out",
                    help="emit re/im/abs columns of C(t)")

    sp = sub.add_parser("timescales", help="fit report and T1/T2/T3")
    add_common(sp)

    sp = sub.add_parser("density", help="probability density on an (s,t) grid")
    add_common(sp)
    sp.add_argument("--tmin", type=float, default=None)
    sp.add_argument("--tmax", type=float, default=None)
    sp.add_argument("--nt", type=int, default=None)
    sp.add_argument("--smin", type=float, default=None)
    sp.add_argument("--smax", type=float, default=None)
    sp.add_argument("--ns", type=int, default=None)

    sp = sub.add_parser("observables", help="generator series + concurrence^2 + mutual information")
    add_common(sp)
    sp.add_argument("--tmin", type=float, default=None)
    sp.add_argument("--tmax", type=float, default=None)
    sp.add_argument("--samples", type=int, default=None)

    sp = sub.add_parser("validate", help="run the internal consistency suite")
    add_common(sp)
    return parser


_DEFAULTS = {
    "mass": 0.0, "kz": None, "eB": 1.0, "a": 5.0, "symmetry": "S",
    "ab_ratio": None, "tail_eps": 1e-12, "out": "-", "format": "csv",
}


def resolve_config(args: argparse.Namespace) -> dict:
    """Merge defaults < config file < explicit flags; validate combinations."""
    cfg = dict(_DEFAULTS)
    if getattr(args, "config", None):
        cfg.update(read_config_file(args.config))
    for key in _CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            cfg[key] = flag
    if cfg.get("eB") is None or cfg["eB"] <= 0.0:
        raise ConfigError(f"eB must be positive, got {cfg.get('eB')}")
    if cfg.get("a") is None or cfg["a"] < 0.0:
        raise ConfigError("distance parameter a must be >= 0")
    if cfg.get("kz") is not None and cfg.get("ab_ratio") is not None:
        raise ConfigError("exactly one of kz and ab_ratio may be given")
    if cfg.get("symmetry") not in ("S", "A"):
        raise ConfigError(f"symmetry must be S or A, got {cfg.get('symmetry')}")
    if not (0.0 < cfg["tail_eps"] <= 1e-6):
        raise ConfigError("tail_eps must lie in (0, 1e-6]")
    return cfg


def make_spec(cfg: dict) -> tuple[CatSpec, dict]:
    """Physical parameters from the config; solves kz from ab_ratio if asked."""
    info: dict = {}
    kz = cfg.get("kz")
    if cfg.get("ab_ratio") is not None:
        # the level weights are independent of kz, so fit first at kz = 0
        probe = CatSpec(cfg["symmetry"], cfg["a"],
                        PhysicalParams(M=cfg["mass"], kz=0.0, eB=cfg["eB"]))
        fit = gaussian_fit(expand(probe, cfg["tail_eps"]))
        kz = kz_for_ab_ratio(cfg["ab_ratio"], fit.n0, cfg["eB"])
        info["solved_kz"] = kz
    spec = CatSpec(cfg["symmetry"], cfg["a"],
                   PhysicalParams(M=cfg["mass"], kz=kz if kz is not None else 0.0, eB=cfg["eB"]))
    return spec, info


def _emit(path: str, writer, *wargs) -> None:
    if path == "-":
        import tempfile
        with tempfile.NamedTemporaryFile("r", suffix=".tmp", delete=False) as tmp:
            tmppath = tmp.name
        try:
            writer(tmppath, *wargs)
            with open(tmppath, "r", encoding="utf-8") as fh:
                sys.stdout.write(fh.read())
        finally:
            os.unlink(tmppath)
    else:
        writer(path, *wargs)


def cmd_spectral(cfg: dict) -> int:
    spec, _ = make_spec(cfg)
    exp = expand(spec, cfg["tail_eps"])
    spectral = spectral_function(exp)
    _emit(cfg["out"], dataio.write_spectral_csv, spectral)
    return EXIT_OK


def _fit_and_scales(spec: CatSpec, tail_eps: float):
    exp = expand(spec, tail_eps)
    fit = gaussian_fit(exp)
    scales = time_scales(fit.n0, spec.params)
    return exp, fit, scales


def _default_tmax(spec: CatSpec, exp, multiple: float, which: str) -> float:
    # only fit when the user leaves the window to us
    fit = gaussian_fit(exp)
    scales = time_scales(fit.n0, spec.params)
    return multiple * getattr(scales, which)


def cmd_survival(cfg: dict) -> int:
    spec, _ = make_spec(cfg)
    exp = expand(spec, cfg["tail_eps"])
    tmin = cfg.get("tmin", 0.0) or 0.0
    tmax = cfg.get("tmax")
    if tmax is None:
        tmax = _default_tmax(spec, exp, 2.0, "T1")
    samples = cfg.get("samples") or 2000
    if cfg.get("complex_out"):
        series = autocorrelation_series(exp, tmin, tmax, samples)
    else:
        series = survival_series(exp, tmin, tmax, samples)
    _emit(cfg["out"], dataio.write_series_csv, series, "abs_C")
    return EXIT_OK


def cmd_timescales(cfg: dict) -> int:
    spec, info = make_spec(cfg)
    _, fit, scales = _fit_and_scales(spec, cfg["tail_eps"])
    p = spec.params
    report = {
        "n0": fit.n0,
        "delta_n": fit.delta_n,
        "residual": fit.residual,
        "T1": scales.T1,
        "T2": scales.T2,
        "T3": scales.T3,
        "params": {"mass": p.M, "kz": p.kz, "eB": p.eB, "a": spec.a,
                   "symmetry": spec.symmetry, **info},
    }
    _emit(cfg["out"], dataio.write_timescales_json, report)
    return EXIT_OK


def cmd_density(cfg: dict) -> int:
    spec, _ = make_spec(cfg)
    exp = expand(spec, cfg["tail_eps"])
    smin = cfg.get("smin")
    smax = cfg.get("smax")
    if smin is None:
        smin = -(spec.a + 6.0)
    if smax is None:
        smax = spec.a + 6.0
    ns = cfg.get("ns") or 801
    tmin = cfg.get("tmin", 0.0) or 0.0
    tmax = cfg.get("tmax")
    if tmax is None:
        tmax = _default_tmax(spec, exp, 3.0, "T1")
    nt = cfg.get("nt") or 301
    grid = density_grid(exp, smin, smax, ns, tmin, tmax, nt)
    if cfg["format"] == "json":
        _emit(cfg["out"], dataio.write_grid_json, grid)
    else:
        _emit(cfg["out"], dataio.write_grid_csv, grid)
    return EXIT_OK


_EXPORTED_GENERATORS = (
    GeneratorId.GAMMA0,
    GeneratorId.GAMMA5_ALPHA_Z,
    GeneratorId.GAMMA5_GAMMA_Z,
    GeneratorId.I_GAMMA_Z,
    GeneratorId.I_GAMMA0_GAMMA5,
    GeneratorId.ALPHA_Z,
)


def cmd_observables(cfg: dict) -> int:
    spec, _ = make_spec(cfg)
    exp = expand(spec, cfg["tail_eps"])
    tmin = cfg.get("tmin", 0.0) or 0.0
    tmax = cfg.get("tmax")
    if tmax is None:
        tmax = _default_tmax(spec, exp, 1.0, "T2")
    samples = cfg.get("samples") or 2000
    ts = np.linspace(tmin, tmax, samples)
    columns: dict[str, np.ndarray] = {}
    for g in _EXPORTED_GENERATORS:
        columns[g.value] = expectation_series(exp, g, tmin, tmax, samples).series.values
    corr = correlation_series(exp, tmin, tmax, samples)
    columns["concurrence_sq"] = corr["concurrence_sq"].values
    columns["mutual_information"] = corr["mutual_information"].values
    _emit(cfg["out"], dataio.write_columns_csv, ts, columns)
    return EXIT_OK


def cmd_validate(cfg: dict) -> int:
    """Oracle suite: coefficient equivalence, selection rules, normalization."""
    tol_env = os.environ.get("DIRAC_REVIVALS_TOL")
    tol = 1e-8
    if tol_env is not None:
        try:
            tol = float(tol_env)
        except ValueError as exc:
            raise ConfigError(f"DIRAC_REVIVALS_TOL is not a number: {tol_env!r}") from exc
        if not (tol > 0.0) or not math.isfinite(tol):
            raise ConfigError(f"DIRAC_REVIVALS_TOL must be a positive number, got {tol_env!r}")

    spec, _ = make_spec(cfg)
    exp = expand(spec, cfg["tail_eps"])
    checks: list[tuple[str, float, float, bool]] = []

    def record(name: str, value: float, bound: float) -> None:
        checks.append((name, value, bound, value <= bound))

    # analytic expansion against the quadrature oracle, coefficient by coefficient
    oracle = expand_oracle(spec, exp.n_max + 2)
    dev = 0.0
    for level, coeff in exp.terms:
        dev = max(dev, abs(coeff - oracle.coefficient(level)))
    record("coefficient_oracle_equivalence", dev, tol)

    # wrong-parity and (r=1,nu=-) overlaps must vanish
    raw = oracle_raw_overlaps(spec, exp.n_max + 2)
    parity = 0 if spec.symmetry == "S" else 1
    leak = max((abs(v) for lv, v in raw.items()
                if (lv.n - 1) % 2 != parity or (lv.r, lv.nu) == (1, "-")), default=0.0)
    record("parity_selection_leak", leak, max(tol, 1e-10))

    # unit total weight and unit survival at t = 0
    record("normalization_defect", abs(exp.total_weight - 1.0), max(tol, 1e-12))

    # constraint identity on the populated levels
    resid = max(abs(one_particle_params(int(n), spec.params).constraint_residual())
                for n in exp.levels)
    record("constraint_identity", resid, max(tol, 1e-12))

    # block-diagonal selection rule on a small level window
    sel = 0.0
    p = spec.params
    for g in (GeneratorId.GAMMA0, GeneratorId.GAMMA5_ALPHA_Z):
        for n in (1, 2, 3):
            for m in (n + 2, n + 4):
                sel = max(sel, abs(matrix_element(g, LevelIndex(n, 1, "+"),
                                                  LevelIndex(m, 1, "+"), p)))
    record("selection_rule_leak", sel, max(tol, 1e-10))

    width = max(len(name) for name, *_ in checks)
    ok_all = True
    for name, value, bound, ok in checks:
        ok_all &= ok
        print(f"{name:<{width}}  {value:.3e} <= {bound:.3e}  {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok_all else EXIT_VALIDATION


_COMMANDS = {
    "spectral": cmd_spectral,
    "survival": cmd_survival,
    "timescales": cmd_timescales,
    "density": cmd_density,
    "observables": cmd_observables,
    "validate": cmd_validate,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        if getattr(args, "complex_out", False):
            cfg["complex_out"] = True
        code = _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return code


if __name__ == "__main__":
    sys.exit(main())
