"""Command-line interface: single evaluations, eta sweeps, closed-form vs
oracle comparisons, figure-grid reproduction, and parameter validation.

Output is CSV (`# key=value` comment header, 12-significant-digit values)
or the equivalent JSON document; identical configurations produce
byte-identical output.  Exit codes: 0 success/pass, 1 domain or validation
error, 2 quadrature failure, 3 comparison failure.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import math
import sys
from dataclasses import dataclass

from . import closedform as cf
from . import oracle as orc
from .errors import DomainError, QuadratureFailure, UdwError, UnknownFigureError
from .model import (Inertial, UniformAcceleration, params_from_omega,
                    validate_params)

__version__ = "0.1.0"

_MASTER_GRID_A = (0.1, 0.01, 0.001)
_MASTER_GRID_LAMBDA = (0.1, 0.3)
_MASTER_GRID_OMEGA = (1.0, 2.3)
_MASTER_GRID_ETA = (1.0, 5.0, 11.0, 30.0)


def _lambda_for_gamma(gamma: float, m0: float = 1.0) -> float:
    return math.sqrt(8.0 * math.pi * m0 * gamma)


# caption parameter sets; eta grids are log-spaced over the plotted range
_FIGURES = {
    "A_m": dict(observable="qq", traj="uad", omega=1.0, eta=(1.0, 5000.0),
                curves=[{"a": 0.1, "lambda0": 0.3}, {"a": 0.001, "lambda0": 0.3}]),
    "B": dict(observable="qq", traj="uad", omega=1.0, eta=(1.0, 5000.0),
              curves=[{"a": 0.001, "lambda0": 0.1}, {"a": 0.001, "lambda0": 0.3}]),
    "C": dict(observable="qq", traj="uad", eta=(1.0, 5000.0),
              curves=[{"a": 0.001, "lambda0": 0.1, "omega": 1.0},
                      {"a": 0.001, "lambda0": 0.1, "omega": 2.3}]),
    "A_PB": dict(observable="pp", traj="uad", omega=1.0, eta=(1.0, 7000.0),
                 curves=[{"a": 0.1, "lambda0": 0.1}, {"a": 0.001, "lambda0": 0.1}]),
    "B_PB": dict(observable="pp", traj="uad", omega=1.0, eta=(1.0, 8000.0),
                 curves=[{"a": 0.1, "lambda0": _lambda_for_gamma(0.000398)},
                         {"a": 0.1, "lambda0": _lambda_for_gamma(0.00358)}]),
    "C_PB": dict(observable="pp", traj="uad", eta=(1.0, 8000.0),
                 curves=[{"a": 0.1, "lambda0": 0.1, "omega": 1.0},
                         {"a": 0.1, "lambda0": 0.1, "omega": 2.3}]),
    "impro": dict(observable="qq", traj="uad", omega=2.3, eta=(1.0, 5000.0),
                  curves=[{"a": 0.001, "lambda0": _lambda_for_gamma(0.1)},
                          {"a": 0.001, "lambda0": _lambda_for_gamma(0.000398)}]),
    "VD": dict(observable="qq", traj="inertial", omega=1.0, eta=(1.0, 5000.0),
               curves=[{"lambda0": 0.1}]),
    "VD_PB": dict(observable="pp", traj="inertial", omega=1.0, eta=(1.0, 5000.0),
                  curves=[{"lambda0": 0.1}]),
}


@dataclass
class RunConfig:
    command: str = "eval"
    traj: str = "uad"
    a: float = 0.1
    v: float = 0.0
    omega: float = 1.0
    lambda0: float = 0.1
    m0: float = 1.0
    hbar: float = 1.0
    observable: str = "qq"
    eta: float | None = None
    eta_start: float | None = None
    eta_stop: float | None = None
    eta_count: int = 64
    eta_spacing: str = "log"
    oracle: bool = False
    prefactor: str = "maintext"
    kappa_max: float | None = None
    tol: float | None = None
    fmt: str = "csv"
    output: str | None = None
    jobs: int = 1
    figure: str | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        cfg = cls()
        if getattr(args, "config", None):
            with open(args.config) as fh:
                doc = json.load(fh)
            for key, val in doc.items():
                key = {"format": "fmt"}.get(key, key)
                if not hasattr(cfg, key):
                    raise DomainError(f"unknown config key {key!r}")
                setattr(cfg, key, val)
        for key in vars(cfg):
            arg = {"fmt": "format"}.get(key, key)
            val = getattr(args, arg, None)
            if val is not None:
                setattr(cfg, key, val)
        if cfg.command in ("eval",) and cfg.eta is None:
            raise DomainError("--eta is required for eval")
        if cfg.eta_start is not None and not (cfg.eta_start > 0):
            raise DomainError("eta range must start above 0")
        if cfg.eta_count < 1:
            raise DomainError("eta count must be >= 1")
        return cfg

    def params(self, lambda0=None, omega=None):
        return params_from_omega(lambda0 or self.lambda0, omega or self.omega,
                                 m0=self.m0, hbar=self.hbar)

    def trajectory(self, a=None):
        if self.traj == "uad":
            return UniformAcceleration(a if a is not None else self.a)
        return Inertial(v=self.v)

    def options(self) -> cf.CorrelatorOptions:
        return cf.CorrelatorOptions(prefactor_convention=self.prefactor)

    def quad_config(self) -> orc.QuadratureConfig:
        kw = {}
        if self.kappa_max is not None:
            kw["kappa_max"] = self.kappa_max
        if self.tol is not None:
            kw["abs_tol"] = self.tol
            kw["rel_tol"] = self.tol * 10.0
        return orc.QuadratureConfig(**kw)

    def eta_grid(self) -> list[float]:
        if self.eta is not None and self.eta_start is None:
            return [self.eta]
        start = self.eta_start if self.eta_start is not None else 1.0
        stop = self.eta_stop if self.eta_stop is not None else 5000.0
        n = self.eta_count
        if n == 1:
            return [start]
        if self.eta_spacing == "linear":
            step = (stop - start) / (n - 1)
            return [start + i * step for i in range(n)]
        r = (stop / start) ** (1.0 / (n - 1))
        return [start * r**i for i in range(n)]


def _point(config: RunConfig, lambda0: float, omega: float, a: float,
           eta: float, with_oracle: bool) -> dict:
    params = params_from_omega(lambda0, omega, m0=config.m0, hbar=config.hbar)
    opts = config.options()
    row = {"eta": eta}
    if config.traj == "uad":
        fn = cf.qq_uad if config.observable == "qq" else cf.pp_uad
        val = fn(params, a, eta, opts)
        row.update(v1=val.v1, neg_v2=val.neg_v2, total=val.total)
        if with_oracle:
            # the oracle's normalization is fixed (it is the arbiter of the
            # prefactor convention), so no prefactor scaling here
            ofn = orc.qq_uad_oracle if config.observable == "qq" else orc.pp_uad_oracle
            o = ofn(params, a, eta, config.quad_config())
            row.update(oracle_v1=o.v1, oracle_neg_v2=o.neg_v2,
                       oracle_total=o.total)
    else:
        fn = cf.qq_inertial if config.observable == "qq" else cf.pp_inertial
        total = fn(params, eta, opts)
        row.update(v1=0.0, neg_v2=total, total=total)
        if with_oracle:
            ofn = (orc.qq_inertial_oracle if config.observable == "qq"
                   else orc.pp_inertial_oracle)
            o = ofn(params, eta, config.quad_config())
            row.update(oracle_v1=0.0, oracle_neg_v2=o.value,
                       oracle_total=o.value)
    if with_oracle:
        row["abs_diff"] = abs(row["total"] - row["oracle_total"])
        denom = max(abs(row["oracle_total"]), 1e-300)
        row["rel_diff"] = row["abs_diff"] / denom
    return row


def _meta(config: RunConfig, extra: dict | None = None) -> dict:
    meta = {
        "artifact_version": __version__,
        "command": config.command,
        "traj": config.traj,
        "observable": config.observable,
        "lambda0": config.lambda0,
        "omega": config.omega,
        "m0": config.m0,
        "hbar": config.hbar,
        "prefactor_convention": config.prefactor,
        "renorm_offsets": "zero",
        "scheme": "published",
    }
    if config.traj == "uad":
        meta["a"] = config.a
    else:
        meta["v"] = config.v
    report = validate_params(config.params(), config.trajectory())
    meta["validation"] = "ok" if report.ok else ";".join(
        f"{v.code}({v.severity})" for v in report.violations)
    if extra:
        meta.update(extra)
    return meta


_COLUMNS = ("eta", "v1", "neg_v2", "total", "oracle_v1", "oracle_neg_v2",
            "oracle_total", "abs_diff", "rel_diff")


def _fmt_value(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _emit(meta: dict, rows: list[dict], errors: list[dict], config: RunConfig,
          stream) -> None:
    cols = [c for c in _COLUMNS if rows and c in rows[0]]
    if config.fmt == "json":
        doc = {"meta": meta,
               "rows": [{c: r[c] for c in cols} for r in rows],
               "errors": errors}
        json.dump(doc, stream, indent=2, sort_keys=True)
        stream.write("\n")
        return
    for key in sorted(meta):
        stream.write(f"# {key}={meta[key]}\n")
    stream.write(",".join(cols) + "\n")
    for r in rows:
        stream.write(",".join(_fmt_value(r[c]) for c in cols) + "\n")
    for err in errors:
        stream.write(f"# failed eta={_fmt_value(err['eta'])}: {err['message']}\n")


def _open_output(config: RunConfig, suffix: str = ""):
    if config.output is None:
        return sys.stdout, False
    path = config.output
    if suffix:
        if "." in path.rsplit("/", 1)[-1]:
            base, ext = path.rsplit(".", 1)
            path = f"{base}_{suffix}.{ext}"
        else:
            path = f"{path}_{suffix}"
    return open(path, "w"), True


def _run_rows(config: RunConfig, etas: list[float], lambda0: float,
              omega: float, a: float, with_oracle: bool):
    rows, errors = [], []

    def work(eta):
        return _point(config, lambda0, omega, a, eta, with_oracle)

    if config.jobs > 1:
        with concurrent.futures.ThreadPoolExecutor(config.jobs) as pool:
            futs = {pool.submit(work, eta): eta for eta in etas}
            done = {}
            for fut, eta in futs.items():
                try:
                    done[eta] = fut.result()
                except UdwError as exc:
                    errors.append({"eta": eta, "message": str(exc)})
            rows = [done[eta] for eta in etas if eta in done]
    else:
        for eta in etas:
            try:
                rows.append(work(eta))
            except UdwError as exc:
                errors.append({"eta": eta, "message": str(exc)})
    return rows, errors


def cmd_eval(config: RunConfig) -> int:
    row = _point(config, config.lambda0, config.omega, config.a,
                 config.eta, config.oracle)
    stream, close = _open_output(config)
    try:
        _emit(_meta(config), [row], [], config, stream)
    finally:
        if close:
            stream.close()
    return 0


def cmd_sweep(config: RunConfig) -> int:
    etas = config.eta_grid()
    rows, errors = _run_rows(config, etas, config.lambda0, config.omega,
                             config.a, config.oracle)
    stream, close = _open_output(config)
    try:
        _emit(_meta(config), rows, errors, config, stream)
    finally:
        if close:
            stream.close()
    return 0


def _compare_tolerance(oracle_val: float, tol: float | None) -> float:
    if tol is not None:
        return tol
    return max(2e-4, 1e-3 * abs(oracle_val))


def cmd_compare(config: RunConfig) -> int:
    """Closed form vs oracle; no eta range selects the full master grid."""
    rows, errors = [], []
    if config.eta is None and config.eta_start is None:
        points = []
        for lam in _MASTER_GRID_LAMBDA:
            for om in _MASTER_GRID_OMEGA:
                if config.traj == "uad":
                    for a in _MASTER_GRID_A:
                        for eta in _MASTER_GRID_ETA:
                            points.append((lam, om, a, eta))
                else:
                    for eta in _MASTER_GRID_ETA:
                        points.append((lam, om, config.a, eta))
        for lam, om, a, eta in points:
            try:
                row = _point(config, lam, om, a, eta, with_oracle=True)
                row.update(lambda0=lam, omega=om)
                if config.traj == "uad":
                    row["a"] = a
                rows.append(row)
            except UdwError as exc:
                errors.append({"eta": eta, "message": str(exc)})
    else:
        rows, errors = _run_rows(config, config.eta_grid(), config.lambda0,
                                 config.omega, config.a, True)
    piecewise_fail = 0
    max_abs = max_rel = 0.0
    for r in rows:
        for side in (("v1", "oracle_v1"), ("neg_v2", "oracle_neg_v2")):
            d = abs(r[side[0]] - r[side[1]])
            if d > _compare_tolerance(r[side[1]], config.tol):
                piecewise_fail += 1
        max_abs = max(max_abs, r["abs_diff"])
        max_rel = max(max_rel, r["rel_diff"])
    passed = piecewise_fail == 0 and not errors
    meta = _meta(config, {"max_abs_diff": max_abs, "max_rel_diff": max_rel,
                          "pass": passed})
    stream, close = _open_output(config)
    try:
        _emit(meta, rows, errors, config, stream)
    finally:
        if close:
            stream.close()
    return 0 if passed else 3


def cmd_figure(config: RunConfig) -> int:
    fig = _FIGURES.get(config.figure)
    if fig is None:
        raise UnknownFigureError(
            f"unknown figure {config.figure!r}; known: {sorted(_FIGURES)}")
    config.observable = fig["observable"]
    config.traj = fig["traj"]
    start, stop = fig["eta"]
    config.eta_start = config.eta_start or start
    config.eta_stop = config.eta_stop or stop
    etas = config.eta_grid()
    status = 0
    for idx, curve in enumerate(fig["curves"]):
        lam = curve.get("lambda0", config.lambda0)
        om = curve.get("omega", fig.get("omega", config.omega))
        a = curve.get("a", config.a)
        config.a = a
        config.lambda0 = lam
        config.omega = om
        rows, errors = _run_rows(config, etas, lam, om, a, config.oracle)
        label = "_".join(f"{k}{v:g}" for k, v in sorted(curve.items()))
        meta = _meta(config, {"figure": config.figure, "curve": label})
        stream, close = _open_output(config, suffix=label if len(
            fig["curves"]) > 1 else "")
        try:
            _emit(meta, rows, errors, config, stream)
            if not close and idx < len(fig["curves"]) - 1:
                stream.write("\n")
        finally:
            if close:
                stream.close()
        if errors:
            status = 1
    return status


def cmd_validate(config: RunConfig) -> int:
    params = config.params()
    report = validate_params(params, config.trajectory())
    doc = {
        "ok": report.ok,
        "gamma": params.gamma,
        "omega": params.omega,
        "omega_r": params.omega_r,
        "violations": [
            {"code": v.code, "message": v.message, "value": v.value,
             "severity": v.severity} for v in report.violations],
    }
    stream, close = _open_output(config)
    try:
        if config.fmt == "json":
            json.dump(doc, stream, indent=2, sort_keys=True)
            stream.write("\n")
        else:
            stream.write(f"# ok={report.ok}\n")
            stream.write(f"# gamma={params.gamma:.12g}\n")
            for v in report.violations:
                stream.write(f"{v.code},{v.severity},{v.message}\n")
    finally:
        if close:
            stream.close()
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="udwdet",
        description="Vacuum-fluctuation correlators of a moving detector")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with default options")
    common.add_argument("--traj", choices=("uad", "inertial"))
    common.add_argument("--a", type=float)
    common.add_argument("--v", type=float)
    common.add_argument("--omega", type=float)
    common.add_argument("--lambda0", type=float)
    common.add_argument("--m0", type=float)
    common.add_argument("--hbar", type=float)
    common.add_argument("--observable", choices=("qq", "pp"))
    common.add_argument("--eta", type=float)
    common.add_argument("--eta-start", dest="eta_start", type=float)
    common.add_argument("--eta-stop", dest="eta_stop", type=float)
    common.add_argument("--eta-count", dest="eta_count", type=int)
    common.add_argument("--eta-spacing", dest="eta_spacing",
                        choices=("linear", "log"))
    common.add_argument("--oracle", action="store_const", const=True)
    common.add_argument("--prefactor", choices=("maintext", "appendixd"))
    common.add_argument("--kappa-max", dest="kappa_max", type=float)
    common.add_argument("--tol", type=float)
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--output")
    common.add_argument("--jobs", type=int)
    sub.add_parser("eval", parents=[common])
    sub.add_parser("sweep", parents=[common])
    sub.add_parser("compare", parents=[common])
    fig = sub.add_parser("figure", parents=[common])
    fig.add_argument("figure", choices=sorted(_FIGURES))
    sub.add_parser("validate", parents=[common])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig.from_args(args)
        handler = {"eval": cmd_eval, "sweep": cmd_sweep,
                   "compare": cmd_compare, "figure": cmd_figure,
                   "validate": cmd_validate}[config.command]
        return handler(config)
    except QuadratureFailure as exc:
        print(f"quadrature failure: {exc}", file=sys.stderr)
        return 2
    except UdwError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
