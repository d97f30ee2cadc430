"""Command-line front end: subcommand dispatch and CSV/JSON emission.

Exit codes: 0 success, 2 configuration error (message names the field),
1 numerical failure (structured JSON on stderr).  Deterministic
subcommands produce byte-identical output for identical configs.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import os
import sys
from dataclasses import dataclass, replace

import numpy as np

from calvobench import bifurcation as bif
from calvobench import dispersion as disp
from calvobench import determinacy as det
from calvobench import dynamics as dyn
from calvobench import phillips as ph
from calvobench import rivals
from calvobench import tables as tbl
from calvobench.model_core import (
    DomainError,
    ModelParams,
    SingularPolicy,
    UnknownPreset,
    load_params,
    preset,
    validate,
)
from calvobench.steady_state import compute_nss

SUBCOMMANDS = (
    "nss",
    "dispersion",
    "coeffs",
    "surface",
    "determinacy",
    "bifurcation",
    "compare",
    "simulate",
    "se-fixed-point",
    "tables",
    "scenario",
)


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    params_source: str  # "preset:<name>" or "file:<path>"
    output_format: str = "csv"
    output_path: str | None = None
    grid: str | None = None
    seed: int | None = None
    extra: tuple[tuple[str, str], ...] = ()

    def to_dict(self) -> dict:
        return {
            "subcommand": self.subcommand,
            "params_source": self.params_source,
            "output_format": self.output_format,
            "output_path": self.output_path,
            "grid": self.grid,
            "seed": self.seed,
            "extra": list(map(list, self.extra)),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        return cls(
            subcommand=d["subcommand"],
            params_source=d["params_source"],
            output_format=d.get("output_format", "csv"),
            output_path=d.get("output_path"),
            grid=d.get("grid"),
            seed=d.get("seed"),
            extra=tuple((k, v) for k, v in d.get("extra", [])),
        )


def _resolve_params(source: str) -> ModelParams:
    kind, _, value = source.partition(":")
    if kind == "preset":
        return preset(value)
    if kind == "file":
        return load_params(value)
    raise DomainError("params_source", f"unknown source kind {kind!r}")


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        base = os.environ.get("CALVOBENCH_OUTPUT_DIR", "")
        full = os.path.join(base, path) if base else path
        with open(full, "w") as fh:
            fh.write(text)


def _csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: r.get(k, "") for k in columns})
    return buf.getvalue()


def _parse_grid(spec: str) -> np.ndarray:
    lo, hi, step = (float(x) for x in spec.split(":"))
    n = int(round((hi - lo) / step)) + 1
    return lo + step * np.arange(n)


def _coeff_payload(p: ModelParams) -> dict:
    if p.sigma == 1.0 and p.beta == 1.0 and p.pi_bar == 0.0:
        cs = ph.limit_coeffs(p)
        regime = "limit"
        b4 = cs.b4 / cs.b
    else:
        cs = ph.trend_coeffs(p)
        regime = "trend"
        b4 = None
    fam = {
        "b0": cs.b0 / cs.b,
        "b1": cs.b1 / cs.b,
        "b2": cs.b2 / cs.b,
        "b3": cs.b3 / cs.b,
        "b4": b4,
        "c0": cs.c0 / cs.c,
        "c1": cs.c1 / cs.c,
        "c2": cs.c2 / cs.c,
        "c3": cs.c3 / cs.c,
        "d0": cs.d0 / cs.d,
        "d1": cs.d1 / cs.d,
        "d2": cs.d2 / cs.d,
        "d3": cs.d3 / cs.d,
    }
    raw = {k: getattr(cs, k) for k in ("b", "b0", "b1", "b2", "b3", "b4", "c", "c0", "c1", "c2", "c3", "d", "d0", "d1", "d2", "d3")}
    return {"regime": regime, "normalized": fam, "raw": raw}


def _cmd_nss(cfg: RunConfig, p: ModelParams) -> str:
    pis = _parse_grid(cfg.grid) if cfg.grid else np.array([p.pi_bar])
    rows = []
    for pi in pis:
        ss = compute_nss(validate(replace(p, pi_bar=float(pi))))
        row = {"pi_bar": float(pi)}
        row.update(dataclasses.asdict(ss))
        rows.append(row)
    cols = ["pi_bar", "mc", "w", "delta", "y", "l", "profit_rate", "u", "welfare"]
    if cfg.output_format == "json":
        return json.dumps(rows, indent=2)
    return _csv(rows, cols)


def _cmd_dispersion(cfg: RunConfig, p: ModelParams) -> str:
    pis = _parse_grid(cfg.grid) if cfg.grid else np.linspace(-0.01, 0.04, 11)
    rows = []
    for pi in pis:
        pi = float(pi)
        rows.append(
            {
                "pi_bar": pi,
                "delta_nss": disp.delta_nss(p, pi),
                "d_delta_dpi": disp.d_delta_dpi_nss(p, pi),
                "d2_delta_dpi2": disp.d2_delta_dpi2_nss(p, pi),
            }
        )
    cols = ["pi_bar", "delta_nss", "d_delta_dpi", "d2_delta_dpi2"]
    if cfg.output_format == "json":
        return json.dumps(rows, indent=2)
    return _csv(rows, cols)


def _cmd_coeffs(cfg: RunConfig, p: ModelParams) -> str:
    payload = _coeff_payload(p)
    if cfg.output_format == "json":
        return json.dumps(payload, indent=2)
    rows = [{"coefficient": k, "value": v} for k, v in payload["normalized"].items()]
    return _csv(rows, ["coefficient", "value"])


def _cmd_surface(cfg: RunConfig, p: ModelParams) -> str:
    sc = ph.surface_coeffs(p)
    g0, g1, g2 = sc.normalized()
    payload = {
        "g": sc.g,
        "g0_raw": sc.g0,
        "g1_raw": sc.g1,
        "g2_raw": sc.g2,
        "g0": g0,
        "g1": g1,
        "g2": g2,
        "api_bracket_negative": sc.api_bracket_negative,
        "g_positive": sc.g_positive,
    }
    if cfg.output_format == "json":
        return json.dumps(payload, indent=2)
    return _csv([payload], list(payload))


def _cmd_determinacy(cfg: RunConfig, p: ModelParams) -> str:
    variant = dict(cfg.extra).get("variant", "sqrt_eps")
    gridspec = cfg.grid
    if gridspec and "=" in gridspec:
        name, _, rng = gridspec.partition("=")
        if name != "a_pi":
            raise DomainError("grid", "only a_pi grids are supported")
        rows = []
        for x in _parse_grid(rng):
            rpt = det.classify_params(replace(p, a_pi=float(x)), variant=variant)
            rows.append(
                {
                    "a_pi": float(x),
                    "classification": rpt.classification,
                    "n_inside": rpt.n_inside,
                    "n_on": rpt.n_on,
                    "n_outside": rpt.n_outside,
                }
            )
        cols = ["a_pi", "classification", "n_inside", "n_on", "n_outside"]
        if cfg.output_format == "json":
            return json.dumps(rows, indent=2)
        return _csv(rows, cols)
    rpt = det.classify_params(p, variant=variant)
    payload = {
        "variant": variant,
        "classification": rpt.classification,
        "roots": [[r.real, r.imag] for r in rpt.roots],
        "n_inside": rpt.n_inside,
        "n_on": rpt.n_on,
        "n_outside": rpt.n_outside,
        "n_jumps": rpt.n_jumps,
        "n_states": rpt.n_states,
    }
    return json.dumps(payload, indent=2)


def _cmd_bifurcation(cfg: RunConfig, p: ModelParams) -> str:
    model = dict(cfg.extra).get("model", "calvo")
    pi_bar = float(dict(cfg.extra).get("pi_bar", p.pi_bar))
    if model == "calvo":
        system = bif.calvo_system(p, pi_bar=pi_bar)
    elif model == "wage":
        alpha_w = float(dict(cfg.extra).get("alpha_w", 0.75))
        system = bif.wage_system(alpha_w, p.beta, theta_w=max(p.theta, 2.0), eta=p.eta)
    elif model.startswith("file:"):
        with open(model[5:]) as fh:
            system = bif.system_from_mapping(json.load(fh))
    else:
        raise DomainError("model", f"unknown bifurcation model {model!r}")
    rpt = bif.scan(system)
    payload = {
        "label": system.label,
        "reduced": rpt.reduced,
        "shared_roots": [
            {"root": [r.real, r.imag], "equations": list(pair)}
            for r, pair in rpt.shared_roots
        ],
        "constant_cancellations": list(rpt.constant_cancellations),
    }
    return json.dumps(payload, indent=2)


def _cmd_compare(cfg: RunConfig, p: ModelParams) -> str:
    c_p = float(dict(cfg.extra).get("cp", 50.0))
    table = rivals.compare_slopes(p, c_p=c_p)
    if cfg.output_format == "json":
        return json.dumps(table, indent=2)
    rows = [{"model_slope": k, "value": v} for k, v in table.items()]
    return _csv(rows, ["model_slope", "value"])


def _solved_for(p: ModelParams, variant: str) -> dyn.SolvedSystem:
    if variant == "singular":
        space = dyn.build_state_space(None, "singular", p)
    else:
        cs = (
            ph.limit_coeffs(p)
            if p.sigma == 1.0 and p.beta == 1.0 and p.pi_bar == 0.0
            else ph.trend_coeffs(p)
        )
        space = dyn.build_state_space(cs, variant, p)
    return dyn.solve_re(space)


def _cmd_simulate(cfg: RunConfig, p: ModelParams) -> str:
    opt = dict(cfg.extra)
    variant = opt.get("variant", "sqrt_eps")
    T = int(opt.get("T", 10_000))
    spec = dyn.ShockSpec(
        dist=opt.get("dist", "normal"),
        scale_psi=float(opt.get("scale_psi", 0.005)),
        scale_a=float(opt.get("scale_a", 0.0)),
        rho_a=p.rho_a,
        seed=cfg.seed if cfg.seed is not None else 0,
    )
    sol = _solved_for(p, variant)
    path = dyn.simulate(sol, spec, T)
    if opt.get("summary", "0") == "1" or cfg.output_format == "json":
        stats = dyn.persistence_stats(path, burn_in=min(1000, T // 10))
        payload = {
            "variant": variant,
            "T": T,
            "seed": spec.seed,
            "autocorr_pi": stats["pi"],
            "autocorr_y": stats["y"],
            "std_pi": float(np.std(path.pi)),
            "std_y": float(np.std(path.y)),
        }
        return json.dumps(payload, indent=2)
    rows = [
        {
            "t": t,
            "pi": float(path.pi[t]),
            "y": float(path.y[t]),
            "delta": float(path.delta[t]),
            "psi": float(path.psi[t]),
            "a": float(path.a[t]),
        }
        for t in range(T)
    ]
    return _csv(rows, ["t", "pi", "y", "delta", "psi", "a"])


def _cmd_se_fixed_point(cfg: RunConfig, p: ModelParams) -> str:
    opt = dict(cfg.extra)
    spec = dyn.ShockSpec(
        scale_psi=float(opt.get("scale_psi", 0.005)),
        scale_a=float(opt.get("scale_a", 0.0)),
        rho_a=p.rho_a,
        seed=cfg.seed if cfg.seed is not None else 0,
    )
    res = dyn.stochastic_equilibrium(p, spec, T=int(opt.get("T", 40_000)))
    payload = {
        "iterations": res.iterations,
        "converged": res.converged,
        "moments": dataclasses.asdict(res.moments),
        "coefficients": {
            k: getattr(res.coefficients, k)
            for k in ("b", "b0", "b1", "b2", "b3", "c", "c0", "c1", "c2", "c3", "d", "d0", "d1", "d2", "d3")
        },
    }
    return json.dumps(payload, indent=2)


def _cmd_tables(cfg: RunConfig, p: ModelParams) -> str:
    which = dict(cfg.extra).get("which", "all")
    reports = tbl.reproduce_tables(which)
    rows = []
    for rpt in reports:
        for c in rpt.cells:
            rows.append(
                {
                    "table": rpt.name,
                    "row": c.row,
                    "column": c.column,
                    "computed": f"{c.computed:.6f}",
                    "printed": c.printed,
                    "flagged": int(c.flagged),
                }
            )
    if cfg.output_format == "json":
        return json.dumps(rows, indent=2)
    return _csv(rows, ["table", "row", "column", "computed", "printed", "flagged"])


_SCENARIOS = ("eq1_vs_eq2", "inactive", "near_blowup", "unobserved_natural_rate")


def scenario_report(name: str, seed: int = 0) -> dict:
    """Named scenario: coefficients, determinacy verdict and, where the
    system can be simulated, autocorrelations."""
    if name == "eq1_vs_eq2":
        p = preset("benchmark")
        _, omega = ph.singular_slopes(p)
        cs = ph.limit_coeffs(p)
        return {
            "scenario": name,
            "forward_curve_gap_slope": omega,
            "forward_curve_lead": p.beta,
            "hybrid": dict(zip(("b0", "b1", "b2", "b3", "b4"), cs.b_normalized())),
        }
    if name in ("inactive", "near_blowup"):
        p = preset(name)
        cs = ph.limit_coeffs(p)
        rpt = det.classify_params(p)
        out = {
            "scenario": name,
            "coefficients": dict(zip(("b0", "b1", "b2", "b3", "b4"), cs.b_normalized())),
            "classification": rpt.classification,
        }
        if rpt.classification == "exists_unique":
            sol = _solved_for(p, "sqrt_eps")
            path = dyn.simulate(sol, dyn.ShockSpec(scale_psi=0.005, seed=seed), 100_000)
            out["autocorr"] = dyn.persistence_stats(path, burn_in=1000)
        return out
    if name == "unobserved_natural_rate":
        p = validate(replace(preset("benchmark"), a_pi=1.5, rho_a=0.81))
        sol = dyn.unobserved_natural_rate_system(p)
        x1, x2 = dyn.natural_rate_xs(p)
        path = dyn.simulate(
            sol, dyn.ShockSpec(scale_psi=0.005, scale_a=0.005, rho_a=p.rho_a, seed=seed), 500_000
        )
        return {
            "scenario": name,
            "x1": x1,
            "x2": x2,
            "autocorr": dyn.persistence_stats(path, burn_in=1000),
        }
    raise DomainError("scenario", f"unknown scenario {name!r}; choose from {_SCENARIOS}")


def _cmd_scenario(cfg: RunConfig, p: ModelParams) -> str:
    name = dict(cfg.extra).get("name", "")
    return json.dumps(scenario_report(name, seed=cfg.seed or 0), indent=2)


_HANDLERS = {
    "nss": _cmd_nss,
    "dispersion": _cmd_dispersion,
    "coeffs": _cmd_coeffs,
    "surface": _cmd_surface,
    "determinacy": _cmd_determinacy,
    "bifurcation": _cmd_bifurcation,
    "compare": _cmd_compare,
    "simulate": _cmd_simulate,
    "se-fixed-point": _cmd_se_fixed_point,
    "tables": _cmd_tables,
    "scenario": _cmd_scenario,
}


def run(cfg: RunConfig) -> int:
    """Execute one configuration; returns the process exit code."""
    try:
        p = _resolve_params(cfg.params_source)
        text = _HANDLERS[cfg.subcommand](cfg, p)
    except (DomainError, UnknownPreset, KeyError, ValueError) as exc:
        sys.stderr.write(json.dumps({"error": "config", "detail": str(exc)}) + "\n")
        return 2
    except (ArithmeticError, SingularPolicy) as exc:
        sys.stderr.write(
            json.dumps({"error": type(exc).__name__, "detail": str(exc)}) + "\n"
        )
        return 1
    _emit(text, cfg.output_path)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="calvobench",
        description="Benchmark Calvo model: steady states, coefficients, "
        "determinacy, bifurcation, rival models and simulation.",
    )
    sub = ap.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name)
        src = sp.add_mutually_exclusive_group()
        src.add_argument("--preset", default=None)
        src.add_argument("--config", default=None, help="JSON or TOML parameter file")
        sp.add_argument("--format", choices=("csv", "json"), default=None)
        sp.add_argument("--output", default=None)
        sp.add_argument("--grid", default=None)
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--dump-config", action="store_true")
        if name == "determinacy":
            sp.add_argument("--variant", choices=("sqrt_eps", "full"), default="sqrt_eps")
        if name == "bifurcation":
            sp.add_argument("--model", default="calvo")
            sp.add_argument("--pi-bar", dest="pi_bar", default=None)
            sp.add_argument("--alpha-w", dest="alpha_w", default=None)
        if name == "compare":
            sp.add_argument("--cp", default=None)
        if name == "simulate":
            sp.add_argument("--variant", choices=("sqrt_eps", "full", "singular"), default="sqrt_eps")
            sp.add_argument("--T", default=None)
            sp.add_argument("--scale-psi", dest="scale_psi", default=None)
            sp.add_argument("--scale-a", dest="scale_a", default=None)
            sp.add_argument("--dist", choices=("normal", "uniform", "two_point"), default=None)
            sp.add_argument("--summary", action="store_true")
        if name == "se-fixed-point":
            sp.add_argument("--scale-psi", dest="scale_psi", default=None)
            sp.add_argument("--scale-a", dest="scale_a", default=None)
            sp.add_argument("--T", default=None)
        if name == "tables":
            sp.add_argument("--which", default="all")
        if name == "scenario":
            sp.add_argument("--name", required=True)
    return ap


def config_from_args(argv: list[str]) -> RunConfig:
    ap = _build_parser()
    ns = ap.parse_args(argv)
    if ns.preset and ns.config:
        raise DomainError("params_source", "pass exactly one of --preset/--config")
    if ns.config:
        source = f"file:{ns.config}"
    else:
        source = f"preset:{ns.preset or 'benchmark'}"
    extra: list[tuple[str, str]] = []
    for key in (
        "variant",
        "model",
        "pi_bar",
        "alpha_w",
        "cp",
        "T",
        "scale_psi",
        "scale_a",
        "dist",
        "which",
        "name",
    ):
        val = getattr(ns, key, None)
        if val is not None:
            extra.append((key, str(val)))
    if getattr(ns, "summary", False):
        extra.append(("summary", "1"))
    default_fmt = "json" if ns.subcommand in (
        "surface", "bifurcation", "se-fixed-point", "scenario", "determinacy"
    ) else "csv"
    cfg = RunConfig(
        subcommand=ns.subcommand,
        params_source=source,
        output_format=ns.format or default_fmt,
        output_path=ns.output,
        grid=ns.grid,
        seed=ns.seed,
        extra=tuple(extra),
    )
    if ns.dump_config:
        sys.stdout.write(json.dumps(cfg.to_dict(), indent=2) + "\n")
    return cfg


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = config_from_args(argv)
    except DomainError as exc:
        sys.stderr.write(json.dumps({"error": "config", "detail": str(exc)}) + "\n")
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
