"""Command-line front end: ``genmorse <command> [options]``.

Exit status: 0 success, 1 domain error, 2 failed verification, 3 usage error.
JSON is the default output; floats are written with ``repr`` so that every
number round-trips exactly. ``--config FILE`` reads a JSON object whose keys
mirror the long flags (dashes become underscores); explicit flags win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Sequence, TextIO, Union

import numpy as np

from genmorse import verify as verify_mod
from genmorse.algebra import (
    AlgebraLabel,
    Direction,
    casimir_check,
    is_integral,
    ptp_bound_count,
    ptp_map,
    satellite_chain,
)
from genmorse.core import GmpModel, PhysicalParams, dunham_coefficients, level, levels, reduce
from genmorse.errors import GmpError
from genmorse.numerics import FitOptions, GridSpec, fit_levels, franck_condon, numerov_eigenvalue
from genmorse.susyqm import log_normalization_recursion, partner_chain
from genmorse.wavefunction import bound_state, log_normalization

__all__ = ["RunConfig", "UsageError", "run", "main", "build_parser", "COMMANDS"]

EXIT_OK, EXIT_DOMAIN, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2, 3

COMMANDS = ("spectrum", "wavefunction", "ladder", "satellite", "ptp", "susy", "fcf", "fit", "verify", "plotdata")
SUITE_NAMES = ("all",) + tuple(verify_mod.SUITES)

_OPTION_KEYS = (
    "k", "b", "D", "a", "re", "mu", "hbar", "n", "direction", "steps", "grid_points",
    "tol", "format", "out", "suite", "observed", "kind",
)  # fmt: skip


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    """One fully resolved invocation. ``params`` is (k, b) or physical parameters."""

    command: str
    params: Union[PhysicalParams, tuple[float, float], None] = None
    n: Optional[int] = None
    direction: Optional[str] = None
    steps: Optional[int] = None
    grid_points: Optional[int] = None
    tol: Optional[float] = None
    format: Optional[str] = None
    out: Optional[str] = None
    suite: str = "all"
    observed: Optional[str] = None
    kind: str = "potential"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.format not in (None, "json", "csv"):
            raise UsageError("--format must be json or csv")
        if self.steps is not None and self.steps < 1:
            raise UsageError("--steps must be at least 1")
        if self.n is not None and self.n < 0:
            raise UsageError("--n must be non-negative")

    def model(self) -> GmpModel:
        if self.params is None:
            raise UsageError("give either --k and --b or --D, --a and --re")
        if isinstance(self.params, PhysicalParams):
            return reduce(self.params)
        return GmpModel(*self.params)

    def physical(self) -> PhysicalParams:
        if not isinstance(self.params, PhysicalParams):
            raise UsageError(f"{self.command} needs physical parameters --D --a --re")
        return self.params

    def need_direction(self) -> Direction:
        if self.direction is None:
            raise UsageError(f"{self.command} needs --direction")
        return Direction.parse(self.direction)


# --- output -------------------------------------------------------------------


def _clean(v: Any) -> Any:
    if isinstance(v, dict):
        return {k: _clean(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_clean(x) for x in v]
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return v if math.isfinite(v) else None
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    return v


@dataclass
class Output:
    payload: dict
    columns: Sequence[str] = ()
    rows: Sequence[Sequence[Any]] = ()
    meta: dict = field(default_factory=dict)
    text: Optional[str] = None

    def render(self, fmt: str) -> str:
        if fmt == "text" and self.text is not None:
            return self.text
        if fmt == "csv":
            buf = io.StringIO()
            for key, value in self.meta.items():
                buf.write(f"# {key}: {_cell(value)}\n")
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.columns)
            for row in self.rows:
                w.writerow([_cell(c) for c in row])
            return buf.getvalue()
        return json.dumps(_clean(self.payload), indent=2) + "\n"


def _cell(value: Any) -> str:
    value = _clean(value)
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _model_block(model: GmpModel) -> dict:
    block = {"k": model.k, "b": model.b, "l": model.l, "C": model.C, "n_max": model.n_max}
    p = model.physical
    if p is not None:
        block["physical"] = {"D": p.D, "a": p.a, "r_e": p.r_e, "mu": p.mu, "hbar": p.hbar}
    return block


def _units(model: Optional[GmpModel]) -> dict:
    u = {
        "k": "dimensionless",
        "b": "dimensionless",
        "l": "dimensionless",
        "C": "dimensionless",
        "alpha": "dimensionless",
        "beta": "dimensionless",
        "eps": "dimensionless (units of a^2 hbar^2 / 2 mu)",
        "x": "dimensionless (a r)",
        "psi": "dimensionless (normalized in x)",
    }
    if model is not None and model.physical is not None:
        u.update(
            {
                "E": "energy (units of D)",
                "D": "energy",
                "a": "inverse length",
                "r_e": "length",
                "r": "length",
                "mu": "mass",
                "hbar": "action",
            }
        )
    else:
        u["E"] = "unavailable (no physical parameters)"
    return u


def _level_rows(model: GmpModel) -> list[dict]:
    return [{"n": r.n, "alpha": r.alpha_n, "beta": r.beta_n, "eps": r.eps_n, "E": r.E_n} for r in levels(model)]


# --- commands -----------------------------------------------------------------


def _spectrum(cfg: RunConfig) -> Output:
    model = cfg.model()
    rows = _level_rows(model)
    cols = ["n", "alpha", "beta", "eps", "E"]
    return Output(
        {"model": _model_block(model), "levels": rows, "units": _units(model)},
        cols,
        [[r[c] for c in cols] for r in rows],
        {k: v for k, v in _model_block(model).items() if k != "physical"},
    )


def _wavefunction(cfg: RunConfig) -> Output:
    model = cfg.model()
    ns = [cfg.n] if cfg.n is not None else list(range(model.n_max + 1))
    states = [bound_state(model, n) for n in ns]
    if not states:
        raise GmpError("model has no bound states")
    pts = cfg.grid_points or 201
    x_hi = max(s.tail_cutoff(1e-8) for s in states)
    x = np.linspace(x_hi / pts, x_hi, pts)
    psi = [s.psi(x) for s in states]
    cols = ["x"] + [f"psi_{n}" for n in ns]
    rows = np.column_stack([x] + psi).tolist()
    st = [
        {"n": s.n, "alpha": s.alpha, "beta": s.beta, "eps": s.level.eps_n, "E": s.level.E_n, "N": s.N_n}
        for s in states
    ]
    return Output(
        {"model": _model_block(model), "states": st, "columns": cols, "rows": rows, "units": _units(model)},
        cols,
        rows,
        {"k": model.k, "b": model.b, "n": ",".join(map(str, ns))},
    )


def _label(lab: AlgebraLabel) -> dict:
    return {"l": lab.l, "m": lab.m, "g": lab.g}


def _ladder(cfg: RunConfig) -> Output:
    model = cfg.model()
    pairs = verify_mod.ladder_pairs(model)
    if cfg.n is not None:
        level(model, cfg.n)
        pairs = [p for p in pairs if p[0] == cfg.n]
    if cfg.direction is not None:
        d = Direction.parse(cfg.direction)
        pairs = [p for p in pairs if p[1] is d]
        if not pairs and cfg.n is not None:
            # surfaces the precise reason as a domain error
            satellite_chain(model, cfg.n, [d])
    entries = []
    for n, d in pairs:
        step = satellite_chain(model, n, [d])[0]
        entries.append(
            {
                "n": n,
                "direction": d.value,
                "coeff": step.coeff,
                "source": _label(step.source.label),
                "target": _label(step.target.label),
                "target_model": {"k": step.target.k, "b": step.target.b, "n": step.target.n},
                "residual": verify_mod.ladder_residual(model, n, d),
            }
        )
    cas = []
    for n in range(model.n_max + 1):
        lab = AlgebraLabel.of_level(model, n)
        cas.append({"n": n, "G": casimir_check(lab, "G"), "M": casimir_check(lab, "M"), "l(l-1)": model.l * (model.l - 1)})
    cols = ["n", "direction", "coeff", "residual", "m", "g", "m_target", "g_target", "k_target", "b_target", "n_target"]
    rows = [
        [e["n"], e["direction"], e["coeff"], e["residual"], e["source"]["m"], e["source"]["g"],
         e["target"]["m"], e["target"]["g"], e["target_model"]["k"], e["target_model"]["b"], e["target_model"]["n"]]
        for e in entries
    ]  # fmt: skip
    return Output(
        {"model": _model_block(model), "steps": entries, "casimir": cas, "units": _units(model)},
        cols,
        rows,
        {"k": model.k, "b": model.b, "l": model.l},
    )


def _step_record(i: int, end, direction: Optional[str], coeff: Optional[float]) -> dict:
    rec = {
        "index": i,
        "direction": direction,
        "coeff": coeff,
        "k": end.k,
        "b": end.b,
        "n": end.n,
        "m": end.label.m,
        "g": end.label.g,
        "kb2": end.k * end.b * end.b,
    }
    if end.physical is not None:
        rec.update({"D": end.physical.D, "r_e": end.physical.r_e, "f": end.physical.f})
    return rec


def _walk(cfg: RunConfig, model: GmpModel, default_steps: int = 1):
    d = cfg.need_direction()
    n = cfg.n if cfg.n is not None else 0
    return satellite_chain(model, n, [d] * (cfg.steps or default_steps))


def _satellite(cfg: RunConfig) -> Output:
    model = cfg.model()
    steps = _walk(cfg, model)
    recs = [_step_record(0, steps[0].source, None, None)]
    recs += [_step_record(i + 1, s.target, s.direction.value, s.coeff) for i, s in enumerate(steps)]
    conserved = {"kb2": model.kb2}
    if model.physical is not None:
        conserved["f"] = model.physical.f
    cols = list(recs[-1].keys())
    return Output(
        {"model": _model_block(model), "chain": recs, "conserved": conserved, "units": _units(model)},
        cols,
        [[r.get(c) for c in cols] for r in recs],
        conserved,
    )


def _ptp(cfg: RunConfig) -> Output:
    model = cfg.model()
    ns = [cfg.n] if cfg.n is not None else range(model.n_max + 1)
    rows = []
    for n in ns:
        p = ptp_map(model, n)
        diff = p.m1_abs - p.m2_abs
        rows.append(
            {
                "n": n,
                "m1_abs": p.m1_abs,
                "m2_abs": p.m2_abs,
                "eps_bar": p.eps_bar,
                "bound_count": ptp_bound_count(p.m1_abs, p.m2_abs),
                "integral_difference": is_integral(diff),
            }
        )
    meta = {"non_integer": any(not r["integral_difference"] for r in rows)}
    cols = ["n", "m1_abs", "m2_abs", "eps_bar", "bound_count", "integral_difference"]
    return Output(
        {"model": _model_block(model), "levels": rows, "metadata": meta, "units": _units(model)},
        cols,
        [[r[c] for c in cols] for r in rows],
        meta,
    )


def _susy(cfg: RunConfig) -> Output:
    model = cfg.model()
    depth = cfg.steps or 1
    chain = partner_chain(model, depth)
    tol = cfg.tol or 1e-10
    pts = cfg.grid_points or 20000
    out, rows = [], []
    for d, p in enumerate(chain, start=1):
        pm = p.model
        shift = model.k - pm.k  # energies in the frame of the original model
        grid = GridSpec.for_model(pm, pts)
        lv = []
        for n in range(pm.n_max + 1):
            eps = model.k - float(pm.alpha(n)) ** 2
            num = numerov_eigenvalue(lambda x, pm=pm, shift=shift: pm.potential(x) + shift, n, grid, tol)
            orig = level(model, n + d).eps_n if n + d <= model.n_max else None
            lv.append({"n": n, "eps": eps, "eps_numerov": num, "eps_original": orig})
            rows.append([d, n, pm.k, pm.b, pm.l, p.R, eps, num])
        out.append({"depth": d, "k": p.k_prime, "b": p.b_prime, "l": p.l_prime, "R": p.R, "levels": lv})
    norms = []
    for n in range(model.n_max + 1):
        lc, lr = log_normalization(model, n), log_normalization_recursion(model, n)
        norms.append({"n": n, "log_N_closed": lc, "log_N_recursion": lr, "rel_diff": abs(math.expm1(lr - lc))})
    return Output(
        {"model": _model_block(model), "partners": out, "normalization": norms, "units": _units(model)},
        ["depth", "n", "k", "b", "l", "R", "eps", "eps_numerov"],
        rows,
        {"k": model.k, "b": model.b, "l": model.l},
    )


def _fcf(cfg: RunConfig) -> Output:
    model = cfg.model()
    steps = _walk(cfg, model)
    target = steps[-1].target.model
    if target.physical is None and model.physical is not None:
        raise GmpError("satellite lost its physical parameters")
    tol = cfg.tol or 1e-12
    rows = []
    for i in range(model.n_max + 1):
        a = bound_state(model, i)
        for j in range(target.n_max + 1):
            ov = franck_condon(a, bound_state(target, j), tol)
            rows.append({"n_source": i, "n_target": j, "overlap": ov, "factor": ov * ov})
    cols = ["n_source", "n_target", "overlap", "factor"]
    return Output(
        {"model": _model_block(model), "target": _model_block(target), "overlaps": rows, "units": _units(model)},
        cols,
        [[r[c] for c in cols] for r in rows],
        {"k": model.k, "b": model.b, "k_target": target.k, "b_target": target.b},
    )


def _read_observed(path: str) -> list[tuple[int, float]]:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    try:
        if p.suffix.lower() == ".csv":
            rows = [r for r in csv.DictReader(line for line in text.splitlines() if not line.startswith("#"))]
            return [(int(r["n"]), float(r["E"])) for r in rows]
        data = json.loads(text)
        if isinstance(data, dict):
            data = data["levels"]
        return [(int(r["n"]), float(r["E"])) if isinstance(r, dict) else (int(r[0]), float(r[1])) for r in data]
    except (KeyError, ValueError, TypeError, IndexError) as exc:
        raise UsageError(f"{path}: expected levels as (n, E) pairs ({exc})") from None


def _fit(cfg: RunConfig) -> Output:
    if cfg.observed is None:
        raise UsageError("fit needs --observed FILE")
    observed = _read_observed(cfg.observed)
    start = cfg.physical()
    res = fit_levels(observed, start, FitOptions())
    fitted = reduce(res.params)
    p = res.params
    ns = [n for n, _ in observed]
    E_fit = [fitted.level(n).E_n if 0 <= n <= fitted.n_max else None for n in ns]
    rows = [{"n": n, "E_observed": e, "E_fit": f} for (n, e), f in zip(observed, E_fit)]
    return Output(
        {
            "params": {"D": p.D, "a": p.a, "r_e": p.r_e, "mu": p.mu, "hbar": p.hbar},
            "residual_rms": res.residual_rms,
            "n_iterations": res.n_iterations,
            "converged": res.converged,
            "model": _model_block(fitted),
            "levels": rows,
            "units": _units(fitted),
        },
        ["n", "E_observed", "E_fit"],
        [[r["n"], r["E_observed"], r["E_fit"]] for r in rows],
        {"D": p.D, "a": p.a, "r_e": p.r_e, "residual_rms": res.residual_rms, "converged": res.converged},
    )


def _verify(cfg: RunConfig) -> Output:
    if cfg.suite not in SUITE_NAMES:
        raise UsageError(f"--suite must be one of {', '.join(SUITE_NAMES)}")
    checks = verify_mod.run_suite(cfg.suite)
    width = max(len(c.name) for c in checks)
    lines = [f"{'suite':<13} {'check':<{width}} {'value':>11} {'tol':>9}  result"]
    for c in checks:
        lines.append(f"{c.suite:<13} {c.name:<{width}} {c.value:>11.3e} {c.tol:>9.1e}  {'PASS' if c.passed else 'FAIL'}")
    n_fail = sum(not c.passed for c in checks)
    lines.append(f"{len(checks) - n_fail}/{len(checks)} checks passed")
    rows = [[c.suite, c.name, c.value, c.tol, c.passed, c.detail] for c in checks]
    return Output(
        {"suite": cfg.suite, "passed": n_fail == 0, "checks": [dict(zip(("suite", "name", "value", "tol", "passed", "detail"), r)) for r in rows]},
        ["suite", "name", "value", "tol", "passed", "detail"],
        rows,
        {"suite": cfg.suite, "passed": n_fail == 0},
        "\n".join(lines) + "\n",
    )


def _plot_potential(cfg: RunConfig, model: GmpModel) -> Output:
    """GMP, Morse and harmonic curves sharing D, a, r_e; the oscillator has hbar omega = eps(1)."""
    pts = cfg.grid_points or 200
    x_e = model.x_e
    x = np.linspace(0.1 * x_e, 3.0 * x_e, pts)
    e1 = float(dunham_coefficients(model, 1)[1])
    v_gmp = model.potential(x)
    v_morse = model.k * (-np.expm1(-(x - x_e))) ** 2
    v_harm = 0.25 * e1 * e1 * (x - x_e) ** 2
    p = model.physical
    if p is not None:
        s = p.energy_scale
        cols = ["r", "V_GMP", "V_Morse", "V_harmonic"]
        data = [x / p.a, v_gmp * s, v_morse * s, v_harm * s]
        meta = {"D": p.D, "a": p.a, "r_e": p.r_e, "hbar_omega": e1 * s}
    else:
        cols = ["x", "v_GMP", "v_Morse", "v_harmonic"]
        data = [x, v_gmp, v_morse, v_harm]
        meta = {"k": model.k, "b": model.b, "hbar_omega": e1}
    rows = np.column_stack(data).tolist()
    return Output({"columns": cols, "rows": rows, "meta": meta, "units": _units(model)}, cols, rows, meta)


def _plot_satellites(cfg: RunConfig, model: GmpModel) -> Output:
    """Potentials and the lowest three states of every model along a satellite walk."""
    steps = _walk(cfg, model, default_steps=3)
    models = [model] + [s.target.model for s in steps]
    states = [[bound_state(m, n) for n in range(min(m.n_max, 2) + 1)] for m in models]
    pts = cfg.grid_points or 400
    x_hi = max(st.tail_cutoff(1e-8) for group in states for st in group)
    x = np.linspace(x_hi / pts, x_hi, pts)
    cols, data = ["x"], [x]
    meta: dict = {"kb2": model.kb2}
    if model.physical is not None:
        meta["f"] = model.physical.f
    for i, (m, group) in enumerate(zip(models, states)):
        cols.append(f"v_{i}")
        data.append(m.potential(x))
        meta[f"model_{i}"] = f"k={m.k!r} b={m.b!r}"
        for st in group:
            cols.append(f"psi_{i}_{st.n}")
            data.append(st.psi(x))
            meta[f"eps_{i}_{st.n}"] = st.level.eps_n
            if st.level.E_n is not None:
                meta[f"E_{i}_{st.n}"] = st.level.E_n
    rows = np.column_stack(data).tolist()
    return Output({"columns": cols, "rows": rows, "meta": meta, "units": _units(model)}, cols, rows, meta)


def _plotdata(cfg: RunConfig) -> Output:
    model = cfg.model()
    if cfg.kind == "potential":
        return _plot_potential(cfg, model)
    if cfg.kind == "satellite":
        return _plot_satellites(cfg, model)
    raise UsageError("--kind must be potential or satellite")


_HANDLERS = {
    "spectrum": _spectrum,
    "wavefunction": _wavefunction,
    "ladder": _ladder,
    "satellite": _satellite,
    "ptp": _ptp,
    "susy": _susy,
    "fcf": _fcf,
    "fit": _fit,
    "verify": _verify,
    "plotdata": _plotdata,
}


def _default_format(cfg: RunConfig) -> str:
    if cfg.format:
        return cfg.format
    if cfg.command == "verify":
        return "text"
    if cfg.command == "plotdata":
        return "csv"
    return "json"


def run(config: RunConfig, out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    """Execute ``config``, writing the result to ``config.out`` or ``out``; returns the exit status."""
    try:
        result = _HANDLERS[config.command](config)
        text = result.render(_default_format(config))
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (GmpError, OverflowError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    if config.out:
        try:
            Path(config.out).write_text(text)
        except OSError as exc:
            err.write(f"error: cannot write {config.out}: {exc}\n")
            return EXIT_DOMAIN
    else:
        out.write(text)
    if config.command == "verify" and not result.payload["passed"]:
        return EXIT_VERIFY
    return EXIT_OK


# --- argument parsing ---------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: usage error: {message}\n")


def _common() -> argparse.ArgumentParser:
    p = _Parser(add_help=False, argument_default=None)
    g = p.add_argument_group("model (give k, b or D, a, re)")
    g.add_argument("--k", type=float, help="dimensionless depth 2 mu D / (a hbar)^2")
    g.add_argument("--b", type=float, help="shape parameter exp(a r_e) - 1")
    g.add_argument("--D", type=float, help="well depth")
    g.add_argument("--a", type=float, help="range parameter")
    g.add_argument("--re", type=float, help="equilibrium distance")
    g.add_argument("--mu", type=float, help="reduced mass (default 1)")
    g.add_argument("--hbar", type=float, help="Planck constant (default 1)")
    o = p.add_argument_group("options")
    o.add_argument("--n", type=int, help="level index")
    o.add_argument("--direction", choices=["g+", "g-", "m+", "m-"], help="ladder generator")
    o.add_argument("--steps", type=int, help="number of steps (satellite walks, partner depth)")
    o.add_argument("--grid-points", dest="grid_points", type=int, help="sample or Numerov grid size")
    o.add_argument("--tol", type=float, help="numerical tolerance")
    o.add_argument("--format", choices=["json", "csv"], help="output format")
    o.add_argument("--out", help="write output to PATH instead of stdout")
    o.add_argument("--config", help="JSON file with default values for these flags")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="genmorse", description="Generalized Morse potential toolkit.")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True
    common = _common()
    helps = {
        "spectrum": "bound-state levels",
        "wavefunction": "tabulate eigenfunctions",
        "ladder": "ladder coefficients and their differential check",
        "satellite": "walk a chain of satellite potentials",
        "ptp": "Poeschl-Teller correspondence",
        "susy": "supersymmetric partner chain",
        "fcf": "overlaps with a satellite's states",
        "fit": "fit D, a, r_e to observed levels",
        "verify": "run the invariant suites",
        "plotdata": "CSV tables for potential and satellite plots",
    }
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common], help=helps[name])
        if name == "verify":
            sp.add_argument("--suite", choices=SUITE_NAMES)
        if name == "fit":
            sp.add_argument("--observed", help="levels as JSON [[n, E], ...] or CSV with n,E columns")
        if name == "plotdata":
            sp.add_argument("--kind", choices=["potential", "satellite"])
    return parser


def _load_config(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    data = {k.replace("-", "_"): v for k, v in data.items()}
    unknown = set(data) - set(_OPTION_KEYS) - {"command", "grid_points", "r_e"}
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    if "r_e" in data:
        data.setdefault("re", data.pop("r_e"))
    return data


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    values = _load_config(ns.config) if getattr(ns, "config", None) else {}
    values.pop("command", None)
    for key in _OPTION_KEYS:
        v = getattr(ns, key, None)
        if v is not None:
            values[key] = v
    kb = [values.get(x) for x in ("k", "b")]
    phys = [values.get(x) for x in ("D", "a", "re")]
    has_kb = any(v is not None for v in kb)
    has_phys = any(v is not None for v in phys)
    if has_kb and has_phys:
        raise UsageError("(k, b) and (D, a, re) are mutually exclusive")
    params: Union[PhysicalParams, tuple, None] = None
    try:
        if has_kb:
            if None in kb:
                raise UsageError("--k and --b must be given together")
            if values.get("mu") is not None or values.get("hbar") is not None:
                raise UsageError("--mu and --hbar only apply to physical parameters")
            params = (float(kb[0]), float(kb[1]))
        elif has_phys:
            if None in phys:
                raise UsageError("--D, --a and --re must be given together")
            params = PhysicalParams(*map(float, phys), float(values.get("mu") or 1.0), float(values.get("hbar") or 1.0))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, GmpError):
            raise
        raise UsageError(f"bad parameter value: {exc}") from None
    return RunConfig(
        command=ns.command,
        params=params,
        n=values.get("n"),
        direction=values.get("direction"),
        steps=values.get("steps"),
        grid_points=values.get("grid_points"),
        tol=values.get("tol"),
        format=values.get("format"),
        out=values.get("out"),
        suite=values.get("suite") or "all",
        observed=values.get("observed"),
        kind=values.get("kind") or "potential",
    )


def main(argv: Optional[Sequence[str]] = None, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(ns)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except GmpError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    return run(cfg, out, err)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
