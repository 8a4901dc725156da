"""Invariant suites behind ``genmorse verify``.

Each suite returns a list of :class:`Check` records; nothing raises on a failed
invariant, so one bad check never hides the others. The two reference models
are the small well (k=4, b=2) and the deep well D=10, a=1, r_e=2.5.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from genmorse.algebra import (
    AlgebraLabel,
    Direction,
    casimir_check,
    ladder_coeff,
    ptp_bound_count,
    ptp_map,
    reduced_ladder_apply,
    satellite_chain,
    satellite_state,
    satellite_step,
)
from genmorse.core import GmpModel, PhysicalParams, dunham_coefficients, level, levels, morse_energy_dimensionless, reduce
from genmorse.errors import GmpError, StepError
from genmorse.numerics import (
    FitOptions,
    GridSpec,
    count_levels,
    count_nodes,
    fit_levels,
    franck_condon,
    mass_interval,
    model_energies,
    norm_integral,
    numerov_eigenvalue,
    overlap,
)
from genmorse.susyqm import (
    intertwined_partner,
    log_normalization_recursion,
    partner,
    partner_chain,
    partner_potential_direct,
    partner_state,
)
from genmorse.wavefunction import bound_state, log_normalization, y_of_x

__all__ = ["Check", "SUITES", "reference_models", "run_suite", "run_all", "ladder_residual", "ladder_pairs"]


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    value: float
    tol: float
    passed: bool
    detail: str = ""


def reference_models() -> dict[str, GmpModel]:
    return {"k4b2": GmpModel(4.0, 2.0), "deep": reduce(PhysicalParams(10.0, 1.0, 2.5))}


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def _check(suite: str, name: str, value: float, tol: float, detail: str = "") -> Check:
    return Check(suite, name, float(value), float(tol), bool(value <= tol), detail)


def _guard(suite: str, name: str, fn: Callable[[], Iterable[Check]]) -> list[Check]:
    try:
        return list(fn())
    except GmpError as exc:
        return [Check(suite, name, math.inf, 0.0, False, f"{type(exc).__name__}: {exc}")]


# --- core -------------------------------------------------------------------


def _core() -> Iterable[Check]:
    s = "core"
    for tag, m in reference_models().items():
        recs = levels(m)
        ident = max(max(_rel(r.beta_n - r.alpha_n, r.n + m.l), _rel(r.beta_n**2 - r.alpha_n**2, m.K)) for r in recs)
        yield _check(s, f"{tag}: beta-alpha = n+l, beta^2-alpha^2 = K", ident, 1e-12)
        eps = [r.eps_n for r in recs] + [m.k]
        yield _check(s, f"{tag}: eps_0 < ... < eps_nmax < k", 0.0 if np.all(np.diff(eps) > 0) else 1.0, 0.0)
        if m.physical is not None:
            scale = m.physical.energy_scale
            two = max(_rel(r.E_n, r.eps_n * scale) for r in recs)
            yield _check(s, f"{tag}: two energy routes agree", two, 1e-12)
        c = dunham_coefficients(m, 3)
        nu = 0.5
        partial = c[0] + c[1] * nu - c[2] * nu**2
        yield _check(s, f"{tag}: Dunham partial sum at n=0", abs(partial - recs[0].eps_n) - abs(c[3]) * nu**3 * 4, 0.0)

    k = 20.0
    bs = (1e2, 1e3, 1e4)
    for n in range(3):
        gaps = [abs(level(GmpModel(k, b), n).eps_n - morse_energy_dimensionless(k, n)) for b in bs]
        dec = 0.0 if gaps[0] > gaps[1] > gaps[2] else 1.0
        yield _check(s, f"Morse limit n={n}: gap strictly decreasing in b", dec, 0.0)
        bg = [b * g for b, g in zip(bs, gaps)]
        yield _check(s, f"Morse limit n={n}: b*gap spread", max(bg) / min(bg), 4.0)

    e3 = [abs(dunham_coefficients(GmpModel(k, b), 3)[3]) for b in (10.0, 1e2, 1e3)]
    yield _check(s, "Dunham |eps(3)| decreasing over b = 10, 100, 1000", 0.0 if e3[0] > e3[1] > e3[2] else 1.0, 0.0)


# --- wavefunction -------------------------------------------------------------


def _schrodinger_residual(state, h: float = 2e-3) -> float:
    x_lo, x_hi = mass_interval(state, 0.999)
    x = np.linspace(x_lo, x_hi, 400)
    p = lambda t: state.psi(t)  # noqa: E731
    d2 = (-p(x + 2 * h) + 16 * p(x + h) - 30 * p(x) + 16 * p(x - h) - p(x - 2 * h)) / (12 * h * h)
    psi = p(x)
    res = -d2 + state.model.potential(x) * psi - state.level.eps_n * psi
    return float(np.max(np.abs(res)) / np.max(np.abs(psi)))


def _wavefunction() -> Iterable[Check]:
    s = "wavefunction"
    for tag, m in reference_models().items():
        states = [bound_state(m, n) for n in range(m.n_max + 1)]
        for st in states:
            n = st.n
            yield _check(s, f"{tag} n={n}: norm integral", abs(norm_integral(st) - 1.0), 1e-8)
            x = np.linspace(1e-3, st.tail_cutoff(), 20000)
            yield _check(s, f"{tag} n={n}: node count", abs(count_nodes(st.psi(x)) - n), 0.0)
            rec = abs(math.expm1(log_normalization_recursion(m, n) - log_normalization(m, n)))
            yield _check(s, f"{tag} n={n}: closed-form N = recursion N", rec, 1e-10)
            yield _check(s, f"{tag} n={n}: Schrodinger residual", _schrodinger_residual(st), 1e-6)
        for i in range(len(states)):
            for j in range(i):
                yield _check(s, f"{tag}: <psi_{i}|psi_{j}>", abs(overlap(states[i], states[j])), 1e-8)


# --- algebra ------------------------------------------------------------------

STEP_DIRECTIONS = (Direction.G_PLUS, Direction.G_MINUS, Direction.M_PLUS, Direction.M_MINUS)


def ladder_pairs(model: GmpModel) -> list[tuple[int, Direction]]:
    """Every (n, direction) whose satellite step lands on a bound state."""
    out = []
    for n in range(model.n_max + 1):
        for d in STEP_DIRECTIONS:
            try:
                satellite_step(model, n, d)
            except (StepError, GmpError):
                continue
            out.append((n, d))
    return out


def ladder_residual(model: GmpModel, n: int, direction) -> float:
    """Relative sup-norm of (X Phi_n) - coeff Phi_target over 99.9% of the source mass."""
    step = satellite_step(model, n, direction)
    src = bound_state(model, n)
    tgt = satellite_state(step)
    x_lo, x_hi = mass_interval(src, 0.999)
    y = np.geomspace(float(y_of_x(x_hi)), float(y_of_x(x_lo)), 2000)
    lhs = reduced_ladder_apply(src, step.direction, y)
    rhs = step.coeff * tgt.phi(y)
    return float(np.max(np.abs(lhs - rhs)) / np.max(np.abs(rhs)))


def _annihilation(model: GmpModel) -> Iterable[tuple[str, float, float]]:
    """(name, coefficient, relative residual) at g = -l and at m = l."""
    l = model.l
    y = np.geomspace(1e-3, 1e3, 2000)
    ground = bound_state(model, 0)
    lab = AlgebraLabel.of_level(model, 0)
    res = np.max(np.abs(reduced_ladder_apply(ground, Direction.G_PLUS, y))) / np.max(np.abs(ground.phi(y)))
    yield "G+ at g=-l", ladder_coeff(lab, Direction.G_PLUS), res
    edge = AlgebraLabel(l, l, -l)
    # the m = l, n = 0 weight vector is (1+y)^-l, not normalizable
    res = np.max(np.abs(reduced_ladder_apply(edge, Direction.M_MINUS, y))) / np.max((1.0 + y) ** -l)
    yield "M- at m=l", ladder_coeff(edge, Direction.M_MINUS), res


def _algebra() -> Iterable[Check]:
    s = "algebra"
    for tag, m in reference_models().items():
        for n, d in ladder_pairs(m):
            yield _check(s, f"{tag} n={n} {d.value}: X Phi = c Phi'", ladder_residual(m, n, d), 1e-8)
        for name, coeff, res in _annihilation(m):
            yield _check(s, f"{tag}: {name} coefficient", abs(coeff), 0.0)
            yield _check(s, f"{tag}: {name} differential residual", res, 1e-10)
        want = m.l * (m.l - 1.0)
        for n in range(m.n_max + 1):
            lab = AlgebraLabel.of_level(m, n)
            for which in ("G", "M"):
                yield _check(s, f"{tag} n={n}: {which}-Casimir = l(l-1)", abs(casimir_check(lab, which) - want), 1e-8)
        yield _check(s, f"{tag}: l(l-1) = k b^2", _rel(want, m.kb2), 1e-12)

        gaps = []
        for n in range(m.n_max + 1):
            lab = AlgebraLabel.of_level(m, n)
            try:
                gaps.append(abs(abs(ladder_coeff(lab, "g+")) - abs(ladder_coeff(AlgebraLabel(m.l, lab.m, lab.g + 1), "g-"))))
            except GmpError:
                continue
        yield _check(s, f"{tag}: non-unitarity witness |c_G+(g)| != |c_G-(g+1)|", 0.0 if max(gaps, default=0) > 1e-6 else 1.0, 0.0)

        for n in range(m.n_max + 1):
            p = ptp_map(m, n)
            r = level(m, n)
            lhs = (2 * m.l - 1) ** 2
            yield _check(s, f"{tag} n={n}: PTP (2l-1)^2 identity", _rel(lhs, (2 * (r.beta_n - r.alpha_n) - 1 - 2 * n) ** 2), 1e-12)
            yield _check(s, f"{tag} n={n}: eps_bar + (2l-1)^2 = 0", abs(p.eps_bar + lhs) / lhs, 1e-15)

    for chain in _chains():
        yield from chain
    zero = [ptp_bound_count(m1, m2) for m1, m2 in ((3, 2), (2, 2), (1, 5), (2.5, 2.0), (4.0, 3.0))]
    yield _check(s, "PTP count is 0 when |m2|-|m1| >= -1", float(sum(zero)), 0.0)


CHAIN_WALKS = (
    ("k4b2", 0, ("g-", "m+", "m+", "m-", "g+")),
    ("k4b2", 0, ("m+", "m+", "g-", "m-", "m+")),
    ("deep", 1, ("g-", "g+", "m+", "g-", "m-")),
    ("deep", 0, ("m+", "g-", "g-", "m-", "g+")),
)


def _chains() -> Iterable[list[Check]]:
    s = "algebra"
    models = reference_models()
    for tag, n, walk in CHAIN_WALKS:
        name = f"{tag} n={n} walk {','.join(walk)}"

        def one(model=models[tag], n=n, walk=walk, name=name):
            steps = satellite_chain(model, n, walk)
            kb2 = model.kb2
            f = model.physical.f if model.physical else None
            drift = max(_rel(st.target.k * st.target.b**2, kb2) for st in steps)
            yield _check(s, f"{name}: k b^2 conserved", drift, 1e-12)
            if f is not None:
                yield _check(s, f"{name}: D b^2/a^2 conserved", max(_rel(st.target.physical.f, f) for st in steps), 1e-12)
            lab = [(st.source.label, st.target.label, st.direction) for st in steps]
            bad = 0.0
            for a, b, d in lab:
                if d in (Direction.G_PLUS, Direction.G_MINUS):
                    bad = max(bad, _rel(b.m, a.m))
                else:
                    bad = max(bad, _rel(b.g, a.g))
            yield _check(s, f"{name}: m fixed under G, g fixed under M", bad, 1e-12)
            # the target label must be the label the satellite model actually assigns
            back = max(
                max(_rel(AlgebraLabel.of_level(st.target.model, st.target.n).m, st.target.label.m),
                    _rel(AlgebraLabel.of_level(st.target.model, st.target.n).g, st.target.label.g))
                for st in steps
            )
            yield _check(s, f"{name}: satellite labels consistent", back, 1e-12)

        yield _guard(s, name, one)


# --- susyqm -------------------------------------------------------------------


def _susyqm() -> Iterable[Check]:
    s = "susyqm"
    for tag, m in reference_models().items():
        p = partner(m)
        yield _check(s, f"{tag}: l' = l + 1", _rel(p.l_prime, m.l + 1.0), 1e-12)
        pm = p.model
        if m.n_max >= 1:
            shift = max(_rel(float(pm.alpha(n)), float(m.alpha(n + 1))) for n in range(m.n_max))
            yield _check(s, f"{tag}: alpha'_n = alpha_(n+1)", shift, 1e-12)
        x = np.linspace(0.05, 3 * m.x_e + 5, 1000)
        direct = partner_potential_direct(m, x)
        diff = np.max(np.abs(p.potential(x) - direct) / np.maximum(np.abs(direct), 1.0))
        yield _check(s, f"{tag}: k'(1-b'/(e^x-1))^2 + R = v + 2W'", diff, 1e-10)

        chain = partner_chain(m, m.n_max)
        ls = [m.l] + [c.l_prime for c in chain]
        yield _check(s, f"{tag}: partner chain l, l+1, ...", max(abs(b - a - 1) for a, b in zip(ls, ls[1:])) if chain else 0.0, 1e-10)

        grid = GridSpec.for_model(pm, 20000)
        tol = 1e-6
        for n in range(m.n_max):
            eps = numerov_eigenvalue(p.potential, n, grid)
            yield _check(s, f"{tag}: Numerov on partner, level {n} = eps_{n + 1}", _rel(eps, level(m, n + 1).eps_n), tol)

        for n in range(1, m.n_max + 1):
            st = bound_state(m, n)
            ps = partner_state(m, n - 1)
            x_lo, x_hi = mass_interval(st, 0.999)
            xs = np.linspace(x_lo, x_hi, 2000)
            a = intertwined_partner(st, xs)
            b = ps.psi(xs)
            i = int(np.argmax(np.abs(b)))
            a = a * np.sign(a[i]) * np.sign(b[i])
            yield _check(s, f"{tag} n={n}: A- psi_n ~ partner psi_(n-1)", float(np.max(np.abs(a - b)) / np.max(np.abs(b))), 1e-8)


# --- numerics -----------------------------------------------------------------


def _numerics() -> Iterable[Check]:
    s = "numerics"
    for tag, m in reference_models().items():
        grid = GridSpec.for_model(m, 20000)
        tol = 1e-6 if tag == "k4b2" else 1e-5
        for r in levels(m):
            yield _check(s, f"{tag} n={r.n}: Numerov vs closed form", _rel(numerov_eigenvalue(m.potential, r.n, grid), r.eps_n), tol)
        found = count_levels(m.potential, grid, m.k * (1 - 1e-9))
        yield _check(s, f"{tag}: oracle level count = n_max + 1", abs(found - (m.n_max + 1)), 0.0)

    m = reference_models()["k4b2"]
    step = satellite_step(m, 0, "g-")
    fc = abs(franck_condon(bound_state(m, 0), satellite_state(step)))
    yield _check(s, "G- satellite overlap strictly inside (0, 1)", 0.0 if 0.0 < fc < 1.0 else 1.0, 0.0, f"|<0|1'>| = {fc:.12g}")

    rng = np.random.default_rng(7)
    for i in range(3):
        truth = _fit_draw(rng)
        ns = range(min(reduce(truth).n_max + 1, 6))
        obs = list(zip(ns, model_energies(truth.D, truth.a, truth.r_e, 1.0, 1.0, list(ns))))
        start = PhysicalParams(truth.D * 1.2, truth.a * 1.2, truth.r_e * 1.2)
        res = fit_levels(obs, start, FitOptions())
        got = res.params
        err = max(_rel(got.D, truth.D), _rel(got.a, truth.a), _rel(got.r_e, truth.r_e))
        yield _check(s, f"fit draw {i}: parameters recovered", err if res.converged else math.inf, 1e-4)


def _fit_draw(rng: np.random.Generator) -> PhysicalParams:
    """Uniform draw in D in [5, 50], a in [0.5, 2], r_e in [1, 4] with at least 3 bound levels."""
    while True:
        p = PhysicalParams(rng.uniform(5, 50), rng.uniform(0.5, 2), rng.uniform(1, 4))
        if reduce(p).n_max >= 2:
            return p


SUITES: dict[str, Callable[[], Iterable[Check]]] = {
    "core": _core,
    "wavefunction": _wavefunction,
    "algebra": _algebra,
    "susyqm": _susyqm,
    "numerics": _numerics,
}


def run_suite(name: str) -> list[Check]:
    if name == "all":
        return run_all()
    if name not in SUITES:
        raise KeyError(name)
    return _guard(name, "suite aborted", SUITES[name])


def run_all() -> list[Check]:
    out = []
    for name in SUITES:
        out.extend(run_suite(name))
    return out
