"""Experiment driver: measured maximum errors over [-1, 1] against the
theoretical constants, on the parameter grids used throughout the error
studies (N = 128, m = 2..10, tau in {1/20, 1/10, 1/4, 1/3, 9/20} at lam = 1
and lam in {0, 0.5, 1, 2} at tau = 1/3; plus the three-window comparison at
N = 256, tau = 0.45).

A plan is a cartesian grid (windows x tau_list x lambda_list x m_list); a
plan file may stack several grids separated by ``---`` lines, which is how
the paired tau-sweep/lambda-sweep figures are expressed.  Runs are
deterministic given the plan seed: every (cell, trial) perturbation stream
is derived from (seed, cell_index, trial) through a SeedSequence, so results
do not depend on worker scheduling.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from importlib import resources

import numpy as np

from .bounds import ConditionViolated, closed_form_bound, robustness_bound
from .reconstruct import TestFunction, TestFunctionKind, _draw_noise, kernel_matrix, reconstruct_grid, sample
from .windows import SamplingConfig, WindowKind, default_params


class BoundViolation(RuntimeError):
    """A measured error exceeded its proven bound; the run is unsound."""


@dataclass(frozen=True)
class ExperimentPlan:
    """One grid of experiment cells plus evaluation settings.

    ``eps`` = 0 requests clean approximation-error runs; ``eps`` > 0
    requests perturbation runs with ``trials`` seeded noise draws per cell.
    ``S`` equidistant evaluation points cover [-1, 1] inclusive.
    """

    test_fn: TestFunctionKind
    N: int
    m_list: tuple[int, ...]
    tau_list: tuple[float, ...]
    lambda_list: tuple[float, ...]
    windows: tuple[WindowKind, ...]
    S: int = 100_000
    trials: int = 100
    eps: float = 0.0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "test_fn", TestFunctionKind(self.test_fn))
        object.__setattr__(self, "m_list", tuple(int(m) for m in self.m_list))
        object.__setattr__(self, "tau_list", tuple(float(t) for t in self.tau_list))
        object.__setattr__(self, "lambda_list", tuple(float(l) for l in self.lambda_list))
        object.__setattr__(self, "windows", tuple(WindowKind(w) for w in self.windows))
        if self.S < 2:
            raise ValueError("S must be >= 2")
        if not self.m_list:
            raise ValueError("m_list must be nonempty")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.eps < 0:
            raise ValueError("eps must be >= 0")
        for tau in self.tau_list:
            for lam in self.lambda_list:
                for m in self.m_list:
                    SamplingConfig(self.N, lam, tau, m)  # validates every cell

    def cells(self):
        """Cell tuples (window, tau, lam, m) in deterministic plan order."""
        return [
            (w, tau, lam, m)
            for w in self.windows
            for tau in self.tau_list
            for lam in self.lambda_list
            for m in self.m_list
        ]


@dataclass(frozen=True)
class ErrorRow:
    window: WindowKind
    m: int
    tau: float
    lam: float
    measured: float
    bound: float | None
    bound_valid: bool


@dataclass(frozen=True)
class ErrorReport:
    rows: tuple[ErrorRow, ...]


def _eval_grid(S: int) -> np.ndarray:
    # S equidistant points inclusive of both endpoints of [-1, 1].
    return np.linspace(-1.0, 1.0, S)


def _approx_cell(plan: ExperimentPlan, cell) -> ErrorRow:
    kind, tau, lam, m = cell
    cfg = SamplingConfig(plan.N, lam, tau, m)
    w = default_params(kind, cfg)
    f = TestFunction(plan.test_fn, delta=cfg.delta)
    ss = sample(f, cfg, -cfg.L - m, cfg.L + m)
    t = _eval_grid(plan.S)
    rec = reconstruct_grid(ss, w, t)
    measured = float(np.max(np.abs(f(t) - rec)))
    try:
        bound = closed_form_bound(kind, cfg) * f.l2_norm
        valid = True
    except ConditionViolated:
        bound, valid = None, False
    if valid and measured > bound:
        raise BoundViolation(
            f"approximation error {measured:.6e} exceeds bound {bound:.6e} at "
            f"window={kind.value}, m={m}, tau={tau:g}, lam={lam:g}"
        )
    return ErrorRow(kind, m, tau, lam, measured, bound, valid)


def _perturb_cell(plan: ExperimentPlan, cell, cell_index: int) -> ErrorRow:
    kind, tau, lam, m = cell
    cfg = SamplingConfig(plan.N, lam, tau, m)
    w = default_params(kind, cfg)
    lo, hi = -cfg.L - m, cfg.L + m
    t = _eval_grid(plan.S)
    idx, weights, ongrid, j = kernel_matrix(cfg, w, t)
    flat = idx - lo
    n = hi - lo + 1
    measured = 0.0
    for trial in range(plan.trials):
        seed = np.random.SeedSequence((plan.seed, cell_index, trial))
        noise = _draw_noise(n, plan.eps, seed)
        # R(f~) - R(f) is linear in the perturbation, so reconstruct it alone.
        diff = np.einsum("ij,ij->i", noise[flat], weights)
        measured = max(measured, float(np.max(np.abs(diff))))
    rb = robustness_bound(w, cfg, plan.eps)
    bound = rb.specialized if rb.specialized is not None else rb.generic
    if measured > bound:
        raise BoundViolation(
            f"perturbation error {measured:.6e} exceeds bound {bound:.6e} at "
            f"window={kind.value}, m={m}, tau={tau:g}, lam={lam:g}"
        )
    return ErrorRow(kind, m, tau, lam, measured, bound, True)


def _run(plan: ExperimentPlan, worker, jobs: int) -> ErrorReport:
    cells = plan.cells()
    if jobs <= 1 or len(cells) <= 1:
        rows = [worker(i) for i in range(len(cells))]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(worker, range(len(cells))))
    return ErrorReport(tuple(rows))


class _ApproxWorker:
    def __init__(self, plan):
        self.plan = plan
        self.cells = plan.cells()

    def __call__(self, i):
        return _approx_cell(self.plan, self.cells[i])


class _PerturbWorker:
    def __init__(self, plan):
        self.plan = plan
        self.cells = plan.cells()

    def __call__(self, i):
        return _perturb_cell(self.plan, self.cells[i], i)


def run_approximation(plan: ExperimentPlan, jobs: int = 1) -> ErrorReport:
    """Measured max |f - Rf| over [-1, 1] per cell, paired with the window's
    closed-form bound (NA where the B-spline gate rejects the cell).

    Samples cover l = -L-m .. L+m, which is exactly the range the localized
    formula touches for targets in [-1, 1].  A measured error above a valid
    bound aborts the run with BoundViolation.
    """
    if plan.eps != 0.0:
        raise ValueError("approximation runs need eps = 0")
    return _run(plan, _ApproxWorker(plan), jobs)


def run_perturbation(plan: ExperimentPlan, jobs: int = 1) -> ErrorReport:
    """Measured max |R(f~) - R(f)| over [-1, 1], maximized over seeded noise
    trials, paired with the window-specialized robustness bound."""
    if plan.eps <= 0.0:
        raise ValueError("perturbation runs need eps > 0")
    return _run(plan, _PerturbWorker(plan), jobs)


def run_plan(plan: ExperimentPlan, jobs: int = 1) -> ErrorReport:
    """Dispatch on eps: clean approximation run when 0, perturbation run
    otherwise."""
    if plan.eps > 0:
        return run_perturbation(plan, jobs)
    return run_approximation(plan, jobs)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def emit_csv(report: ErrorReport, path) -> None:
    """Write ``window,m,tau,lambda,measured,bound,bound_valid`` rows, 17
    significant digits, in plan iteration order; bound is the literal ``NA``
    on rows whose closed-form bound is inapplicable."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write("window,m,tau,lambda,measured,bound,bound_valid\n")
        for r in report.rows:
            bound = _fmt(r.bound) if r.bound_valid else "NA"
            fh.write(
                f"{r.window.value},{r.m},{_fmt(r.tau)},{_fmt(r.lam)},"
                f"{_fmt(r.measured)},{bound},{str(r.bound_valid).lower()}\n"
            )


def _parse_scalar(text: str) -> float:
    text = text.strip()
    if "/" in text:
        return float(Fraction(text))
    return float(text)


def _parse_list(text: str):
    return [item.strip() for item in text.split(",") if item.strip()]


def parse_plan(text: str) -> ExperimentPlan:
    """Parse one key = value block; keys mirror the ExperimentPlan fields,
    lists are comma-separated, and fractions like 1/3 are accepted."""
    fields: dict = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"bad plan line: {raw!r}")
        key, val = (part.strip() for part in line.split("=", 1))
        if key == "test_fn":
            fields["test_fn"] = TestFunctionKind(val)
        elif key == "N":
            fields["N"] = int(val)
        elif key == "m_list":
            fields["m_list"] = tuple(int(x) for x in _parse_list(val))
        elif key == "tau_list":
            fields["tau_list"] = tuple(_parse_scalar(x) for x in _parse_list(val))
        elif key == "lambda_list":
            fields["lambda_list"] = tuple(_parse_scalar(x) for x in _parse_list(val))
        elif key == "windows":
            fields["windows"] = tuple(WindowKind(x) for x in _parse_list(val))
        elif key == "S":
            fields["S"] = int(val)
        elif key == "trials":
            fields["trials"] = int(val)
        elif key == "eps":
            fields["eps"] = _parse_scalar(val)
        elif key == "seed":
            fields["seed"] = int(val)
        else:
            raise ValueError(f"unknown plan key {key!r}")
    missing = {"test_fn", "N", "m_list", "tau_list", "lambda_list", "windows"} - set(fields)
    if missing:
        raise ValueError(f"plan is missing keys: {sorted(missing)}")
    return ExperimentPlan(**fields)


def load_plans(path) -> list[ExperimentPlan]:
    """Plans from a plain-text file; blocks separated by ``---`` lines."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    blocks = []
    current: list[str] = []
    for line in text.splitlines():
        if line.strip() == "---":
            blocks.append("\n".join(current))
            current = []
        else:
            current.append(line)
    blocks.append("\n".join(current))
    plans = [parse_plan(b) for b in blocks if b.strip()]
    if not plans:
        raise ValueError(f"no plans found in {path}")
    return plans


PRESETS = ("fig2", "fig5", "fig6", "fig8", "fig9", "fig10")


def preset_path(name: str):
    """Filesystem path of a checked-in preset plan."""
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {PRESETS}")
    return resources.files("regusamp").joinpath("presets", f"{name}.plan")


def load_preset(name: str, seed: int | None = None, S: int | None = None) -> list[ExperimentPlan]:
    """Preset plans, optionally overriding the seed (e.g. from the
    REGUSAMP_SEED environment variable) or the evaluation-point count."""
    with resources.as_file(preset_path(name)) as p:
        plans = load_plans(p)
    if seed is not None:
        plans = [replace(p, seed=seed) for p in plans]
    if S is not None:
        plans = [replace(p, S=S) for p in plans]
    return plans


def run_plans(plans, jobs: int = 1) -> ErrorReport:
    """Run several plans and concatenate their rows in order."""
    rows: list[ErrorRow] = []
    for plan in plans:
        rows.extend(run_plan(plan, jobs).rows)
    return ErrorReport(tuple(rows))


def default_jobs() -> int:
    return os.cpu_count() or 1
