"""Experiment orchestration: the two validation panels, reproducibly.

``run_figure1`` sweeps (m, N) over a grid, grows ``realizations``
independent networks per cell, estimates the exponent of each, and tables
mean/std against the solved theoretical exponent. ``run_fit_panel``
solves the exponent curve and fits the saturating closed form to it.

Replicate seeds are derived from (base_seed, m, N, replicate) with a
SplitMix64-style mixing chain, so any worker can compute its own seed and
distinct tasks get distinct streams. Aggregation is order-independent:
per-replicate estimates are collected, sorted by replicate index, and
reduced by a single writer, so reruns with the same base seed produce
byte-identical output files regardless of worker count.
"""

from __future__ import annotations

import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError, ExperimentError, InsufficientPointsError
from .estimate import estimate_gamma
from .fit import FitResult, eval_ansatz, fit_ansatz
from .netgen import GrowthParams, generate
from .theory import gamma_curve, solve_gamma

logger = logging.getLogger(__name__)

DEFAULT_M_VALUES = tuple(range(1, 11))
DEFAULT_N_VALUES = (1_000, 10_000, 100_000)
DEFAULT_REALIZATIONS = 30
DEFAULT_BASE_SEED = 1729

CSV_NAME = "figure1.csv"
CSV_HEADER = "m,N,mean_gamma,std_gamma,theory_gamma,realizations"
REPLICATE_DIR = "replicates"

# Sanity band for per-cell mean estimates; anything outside aborts the run.
MEAN_BAND = (1.5, 3.5)

# Fitting window for the saturating curve and how far past it the sampled
# curve extends in the emitted plot data.
FIT_WINDOW = (1, 10)
EXTRAPOLATION_M = 100
CURVE_SAMPLES = 400

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class ExperimentConfig:
    """Grid, replication count, seeding, and output location for a run."""

    m_values: tuple[int, ...] = DEFAULT_M_VALUES
    n_values: tuple[int, ...] = DEFAULT_N_VALUES
    realizations: int = DEFAULT_REALIZATIONS
    base_seed: int = DEFAULT_BASE_SEED
    output_dir: Path = field(default_factory=lambda: Path("pagamma-output"))
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "m_values", tuple(int(m) for m in self.m_values))
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        object.__setattr__(self, "output_dir", Path(self.output_dir))
        if not self.m_values or not self.n_values:
            raise ConfigError("m_values and n_values must be nonempty")
        if any(m < 1 for m in self.m_values):
            raise ConfigError(f"m_values must be positive, got {self.m_values}")
        if min(self.n_values) < max(self.m_values) + 2:
            raise ConfigError(
                f"every N must be >= max(m) + 2 = {max(self.m_values) + 2}, "
                f"got n_values={self.n_values}"
            )
        if self.realizations < 1:
            raise ConfigError(f"realizations must be >= 1, got {self.realizations}")
        if not 0 <= self.base_seed <= _MASK64:
            raise ConfigError(f"base_seed must fit in 64 unsigned bits, got {self.base_seed}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")


@dataclass(frozen=True)
class ExperimentRow:
    """Aggregated estimates for one (m, N) cell."""

    m: int
    n_nodes: int
    mean_gamma: float
    std_gamma: float
    theory_gamma: float
    realizations: int


@dataclass(frozen=True)
class ExperimentTable:
    """All rows of one grid run, in config order."""

    rows: tuple[ExperimentRow, ...]

    def row(self, m: int, n_nodes: int) -> ExperimentRow:
        for r in self.rows:
            if r.m == m and r.n_nodes == n_nodes:
                return r
        raise KeyError(f"no row for m={m}, N={n_nodes}")


def _mix64(z: int) -> int:
    """SplitMix64 finalizer: a 64-bit bijective scrambler."""
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def replicate_seed(base_seed: int, m: int, n_nodes: int, replicate: int) -> int:
    """Derive the generator seed for one replicate.

    The chain is s = mix(base); s = mix(s XOR mix(v)) for v in
    (m, n_nodes, replicate), with mix = SplitMix64's finalizer. Distinct
    (m, N, replicate) triples map to distinct seeds for any realistic grid.
    """
    s = _mix64(base_seed & _MASK64)
    for v in (m, n_nodes, replicate):
        s = _mix64(s ^ _mix64(v & _MASK64))
    return s


def _replicate_task(task: tuple[int, int, int, int]) -> float:
    m, n_nodes, _replicate, seed = task
    seq = generate(GrowthParams(n_nodes=n_nodes, m=m, seed=seed))
    return estimate_gamma(seq).gamma_hat


def _run_tasks(tasks, workers: int) -> list[float]:
    results: list[float] = []
    if workers <= 1:
        source = map(_replicate_task, tasks)
    else:
        executor = ProcessPoolExecutor(max_workers=workers)
        chunk = max(1, len(tasks) // (workers * 8))
        source = executor.map(_replicate_task, tasks, chunksize=chunk)
    iterator = iter(source)
    try:
        for m, n_nodes, replicate, _seed in tasks:
            try:
                results.append(float(next(iterator)))
            except StopIteration:
                raise
            except Exception as exc:
                raise ExperimentError(
                    f"m={m} N={n_nodes} replicate={replicate}: {type(exc).__name__}: {exc}"
                ) from exc
    finally:
        if workers > 1:
            executor.shutdown(wait=False, cancel_futures=True)
    return results


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def run_figure1(config: ExperimentConfig) -> ExperimentTable:
    """Run the full (m, N) grid and write CSV, plot data, and replicates.

    Writes into ``config.output_dir``:

    * ``figure1.csv`` with header ``m,N,mean_gamma,std_gamma,theory_gamma,realizations``
    * ``left_panel_N{N}.dat`` per N: columns m, mean, std (x/y/yerr)
    * ``theory_curve.dat``: columns m, solved exponent
    * ``replicates/m{m}_N{N}.txt``: one estimate per line, replicate order

    Deterministic for a fixed base_seed, independent of worker count.
    """
    if not isinstance(config, ExperimentConfig):
        raise ConfigError(f"expected ExperimentConfig, got {type(config).__name__}")

    theory = {m: solve_gamma(m).gamma for m in config.m_values}

    tasks = [
        (m, n, r, replicate_seed(config.base_seed, m, n, r))
        for m in config.m_values
        for n in config.n_values
        for r in range(config.realizations)
    ]
    logger.info(
        "figure1: %d tasks (%d m-values x %d N-values x %d replicates), %d worker(s)",
        len(tasks), len(config.m_values), len(config.n_values),
        config.realizations, config.workers,
    )
    flat = _run_tasks(tasks, config.workers)

    per_cell: dict[tuple[int, int], list[float]] = {}
    for (m, n, r, _seed), gamma_hat in zip(tasks, flat):
        per_cell.setdefault((m, n), []).append(gamma_hat)  # replicate order

    rows = []
    for m in config.m_values:
        for n in config.n_values:
            values = per_cell[(m, n)]
            mean = float(np.mean(values))
            std = float(np.std(values, ddof=1)) if len(values) > 1 else 0.0
            if not MEAN_BAND[0] < mean < MEAN_BAND[1]:
                raise ExperimentError(
                    f"m={m} N={n}: mean estimate {mean:.6g} outside sanity band {MEAN_BAND}"
                )
            rows.append(
                ExperimentRow(
                    m=m, n_nodes=n, mean_gamma=mean, std_gamma=std,
                    theory_gamma=theory[m], realizations=len(values),
                )
            )
        logger.info("figure1: m=%d done", m)

    table = ExperimentTable(rows=tuple(rows))
    _write_figure1_outputs(config, table, per_cell)
    return table


def _write_figure1_outputs(config, table, per_cell) -> None:
    out = config.output_dir
    out.mkdir(parents=True, exist_ok=True)

    lines = [CSV_HEADER]
    for r in table.rows:
        lines.append(
            f"{r.m},{r.n_nodes},{_fmt(r.mean_gamma)},{_fmt(r.std_gamma)},"
            f"{_fmt(r.theory_gamma)},{r.realizations}"
        )
    (out / CSV_NAME).write_text("\n".join(lines) + "\n", encoding="ascii")

    for n in config.n_values:
        dat = ["# m mean_gamma std_gamma"]
        for r in table.rows:
            if r.n_nodes == n:
                dat.append(f"{r.m} {_fmt(r.mean_gamma)} {_fmt(r.std_gamma)}")
        (out / f"left_panel_N{n}.dat").write_text("\n".join(dat) + "\n", encoding="ascii")

    dat = ["# m theory_gamma"]
    seen = set()
    for r in table.rows:
        if r.m not in seen:
            seen.add(r.m)
            dat.append(f"{r.m} {_fmt(r.theory_gamma)}")
    (out / "theory_curve.dat").write_text("\n".join(dat) + "\n", encoding="ascii")

    rep_dir = out / REPLICATE_DIR
    rep_dir.mkdir(exist_ok=True)
    for (m, n), values in sorted(per_cell.items()):
        body = "\n".join(_fmt(v) for v in values) + "\n"
        (rep_dir / f"m{m}_N{n}.txt").write_text(body, encoding="ascii")


def run_fit_panel(config: ExperimentConfig) -> FitResult:
    """Solve the exponent curve, fit the saturating form, write plot data.

    The fit uses the points with m inside ``FIT_WINDOW``; the sampled
    curve in ``right_panel_fit.dat`` extends to max(EXTRAPOLATION_M,
    max m), i.e. well past the fitting window.
    """
    if not isinstance(config, ExperimentConfig):
        raise ConfigError(f"expected ExperimentConfig, got {type(config).__name__}")

    curve = gamma_curve(list(config.m_values))
    points = [(s.m, s.gamma) for s in curve]
    window = [(m, g) for m, g in points if FIT_WINDOW[0] <= m <= FIT_WINDOW[1]]
    if len(window) < 3:
        raise InsufficientPointsError(
            f"need at least 3 m-values inside {FIT_WINDOW} to fit, got {len(window)}"
        )
    result = fit_ansatz(window)

    out = config.output_dir
    out.mkdir(parents=True, exist_ok=True)

    dat = ["# m theory_gamma"]
    for m, g in points:
        dat.append(f"{m} {_fmt(g)}")
    (out / "right_panel_theory.dat").write_text("\n".join(dat) + "\n", encoding="ascii")

    m_hi = max(EXTRAPOLATION_M, max(config.m_values))
    m_lo = min(config.m_values)
    samples = np.geomspace(m_lo, m_hi, CURVE_SAMPLES)
    dat = [f"# m fitted_gamma (alpha={_fmt(result.alpha)} beta={_fmt(result.beta)})"]
    for m in samples:
        dat.append(f"{_fmt(float(m))} {_fmt(eval_ansatz(float(m), result.alpha, result.beta))}")
    (out / "right_panel_fit.dat").write_text("\n".join(dat) + "\n", encoding="ascii")
    return result


def load_config(path) -> ExperimentConfig:
    """Read an ExperimentConfig from JSON or flat key=value text.

    Keys: m_values, n_values, realizations, base_seed, output_dir,
    workers. In the flat format lists are comma-separated integers, with
    ``a..b`` allowed as an inclusive range; integers may use scientific
    notation (``1e5``). Lines starting with ``#`` are ignored.
    """
    text = Path(path).read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError(f"{path}: top-level JSON value must be an object")
    else:
        raw = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            raw[key.strip()] = value.strip()
    return _config_from_mapping(raw, source=str(path))


def _parse_int(value, key: str) -> int:
    if isinstance(value, bool):
        raise ConfigError(f"{key}: expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        if not value.is_integer():
            raise ConfigError(f"{key}: expected an integer, got {value!r}")
        return int(value)
    token = str(value).strip()
    try:
        as_float = float(token)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse integer from {token!r}") from None
    if not (math.isfinite(as_float) and as_float == int(as_float)):
        raise ConfigError(f"{key}: expected an integer, got {token!r}")
    return int(as_float)


def _parse_int_list(value, key: str) -> tuple[int, ...]:
    if isinstance(value, (list, tuple)):
        return tuple(_parse_int(v, key) for v in value)
    out: list[int] = []
    for token in str(value).split(","):
        token = token.strip()
        if not token:
            continue
        if ".." in token:
            lo_s, _, hi_s = token.partition("..")
            lo, hi = _parse_int(lo_s, key), _parse_int(hi_s, key)
            if hi < lo:
                raise ConfigError(f"{key}: empty range {token!r}")
            out.extend(range(lo, hi + 1))
        else:
            out.append(_parse_int(token, key))
    return tuple(out)


def _config_from_mapping(raw: dict, source: str) -> ExperimentConfig:
    known = {"m_values", "n_values", "realizations", "base_seed", "output_dir", "workers"}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"{source}: unknown config keys {sorted(unknown)}")
    kwargs = {}
    if "m_values" in raw:
        kwargs["m_values"] = _parse_int_list(raw["m_values"], "m_values")
    if "n_values" in raw:
        kwargs["n_values"] = _parse_int_list(raw["n_values"], "n_values")
    for key in ("realizations", "base_seed", "workers"):
        if key in raw:
            kwargs[key] = _parse_int(raw[key], key)
    if "output_dir" in raw:
        kwargs["output_dir"] = Path(str(raw["output_dir"]))
    return ExperimentConfig(**kwargs)


def render_left_panel(table: ExperimentTable, path) -> None:
    """Optional SVG rendering of the grid run (needs matplotlib)."""
    try:
        import matplotlib
    except ImportError as exc:
        raise ConfigError("matplotlib is required for rendering; install pagamma[plots]") from exc
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5.2, 4.0))
    ms = sorted({r.m for r in table.rows})
    theory = {r.m: r.theory_gamma for r in table.rows}
    ax.plot(ms, [theory[m] for m in ms], "k-", lw=2, label="theory")
    for n in sorted({r.n_nodes for r in table.rows}):
        sel = [r for r in table.rows if r.n_nodes == n]
        ax.errorbar(
            [r.m for r in sel], [r.mean_gamma for r in sel],
            yerr=[r.std_gamma for r in sel], fmt="o", ms=4, capsize=3, label=f"N={n:g}",
        )
    ax.set_xlabel("m")
    ax.set_ylabel("gamma")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def render_right_panel(config: ExperimentConfig, result: FitResult, path) -> None:
    """Optional SVG rendering of the solved curve and its fit (needs matplotlib)."""
    try:
        import matplotlib
    except ImportError as exc:
        raise ConfigError("matplotlib is required for rendering; install pagamma[plots]") from exc
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    curve = gamma_curve(list(config.m_values))
    m_hi = max(EXTRAPOLATION_M, max(config.m_values))
    samples = np.geomspace(min(config.m_values), m_hi, CURVE_SAMPLES)
    fig, ax = plt.subplots(figsize=(5.2, 4.0))
    ax.plot([s.m for s in curve], [s.gamma for s in curve], "k*", ms=8, label="solved")
    ax.plot(
        samples, [eval_ansatz(float(m), result.alpha, result.beta) for m in samples],
        "r-", lw=1.5,
        label=f"fit: 3-(m+{result.alpha:.4f})^(-{result.beta:.4f})",
    )
    ax.set_xlabel("m")
    ax.set_ylabel("gamma")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
