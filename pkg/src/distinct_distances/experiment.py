"""Seeded experiment sweeps over n, with CSV rows and a JSON summary.

Each row draws its own parameters from a generator seeded by ``(seed, n)``,
so output is identical whether rows run sequentially or in worker processes.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from pathlib import Path
from typing import Optional

import numpy as np

from .curves import ParamSet, classify_curve
from .distances import OFFDIAG, build_histogram, cs_lower_bound, distinct_count, energy_Q, isosceles_S
from .errors import SizeGuard
from .fileio import read_scalars
from .numeric import DEFAULT_DIGITS
from .specparse import parse_curve_spec
from .subsets import DEFAULT_C, DEFAULT_TRIALS, randomized_subset

UNIFORM = "uniform-random"
ARITHMETIC = "arithmetic-progression"
USER_FILE = "user-file"
DENOMINATOR = 10**6


@dataclass
class ExperimentConfig:
    spec: str
    n_list: list
    sampling: str = UNIFORM
    seed: int = 0
    backend: str = "exact"
    out: Optional[str] = None
    input: Optional[str] = None
    digits: int = DEFAULT_DIGITS
    pi_const: float = DEFAULT_C
    trials: int = DEFAULT_TRIALS
    samples: int = 200
    workers: int = 1
    timing: bool = False

    def __post_init__(self):
        self.n_list = [int(n) for n in self.n_list]
        if not self.n_list or any(b <= a for a, b in zip(self.n_list, self.n_list[1:])):
            raise ValueError("n_list must be non-empty and strictly increasing")
        if self.n_list[0] < 2:
            raise ValueError("every n must be at least 2")
        if self.sampling not in (UNIFORM, ARITHMETIC, USER_FILE):
            raise ValueError(f"unknown sampling {self.sampling!r}")
        if self.sampling == USER_FILE and not self.input:
            raise ValueError("user-file sampling needs an input file")
        if self.backend not in ("exact", "float"):
            raise ValueError(f"unknown backend {self.backend!r}")


@dataclass
class ExperimentRow:
    n: int
    distinct: int
    energy_offdiag: int
    isosceles: int
    cs_bound_num: int
    cs_bound_den: int
    subset_size: int
    wall_time_ms: Optional[float] = None


def sample_params(curve, n, sampling, seed, user_params=None) -> list:
    """Distinct parameters inside the curve's sample box, as Fractions."""
    lo, hi = curve.sample_box()
    if sampling == ARITHMETIC:
        return [lo + (hi - lo) * Fraction(k, n + 1) for k in range(1, n + 1)]
    if sampling == USER_FILE:
        if len(user_params) < n:
            raise SizeGuard(f"input file has {len(user_params)} parameters, need {n}")
        return list(user_params[:n])
    if n > DENOMINATOR - 1:
        raise SizeGuard(f"cannot draw {n} distinct grid parameters")
    rng = random.Random(f"{seed}:{n}")
    ks = sorted(rng.sample(range(1, DENOMINATOR), n))
    return [lo + (hi - lo) * Fraction(k, DENOMINATOR) for k in ks]


def compute_row(cfg: ExperimentConfig, n: int, user_params=None) -> ExperimentRow:
    curve = parse_curve_spec(cfg.spec)
    start = time.perf_counter()
    params = sample_params(curve, n, cfg.sampling, cfg.seed, user_params)
    A = ParamSet(curve, tuple(params), cfg.backend)
    points = A.points()
    h = build_histogram(points, cfg.backend, cfg.digits)
    bound = cs_lower_bound(h)
    sub = randomized_subset(A, C=cfg.pi_const, trials=cfg.trials, seed=cfg.seed, digits=cfg.digits)
    elapsed = (time.perf_counter() - start) * 1000.0
    row = ExperimentRow(
        n=n,
        distinct=distinct_count(h),
        energy_offdiag=energy_Q(h, OFFDIAG),
        isosceles=isosceles_S(points, cfg.backend, cfg.digits),
        cs_bound_num=bound.numerator,
        cs_bound_den=bound.denominator,
        subset_size=sub.size,
        wall_time_ms=round(elapsed, 3) if cfg.timing else None,
    )
    if Fraction(row.cs_bound_num, row.cs_bound_den) > row.distinct or row.subset_size > n:
        raise AssertionError(f"row invariant violated: {row}")
    return row


def _row_job(args):
    return compute_row(*args)


def fit_loglog(ns, ys) -> Optional[dict]:
    """Least-squares slope of log y against log n; None with fewer than two usable rows."""
    pts = [(math.log(n), math.log(y)) for n, y in zip(ns, ys) if y > 0]
    if len(pts) < 2:
        return None
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return {
        "slope": float(slope),
        "intercept": float(intercept),
        "residual_rms": float(np.sqrt(np.mean(resid**2))),
        "points": len(pts),
    }


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    names = [f.name for f in fields(ExperimentRow)]
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(names)
    for r in rows:
        w.writerow(["" if getattr(r, k) is None else getattr(r, k) for k in names])
    return buf.getvalue()


def run_experiment(cfg: ExperimentConfig) -> tuple:
    """Compute one row per n, fit growth exponents, and write CSV/JSON if ``cfg.out`` is set.

    Returns ``(rows, summary)``.
    """
    curve = parse_curve_spec(cfg.spec)
    user_params = read_scalars(cfg.input) if cfg.sampling == USER_FILE else None
    report = classify_curve(curve, samples=cfg.samples, seed=cfg.seed, backend=cfg.backend)
    jobs = [(cfg, n, user_params) for n in cfg.n_list]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(_row_job, jobs))
    else:
        rows = [compute_row(*job) for job in jobs]
    ns = [r.n for r in rows]
    summary = {
        "spec": cfg.spec,
        "family": curve.family,
        "classification": report.verdict,
        "seed": cfg.seed,
        "backend": cfg.backend,
        "sampling": cfg.sampling,
        "pi_const": cfg.pi_const,
        "trials": cfg.trials,
        "rows": [asdict(r) for r in rows],
        "fits": {
            "distinct_vs_n": fit_loglog(ns, [r.distinct for r in rows]),
            "subset_vs_n": fit_loglog(ns, [r.subset_size for r in rows]),
        },
    }
    if cfg.out:
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "experiment.csv").write_text(rows_to_csv(rows))
        (out / "experiment.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return rows, summary
