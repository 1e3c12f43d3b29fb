"""Seeded Monte Carlo estimates of induced-pattern appearance in random flag complexes."""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy.stats import binomtest

from .betti import torsion_primes
from .complexes import Graph, SimplicialComplex, clique_complex, load
from .construction import named_complex
from .density import EXHAUSTED, EXHAUSTIVE_LIMIT, FOUND, NOT_FOUND, contains_induced, essential_density
from .homology import prime_factors
from .random_flag import FlagModelParams, parse_probability, sample_graph

MODES = ("detect-pattern", "detect-torsion")


@dataclass(frozen=True)
class ExperimentConfig:
    pattern: str
    n_values: tuple[int, ...]
    p_values: tuple[Fraction, ...]
    trials: int
    seed: int = 0
    budget: int = 10**7
    mode: str = "detect-pattern"
    subgraph: bool = False
    size_cap: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        object.__setattr__(self, "p_values", tuple(parse_probability(p) for p in self.p_values))
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not self.n_values or not self.p_values:
            raise ValueError("the (n, p) grid is empty")
        if any(n < 0 for n in self.n_values):
            raise ValueError("n values must be nonnegative")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.budget < 1:
            raise ValueError("budget must be positive")

    def as_dict(self) -> dict:
        return {
            "pattern": self.pattern,
            "n_values": list(self.n_values),
            "p_values": [_fmt_p(p) for p in self.p_values],
            "trials": self.trials,
            "seed": self.seed,
            "budget": self.budget,
            "mode": self.mode,
            "subgraph": self.subgraph,
            "size_cap": self.size_cap,
        }


@dataclass
class TrialRecord:
    n: int
    p: Fraction
    trial: int
    seed: int
    outcome: str
    nodes: int
    elapsed: float = 0.0
    witness: tuple[int, ...] | None = None

    def as_dict(self, timing: bool = False) -> dict:
        out = {
            "n": self.n,
            "p": _fmt_p(self.p),
            "trial": self.trial,
            "seed": self.seed,
            "outcome": self.outcome,
            "nodes": self.nodes,
            "witness": list(self.witness) if self.witness is not None else None,
        }
        if timing:
            out["elapsed"] = self.elapsed
        return out


@dataclass
class PointSummary:
    n: int
    p: Fraction
    trials: int
    found: int
    not_found: int
    exhausted: int
    frequency: float | None
    ci_low: float | None
    ci_high: float | None
    threshold: float | None

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "p": _fmt_p(self.p),
            "trials": self.trials,
            "found": self.found,
            "not_found": self.not_found,
            "exhausted": self.exhausted,
            "frequency": _round(self.frequency),
            "ci_low": _round(self.ci_low),
            "ci_high": _round(self.ci_high),
            "threshold": _round(self.threshold),
        }


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    points: list[PointSummary]
    records: list[TrialRecord] = field(default_factory=list)
    pattern_density: Fraction | None = None

    def to_csv(self) -> str:
        buf = io.StringIO()
        cols = ["n", "p", "trials", "found", "not_found", "exhausted", "frequency", "ci_low", "ci_high", "threshold"]
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for pt in self.points:
            w.writerow({k: ("" if v is None else v) for k, v in pt.as_dict().items()})
        return buf.getvalue()

    def to_json(self, timing: bool = False) -> str:
        data = {
            "config": self.config.as_dict(),
            "pattern_density": str(self.pattern_density) if self.pattern_density is not None else None,
            "points": [pt.as_dict() for pt in self.points],
            "trials": [r.as_dict(timing) for r in self.records],
        }
        return json.dumps(data, indent=1, sort_keys=True) + "\n"

    def to_gnuplot(self) -> str:
        lines = ["# n p frequency ci_low ci_high threshold"]
        for pt in self.points:
            vals = [pt.frequency, pt.ci_low, pt.ci_high, pt.threshold]
            lines.append(f"{pt.n} {float(pt.p):.6g} " + " ".join("nan" if v is None else f"{v:.6f}" for v in vals))
        return "\n".join(lines) + "\n"


def _fmt_p(p: Fraction) -> str:
    if p.denominator == 1:
        return str(p.numerator)
    # exact decimal when the denominator is 2^a 5^b, else the fraction
    d, twos, fives = p.denominator, 0, 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return str(p)
    digits = max(twos, fives)
    scaled = p * 10**digits
    s = str(abs(scaled.numerator)).rjust(digits + 1, "0")
    return ("-" if p < 0 else "") + s[:-digits] + "." + s[-digits:]


def _round(x: float | None) -> float | None:
    return None if x is None else round(x, 6)


def derive_seed(master: int, n: int, p: Fraction, trial: int) -> int:
    """64-bit trial seed, a pure function of ``(master, n, p, trial)``."""
    ss = np.random.SeedSequence(entropy=master, spawn_key=(n, p.numerator, p.denominator, trial))
    lo, hi = ss.generate_state(2, dtype=np.uint32).tolist()
    return lo | hi << 32


def resolve_pattern(pattern: str) -> SimplicialComplex:
    if pattern == "rp2" or pattern.startswith("xm:"):
        return named_complex(pattern)
    path = Path(pattern)
    if path.exists():
        return load(path)
    raise ValueError(f"unknown pattern {pattern!r}: expected rp2, xm:<m> or a complex JSON file")


def target_primes(pattern: str) -> set[int] | None:
    """Primes that count as a hit in torsion mode; ``None`` means any prime."""
    if pattern == "rp2":
        return {2}
    if pattern.startswith("xm:"):
        return set(prime_factors(int(pattern[3:])))
    return None


@lru_cache(maxsize=None)
def _pattern_graph(pattern: str) -> Graph:
    return resolve_pattern(pattern).skeleton_graph()


@lru_cache(maxsize=None)
def pattern_density(pattern: str) -> Fraction:
    g = _pattern_graph(pattern)
    return essential_density(g, "exhaustive" if g.n <= EXHAUSTIVE_LIMIT else "maxflow").density


def wilson_interval(successes: int, total: int) -> tuple[float, float]:
    ci = binomtest(successes, total).proportion_ci(confidence_level=0.95, method="wilson")
    return float(ci.low), float(ci.high)


def detect_torsion(host: Graph, cap: int | None, primes: set[int] | None, budget: int | None = None):
    """Scan induced subcomplexes of the flag complex of ``host`` up to size ``cap``.

    Returns ``(outcome, subsets scanned, witness alpha)``; a hit is torsion at
    one of ``primes`` (any prime when ``None``).
    """
    n = host.n
    sizes = range(min(n if cap is None else cap, n) + 1)
    count = sum(comb(n, s) for s in sizes)
    if budget is not None and count > budget:
        return EXHAUSTED, 0, None
    rep = torsion_primes(clique_complex(host), sizes=sizes, max_subsets=None)
    hits = sorted(rep.primes if primes is None else rep.primes & primes)
    if not hits:
        return NOT_FOUND, count, None
    return FOUND, count, rep.witness[hits[0]][0]


def _run_trial(cfg: ExperimentConfig, n: int, p: Fraction, trial: int) -> TrialRecord:
    seed = derive_seed(cfg.seed, n, p, trial)
    start = time.perf_counter()
    host = sample_graph(FlagModelParams(n, p, seed))
    if cfg.mode == "detect-pattern":
        res = contains_induced(_pattern_graph(cfg.pattern), host, budget=cfg.budget, induced=not cfg.subgraph)
        outcome, nodes, witness = res.status, res.nodes, res.embedding
    else:
        outcome, nodes, witness = detect_torsion(host, cfg.size_cap, target_primes(cfg.pattern), cfg.budget)
    return TrialRecord(n, p, trial, seed, outcome, nodes, time.perf_counter() - start, witness)


def _run_chunk(args):
    cfg, jobs = args
    return [_run_trial(cfg, n, p, t) for n, p, t in jobs]


def run_threshold_experiment(cfg: ExperimentConfig, threads: int = 1) -> ExperimentResult:
    """Run every trial of the grid; records come back in grid order regardless of ``threads``."""
    resolve_pattern(cfg.pattern)
    jobs = [(n, p, t) for n in cfg.n_values for p in cfg.p_values for t in range(cfg.trials)]
    if threads > 1 and len(jobs) > 1:
        chunks = [jobs[i::threads] for i in range(threads)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_run_chunk, [(cfg, c) for c in chunks]))
        records = [r for part in parts for r in part]
    else:
        records = _run_chunk((cfg, jobs))
    order = {(n, p): i for i, (n, p) in enumerate((n, p) for n in cfg.n_values for p in cfg.p_values)}
    records.sort(key=lambda r: (order[r.n, r.p], r.trial))

    dens = None
    if cfg.mode == "detect-pattern" and not cfg.subgraph:
        dens = pattern_density(cfg.pattern)
    points = []
    for n in cfg.n_values:
        for p in cfg.p_values:
            rs = [r for r in records if r.n == n and r.p == p]
            found = sum(r.outcome == FOUND for r in rs)
            exhausted = sum(r.outcome == EXHAUSTED for r in rs)
            decided = len(rs) - exhausted
            if decided:
                freq = found / decided
                lo, hi = wilson_interval(found, decided)
            else:
                freq = lo = hi = None
            thr = float(n) ** (-1 / float(dens)) if dens and n > 0 else None
            points.append(PointSummary(n, p, len(rs), found, decided - found, exhausted, freq, lo, hi, thr))
    return ExperimentResult(cfg, points, records, dens)


def frequency_pair(pattern: str, a: tuple[int, str], b: tuple[int, str], trials: int, seed: int = 0):
    """Summaries at two grid points, for regression comparisons."""
    out = []
    for n, p in (a, b):
        cfg = ExperimentConfig(pattern, (n,), (p,), trials, seed)
        out.append(run_threshold_experiment(cfg).points[0])
    return out


def summarize(points: Sequence[PointSummary]) -> str:
    return "\n".join(
        f"n={pt.n} p={_fmt_p(pt.p)} found={pt.found}/{pt.trials - pt.exhausted} "
        f"freq={pt.frequency} ci=[{pt.ci_low}, {pt.ci_high}] exhausted={pt.exhausted}"
        for pt in points
    )
