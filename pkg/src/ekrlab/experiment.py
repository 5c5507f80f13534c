"""Monte Carlo trials on H^k(n, p) and sweeps over a grid of p values.

A trial samples V_p, builds the induced Kneser subgraph and records every
estimator of its independence number.  Sweeps fan trials out to worker
processes; results land in slots indexed by (p_index, trial) so the CSV is
the same for any worker count.
"""
from __future__ import annotations

import csv
import io
import json
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .combinatorics import colex_unrank_mask
from .errors import ContractViolation, ParameterError
from .indep import DEFAULT_BUDGET, deletion_lower_bound, degree_greedy_is, max_independent_set, stability_distance
from .kneser import kneser_params
from .regimes import DEFAULT_C, DEFAULT_EPSILON, DEFAULT_MARGIN, classify_and_predict
from .sampling import SampleSpec, derive_seed, induced_subgraph, sample_vertices

FORMAT_VERSION = "ekrlab-trial-1"


@dataclass(frozen=True)
class TrialRecord:
    n: int
    k: int
    p: float
    seed: int
    sampled_vertices: int
    sampled_edges: int
    triangle_count: int
    alpha_exact: int
    alpha_optimal: bool
    alpha_greedy: int
    alpha_deletion: int
    star_best: int
    stability_index: int
    stability_residual: int
    stability_on_exact: bool
    regime: str
    predicted: float
    runtime_ms: int

    def check(self) -> None:
        """Raise ContractViolation unless the record is internally consistent."""
        if self.star_best > self.alpha_exact:
            raise ContractViolation(f"star_best {self.star_best} exceeds alpha_exact {self.alpha_exact}")
        if self.alpha_optimal and self.alpha_exact < max(self.alpha_greedy, self.alpha_deletion):
            raise ContractViolation("optimal alpha below a heuristic lower bound")
        if self.alpha_exact > self.sampled_vertices or self.stability_residual > self.alpha_exact:
            raise ContractViolation("record sizes out of range")

    def row(self) -> list[str]:
        out = [FORMAT_VERSION]
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, bool):
                out.append("1" if v else "0")
            elif isinstance(v, float):
                out.append(repr(v))
            else:
                out.append(str(v))
        return out


CSV_HEADER = ["format_version"] + [f.name for f in fields(TrialRecord)]


def _parse_field(name: str, text: str):
    kind = TrialRecord.__dataclass_fields__[name].type
    if kind == "bool":
        return text == "1"
    if kind == "float":
        return float(text)
    if kind == "int":
        return int(text)
    return text


def read_csv(text: str) -> list[TrialRecord]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != CSV_HEADER:
        raise ParameterError("unexpected CSV header")
    out = []
    for lineno, row in enumerate(reader, 2):
        if row[0] != FORMAT_VERSION:
            raise ParameterError(f"line {lineno}: unknown format version {row[0]!r}")
        out.append(TrialRecord(**{name: _parse_field(name, v) for name, v in zip(CSV_HEADER[1:], row[1:])}))
    return out


def write_csv(records: Iterable[TrialRecord], out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for rec in records:
        rec.check()
        w.writerow(rec.row())


# ---------------------------------------------------------------------------
# single trial


def run_trial(
    n: int,
    k: int,
    p: float,
    seed: int,
    budget: int = DEFAULT_BUDGET,
    epsilon: float = DEFAULT_EPSILON,
    C: float = DEFAULT_C,
    margin: float = DEFAULT_MARGIN,
    timing: bool = False,
) -> TrialRecord:
    kneser_params(n, k)
    started = time.perf_counter()
    pred = classify_and_predict(n, k, p, epsilon, C, margin)
    sample = sample_vertices(SampleSpec(p, seed, n, k))
    base = dict(n=n, k=k, p=float(p), seed=seed, regime=pred.regime, predicted=pred.predicted_size)
    if not sample:
        return TrialRecord(
            **base,
            sampled_vertices=0,
            sampled_edges=0,
            triangle_count=0,
            alpha_exact=0,
            alpha_optimal=True,
            alpha_greedy=0,
            alpha_deletion=0,
            star_best=0,
            stability_index=0,
            stability_residual=0,
            stability_on_exact=True,
            runtime_ms=0,
        )
    g = induced_subgraph(sample, n, k)
    masks = [colex_unrank_mask(r, n, k) for r in sample]

    greedy = degree_greedy_is(g)
    deletion = deletion_lower_bound(g)
    counts = [0] * n
    for m in masks:
        for i in range(n):
            counts[i] += m >> i & 1
    star_elem = max(range(n), key=lambda i: (counts[i], -i))
    star = frozenset(v for v, m in enumerate(masks) if m >> star_elem & 1)
    exact = max_independent_set(g, budget, initial=star)

    if exact.optimal:
        witness = exact.witness
    else:
        witness = max((exact.witness, greedy.witness, deletion.witness, star), key=len)
    idx, residual = stability_distance([masks[v] for v in witness], n)

    elapsed = round((time.perf_counter() - started) * 1000) if timing else 0
    return TrialRecord(
        **base,
        sampled_vertices=g.vertex_count,
        sampled_edges=g.edge_count,
        triangle_count=g.triangle_count(),
        alpha_exact=exact.size,
        alpha_optimal=exact.optimal,
        alpha_greedy=greedy.size,
        alpha_deletion=deletion.size,
        star_best=len(star),
        stability_index=idx,
        stability_residual=residual,
        stability_on_exact=exact.optimal,
        runtime_ms=elapsed,
    )


# ---------------------------------------------------------------------------
# sweeps


class GeometricGrid(BaseModel):
    model_config = ConfigDict(extra="forbid")

    p_min: float = Field(gt=0, le=1)
    p_max: float = Field(gt=0, le=1)
    points: int = Field(ge=1)

    @model_validator(mode="after")
    def _ordered(self) -> "GeometricGrid":
        if self.p_min > self.p_max:
            raise ValueError("p_min must not exceed p_max")
        return self

    def values(self) -> list[float]:
        if self.points == 1:
            return [self.p_min]
        ratio = math.log(self.p_max / self.p_min)
        vals = [self.p_min * math.exp(ratio * i / (self.points - 1)) for i in range(self.points)]
        vals[-1] = self.p_max
        return vals


class SweepConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int
    k: int
    p_grid: Union[list[float], GeometricGrid]
    trials_per_p: int = Field(ge=1)
    master_seed: int = Field(ge=0, lt=2**64)
    solver_budget: int = Field(default=DEFAULT_BUDGET, ge=1)
    margin: float = Field(default=DEFAULT_MARGIN, ge=1)
    epsilon: float = Field(default=DEFAULT_EPSILON, ge=0, lt=1)
    C: float = Field(default=DEFAULT_C, gt=0)

    @field_validator("p_grid")
    @classmethod
    def _probabilities(cls, v):
        if isinstance(v, list):
            if not v:
                raise ValueError("p_grid must not be empty")
            bad = [p for p in v if not (0 < p <= 1)]
            if bad:
                raise ValueError(f"probabilities outside (0, 1]: {bad}")
        return v

    @model_validator(mode="after")
    def _kneser(self) -> "SweepConfig":
        try:
            kneser_params(self.n, self.k)
        except ParameterError as exc:
            raise ValueError(str(exc)) from None
        return self

    def probabilities(self) -> list[float]:
        return list(self.p_grid) if isinstance(self.p_grid, list) else self.p_grid.values()


class ConfigError(ParameterError):
    pass


def parse_config(text: str) -> SweepConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        return SweepConfig.model_validate(data)
    except ValidationError as exc:
        msgs = []
        for err in exc.errors():
            where = ".".join(str(x) for x in err["loc"]) or "<root>"
            msgs.append(f"field {where}: {err['msg']}")
        raise ConfigError("invalid config: " + "; ".join(msgs)) from None


def load_config(path: str | Path) -> SweepConfig:
    return parse_config(Path(path).read_text())


def _trial_job(args: tuple) -> TrialRecord:
    return run_trial(*args)


def run_sweep(cfg: SweepConfig, workers: int = 1, timing: bool = False) -> list[TrialRecord]:
    """All trials, sorted by p and then by trial index."""
    grid = cfg.probabilities()
    jobs, keys = [], []
    for pi, p in enumerate(grid):
        for t in range(cfg.trials_per_p):
            seed = derive_seed(cfg.master_seed, pi * cfg.trials_per_p + t)
            jobs.append((cfg.n, cfg.k, p, seed, cfg.solver_budget, cfg.epsilon, cfg.C, cfg.margin, timing))
            keys.append((p, pi, t))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_trial_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_trial_job(j) for j in jobs]
    order = sorted(range(len(jobs)), key=lambda i: keys[i])
    return [results[i] for i in order]


@dataclass(frozen=True)
class PSummary:
    p: float
    trials: int
    optimal_rate: float
    mean_alpha: float
    sd_alpha: float
    mean_greedy: float
    mean_deletion: float
    mean_star: float
    mean_residual: float
    predicted: float
    ratio_to_predicted: float
    regime: str


def summarize(records: list[TrialRecord]) -> list[PSummary]:
    groups: dict[float, list[TrialRecord]] = {}
    for r in records:
        groups.setdefault(r.p, []).append(r)
    out = []
    for p in sorted(groups):
        rs = groups[p]
        alpha = [r.alpha_exact for r in rs]
        mean_alpha = statistics.fmean(alpha)
        predicted = rs[0].predicted
        out.append(
            PSummary(
                p=p,
                trials=len(rs),
                optimal_rate=sum(r.alpha_optimal for r in rs) / len(rs),
                mean_alpha=mean_alpha,
                sd_alpha=statistics.stdev(alpha) if len(rs) > 1 else 0.0,
                mean_greedy=statistics.fmean(r.alpha_greedy for r in rs),
                mean_deletion=statistics.fmean(r.alpha_deletion for r in rs),
                mean_star=statistics.fmean(r.star_best for r in rs),
                mean_residual=statistics.fmean(r.stability_residual for r in rs),
                predicted=predicted,
                ratio_to_predicted=mean_alpha / predicted if predicted > 0 else math.nan,
                regime=rs[0].regime,
            )
        )
    return out


def format_summary(rows: list[PSummary]) -> str:
    head = f"{'p':>10} {'trials':>6} {'opt':>5} {'alpha':>9} {'sd':>7} {'greedy':>8} {'delet':>8} {'star':>8} {'resid':>7} {'pred':>9} {'ratio':>6}  regime"
    lines = [head]
    for s in rows:
        lines.append(
            f"{s.p:>10.4g} {s.trials:>6} {s.optimal_rate:>5.2f} {s.mean_alpha:>9.3f} {s.sd_alpha:>7.3f} "
            f"{s.mean_greedy:>8.3f} {s.mean_deletion:>8.3f} {s.mean_star:>8.3f} {s.mean_residual:>7.3f} "
            f"{s.predicted:>9.3f} {s.ratio_to_predicted:>6.3f}  {s.regime}"
        )
    return "\n".join(lines)


def summary_dicts(rows: list[PSummary]) -> list[dict]:
    return [asdict(r) for r in rows]
