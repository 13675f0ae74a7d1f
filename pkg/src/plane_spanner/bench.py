"""Batch certification over random instances; one isolated pipeline per trial."""
from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .errors import DisconnectedGraph
from .io import gen
from .verify import EMPIRICAL_STRETCH, H4_STRETCH_BOUND, certify_construction, check_planarity, stretch_factor

STRETCH_STAGES = ("T", "Y4", "H8", "H6", "H4")


@dataclass
class TrialResult:
    trial: int
    seed: int
    n: int
    passed: bool = False
    error: str = ""
    h8_max_degree: int = 0
    h8_max_charge: int = 0
    h4_max_degree: int = 0
    h4_plane: bool = False
    stretch: dict[str, float] = field(default_factory=dict)
    h4_bound_margin: float = math.nan
    failed_checks: list[str] = field(default_factory=list)

    def row(self) -> dict:
        d = asdict(self)
        d.pop("stretch")
        d["failed_checks"] = ";".join(self.failed_checks)
        for s in STRETCH_STAGES:
            d[f"stretch_{s}"] = self.stretch.get(s, math.nan)
        return d


def trial_size(seed: int, n_lo: int, n_hi: int) -> int:
    return int(np.random.default_rng([seed, 0x5EED]).integers(n_lo, n_hi + 1))


def run_trial(trial: int, seed: int, n_lo: int, n_hi: int, max_coord: int) -> TrialResult:
    from .spanner import construct

    n = trial_size(seed, n_lo, n_hi)
    res = TrialResult(trial, seed, n)
    try:
        P = gen(n, seed, max_coord).pointset()
        C = construct(P, check=False)
    except Exception as exc:  # recorded per trial, never raised
        res.error = f"{type(exc).__name__}: {exc}"
        return res
    cert = certify_construction(C, stretch=False)
    res.h8_max_degree = C.H8.max_degree()
    res.h8_max_charge = cert.max_charge["H8"]
    res.h4_max_degree = C.H4.max_degree()
    res.h4_plane = check_planarity(P, C.H4.all_edges)[0]
    graphs = {"T": C.T.edges, "Y4": C.Y.edges, "H8": C.H8.all_edges, "H6": C.H6.all_edges, "H4": C.H4.all_edges}
    for name, edges in graphs.items():
        try:
            res.stretch[name] = stretch_factor(edges, P, tag=name).max_ratio
        except DisconnectedGraph:
            res.stretch[name] = math.inf
            cert.add(f"{name} connected", False)
    h4 = res.stretch.get("H4", math.nan)
    res.h4_bound_margin = H4_STRETCH_BOUND / h4 if h4 > 0 else math.inf
    res.failed_checks = [name for name, ok, _ in cert.checks if not ok]
    res.passed = not res.failed_checks and h4 <= H4_STRETCH_BOUND
    return res


def _run(args):
    return run_trial(*args)


@dataclass
class BenchSummary:
    trials: list[TrialResult]
    warnings: list[str]

    @property
    def passed(self) -> bool:
        return all(t.passed for t in self.trials)

    def aggregate(self) -> dict:
        ok = [t for t in self.trials if not t.error]
        agg: dict = {
            "trials": len(self.trials),
            "errors": sum(1 for t in self.trials if t.error),
            "failures": sum(1 for t in self.trials if not t.passed),
            "h4_max_degree": max((t.h4_max_degree for t in ok), default=None),
            "h8_max_degree": max((t.h8_max_degree for t in ok), default=None),
            "h8_max_charge": max((t.h8_max_charge for t in ok), default=None),
            "h4_all_plane": all(t.h4_plane for t in ok),
        }
        for s in STRETCH_STAGES:
            vals = [t.stretch[s] for t in ok if s in t.stretch]
            agg[f"stretch_{s}_max"] = max(vals) if vals else None
            agg[f"stretch_{s}_mean"] = float(np.mean(vals)) if vals else None
        agg["h4_bound"] = H4_STRETCH_BOUND
        return agg

    def to_dict(self) -> dict:
        return {"summary": self.aggregate(), "warnings": self.warnings, "trials": [t.row() for t in self.trials]}


def bench(trials: int, n_lo: int = 5, n_hi: int = 200, seed0: int = 0, max_coord: int = 1 << 20,
          workers: int = 1) -> BenchSummary:
    """Run ``trials`` independent trials; trial t uses seed ``seed0 + t``."""
    jobs = [(t, seed0 + t, n_lo, n_hi, max_coord) for t in range(trials)]
    if workers > 1 and trials > 1:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_run, jobs))
    else:
        results = [_run(j) for j in jobs]
    warnings = []
    worst = max((t.stretch.get("H4", 0.0) for t in results if not t.error), default=0.0)
    if worst > EMPIRICAL_STRETCH:
        warnings.append(f"max H4 stretch {worst:.4f} exceeds the expected {EMPIRICAL_STRETCH}")
    return BenchSummary(results, warnings)


def write_report(summary: BenchSummary, out_dir, figures: bool = True) -> list[Path]:
    """Write trials.csv, summary.json and (optionally) PNG figures into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    rows = [t.row() for t in summary.trials]
    csv_path = out / "trials.csv"
    fields = list(TrialResult(0, 0, 0).row().keys())
    with csv_path.open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=fields)
        w.writeheader()
        w.writerows(rows)
    written.append(csv_path)
    js = out / "summary.json"
    js.write_text(json.dumps(summary.to_dict(), indent=2, sort_keys=True) + "\n")
    written.append(js)
    if figures and summary.trials:
        from .plotting import plot_bench

        written.extend(plot_bench(summary, out))
    return written
