"""Monte Carlo grids over (e0, e) and decoding-time benchmarks."""

from __future__ import annotations

import csv
import io
import json
import os
import statistics
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np
import yaml

from . import codes, decode
from .channel import ADVERSARIES, ChannelSpec, apply_semi_adversarial, make_rng
from .codes import CodeSpec
from .errors import InvalidParameters, ParseError
from .field import make_field
from .settings import configured

FAIL_COLUMNS = [r.value for r in decode.FailReason]
CSV_COLUMNS = (["point", "adversary", "e0", "e", "trials", "successes", "rate", "rate_float",
                "in_region", "failure_bound", "failure_bound_float"]
               + [f"fail_{r}" for r in FAIL_COLUMNS]
               + ["wrong_message", "mean_locator_degree", "max_locator_degree",
                  "mean_effective_adversarial", "mean_effective_random"])


# --- config --------------------------------------------------------------------


@dataclass
class ExperimentConfig:
    code: dict
    decoder: dict = dc_field(default_factory=dict)
    grid: dict = dc_field(default_factory=dict)
    trials: int = 100
    adversaries: list = dc_field(default_factory=lambda: ["randomReplace"])
    seed: int = 0
    output: str | None = None
    threads: int | None = None

    def __post_init__(self):
        for a in self.adversaries:
            if a not in ADVERSARIES:
                raise InvalidParameters(f"unknown adversary {a!r}")
        if self.trials < 0:
            raise InvalidParameters("trials must be >= 0")

    def to_dict(self):
        d = {"code": self.code, "decoder": self.decoder, "grid": self.grid, "trials": self.trials,
             "adversaries": list(self.adversaries), "seed": self.seed}
        if self.output is not None:
            d["output"] = self.output
        if self.threads is not None:
            d["threads"] = self.threads
        return d

    @classmethod
    def from_dict(cls, d):
        known = {"code", "decoder", "grid", "trials", "adversaries", "seed", "output", "threads"}
        extra = set(d) - known
        if extra:
            raise InvalidParameters(f"unknown experiment keys {sorted(extra)}")
        if "code" not in d:
            raise InvalidParameters("experiment config needs a 'code' section")
        return cls(**d)

    def spec(self) -> CodeSpec:
        return build_spec(self.code)


def build_spec(d) -> CodeSpec:
    d = dict(d)
    fd = d.pop("field", None)
    if fd is None:
        fd = {"p": d.pop("q")}
    if isinstance(fd, int):
        fd = {"p": fd}
    F = make_field(fd["p"], fd.get("m", 1), fd.get("modulus"))
    unknown = set(d) - {"family", "n", "k", "s", "gamma", "alphas"}
    if unknown:
        raise InvalidParameters(f"unknown code keys {sorted(unknown)}")
    return codes.make_code_spec(d["family"], d["n"], d["k"], F, d.get("s", 1), d.get("gamma"),
                                d.get("alphas"))


def load_yaml(path):
    try:
        with open(path) as fh:
            data = yaml.safe_load(fh)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        line = mark.line + 1 if mark else 0
        col = mark.column + 1 if mark else 0
        raise ParseError(str(exc.problem or exc), line, col, path) from None
    if not isinstance(data, dict):
        raise ParseError("config must be a mapping", 1, 1, path)
    return data


def dump_yaml(d) -> str:
    return yaml.safe_dump(d, sort_keys=False)


# --- grids ------------------------------------------------------------------------


def region_points(spec: CodeSpec, L=None):
    """Every integer (e0, e) inside the theorem's region."""
    pts = []
    r = decode.radius(spec, L)
    for e in range(0, int(r) + 1):
        for e0 in range(0, e + 1):
            if decode.in_region(spec, e0, e, L):
                pts.append((e0, e))
    return pts


def make_grid(spec: CodeSpec, grid: dict, L=None, seed=0):
    """(e0, e) list from a grid section.

    ``points`` lists pairs explicitly; ``region: samples`` draws that many
    in-region points (the corners are always kept) plus anything in ``include``.
    """
    if "points" in grid:
        pts = [tuple(int(v) for v in p) for p in grid["points"]]
    elif "region" in grid:
        samples = int(grid["region"].get("samples", 20))
        allp = region_points(spec, L)
        if not allp:
            return []
        corners = set()
        top = max(e for _, e in allp)
        corners.add((0, top))
        corners.add((max(e0 for e0, e in allp if e == top), top))
        diag = max(e for e0, e in allp if e0 == e)
        corners.add((diag, diag))
        rest = [p for p in allp if p not in corners]
        rng = make_rng(seed, 0xC0FFEE)
        take = max(samples - len(corners), 0)
        chosen = [rest[i] for i in sorted(rng.choice(len(rest), size=min(take, len(rest)),
                                                     replace=False))] if rest else []
        pts = sorted(corners) + chosen
    else:
        raise InvalidParameters("grid needs 'points' or 'region'")
    for extra in grid.get("include", []):
        p = tuple(int(v) for v in extra)
        if p not in pts:
            pts.append(p)
    for e0, e in pts:
        if not 0 <= e0 <= e <= spec.n:
            raise InvalidParameters(f"grid point (e0={e0}, e={e}) violates 0 <= e0 <= e <= n")
    return pts


# --- trials -------------------------------------------------------------------------


def run_trial(spec: CodeSpec, L, e0, e, adversary, seed, point, trial, method="auto"):
    """One transmission; returns a small dict of counters."""
    rng = make_rng(seed, point, trial)
    msg = codes.random_message(spec, rng)
    c = codes.encode(spec, msg)
    y, pattern = apply_semi_adversarial(c, ChannelSpec(e0, e, adversary, {}, seed), rng)
    res = decode.decode(spec, y, e, L, method)
    eff_a, eff_r = pattern.effective_counts(c, y)
    out = {"ok": 0, "wrong": 0, "reason": None, "deg": res.locator_degree,
           "eff_a": eff_a, "eff_r": eff_r}
    if res.success:
        if res.message == msg:
            out["ok"] = 1
        else:
            out["wrong"] = 1
    else:
        out["reason"] = res.reason.value
    return out


def _chunk(args):
    code, L, e0, e, adversary, seed, point, trials, method = args
    spec = build_spec(code)
    return [run_trial(spec, L, e0, e, adversary, seed, point, t, method) for t in trials]


def run_point(cfg: ExperimentConfig, spec, point, e0, e, adversary, pool=None):
    L = cfg.decoder.get("L")
    method = cfg.decoder.get("method", "auto")
    t0 = time.perf_counter()
    if pool is None:
        results = [run_trial(spec, L, e0, e, adversary, cfg.seed, point, t, method)
                   for t in range(cfg.trials)]
    else:
        n_chunks = max(1, min(cfg.trials, 4 * (cfg.threads or 1)))
        parts = [list(range(cfg.trials))[i::n_chunks] for i in range(n_chunks)]
        jobs = [(cfg.code, L, e0, e, adversary, cfg.seed, point, p, method) for p in parts if p]
        results = [r for chunk in pool.map(_chunk, jobs) for r in chunk]
    wall = time.perf_counter() - t0
    return summarize(spec, L, point, e0, e, adversary, results, wall)


def summarize(spec, L, point, e0, e, adversary, results, wall):
    trials = len(results)
    ok = sum(r["ok"] for r in results)
    reasons = Counter(r["reason"] for r in results if r["reason"])
    degs = [r["deg"] for r in results if r["deg"] is not None]
    fb = decode.failure_bound(spec, e, L)
    row = {
        "point": point, "adversary": adversary, "e0": e0, "e": e, "trials": trials,
        "successes": ok, "rate": f"{ok}/{trials}",
        "rate_float": f"{ok / trials:.6f}" if trials else "nan",
        "in_region": int(decode.in_region(spec, e0, e, L)),
        "failure_bound": str(fb), "failure_bound_float": f"{float(fb):.6f}",
    }
    for r in FAIL_COLUMNS:
        row[f"fail_{r}"] = reasons.get(r, 0)
    row["wrong_message"] = sum(r["wrong"] for r in results)
    row["mean_locator_degree"] = f"{statistics.fmean(degs):.4f}" if degs else ""
    row["max_locator_degree"] = max(degs) if degs else ""
    row["mean_effective_adversarial"] = f"{statistics.fmean(r['eff_a'] for r in results):.4f}" if trials else ""
    row["mean_effective_random"] = f"{statistics.fmean(r['eff_r'] for r in results):.4f}" if trials else ""
    return row, wall


def default_threads():
    try:
        return max(1, int(os.environ.get("SEMIADV_THREADS", "1")))
    except ValueError:
        return 1


def run_experiment(cfg: ExperimentConfig, progress=None):
    """Rows (one per adversary and grid point) plus wall times."""
    spec = cfg.spec()
    L = cfg.decoder.get("L")
    decode._check_L(spec, L)
    pts = make_grid(spec, cfg.grid, L, cfg.seed)
    threads = cfg.threads or default_threads()
    rows, walls = [], []
    pool = ProcessPoolExecutor(threads) if threads > 1 else None
    try:
        point = 0
        for adversary in cfg.adversaries:
            for e0, e in pts:
                row, wall = run_point(cfg, spec, point, e0, e, adversary, pool)
                rows.append(row)
                walls.append(wall)
                if progress:
                    progress(row)
                point += 1
    finally:
        if pool is not None:
            pool.shutdown()
    return rows, walls


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def rows_to_json(cfg: ExperimentConfig, rows, walls) -> str:
    out = {"config": cfg.to_dict(), "rows": []}
    for r, wt in zip(rows, walls):
        d = dict(r)
        d["wall_seconds"] = round(wt, 6)
        out["rows"].append(d)
    return json.dumps(out, indent=2)


# --- benchmark ----------------------------------------------------------------------


def bench_instance(family, n, s, q, seed=0, L=None):
    """Spec, received word and e for an IRS-style scaling point (k = n/4, e at half radius)."""
    F = make_field(q)
    k = max(1, n // 4)
    spec = codes.make_code_spec(family, n, k, F, s)
    e = int(decode.radius(spec, L)) // 2
    rng = make_rng(seed, n)
    msg = codes.random_message(spec, rng)
    y, _ = apply_semi_adversarial(codes.encode(spec, msg), ChannelSpec(0, e, "randomReplace"), rng)
    return spec, msg, y, e


def run_bench(sizes, repetitions=5, family="IRS", s=4, q=65537, fast=True, seed=0, L=None,
              warmup=True, progress=None):
    """Median decode time per size; repetitions are interleaved across sizes so
    slow phases of a shared machine hit every size alike."""
    times = {n: [] for n in sizes}
    with configured(fast=fast):
        inst = {n: bench_instance(family, n, s, q, seed, L) for n in sizes}
        if warmup:
            for n in sizes:
                spec, msg, y, e = inst[n]
                res = decode.decode(spec, y, e, L)
                if not (res.success and res.message == msg):
                    raise RuntimeError(f"benchmark decode failed at n={n}")
        for _ in range(repetitions):
            for n in sizes:
                spec, msg, y, e = inst[n]
                t0 = time.perf_counter()
                decode.decode(spec, y, e, L)
                times[n].append(time.perf_counter() - t0)
                if progress:
                    progress(n, times[n][-1])
    table = []
    prev = None
    for n in sizes:
        med = statistics.median(times[n])
        ratio = med / prev if prev else None
        table.append({"n": n, "median_seconds": med, "ratio": ratio, "samples": times[n]})
        prev = med
    return table


def bench_to_csv(table) -> str:
    buf = io.StringIO()
    buf.write("n,median_seconds,doubling_ratio\n")
    for r in table:
        ratio = "" if r["ratio"] is None else f"{r['ratio']:.3f}"
        buf.write(f"{r['n']},{r['median_seconds']:.6f},{ratio}\n")
    return buf.getvalue()


def exact_rate(ok, trials) -> Fraction:
    return Fraction(ok, trials) if trials else Fraction(0)
