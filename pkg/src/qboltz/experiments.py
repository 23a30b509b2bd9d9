"""Experiment configurations, validation and runners behind the command line.

A runner turns validated parameters into in-memory artifacts (file name to
bytes) plus a list of numerical-contract findings. Nothing touches the disk
until every computation has finished, so a configuration or capacity error
leaves the output directory untouched.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import anosov, avalanche, coleman_hepp, histories, suites
from .entropy import SECOND_LAW_TOL
from .errors import ConfigInvalidError, DimensionCapError
from .qstate import (
    UnitaryMap,
    random_density_matrix,
    random_projector_family,
    random_unitary,
)

EXPERIMENTS = ("entropy-suite", "coleman-hepp", "avalanche", "anosov", "histories")
DEFAULT_SEED = 20240101
DEFAULT_DENSE_CAP = coleman_hepp.DEFAULT_DENSE_CAP


def format_number(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    value = float(x)
    return f"{value + 0.0:.12g}" if value != 0 else "0"


def csv_bytes(header: list[str], rows) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([v if isinstance(v, str) else format_number(v) for v in row])
    return buf.getvalue().encode()


def json_bytes(obj) -> bytes:
    return (json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n").encode()


def parse_complex(value, name: str, diagnostics: list) -> complex | None:
    """A complex number given as a real, ``[re, im]`` or ``{"re": .., "im": ..}``."""
    try:
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return complex(value)
        if isinstance(value, (list, tuple)) and len(value) == 2:
            return complex(float(value[0]), float(value[1]))
        if isinstance(value, dict) and set(value) <= {"re", "im"}:
            return complex(float(value.get("re", 0.0)), float(value.get("im", 0.0)))
    except (TypeError, ValueError):
        pass
    diagnostics.append(f"params.{name}: expected a number, [re, im] or {{re, im}}, got {value!r}")
    return None


def parse_nonneg_or_inf(value, name: str, diagnostics: list) -> float | None:
    if value in ("inf", "infinity", "Infinity", None):
        return math.inf
    try:
        v = float(value)
    except (TypeError, ValueError):
        diagnostics.append(f"params.{name}: expected a non-negative number or \"inf\", got {value!r}")
        return None
    if not v >= 0:
        diagnostics.append(f"params.{name}: must be non-negative, got {v}")
        return None
    return v


def _check_amplitudes(params: dict, diagnostics: list, default=(1 / math.sqrt(2), 1 / math.sqrt(2))):
    c_plus = parse_complex(params.get("c_plus", default[0]), "c_plus", diagnostics)
    c_minus = parse_complex(params.get("c_minus", default[1]), "c_minus", diagnostics)
    if c_plus is None or c_minus is None:
        return None
    norm = abs(c_plus) ** 2 + abs(c_minus) ** 2
    if abs(norm - 1.0) > 1e-12:
        diagnostics.append(
            f"params.c_plus/c_minus: normalization invariant |c+|^2 + |c-|^2 = 1 violated (got {norm:.12g})")
        return None
    return c_plus, c_minus


def _check_unknown(params: dict, allowed: set, diagnostics: list):
    for key in sorted(set(params) - allowed):
        diagnostics.append(f"params.{key}: unknown parameter (allowed: {', '.join(sorted(allowed))})")


def _positive_int(params, name, default, diagnostics, minimum=1):
    value = params.get(name, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)) or int(value) != value or value < minimum:
        diagnostics.append(f"params.{name}: expected an integer >= {minimum}, got {value!r}")
        return None
    return int(value)


# ---------------------------------------------------------------------------
# parsed configurations
# ---------------------------------------------------------------------------


@dataclass
class RunConfig:
    experiment: str
    params: dict = field(default_factory=dict)
    seed: int = DEFAULT_SEED
    output_dir: str = "out"
    dense_cap: int = DEFAULT_DENSE_CAP
    workers: int = 1

    def echo(self) -> dict:
        return {"experiment": self.experiment, "params": self.params, "seed": self.seed,
                "dense_cap": self.dense_cap}


def _validate_entropy_suite(params, cfg, d):
    _check_unknown(params, {"trials", "lemma_trials", "dims"}, d)
    _positive_int(params, "trials", 1000, d)
    _positive_int(params, "lemma_trials", 500, d)
    dims = params.get("dims", list(suites.SECOND_LAW_DIMS))
    if not isinstance(dims, list) or not dims or any(
            not isinstance(x, int) or isinstance(x, bool) or x < 2 for x in dims):
        d.append(f"params.dims: expected a non-empty list of integers >= 2, got {dims!r}")


def _chain_lengths(params, d):
    value = params.get("L", 2)
    values = value if isinstance(value, list) else [value]
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, float)) or int(v) != v or v < 0:
            d.append(f"params.L: chain size must be a non-negative integer so that N = 2L+1 is odd "
                     f"(odd-N phase cells need no zero-polarisation eigenvalue), got {v!r}")
        else:
            out.append(int(v))
    if "N" in params:
        n = params["N"]
        if not isinstance(n, int) or n % 2 == 0:
            d.append(f"params.N: chain length must be odd so the two polarity cells resolve the identity, got {n!r}")
    return out


def _validate_coleman_hepp(params, cfg, d):
    _check_unknown(params, {"L", "N", "c_plus", "c_minus", "beta_B", "sign", "engine"}, d)
    lengths = _chain_lengths(params, d)
    _check_amplitudes(params, d)
    parse_nonneg_or_inf(params.get("beta_B", "inf"), "beta_B", d)
    if params.get("sign", 1) not in (1, -1):
        d.append(f"params.sign: must be +1 or -1, got {params.get('sign')!r}")
    engine = params.get("engine", "structured")
    if engine not in ("structured", "dense"):
        d.append(f"params.engine: must be \"structured\" or \"dense\", got {engine!r}")
    return lengths, engine


def _validate_avalanche(params, cfg, d):
    _check_unknown(params, {"n", "permutation", "notation", "steps", "c_plus", "c_minus", "seed"}, d)
    n = _positive_int(params, "n", 4, d, minimum=2)
    if n is not None and n % 2:
        d.append(f"params.n: the register needs an even number of spins for the pair map, got {n}")
        n = None
    notation = params.get("notation", "one-line")
    if notation not in ("one-line", "cycle"):
        d.append(f"params.notation: must be \"one-line\" or \"cycle\", got {notation!r}")
    _positive_int(params, "steps", 12, d)
    _check_amplitudes(params, d)
    if n is not None and notation in ("one-line", "cycle"):
        try:
            avalanche.parse_permutation(params.get("permutation", "2341"), n, notation)
        except (ValueError, TypeError) as exc:
            d.append(f"params.permutation: {exc}")
    seed = params.get("seed", "minus")
    if n is not None and not (seed in ("minus", "all-up") or (
            isinstance(seed, list) and len(seed) == n and all(x in (1, -1) for x in seed))):
        d.append(f"params.seed: expected \"minus\", \"all-up\" or a list of {n} spins +1/-1, got {seed!r}")


def _validate_anosov(params, cfg, d):
    _check_unknown(params, {"lyapunov", "coupling", "support_radius", "case_b", "t_max", "n_times",
                            "n_points"}, d)
    for name, default, positive in (("lyapunov", 1.0, False), ("coupling", 1.0, True),
                                    ("support_radius", 0.25, True), ("t_max", 5.0, True)):
        v = params.get(name, default)
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            d.append(f"params.{name}: expected a finite number, got {v!r}")
        elif positive and v <= 0:
            d.append(f"params.{name}: must be positive, got {v}")
        elif name == "lyapunov" and v == 0:
            d.append("params.lyapunov: the Lyapunov rate must be non-zero")
    _positive_int(params, "n_times", 101, d, minimum=2)
    n_points = _positive_int(params, "n_points", anosov.DEFAULT_POINTS, d, minimum=3)
    radius = params.get("support_radius", 0.25)
    if n_points and isinstance(radius, (int, float)) and radius > 0:
        if (n_points - 1) / (2 * radius) < anosov.MIN_POINTS_PER_LENGTH:
            d.append(f"params.n_points: grid too coarse, need >= {anosov.MIN_POINTS_PER_LENGTH} points per unit length")
    case_b = params.get("case_b")
    if case_b is not None:
        if not isinstance(case_b, dict) or not {"re_lambda2", "alpha_p2"} <= set(case_b):
            d.append("params.case_b: expected {re_lambda2, alpha_p2, t0}")
        else:
            if not case_b["re_lambda2"] > 0:
                d.append("params.case_b.re_lambda2: must be positive")
            if case_b["alpha_p2"] == 0:
                d.append("params.case_b.alpha_p2: must be non-zero")
            if case_b.get("t0", 0.0) < 0:
                d.append("params.case_b.t0: must be non-negative")


def _validate_histories(params, cfg, d):
    _check_unknown(params, {"model", "dim", "events", "cells", "L", "c_plus", "c_minus", "beta_B"}, d)
    model = params.get("model", "random")
    if model == "random":
        _positive_int(params, "dim", 8, d, minimum=2)
        _positive_int(params, "events", 3, d)
        cells = _positive_int(params, "cells", 2, d)
        dim = params.get("dim", 8)
        if cells and isinstance(dim, int) and cells > dim:
            d.append(f"params.cells: at most dim = {dim} cells fit, got {cells}")
    elif model == "coleman-hepp":
        lengths = _chain_lengths(params, d)
        if len(lengths) > 1:
            d.append("params.L: a single chain size is required for the history model")
        _check_amplitudes(params, d)
        parse_nonneg_or_inf(params.get("beta_B", "inf"), "beta_B", d)
    else:
        d.append(f"params.model: must be \"random\" or \"coleman-hepp\", got {model!r}")


VALIDATORS: dict[str, Callable] = {
    "entropy-suite": _validate_entropy_suite,
    "coleman-hepp": _validate_coleman_hepp,
    "avalanche": _validate_avalanche,
    "anosov": _validate_anosov,
    "histories": _validate_histories,
}


def validate(config: dict) -> list[str]:
    """Diagnostics for a raw configuration tree; empty exactly when it is runnable."""
    d: list[str] = []
    if not isinstance(config, dict):
        return ["config: expected a JSON object"]
    for key in sorted(set(config) - {"experiment", "params", "seed", "dense_cap", "output_dir"}):
        d.append(f"{key}: unknown top-level key")
    experiment = config.get("experiment")
    if experiment not in VALIDATORS:
        d.append(f"experiment: unknown experiment {experiment!r} (known: {', '.join(EXPERIMENTS)})")
        return d
    seed = config.get("seed", DEFAULT_SEED)
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < 2 ** 64:
        d.append(f"seed: expected an unsigned 64-bit integer, got {seed!r}")
    cap = config.get("dense_cap", DEFAULT_DENSE_CAP)
    if isinstance(cap, bool) or not isinstance(cap, int) or cap < 0:
        d.append(f"dense_cap: expected a non-negative integer, got {cap!r}")
    params = config.get("params", {})
    if not isinstance(params, dict):
        d.append("params: expected an object")
        return d
    VALIDATORS[experiment](params, config, d)
    return d


def build_config(raw: dict, output_dir: str | None = None, seed: int | None = None,
                 dense_cap: int | None = None, workers: int = 1) -> RunConfig:
    raw = dict(raw)
    if seed is not None:
        raw["seed"] = seed
    if dense_cap is not None:
        raw["dense_cap"] = dense_cap
    diagnostics = validate(raw)
    if diagnostics:
        raise ConfigInvalidError(diagnostics)
    return RunConfig(
        experiment=raw["experiment"],
        params=raw.get("params", {}),
        seed=raw.get("seed", DEFAULT_SEED),
        output_dir=output_dir or raw.get("output_dir", "out"),
        dense_cap=raw.get("dense_cap", DEFAULT_DENSE_CAP),
        workers=workers,
    )


# ---------------------------------------------------------------------------
# runners
# ---------------------------------------------------------------------------


@dataclass
class RunResult:
    artifacts: dict
    engine: str
    findings: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)


def _pool_map(fn, items, workers: int):
    """Order-preserving map; a worker pool when more than one worker is requested."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _chunks(n: int, size: int):
    return [(start, min(n, start + size)) for start in range(0, n, size)]


def _second_law_chunk(args):
    seed, start, stop, dims = args
    children = np.random.SeedSequence(seed).spawn(stop)
    return [suites.second_law_trial(children[k], dims[k % len(dims)]) for k in range(start, stop)]


def _lemma_chunk(args):
    seed, start, stop = args
    children = np.random.SeedSequence(seed).spawn(stop)
    return [suites.lemma_trial(children[k]) for k in range(start, stop)]


def run_entropy_suite(cfg: RunConfig) -> RunResult:
    params = cfg.params
    trials = params.get("trials", 1000)
    lemma_trials = params.get("lemma_trials", 500)
    dims = tuple(params.get("dims", suites.SECOND_LAW_DIMS))
    law_seed, lemma_seed = (int(s.generate_state(1)[0]) for s in np.random.SeedSequence(cfg.seed).spawn(2))
    law = [r for chunk in _pool_map(_second_law_chunk, [(law_seed, a, b, dims) for a, b in _chunks(trials, 100)],
                                    cfg.workers) for r in chunk]
    lemma = [r for chunk in _pool_map(_lemma_chunk, [(lemma_seed, a, b) for a, b in _chunks(lemma_trials, 100)],
                                      cfg.workers) for r in chunk]
    rows = [(k, r["dim"], r["n_cells"], r["s_vn"], r["s_qb_0"], r["s_qb_t"], r["gap"], r["witness"],
             r["holds"], r["converse_candidate"]) for k, r in enumerate(law)]
    trial_csv = csv_bytes(["trial", "dim", "n_cells", "s_vn", "s_qb_0", "s_qb_t", "gap", "witness", "holds",
                           "converse_candidate"], rows)
    properties = sorted(lemma[0]) if lemma else []
    lemma_csv = csv_bytes(["trial"] + properties,
                          [(k, *[r[p] for p in properties]) for k, r in enumerate(lemma)])
    violations = sum(not r["holds"] for r in law)
    summary = {
        "second_law": {
            "trials": len(law),
            "dims": list(dims),
            "min_gap": min(r["gap"] for r in law),
            "violations": violations,
            "tolerance": SECOND_LAW_TOL,
            "converse_candidates": sum(r["converse_candidate"] for r in law),
        },
        "relative_entropy": {p: {"passed": sum(r[p] for r in lemma), "trials": len(lemma)} for p in properties},
    }
    findings = []
    if violations:
        findings.append(f"second-law gap below -{SECOND_LAW_TOL:g} in {violations} trials")
    for p in properties:
        failed = len(lemma) - summary["relative_entropy"][p]["passed"]
        if failed:
            findings.append(f"relative-entropy property {p} failed in {failed} trials")
    artifacts = {"second_law_trials.csv": trial_csv, "relative_entropy_trials.csv": lemma_csv,
                 "summary.json": json_bytes(summary)}
    return RunResult(artifacts, "dense-random", findings, summary)


def _coleman_hepp_params(params: dict, L: int) -> coleman_hepp.ColemanHeppParams:
    d: list = []
    c_plus, c_minus = _check_amplitudes(params, d)
    return coleman_hepp.ColemanHeppParams(
        L, c_plus, c_minus, parse_nonneg_or_inf(params.get("beta_B", "inf"), "beta_B", d), params.get("sign", 1))


def _coleman_hepp_curve(args):
    params, L, engine, dense_cap = args
    p = _coleman_hepp_params(params, L)
    curve = coleman_hepp.dense_curve(p, dense_cap) if engine == "dense" else coleman_hepp.structured_curve(p)
    m_plus = coleman_hepp.cross_term_mass(p)[0]
    return L, [(pt.t, pt.s_vn, pt.s_qb, pt.witness, m_plus) for pt in curve]


def run_coleman_hepp(cfg: RunConfig) -> RunResult:
    params = cfg.params
    lengths = params.get("L", 2)
    lengths = lengths if isinstance(lengths, list) else [lengths]
    engine = params.get("engine", "structured")
    if engine == "dense":
        too_big = [L for L in lengths if L > cfg.dense_cap]
        if too_big:
            raise DimensionCapError(f"L = {too_big} exceeds the dense cap {cfg.dense_cap}")
    results = _pool_map(_coleman_hepp_curve, [(params, L, engine, cfg.dense_cap) for L in lengths], cfg.workers)
    artifacts, findings, jumps = {}, [], {}
    header = ["t", "s_vn", "s_qb", "witness", "m_plus"]
    for L, rows in results:
        name = "coleman_hepp.csv" if len(lengths) == 1 else f"coleman_hepp_L{L}.csv"
        artifacts[name] = csv_bytes(header, rows)
        s0 = rows[0][2]
        if any(r[2] < s0 - SECOND_LAW_TOL for r in rows):
            findings.append(f"L={L}: S_QB(t) dropped below S_QB(0) by more than {SECOND_LAW_TOL:g}")
        jumps[str(L)] = rows[-1][2] - s0
    summary = {"entropy_jump": jumps}
    artifacts["summary.json"] = json_bytes(summary)
    return RunResult(artifacts, f"coleman-hepp/{engine}", findings, summary)


def _avalanche_params(params: dict) -> avalanche.AvalancheParams:
    d: list = []
    c_plus, c_minus = _check_amplitudes(params, d)
    n = params.get("n", 4)
    return avalanche.AvalancheParams.from_notation(
        n, params.get("permutation", "2341"), params.get("notation", "one-line"),
        steps=params.get("steps", 12), c_plus=c_plus, c_minus=c_minus, seed=params.get("seed", "minus"))


def run_avalanche(cfg: RunConfig) -> RunResult:
    p = _avalanche_params(cfg.params)
    report = avalanche.orbit_analysis(p)
    trace = avalanche.entropy_trace(p)
    findings = []
    if report.entropy_curve[0][1] != report.entropy_curve[-1][1]:
        findings.append("S_QB did not return to its initial value after one full orbit")
    artifacts = {
        "orbit.json": json_bytes(report.as_dict()),
        "entropy_trace.csv": csv_bytes(["step", "s_qb", "s_vn"], trace),
    }
    return RunResult(artifacts, "avalanche/basis-permutation", findings, report.as_dict())


def _anosov_params(params: dict) -> anosov.AnosovParams:
    case_b = params.get("case_b")
    return anosov.AnosovParams(
        float(params.get("lyapunov", 1.0)), float(params.get("coupling", 1.0)),
        float(params.get("support_radius", 0.25)),
        anosov.CaseB(float(case_b["re_lambda2"]), float(case_b["alpha_p2"]), float(case_b.get("t0", 0.0)))
        if case_b else None)


def run_anosov(cfg: RunConfig) -> RunResult:
    params = cfg.params
    p = _anosov_params(params)
    phi = anosov.WavePacket(p.support_radius, params.get("n_points", anosov.DEFAULT_POINTS))
    times = np.linspace(0.0, float(params.get("t_max", 5.0)), params.get("n_times", 101))
    case_a = anosov.decoherence_time_case_a(p)
    case_b = anosov.decoherence_time_case_b(p) if p.case_b else None
    rows, findings = [], []
    for t in times:
        s = anosov.translation_magnitude(float(t), p)
        value = abs(anosov.overlap(float(t), phi, p))
        past_oracle = t > case_a.oracle_time
        if past_oracle and value > 1e-8:
            findings.append(f"overlap {value:.3g} at t={t:.6g} past the exact threshold")
        rows.append((t, s, value, past_oracle, case_a.paper_condition_holds and t > case_a.paper_time))
    summary = {"case_a": case_a.as_dict(), "case_b": case_b.as_dict() if case_b else None,
               "overlap_at_zero": abs(anosov.overlap(0.0, phi, p))}
    artifacts = {
        "anosov.csv": csv_bytes(["t", "s_t", "abs_overlap", "past_oracle_threshold", "past_paper_t01"], rows),
        "thresholds.json": json_bytes(summary),
    }
    return RunResult(artifacts, "anosov/closed-form-quadrature", findings, summary)


def _random_history(cfg: RunConfig):
    params = cfg.params
    dim = params.get("dim", 8)
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed))
    rho = random_density_matrix(dim, rng)
    events = tuple((random_unitary(dim, rng), random_projector_family(dim, params.get("cells", 2), rng))
                   for _ in range(params.get("events", 3)))
    return rho, histories.HistorySpec(events)


def _coleman_hepp_history(cfg: RunConfig):
    p = _coleman_hepp_params(cfg.params, int(cfg.params.get("L", 1)))
    if p.L > cfg.dense_cap:
        raise DimensionCapError(f"L = {p.L} exceeds the dense cap {cfg.dense_cap}")
    n = p.n_sites
    rho = coleman_hepp.dense_initial_state(p, cfg.dense_cap)
    full_run = coleman_hepp.dense_step_unitary(n, 0)
    for t in range(1, n):
        full_run = coleman_hepp.dense_step_unitary(n, t) @ full_run
    cells = coleman_hepp.phase_cells(n)
    # an initial reading at t = 0 and a final one once the flip front has crossed the chain
    spec = histories.HistorySpec(((UnitaryMap.identity(rho.dim), cells), (full_run, cells)))
    return rho, spec


def run_histories(cfg: RunConfig) -> RunResult:
    model = cfg.params.get("model", "random")
    rho, spec = _random_history(cfg) if model == "random" else _coleman_hepp_history(cfg)
    d = histories.decoherence_functional(rho, spec)
    w = histories.history_probabilities(d)
    labels = ["-".join(map(str, lab)) for lab in d.labels]
    d_rows = [(labels[i], labels[j], d.entries[i, j].real, d.entries[i, j].imag)
              for i in range(len(labels)) for j in range(len(labels))]
    state = rho.matrix
    support_rows = [(0, histories.support_cardinality(np.sqrt(np.clip(np.diag(state).real, 0, None))))]
    for k, (u, _) in enumerate(spec.events, start=1):
        state = u.matrix @ state @ u.matrix.conj().T
        support_rows.append((k, histories.support_cardinality(np.sqrt(np.clip(np.diag(state).real, 0, None)))))
    total = float(w.sum())
    findings = []
    if abs(total - 1.0) > 1e-10:
        findings.append(f"history probabilities sum to {total:.15g}")
    summary = {"total_probability": total, "max_offdiagonal": d.max_offdiagonal(),
               "decoheres_1e-9": histories.decoheres(d, 1e-9), "n_histories": len(labels)}
    artifacts = {
        "decoherence_functional.csv": csv_bytes(["history_row", "history_col", "re", "im"], d_rows),
        "probabilities.csv": csv_bytes(["history", "probability"], zip(labels, w)),
        "support.csv": csv_bytes(["event", "support_cardinality"], support_rows),
        "summary.json": json_bytes(summary),
    }
    return RunResult(artifacts, f"histories/{model}-gram", findings, summary)


RUNNERS: dict[str, Callable[[RunConfig], RunResult]] = {
    "entropy-suite": run_entropy_suite,
    "coleman-hepp": run_coleman_hepp,
    "avalanche": run_avalanche,
    "anosov": run_anosov,
    "histories": run_histories,
}

DEFAULT_CONFIGS: dict[str, dict] = {
    "entropy-suite": {"experiment": "entropy-suite", "params": {"trials": 1000, "lemma_trials": 500}},
    "coleman-hepp": {"experiment": "coleman-hepp",
                     "params": {"L": 2, "c_plus": 0.7071067811865476, "c_minus": 0.7071067811865476,
                                "beta_B": "inf"}},
    "avalanche": {"experiment": "avalanche", "params": {"n": 4, "permutation": "2341", "steps": 12}},
    "anosov": {"experiment": "anosov",
               "params": {"lyapunov": 1.0, "coupling": 1.0, "support_radius": 0.25, "t_max": 5.0,
                          "case_b": {"re_lambda2": 1.0, "alpha_p2": 1.0, "t0": 0.0}}},
    "histories": {"experiment": "histories", "params": {"model": "random", "dim": 8, "events": 3, "cells": 2}},
}


def execute(cfg: RunConfig) -> RunResult:
    return RUNNERS[cfg.experiment](cfg)


__all__ = ["RunConfig", "RunResult", "validate", "build_config", "execute", "DEFAULT_CONFIGS", "EXPERIMENTS",
           "csv_bytes", "json_bytes", "format_number", "parse_complex"]
