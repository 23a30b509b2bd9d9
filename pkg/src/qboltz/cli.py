"""Command-line runner: ``qboltz run``, ``qboltz validate`` and ``qboltz suite``.

Exit codes: 0 on success, 2 for an invalid configuration or an exceeded
capacity limit (nothing is written), 3 when a numerical contract is violated
(artifacts and manifest are still written and the violation is recorded).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

from .errors import ConfigInvalidError, DimensionCapError, OrbitCapError
from .experiments import DEFAULT_CONFIGS, EXPERIMENTS, build_config, execute, json_bytes, validate

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CONTRACT = 3
MANIFEST = "manifest.json"


def tool_version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "0.0.0+local"


def _load_config(args) -> dict:
    if args.config:
        with open(args.config) as fh:
            return json.load(fh)
    if args.experiment:
        if args.experiment not in DEFAULT_CONFIGS:
            return {"experiment": args.experiment}
        return json.loads(json.dumps(DEFAULT_CONFIGS[args.experiment]))
    raise ConfigInvalidError(["either --config or --experiment is required"])


def write_run(cfg, result, wall_time: float, out_dir: Path) -> dict:
    """Write artifacts and the manifest; returns the manifest."""
    out_dir.mkdir(parents=True, exist_ok=True)
    listing = []
    for name in sorted(result.artifacts):
        data = result.artifacts[name]
        (out_dir / name).write_bytes(data)
        listing.append({"path": name, "sha256": hashlib.sha256(data).hexdigest(), "bytes": len(data)})
    manifest = {
        "config": cfg.echo(),
        "artifacts": listing,
        "engine": result.engine,
        "findings": result.findings,
        "status": "contract-violation" if result.findings else "ok",
        "wall_time_s": round(wall_time, 6),
        "version": tool_version(),
    }
    (out_dir / MANIFEST).write_bytes(json_bytes(manifest))
    return manifest


def run_one(raw: dict, out_dir: Path, seed, dense_cap, workers: int) -> int:
    try:
        cfg = build_config(raw, str(out_dir), seed, dense_cap, workers)
        start = time.perf_counter()
        result = execute(cfg)
        elapsed = time.perf_counter() - start
    except ConfigInvalidError as exc:
        for diag in exc.diagnostics:
            print(f"config invalid: {diag}", file=sys.stderr)
        return EXIT_INVALID
    except (DimensionCapError, OrbitCapError) as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_INVALID
    write_run(cfg, result, elapsed, out_dir)
    for finding in result.findings:
        print(f"contract violation: {finding}", file=sys.stderr)
    print(f"{cfg.experiment}: {len(result.artifacts)} artifacts -> {out_dir}")
    return EXIT_CONTRACT if result.findings else EXIT_OK


def cmd_run(args) -> int:
    try:
        raw = _load_config(args)
    except ConfigInvalidError as exc:
        print(f"config invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (OSError, json.JSONDecodeError) as exc:
        print(f"config invalid: cannot read config: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return run_one(raw, Path(args.out), args.seed, args.dense_cap, args.workers)


def cmd_validate(args) -> int:
    try:
        raw = _load_config(args)
    except (ConfigInvalidError, OSError, json.JSONDecodeError) as exc:
        print(f"config invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    diagnostics = validate(raw)
    for diag in diagnostics:
        print(diag)
    if not diagnostics:
        print("ok")
    return EXIT_INVALID if diagnostics else EXIT_OK


def cmd_suite(args) -> int:
    """Every experiment with its default parameters, one subdirectory each."""
    worst = EXIT_OK
    for name in EXPERIMENTS:
        raw = json.loads(json.dumps(DEFAULT_CONFIGS[name]))
        code = run_one(raw, Path(args.out) / name, args.seed, args.dense_cap, args.workers)
        worst = max(worst, code)
    return worst


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qboltz", description="Quantum Boltzmann entropy laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_config=True):
        if with_config:
            p.add_argument("--config", help="JSON run configuration")
            p.add_argument("--experiment", help=f"run an experiment with defaults ({', '.join(EXPERIMENTS)})")
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--seed", type=int, default=None, help="unsigned 64-bit seed (overrides the config)")
        p.add_argument("--workers", type=int, default=1, help="worker processes for sweeps")
        p.add_argument("--dense-cap", type=int, default=None, dest="dense_cap",
                       help="largest chain parameter L for dense matrices")

    common(sub.add_parser("run", help="run one experiment"))
    common(sub.add_parser("validate", help="check a configuration without running it"))
    common(sub.add_parser("suite", help="run every experiment with default parameters"), with_config=False)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"run": cmd_run, "validate": cmd_validate, "suite": cmd_suite}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
