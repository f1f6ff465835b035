"""Command-line harness: ``qswitch {verify,bounds,counters,bench}``.

Exit codes: 0 when every check passes, 1 on a verified violation, 2 on a
usage or capacity error. A human-readable summary goes to stdout; the
machine-readable report is written to ``--output`` when given.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .bounds import (
    MAX_PREMISE_N,
    MAX_PROP2_CONSTRUCTIVE_N,
    MAX_SHATTER_N,
    dense_coding_demo,
    distinguishability_premise_check,
    proposition2_exhaustive,
    q_eps_bound,
    vc_shattering,
)
from .counters import Protocol, run_with_counters
from .errors import CapacityError, ContractError
from .game import _resolve_workers, sample_input, sample_instance, verify_switch_protocol
from .operators import basis_state
from .switch import run_switch, run_switch_fast

log = logging.getLogger("qswitch")

DEFAULT_SEED = 20160101
DEFAULT_SAMPLES = 100_000
EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
# bench reuses a pool of sampled instances so that timing measures the
# switch evaluation rather than generation of large truth tables
BENCH_POOL = 256


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    mode: str | None = None
    samples: int = DEFAULT_SAMPLES
    seed: int | None = None
    epsilon: float = 0.0
    tolerance: float = 1e-12
    output_path: str | None = None
    format: str = "json"
    path: str | None = None
    n_min: int | None = None
    n_max: int | None = None


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# report writing
# ---------------------------------------------------------------------------


def _flat_rows(report: dict) -> list[dict]:
    if "rows" in report:
        return report["rows"]
    return [{k: v for k, v in report.items() if not isinstance(v, (dict, list))}]


def render(cfg: RunConfig, report: dict) -> str:
    if cfg.format == "csv":
        rows = _flat_rows(report)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    doc = {"config": asdict(cfg), "report": report, "version": __version__}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_report(cfg: RunConfig, report: dict) -> None:
    if cfg.output_path is None:
        return
    with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render(cfg, report))


def _seed(cfg: RunConfig) -> int:
    if cfg.seed is None:
        cfg.seed = DEFAULT_SEED
        log.warning("no --seed given; using default seed %d", cfg.seed)
    return cfg.seed


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_verify(cfg: RunConfig, workers: int | None = None) -> int:
    if cfg.mode is None:
        cfg.mode = "exhaustive" if cfg.n <= 2 else "sampled"
    seed = _seed(cfg) if cfg.mode == "sampled" else cfg.seed
    rep = verify_switch_protocol(
        cfg.n, cfg.mode, cfg.samples, seed, path=cfg.path or "auto",
        workers=_resolve_workers(workers), tolerance=cfg.tolerance,
    )
    report = rep.to_dict()
    report["switch_qubits"] = cfg.n
    report["two_way_bits"] = 2 * cfg.n + 2
    report["one_way_bits"] = (1 << cfg.n) + cfg.n - 1
    write_report(cfg, report)
    status = "PASS" if rep.passed else "FAIL"
    print(f"verify n={rep.n} mode={rep.mode} path={rep.path}: {rep.pairs_tested} pairs, "
          f"{rep.failures} failures, max deviation {rep.max_probability_deviation:.3g} [{status}]")
    return EXIT_OK if rep.passed else EXIT_VIOLATION


def cmd_bounds(cfg: RunConfig) -> int:
    lo = cfg.n_min if cfg.n_min is not None else 1
    hi = cfg.n_max if cfg.n_max is not None else 10
    if lo < 1 or hi < lo:
        raise UsageError(f"bad n range [{lo}, {hi}]")
    rows, checks = [], []
    for n in range(lo, hi + 1):
        rows.append(q_eps_bound(n, cfg.epsilon).to_dict())
        if n <= MAX_PROP2_CONSTRUCTIVE_N:
            res = proposition2_exhaustive(n)
            checks.append({"check": "separating_pairs", "n": n, "method": res.method,
                           "passed": res.passed})
        if n <= MAX_PREMISE_N:
            checks.append({"check": "distinct_rows", "n": n,
                           "passed": distinguishability_premise_check(n)})
        if n <= MAX_SHATTER_N:
            cert = vc_shattering(n)
            checks.append({"check": "shattering", "n": n, "passed": True,
                           "verified_size": cert.verified_size})
    checks.append({"check": "dense_coding", "passed": dense_coding_demo().passed})
    ok = all(c["passed"] for c in checks)
    write_report(cfg, {"rows": rows, "checks": checks, "passed": ok})

    print(f"{'n':>3} {'eps':>6} {'det. causal':>12} {'sqrt q':>9} {'VC formula':>10} "
          f"{'VC verif.':>9} {'Q_eps >=':>12} {'switch':>7}")
    for r in rows:
        print(f"{r['n']:>3} {r['epsilon']:>6.3g} {r['deterministic_causal_qubits']:>12g} "
              f"{r['lemma1_qubits']:>9} {r['vc_paper_bound']:>10} {r['vc_verified']:>9} "
              f"{r['q_eps_lower_bound']:>12g} {r['switch_qubits']:>7}")
    for c in checks:
        where = f" n={c['n']}" if "n" in c else ""
        print(f"{c['check']}{where}: {'PASS' if c['passed'] else 'FAIL'}")
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_counters(cfg: RunConfig) -> int:
    n = cfg.n if cfg.n is not None else 2
    rng = np.random.default_rng(_seed(cfg))
    reports: dict[Protocol, dict] = {}
    consistent = True
    discriminates = True
    for _ in range(cfg.samples):
        inst = sample_instance(n, rng)
        current = {p: run_with_counters(p, inst) for p in Protocol}
        one_use = max(current[Protocol.SWITCH].max_counter, current[Protocol.ONE_WAY].max_counter)
        discriminates &= one_use == 1 and current[Protocol.TWO_WAY].max_counter >= 2
        for p, rep in current.items():
            d = rep.to_dict()
            if reports.setdefault(p, d) != d:
                consistent = False
    report = {
        "n": n,
        "instances": cfg.samples,
        "rng_seed": cfg.seed,
        "counters": [reports[p] for p in Protocol] if reports else [],
        "consistent_across_instances": consistent,
        "discrimination_holds": discriminates,
    }
    write_report(cfg, report)
    for entry in report["counters"]:
        print(f"{entry['protocol']:>7}: alice={entry['alice_counter']} bob={entry['bob_counter']} "
              f"<N>=({entry['expectation_N_alice']:g}, {entry['expectation_N_bob']:g})")
    print(f"discrimination over {cfg.samples} instances: {'PASS' if discriminates else 'FAIL'}")
    return EXIT_OK if discriminates else EXIT_VIOLATION


def cmd_bench(cfg: RunConfig) -> int:
    rng = np.random.default_rng(_seed(cfg))
    path = cfg.path or "both"
    pool = [(sample_input(cfg.n, rng), sample_input(cfg.n, rng))
            for _ in range(min(cfg.samples, BENCH_POOL))]
    report: dict = {"n": cfg.n, "samples": cfg.samples, "pool_size": len(pool),
                    "rng_seed": cfg.seed}
    if path in ("fast", "both"):
        start = time.perf_counter()
        for i in range(cfg.samples):
            run_switch_fast(*pool[i % len(pool)])
        elapsed = time.perf_counter() - start
        report["fast_seconds"] = elapsed
        report["fast_per_second"] = cfg.samples / elapsed if elapsed else float("inf")
    if path in ("full", "both"):
        psi = basis_state(0, cfg.n)
        start = time.perf_counter()
        for i in range(cfg.samples):
            run_switch(*pool[i % len(pool)], psi)
        elapsed = time.perf_counter() - start
        report["full_seconds"] = elapsed
        report["full_per_second"] = cfg.samples / elapsed if elapsed else float("inf")
    if path == "both":
        report["speedup"] = report["fast_per_second"] / report["full_per_second"]
    write_report(cfg, report)
    for key in ("fast_per_second", "full_per_second", "speedup"):
        if key in report:
            print(f"{key}: {report[key]:.4g}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qswitch", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_n=True):
        if with_n:
            p.add_argument("--n", type=int, required=True)
        p.add_argument("--seed", type=int)
        p.add_argument("--output", dest="output_path")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--tolerance", type=float, default=1e-12)

    p = sub.add_parser("verify", help="check the switch protocol against EE_n")
    common(p)
    p.add_argument("--mode", choices=("exhaustive", "sampled"))
    p.add_argument("--path", choices=("fast", "full"))
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--workers", type=int, help="default: $QSWITCH_WORKERS or CPU count")

    p = sub.add_parser("bounds", help="lower-bound table and bound-machinery checks")
    common(p, with_n=False)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--epsilon", type=float, default=0.0)

    p = sub.add_parser("counters", help="channel-use counters for the three protocols")
    common(p, with_n=False)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--samples", type=int, default=1000)

    p = sub.add_parser("bench", help="throughput of fast vs full switch paths")
    common(p)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--path", choices=("fast", "full", "both"), default="both")
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    fields = RunConfig.__dataclass_fields__
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if k in fields})
    try:
        if cfg.samples < 1:
            raise UsageError("--samples must be positive")
        if cfg.n is not None and cfg.n < 1:
            raise UsageError("--n must be positive")
        if cfg.command == "verify":
            return cmd_verify(cfg, args.workers)
        if cfg.command == "bounds":
            return cmd_bounds(cfg)
        if cfg.command == "counters":
            return cmd_counters(cfg)
        return cmd_bench(cfg)
    except (UsageError, CapacityError, ContractError) as exc:
        print(f"qswitch {cfg.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
