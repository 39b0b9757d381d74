"""Command-line harness: ``telegate {analyze,sample,compare,verify}``.

Reports go to stdout (or ``--out``) as JSON or a flat CSV of the row table;
diagnostics go to stderr. Exit codes: 0 ok, 1 verification failure, 2 usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys

import numpy as np

from . import __version__, baselines, kernels, processor
from .linalg import BellOutcome
from .processor import CLONE_FIDELITY, SUCCESS_PROBABILITY, DataState
from .sampling import RNG_ALGORITHM, make_rng, random_angles, random_data_states
from .states import Family, OperationVariant
from .verification import run_checks

SCHEMA_VERSION = 1
NORMALIZATION_WARN = 1e-9

log = logging.getLogger("telegate")


def parse_data(text: str) -> DataState:
    parts = [float(x) for x in text.split(",")]
    if len(parts) == 2:
        a, b = complex(parts[0]), complex(parts[1])
    elif len(parts) == 4:
        a, b = complex(parts[0], parts[1]), complex(parts[2], parts[3])
    else:
        raise ValueError("--data takes re_a,re_b or re_a,im_a,re_b,im_b")
    norm = abs(a) ** 2 + abs(b) ** 2
    if not math.isfinite(norm) or norm == 0:
        raise ValueError("--data must be a nonzero finite vector")
    if abs(norm - 1.0) > NORMALIZATION_WARN:
        log.warning("data state has |a|^2+|b|^2 = %.12g; rescaling to unit norm", norm)
    return DataState.normalized(a, b)


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _shots(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("shots must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--variant", choices=[f.value for f in Family], default="commuting")
    common.add_argument("--angle", type=float, default=None,
                        help="operation angle in radians (random per shot when omitted)")
    common.add_argument("--degrees", action="store_true", help="read --angle in degrees")
    common.add_argument("--data", default=None,
                        help="data qubit as re_a,im_a,re_b,im_b or re_a,re_b (Haar-random when omitted)")
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="telegate", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"telegate {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="exact four-branch table")
    for name, text in (("sample", "seeded Monte Carlo of the processor"),
                       ("compare", "two-output processor vs sequential scheme")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--shots", type=_shots, default=100_000)
    v = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    v.add_argument("--draws", type=_shots, default=200, help="random draws per family")
    return parser


def _num(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def _amps(vec) -> list:
    return [[float(np.real(z)), float(np.imag(z))] for z in vec]


def _config(args, data, angle) -> dict:
    cfg = {
        "command": args.command,
        "variant": args.variant,
        "angle": _num(angle),
        "degrees": args.degrees,
        "data": None if data is None else [data.a.real, data.a.imag, data.b.real, data.b.imag],
        "seed": args.seed,
        "format": args.format,
        "out": args.out,
    }
    if hasattr(args, "shots"):
        cfg["shots"] = args.shots
    return cfg


def _envelope(args, data, angle) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "artifact_version": __version__,
        "command": args.command,
        "seed": args.seed,
        "rng_algorithm": RNG_ALGORITHM,
        "backend": kernels.BACKEND,
        "config": _config(args, data, angle),
    }


def _mean(values):
    return _num(np.mean(values)) if len(values) else None


def cmd_analyze(args, data, angle) -> dict:
    rng = make_rng(args.seed)
    if data is None:
        data = DataState.from_array(random_data_states(rng, 1)[0])
    if angle is None:
        angle = float(random_angles(rng, 1)[0])
    variant = OperationVariant(Family(args.variant), angle)
    table = processor.branch_table(data, variant)
    rows = [
        {
            "outcome": r.outcome.label,
            "bits": r.outcome.bits,
            "probability": r.branch_probability,
            "success": r.success,
            "correction": processor.CORRECTIONS[r.outcome] or "none",
            "fidelity_B": r.fidelity_B,
            "fidelity_C": r.fidelity_C,
            "purity_B": r.purity_B,
            "purity_C": r.purity_C,
        }
        for r in table
    ]
    wins = [r for r in table if r.success]
    report = _envelope(args, data, variant.angle)
    report["input"] = {
        "data": _amps([data.a, data.b]),
        "angle": variant.angle,
        "reference_output": _amps(table[0].reference.amplitudes),
    }
    report["branches"] = rows
    report["aggregate"] = {
        "success_probability": sum(r.branch_probability for r in wins),
        "mean_success_fidelity_B": _mean([r.fidelity_B for r in wins]),
        "mean_success_fidelity_C": _mean([r.fidelity_C for r in wins]),
    }
    return report


def cmd_sample(args, data, angle) -> dict:
    rng = make_rng(args.seed)
    batch = processor.run_shots(Family(args.variant), args.shots, rng, data=data, angle=angle)
    counts = batch.outcome_counts()
    rows = []
    for outcome in BellOutcome:
        mask = batch.outcomes == int(outcome)
        rows.append({
            "outcome": outcome.label,
            "bits": outcome.bits,
            "count": int(counts[outcome]),
            "frequency": float(counts[outcome] / batch.shots),
            "exact_probability": 0.25,
            "success": outcome in processor.SUCCESS_OUTCOMES,
            "mean_fidelity_B": _mean(batch.fidelity_B[mask]),
            "mean_fidelity_C": _mean(batch.fidelity_C[mask]),
            "mean_purity_B": _mean(batch.purity_B[mask]),
        })
    ok = batch.success
    report = _envelope(args, data, angle)
    report["branches"] = rows
    report["aggregate"] = {
        "shots": batch.shots,
        "success_rate": batch.success_rate,
        "exact_success_probability": SUCCESS_PROBABILITY,
        "mean_success_fidelity_B": _mean(batch.fidelity_B[ok]),
        "mean_success_fidelity_C": _mean(batch.fidelity_C[ok]),
        "max_success_fidelity_deviation": _num(
            np.max(np.abs(np.concatenate([batch.fidelity_B[ok], batch.fidelity_C[ok]]) - CLONE_FIDELITY))
        ) if ok.any() else None,
    }
    return report


def cmd_compare(args, data, angle) -> dict:
    rng = make_rng(args.seed)
    family = Family(args.variant)
    data_arr, angles = processor.draw_inputs(rng, args.shots, data, angle)
    two = processor.simulate_batch(family, data_arr, angles, rng.random(args.shots))
    seq = baselines.simulate_sequential_batch(
        family, data_arr, angles, rng.random(args.shots), rng.random(args.shots)
    )
    two_ledger, seq_ledger = baselines.resource_comparison()
    schemes = [
        {
            "scheme": "two_output",
            "success_rate": two.success_rate,
            "exact_success_probability": SUCCESS_PROBABILITY,
            "mean_success_fidelity_B": _mean(two.fidelity_B[two.success]),
            "mean_success_fidelity_C": _mean(two.fidelity_C[two.success]),
            **two_ledger.as_dict(),
        },
        {
            "scheme": "sequential",
            "success_rate": seq.success_rate,
            "exact_success_probability": 0.25,
            "mean_success_fidelity_B": _mean(seq.fidelity_B[seq.success]),
            "mean_success_fidelity_C": _mean(seq.fidelity_C[seq.success]),
            **seq_ledger.as_dict(),
        },
    ]
    report = _envelope(args, data, angle)
    report["branches"] = schemes
    report["comparison"] = {
        "two_output": schemes[0],
        "sequential": schemes[1],
        "ledger_difference": seq_ledger.difference(two_ledger),
        "ledger_rule": baselines.LEDGER_RULE,
    }
    report["aggregate"] = {"shots": args.shots}
    return report


def cmd_verify(args, data, angle) -> dict:
    checks = run_checks(make_rng(args.seed), draws=args.draws)
    report = _envelope(args, data, angle)
    report["checks"] = [c.as_dict() for c in checks]
    report["branches"] = report["checks"]
    report["aggregate"] = {"passed": sum(c.passed for c in checks), "failed": sum(not c.passed for c in checks)}
    for c in checks:
        print(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.value:.3e} (tol {c.tolerance:g})", file=sys.stderr)
    return report


COMMANDS = {"analyze": cmd_analyze, "sample": cmd_sample, "compare": cmd_compare, "verify": cmd_verify}


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, allow_nan=False) + "\n"


def to_csv(report: dict) -> str:
    rows = report["branches"]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: repr(float(v)) if isinstance(v, float) else v for k, v in row.items()})
    return buf.getvalue()


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(levelname)s: %(message)s", stream=sys.stderr)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        data = parse_data(args.data) if args.data is not None else None
    except ValueError as exc:
        parser.error(str(exc))
    angle = args.angle
    if angle is not None:
        if not math.isfinite(angle):
            parser.error("--angle must be finite")
        if args.degrees:
            angle = math.radians(angle)
        angle = OperationVariant(Family(args.variant), angle).angle

    report = COMMANDS[args.command](args, data, angle)
    text = to_json(report) if args.format == "json" else to_csv(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    if args.command == "verify" and report["aggregate"]["failed"]:
        for c in report["checks"]:
            if not c["passed"]:
                print(f"verification failed: {c['name']}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
