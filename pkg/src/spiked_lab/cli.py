"""Command-line front end.

Subcommands: threshold, second-moment, sample, experiment, rate. Results
go to stdout as a single JSON object (schema_version "v1") or, where it
makes sense, CSV. Exit codes: 0 success, 1 configuration or usage error,
2 numerical failure. Everything human-readable goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .ensembles import STREAM_SAMPLE, EnsembleSpec, sample_trial, sub_seed_hex
from .errors import ConfigError, NumericalFailure, SpikedLabError
from .inference import (
    ExperimentSpec,
    first_coord_tail_logprob,
    run_experiment,
    second_moment_asym,
    second_moment_sym,
)
from .tensors import save_tensor, tensor_to_json
from .thresholds import beta_star, beta_star_asymptotic, lambda_star, sphere_rate

SCHEMA_VERSION = "v1"
_INLINE_JSON_LIMIT = 10**4


def _package_version() -> str:
    try:
        from importlib.metadata import version

        return version("spiked-lab")
    except Exception:
        return "0.1.0"


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; the contract reserves 2
    # for numerical failures, so route usage problems through ConfigError.
    def error(self, message):
        raise ConfigError("usage", message)


def _emit(payload: dict, output: str | None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_text(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_spec_arg(raw: str) -> dict:
    """Accept either inline JSON or a path to a JSON file."""
    candidate = raw.strip()
    if candidate.startswith("{"):
        try:
            return json.loads(candidate)
        except json.JSONDecodeError as exc:
            raise ConfigError("spec", f"inline JSON is invalid: {exc}") from exc
    if not os.path.exists(raw):
        raise ConfigError("spec", f"no such file: {raw}")
    with open(raw, "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError("spec", f"{raw} is not valid JSON: {exc}") from exc


def _meta(started: float) -> dict:
    return {"package_version": _package_version(), "wall_clock_s": time.monotonic() - started}


def _threads_default() -> int:
    env = os.environ.get("SPIKED_LAB_THREADS")
    if env is not None:
        try:
            value = int(env)
        except ValueError as exc:
            raise ConfigError("SPIKED_LAB_THREADS", f"not an integer: {env!r}") from exc
        if value < 1:
            raise ConfigError("SPIKED_LAB_THREADS", f"must be >= 1, got {value}")
        return value
    return max(1, os.cpu_count() or 1)


def _cmd_threshold(args, started: float) -> int:
    beta = beta_star(args.k)
    lam = lambda_star(args.k)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "threshold",
        "k": args.k,
        "beta_star": beta.value,
        "lambda_star": lam.value,
        "q_star": beta.q_star,
        "tolerance": beta.tolerance,
        "unimodal": beta.unimodal,
        "objective_at_min": beta.objective_at_min,
        "beta_star_asymptotic": beta_star_asymptotic(args.k) if args.k > 2 else None,
        "meta": _meta(started),
    }
    _emit(payload, args.output)
    return 0


def _cmd_second_moment(args, started: float) -> int:
    if args.model == "sym":
        result = second_moment_sym(args.strength, args.n, args.k)
    else:
        result = second_moment_asym(
            args.strength, args.n, args.k, mc_samples=args.mc_samples, seed=args.seed or 0
        )
    payload = {"schema_version": SCHEMA_VERSION, "command": "second-moment"}
    payload.update(result.to_json_dict())
    if result.method == "monte_carlo":
        payload["seed"] = args.seed or 0
    payload["meta"] = _meta(started)
    _emit(payload, args.output)
    return 0


def _cmd_sample(args, started: float) -> int:
    data = _load_spec_arg(args.spec)
    if args.seed is not None:
        data = {**data, "seed": args.seed}
    spec = EnsembleSpec.from_json_dict(data)
    if args.trial < 0:
        raise ConfigError("trial", f"must be >= 0, got {args.trial}")
    tensor = sample_trial(spec, args.trial)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "sample",
        "spec": spec.to_json_dict(),
        "trial": args.trial,
        "seed": spec.seed,
        "sub_seed": sub_seed_hex(spec.seed, args.trial, STREAM_SAMPLE),
        "n": tensor.dim,
        "k": tensor.order,
    }
    if args.tensor_out:
        if args.tensor_out.endswith(".spkt"):
            save_tensor(tensor, args.tensor_out)
        elif args.tensor_out.endswith(".json"):
            with open(args.tensor_out, "w", encoding="utf-8") as fh:
                fh.write(tensor_to_json(tensor) + "\n")
        else:
            raise ConfigError("tensor-out", "expected a .spkt or .json path")
        payload["tensor_path"] = args.tensor_out
    elif tensor.n_entries <= _INLINE_JSON_LIMIT:
        payload["tensor"] = json.loads(tensor_to_json(tensor))
    else:
        raise ConfigError(
            "tensor-out",
            f"{tensor.n_entries} entries is too large to inline; pass --tensor-out FILE",
        )
    payload["meta"] = _meta(started)
    _emit(payload, args.output)
    return 0


def _cmd_experiment(args, started: float) -> int:
    data = _load_spec_arg(args.spec)
    if args.seed is not None:
        data = {**data, "seed": args.seed}
    if args.trials is not None:
        data = {**data, "trials": args.trials}
    spec = ExperimentSpec.from_json_dict(data)
    workers = args.threads if args.threads is not None else _threads_default()
    if workers < 1:
        raise ConfigError("threads", f"must be >= 1, got {workers}")
    result = run_experiment(spec, workers=workers)
    if args.format == "csv":
        _emit_text(result.rows_csv(), args.output)
        return 0
    payload = {"schema_version": SCHEMA_VERSION, "command": "experiment"}
    payload.update(result.to_json_dict())
    payload["meta"] = _meta(started)
    _emit(payload, args.output)
    return 0


def _cmd_rate(args, started: float) -> int:
    point = sphere_rate(args.a)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "rate",
        "a": point.a,
        "asymptotic_rate": point.value,
    }
    if args.n is not None:
        log_tail = first_coord_tail_logprob(args.a, args.n)
        payload["n"] = args.n
        payload["log_tail_prob"] = log_tail
        payload["rate_per_coordinate"] = log_tail / args.n
    payload["meta"] = _meta(started)
    _emit(payload, args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spiked-lab", description="Spiked random matrix and tensor lab")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("threshold", help="critical signal strengths for order k")
    p.add_argument("--k", type=int, required=True, help="tensor order, k >= 2")
    p.add_argument("--output", default=None, help="write JSON here instead of stdout")
    p.set_defaults(func=_cmd_threshold)

    p = sub.add_parser("second-moment", help="likelihood ratio second moment")
    p.add_argument("--model", choices=("sym", "asym"), required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--strength", type=float, required=True)
    p.add_argument("--mc-samples", type=int, default=1 << 17, help="asym k >= 4 only")
    p.add_argument("--seed", type=int, default=None, help="asym k >= 4 only")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_second_moment)

    p = sub.add_parser("sample", help="draw one tensor from an ensemble spec")
    p.add_argument("--spec", required=True, help="JSON object or path to a JSON file")
    p.add_argument("--trial", type=int, default=0)
    p.add_argument("--seed", type=int, default=None, help="override the spec seed")
    p.add_argument("--tensor-out", default=None, help="write the tensor to .spkt or .json")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("experiment", help="two-hypothesis detection experiment")
    p.add_argument("--spec", required=True, help="JSON object or path to a JSON file")
    p.add_argument("--seed", type=int, default=None, help="override the experiment seed")
    p.add_argument("--trials", type=int, default=None, help="override the trial count")
    p.add_argument(
        "--threads",
        type=int,
        default=None,
        help="worker threads (default: SPIKED_LAB_THREADS or the CPU count)",
    )
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("rate", help="sphere cap rate function and finite-n tails")
    p.add_argument("--a", type=float, required=True, help="overlap level in [-1, 1]")
    p.add_argument("--n", type=int, default=None, help="also report log P(T >= a) at this n")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_rate)
    return parser


def main(argv=None) -> int:
    started = time.monotonic()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, started)
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except SpikedLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())
