"""Command-line front end.

Exit status: 0 retain / success, 1 reject, 2 usage, parse or domain error.
Diagnostics go to stderr; reports go to stdout.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import io
from .bayes import batch_posterior, map_hypothesis, sequential_update
from .core import BehaviorAlphabet
from .errors import ParseError, TrustError
from .harness import StreamSpec, monte_carlo_error_rates, simulate_stream
from .mdl import DEFAULT_MAX_MEMBERS, DEFAULT_RESOLUTION, QuantizedFamily, mdl_report
from .testing import fisher_decide, np_decide, point_decide

EXIT_RETAIN = 0
EXIT_REJECT = 1
EXIT_ERROR = 2


@dataclass(frozen=True)
class RunConfig:
    alpha: float = 0.01
    variant: str = "deterministic"
    k: int = DEFAULT_RESOLUTION
    seed: Optional[int] = None
    output: str = "text"


def _config(args) -> RunConfig:
    return RunConfig(
        alpha=getattr(args, "alpha", RunConfig.alpha),
        variant=getattr(args, "variant", RunConfig.variant),
        k=getattr(args, "k", RunConfig.k),
        seed=getattr(args, "seed", None),
        output=getattr(args, "output", RunConfig.output),
    )


def _emit(cfg: RunConfig, payload: dict, lines: Sequence[str]):
    if cfg.output == "json":
        print(json.dumps(payload))
    else:
        for line in lines:
            print(line)


def _single_event(args, alphabet: BehaviorAlphabet) -> str:
    if args.event is not None:
        if args.event not in alphabet:
            raise ParseError(f"event {args.event!r} is not in the alphabet {list(alphabet)}")
        return args.event
    events, obs = io.parse_events(io.read_text(args.stream), alphabet)
    if obs.total != 1:
        raise ParseError(f"single-event tests need exactly one event, the stream has {obs.total}")
    return events[0] if events else next(s for s, c in zip(alphabet, obs.counts) if c)


def cmd_test(args) -> int:
    cfg = _config(args)
    p0 = io.parse_profile(io.read_text(args.null), f"null profile {args.null}")
    p1 = None
    if args.alternative is not None:
        p1 = io.parse_profile(io.read_text(args.alternative), f"alternative profile {args.alternative}")
    x = _single_event(args, p0.alphabet)
    if args.kind == "np":
        if p1 is None:
            raise ParseError("the np test needs an alternative profile")
        report = np_decide(p0, p1, cfg.alpha, x, randomized=cfg.variant == "randomized", seed=cfg.seed)
        label = "likelihood ratio"
    elif args.kind == "fisher":
        report = fisher_decide(p0, x, cfg.alpha, p1)
        label = "p-value"
    else:
        report = point_decide(p0, x, cfg.alpha, p1)
        label = "null probability"
    lines = [
        f"{args.kind} test on event {x!r} at alpha={cfg.alpha}",
        f"  {label}: {report.statistic_value:.6g} (threshold {report.threshold:.6g})",
        f"  size: {report.size:.6g}" + ("" if report.power is None else f"  power: {report.power:.6g}"),
        f"  decision: {report.decision.verdict.value.upper()}",
    ]
    _emit(cfg, report.to_dict(), lines)
    return EXIT_REJECT if report.decision.rejected else EXIT_RETAIN


def cmd_bayes(args) -> int:
    cfg = _config(args)
    hset = io.parse_hypothesis_set(io.read_text(args.hypotheses), f"hypothesis set {args.hypotheses}")
    events, obs = io.parse_events(io.read_text(args.stream), hset.alphabet)
    post = sequential_update(hset, events) if events is not None else batch_posterior(hset, obs)
    best = map_hypothesis(post)
    lines = [f"posterior after {obs.total} events:"]
    lines += [f"  {h.id}: {h.prior:.6f}" for h in post.hset]
    lines.append(f"MAP hypothesis: {best.id}")
    _emit(cfg, post.to_dict(), lines)
    return EXIT_RETAIN


def cmd_mdl(args) -> int:
    cfg = _config(args)
    alphabet = BehaviorAlphabet(tuple(args.alphabet.split(","))) if args.alphabet else None
    events, obs = io.parse_events(io.read_text(args.stream), alphabet)
    family = QuantizedFamily(obs.alphabet, cfg.k, args.max_members)
    if args.compressor and events is None:
        raise ParseError("--compressor needs an event stream, not a counts object")
    report = mdl_report(family, obs, events, args.compressor)
    lines = [
        f"selected null hypothesis (k={cfg.k}, {report.family_size} members):",
        "  " + ", ".join(f"{s}={p:.6g}" for s, p in report.selected.items()),
        f"  two-part length: {report.two_part_bits:.4f} bits"
        f" = {report.hypothesis_bits:.4f} (hypothesis) + {report.data_bits:.4f} (data)",
    ]
    if report.compressor_bits is not None:
        lines.append(f"  {args.compressor} estimate: {report.compressor_bits:.0f} bits")
    _emit(cfg, report.to_dict(), lines)
    return EXIT_RETAIN


def cmd_simulate(args) -> int:
    profile = io.parse_profile(io.read_text(args.profile), f"profile {args.profile}")
    events, _ = simulate_stream(StreamSpec(profile, args.n, args.seed))
    text = io.events_to_text(events)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_RETAIN


def cmd_calibrate(args) -> int:
    cfg = _config(args)
    p0 = io.parse_profile(io.read_text(args.null), f"null profile {args.null}")
    p1 = io.parse_profile(io.read_text(args.alternative), f"alternative profile {args.alternative}")
    report = monte_carlo_error_rates(p0, p1, cfg.alpha, args.trials, cfg.seed, cfg.variant)
    lines = [
        f"{args.trials} trials, {cfg.variant} NP test at alpha={cfg.alpha}",
        f"  false positive rate: {report.fpr_hat:.6f} (+/- {report.wilson_halfwidth:.6f}, 95% Wilson)",
        f"  false negative rate: {report.fnr_hat:.6f}",
    ]
    _emit(cfg, report.to_dict(), lines)
    return EXIT_RETAIN


def _probability(text: str) -> float:
    v = float(text)
    if not 0.0 < v < 1.0:
        raise argparse.ArgumentTypeError(f"{text} is not strictly between 0 and 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("text", "json"), default=RunConfig.output)

    parser = argparse.ArgumentParser(prog="trustinfer", description="Trust decisions as hypothesis tests.")
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("test", parents=[common], help="test a single observed event")
    t.add_argument("kind", choices=("fisher", "point", "np"))
    t.add_argument("null", help="null (trustworthy) profile JSON")
    t.add_argument("alternative", nargs="?", help="alternative profile JSON (required for np)")
    src = t.add_mutually_exclusive_group(required=True)
    src.add_argument("--event")
    src.add_argument("--stream", help="observation file holding exactly one event")
    t.add_argument("--alpha", type=_probability, default=RunConfig.alpha)
    t.add_argument("--variant", choices=("deterministic", "randomized"), default=RunConfig.variant)
    t.add_argument("--seed", type=int)
    t.set_defaults(func=cmd_test)

    b = sub.add_parser("bayes", parents=[common], help="posterior over a hypothesis set")
    b.add_argument("hypotheses")
    b.add_argument("stream")
    b.set_defaults(func=cmd_bayes)

    m = sub.add_parser("mdl", parents=[common], help="select a null hypothesis by two-part MDL")
    m.add_argument("stream")
    m.add_argument("--k", type=int, default=RunConfig.k, help="grid resolution 2^-k")
    m.add_argument("--alphabet", help="comma-separated symbols (default: order of appearance)")
    m.add_argument("--max-members", type=int, default=DEFAULT_MAX_MEMBERS)
    m.add_argument("--compressor", help="also report a compressed length (lz78, zlib, bz2, lzma)")
    m.set_defaults(func=cmd_mdl)

    s = sub.add_parser("simulate", help="draw an i.i.d. event stream from a profile")
    s.add_argument("profile")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out", "-o")
    s.set_defaults(func=cmd_simulate)

    c = sub.add_parser("calibrate", parents=[common], help="Monte Carlo error rates of the NP test")
    c.add_argument("null")
    c.add_argument("alternative")
    c.add_argument("--alpha", type=_probability, default=RunConfig.alpha)
    c.add_argument("--trials", type=int, default=10**4)
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--variant", choices=("deterministic", "randomized"), default=RunConfig.variant)
    c.set_defaults(func=cmd_calibrate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TrustError as e:
        print(f"trustinfer: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
