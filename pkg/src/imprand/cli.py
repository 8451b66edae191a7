"""Command-line front end: reproducible experiments over file-based inputs.

Subcommands
-----------

coherence   exercise the local betting model's exact laws on seeded random data
verify      check a strategy file against a forecast file to a given depth
test        run strategy batteries and selection diagnostics along a path file
construct   materialize a reference forecasting system as an explicit table
expect      evaluate global upper/lower expectations of a depth gamble
simulate    sample a path prefix from a precise forecasting system
estimate    bracket an unknown stationary interval from an observed path

Every command writes a single canonical JSON document to stdout that
embeds a run manifest: the command name, its argument vector, SHA-256
digests of every input file, the active depth caps, any seed, and the
tool version — never a timestamp, so a rerun is byte-identical.

Exit codes: 0 success, 1 diagnostic failure, 2 exact-law violation,
3 depth/resource overflow, 4 semantics error, 64 usage or malformed input.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .config import (
    ORACLE_DEPTH_CAP,
    recursion_depth_cap,
    verification_depth_cap,
)
from .errors import (
    DepthError,
    DomainError,
    ResourceError,
    SemanticsError,
    SpecFormatError,
    StrategyRejectedError,
)
from .forecasts import (
    AlternatingForecast,
    ExplicitForecastTable,
    PerfectForecast,
    WitnessForecast,
    eval_forecast,
)
from .generate import GENERATOR_NAME, sample_path
from .globalexp import (
    global_lower_expectation,
    global_upper_expectation,
    upper_expectation_enum_oracle,
)
from .jsonio import (
    dumps_canonical,
    file_sha256,
    forecast_to_obj,
    growth_to_obj,
    load_depth_gamble_file,
    load_forecast_file,
    load_selections_file,
    load_strategies_file,
    load_strategy_file,
    rational_to_str,
)
from .local import (
    ConeDecomposition,
    Gamble,
    IntervalForecast,
    cone_decompose,
    is_offered,
    lower_expectation,
    upper_expectation,
)
from .processes import (
    AlwaysSelection,
    FollowSymbolSelection,
    is_supermartingale,
)
from .randomness import (
    LinearGrowth,
    Log2FloorGrowth,
    SqrtFloorGrowth,
    TableGrowth,
    church_statistic,
    default_growth_functions,
    estimate_interval,
    run_battery,
)
from .rationals import as_rational, format_rational
from .situations import Situation, read_path_file, situations_at_level, write_path_file

EXIT_OK = 0
EXIT_DIAGNOSTIC = 1
EXIT_PROPERTY = 2
EXIT_RESOURCE = 3
EXIT_SEMANTICS = 4
EXIT_USAGE = 64


class _UsageError(Exception):
    pass


class _PropertyViolation(Exception):
    """An exact law failed; carries the full report document."""

    def __init__(self, document: dict):
        super().__init__("exact law violated")
        self.document = document


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with code 2
        raise _UsageError(message)


# ---------------------------------------------------------------------------
# Shared plumbing
# ---------------------------------------------------------------------------


def _manifest(command: str, argv: list[str], inputs: list, seed=None) -> dict:
    digests = {}
    for path in inputs:
        if path is not None:
            digests[str(path)] = file_sha256(path)
    return {
        "command": command,
        "argv": list(argv),
        "inputs": digests,
        "config": {
            "verification_depth_cap": verification_depth_cap(),
            "recursion_depth_cap": recursion_depth_cap(),
            "oracle_depth_cap": ORACLE_DEPTH_CAP,
        },
        "seed": seed,
        "tool": {"name": "imprand", "version": __version__},
    }


def _emit(document: dict) -> None:
    sys.stdout.write(dumps_canonical(document))


def _parse_growth(text: str):
    name, _, arg = text.partition(":")
    if name == "linear":
        if not arg:
            raise SpecFormatError("growth 'linear' needs a slope, e.g. linear:1/100")
        return LinearGrowth(as_rational(arg))
    if name == "sqrt_floor":
        return SqrtFloorGrowth()
    if name == "log2_floor":
        return Log2FloorGrowth()
    if name == "table":
        if not arg:
            raise SpecFormatError("growth 'table' needs values, e.g. table:0,1,2")
        return TableGrowth(tuple(as_rational(v) for v in arg.split(",")))
    raise SpecFormatError(
        f"unknown growth function {text!r}; use linear:SLOPE, sqrt_floor, "
        f"log2_floor, or table:V1,V2,..."
    )


def _write_text(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _csv_cell(value) -> str:
    text = str(value)
    if any(ch in text for ch in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text


def _csv_line(cells) -> str:
    return ",".join(_csv_cell(c) for c in cells) + "\n"


# ---------------------------------------------------------------------------
# coherence
# ---------------------------------------------------------------------------

_COHERENCE_PROPERTIES = ("C1", "C2", "C3", "C4", "C5", "conjugacy", "cone")


def _random_rational(rng: random.Random, lo: int, hi: int, max_den: int = 12) -> Fraction:
    return Fraction(rng.randrange(lo, hi + 1), rng.randrange(1, max_den + 1))


def _random_gamble(rng: random.Random) -> Gamble:
    return Gamble(_random_rational(rng, -16, 16), _random_rational(rng, -16, 16))


def _random_interval(rng: random.Random) -> IntervalForecast:
    a = Fraction(rng.randrange(0, 33), 32)
    b = Fraction(rng.randrange(0, 33), 32)
    return IntervalForecast(min(a, b), max(a, b))


def _gamble_obj(f: Gamble) -> list:
    return [rational_to_str(f.at0), rational_to_str(f.at1)]


def _coherence_trial(rng: random.Random, trial: int, fault: str | None):
    """Check every exact law once on fresh random data.

    Returns None when all laws hold, else a counterexample record. The
    ``fault`` hook deliberately corrupts one named law's left-hand side
    so the failure path stays testable.
    """
    interval = _random_interval(rng)
    f = _random_gamble(rng)
    g = _random_gamble(rng)
    lam = Fraction(rng.randrange(0, 25), 8)
    mu = _random_rational(rng, -8, 8)

    def bad(prop: str, lhs, rhs, **extra):
        record = {
            "trial": trial,
            "property": prop,
            "interval": {
                "lower": rational_to_str(interval.lower),
                "upper": rational_to_str(interval.upper),
            },
            "f": _gamble_obj(f),
            "lhs": rational_to_str(lhs) if isinstance(lhs, Fraction) else lhs,
            "rhs": rational_to_str(rhs) if isinstance(rhs, Fraction) else rhs,
        }
        record.update(extra)
        return record

    def skew(prop: str, value: Fraction) -> Fraction:
        return value + 1 if fault == prop else value

    up_f = upper_expectation(interval, f)
    low_f = lower_expectation(interval, f)

    # C1: endpoint evaluations stay inside the gamble's range.
    if not (f.minimum() <= skew("C1", up_f) <= f.maximum() and f.minimum() <= low_f <= f.maximum()):
        return bad("C1", up_f, low_f)
    # C2: positive homogeneity.
    if skew("C2", upper_expectation(interval, f * lam)) != lam * up_f:
        return bad("C2", upper_expectation(interval, f * lam), lam * up_f,
                   scale=rational_to_str(lam))
    # C3: subadditivity.
    up_sum = upper_expectation(interval, f + g)
    if skew("C3", up_sum) > up_f + upper_expectation(interval, g):
        return bad("C3", up_sum, up_f + upper_expectation(interval, g), g=_gamble_obj(g))
    # C4: adding a constant shifts the value by that constant.
    if skew("C4", upper_expectation(interval, f + Gamble.constant(mu))) != up_f + mu:
        return bad("C4", upper_expectation(interval, f + Gamble.constant(mu)), up_f + mu,
                   shift=rational_to_str(mu))
    # C5: monotonicity against a pointwise-dominating gamble.
    h = Gamble(abs(_random_rational(rng, -8, 8)), abs(_random_rational(rng, -8, 8)))
    if skew("C5", up_f) > upper_expectation(interval, f + h):
        return bad("C5", up_f, upper_expectation(interval, f + h), g=_gamble_obj(f + h))
    # Conjugacy ties the lower value to the upper value of the negation.
    if skew("conjugacy", low_f) != -upper_expectation(interval, -f):
        return bad("conjugacy", low_f, -upper_expectation(interval, -f))
    # Cone law: a gamble is offered iff it decomposes over the interval's
    # buy/sell rays, and the canonical decomposition reconstructs it.
    offered = is_offered(interval, f)
    decomposition = cone_decompose(interval, f)
    if fault == "cone":
        decomposition = None if offered else ConeDecomposition(
            Fraction(0), Fraction(0), Fraction(0), Fraction(1)
        )
    if offered != (decomposition is not None):
        return bad("cone", f"offered={offered}", f"decomposition={decomposition is not None}")
    if decomposition is not None:
        rebuilt = decomposition.reconstruct()
        if (
            rebuilt != f
            or decomposition.alpha < 0
            or decomposition.beta < 0
            or decomposition.p > interval.lower
            or decomposition.q < interval.upper
        ):
            return bad("cone", _gamble_obj(rebuilt), _gamble_obj(f))
    return None


def cmd_coherence(args, argv) -> int:
    if args.trials < 1:
        raise _UsageError(f"--trials must be >= 1, got {args.trials}")
    if args.inject_fault is not None and args.inject_fault not in _COHERENCE_PROPERTIES:
        raise _UsageError(
            f"--inject-fault must be one of {', '.join(_COHERENCE_PROPERTIES)}"
        )
    rng = random.Random(args.seed)
    manifest = _manifest("coherence", argv, [], seed=args.seed)
    for trial in range(args.trials):
        counterexample = _coherence_trial(rng, trial, args.inject_fault)
        if counterexample is not None:
            raise _PropertyViolation({
                "command": "coherence",
                "ok": False,
                "counterexample": counterexample,
                "manifest": manifest,
            })
    _emit({
        "command": "coherence",
        "ok": True,
        "trials": args.trials,
        "properties": list(_COHERENCE_PROPERTIES),
        "manifest": manifest,
    })
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

_VERIFY_CSV_HEADER = "situation,level,excess\n"


def cmd_verify(args, argv) -> int:
    strategy = load_strategy_file(args.strategy)
    forecast = load_forecast_file(args.forecast)
    if args.depth < 0:
        raise _UsageError(f"--depth must be >= 0, got {args.depth}")
    report = is_supermartingale(strategy, forecast, args.depth)
    rows = [
        {
            "situation": violation.situation.to_string(),
            "level": violation.situation.depth,
            "excess": rational_to_str(violation.excess),
        }
        for violation in report.violations
    ]
    if args.out is not None:
        csv = _VERIFY_CSV_HEADER + "".join(
            _csv_line([row["situation"], row["level"], row["excess"]]) for row in rows
        )
        _write_text(args.out, csv)
    _emit({
        "command": "verify",
        "ok": report.ok,
        "depth": report.depth,
        "mode": report.mode,
        "checked": report.checked,
        "violations": rows,
        "out": args.out,
        "manifest": _manifest("verify", argv, [args.strategy, args.forecast]),
    })
    return EXIT_OK if report.ok else EXIT_DIAGNOSTIC


# ---------------------------------------------------------------------------
# test
# ---------------------------------------------------------------------------

_TEST_CSV_HEADER = (
    "section,index,status,max_capital,argmax_step,final_capital,exceedances,"
    "count,frequency,lower_statistic,upper_statistic,verdict,note\n"
)


def cmd_test(args, argv) -> int:
    prefix = read_path_file(args.path)
    forecast = load_forecast_file(args.forecast)
    strategies = load_strategies_file(args.battery)
    growth = (
        tuple(_parse_growth(text) for text in args.growth)
        if args.growth
        else default_growth_functions()
    )
    tolerance = as_rational(args.tolerance)
    max_capital_bound = None if args.max_capital is None else as_rational(args.max_capital)

    strategy_rows = []
    for index, strategy in enumerate(strategies):
        try:
            result = run_battery(prefix, forecast, [strategy], growth)[0]
        except StrategyRejectedError as exc:
            where = exc.situation.to_string() if exc.situation is not None else None
            strategy_rows.append({
                "index": index,
                "class_tag": strategy.class_tag,
                "status": "rejected",
                "situation": where,
                "note": "not a supermartingale for the forecast"
                + (f": positive-price increment at situation '{where}'" if where is not None else ""),
            })
            continue
        strategy_rows.append({
            "index": index,
            "class_tag": strategy.class_tag,
            "status": "ok",
            "max_capital": rational_to_str(result.max_capital),
            "argmax_step": result.argmax_step,
            "final_capital": rational_to_str(result.final_capital),
            "exceedances": list(result.exceedances),
        })

    selection_rows = []
    if args.selections is not None:
        selections = load_selections_file(args.selections)
        for index, selection in enumerate(selections):
            freq = church_statistic(
                prefix, selection, forecast,
                tolerance=tolerance, min_count=args.min_count,
            )
            selection_rows.append({
                "index": index,
                "count": freq.count,
                "frequency": rational_to_str(freq.frequency),
                "lower_statistic": rational_to_str(freq.lower_statistic),
                "upper_statistic": rational_to_str(freq.upper_statistic),
                "verdict": freq.verdict,
            })

    failed = any(row["status"] == "rejected" for row in strategy_rows)
    if max_capital_bound is not None:
        for row in strategy_rows:
            if row["status"] == "ok" and as_rational(row["max_capital"]) >= max_capital_bound:
                failed = True
    failed = failed or any(row["verdict"] != "pass" for row in selection_rows)

    if args.csv is not None:
        lines = [_TEST_CSV_HEADER]
        for row in strategy_rows:
            if row["status"] == "ok":
                exceed = ";".join("-" if e is None else str(e) for e in row["exceedances"])
                lines.append(_csv_line([
                    "strategy", row["index"], "ok", row["max_capital"],
                    row["argmax_step"], row["final_capital"], exceed,
                    "", "", "", "", "", "",
                ]))
            else:
                lines.append(_csv_line([
                    "strategy", row["index"], "rejected", "", "", "", "",
                    "", "", "", "", "", row["note"],
                ]))
        for row in selection_rows:
            lines.append(_csv_line([
                "selection", row["index"], "ok", "", "", "", "",
                row["count"], row["frequency"], row["lower_statistic"],
                row["upper_statistic"], row["verdict"], "",
            ]))
        _write_text(args.csv, "".join(lines))

    inputs = [args.path, args.forecast, args.battery]
    if args.selections is not None:
        inputs.append(args.selections)
    _emit({
        "command": "test",
        "n": len(prefix.bits),
        "growth": [growth_to_obj(g) for g in growth],
        "tolerance": rational_to_str(tolerance),
        "min_count": args.min_count,
        "strategies": strategy_rows,
        "selections": selection_rows,
        "pass": not failed,
        "csv": args.csv,
        "manifest": _manifest("test", argv, inputs),
    })
    if args.assert_pass and failed:
        return EXIT_DIAGNOSTIC
    return EXIT_OK


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------


def cmd_construct(args, argv) -> int:
    inputs = []
    if args.mode == "witness":
        if args.p is None or args.q is None or args.witness is None:
            raise _UsageError("--mode witness needs --p, --q, and --witness FILE")
        driving = read_path_file(args.witness)
        inputs.append(args.witness)
        reference = WitnessForecast(as_rational(args.p), as_rational(args.q), driving)
    elif args.mode == "perfect":
        source = args.path if args.path is not None else args.witness
        if source is None:
            raise _UsageError("--mode perfect needs --path FILE")
        driving = read_path_file(source)
        inputs.append(source)
        reference = PerfectForecast(driving)
    else:
        if args.p is None or args.q is None:
            raise _UsageError("--mode alternating needs --p and --q")
        reference = AlternatingForecast(as_rational(args.p), as_rational(args.q))

    depth = args.depth
    if depth < 0:
        raise _UsageError(f"--depth must be >= 0, got {depth}")
    cap = verification_depth_cap()
    if depth > cap:
        raise ResourceError(
            f"materializing to depth {depth} exceeds the cap {cap}; "
            f"set IMPRAND_DEPTH_CAP to raise it"
        )

    levels = [reference.level_interval(level) for level in range(depth)]
    table = {}
    for level, interval in enumerate(levels):
        for situation in situations_at_level(level):
            table[situation] = interval
    materialized = ExplicitForecastTable(depth, table)

    for level in range(depth):
        for situation in situations_at_level(level):
            if eval_forecast(materialized, situation) != eval_forecast(reference, situation):
                raise _PropertyViolation({
                    "command": "construct",
                    "ok": False,
                    "counterexample": {
                        "property": "materialization_round_trip",
                        "situation": situation.to_string(),
                    },
                    "manifest": _manifest("construct", argv, inputs),
                })

    out_obj = forecast_to_obj(materialized)
    out_obj["reference"] = forecast_to_obj(reference)
    _write_text(args.out, dumps_canonical(out_obj))

    level_strings = []
    for interval in levels:
        if interval.is_precise:
            level_strings.append(rational_to_str(interval.lower))
        else:
            level_strings.append([rational_to_str(interval.lower), rational_to_str(interval.upper)])
    _emit({
        "command": "construct",
        "mode": args.mode,
        "depth": depth,
        "levels": level_strings,
        "out": args.out,
        "manifest": _manifest("construct", argv, inputs),
    })
    return EXIT_OK


# ---------------------------------------------------------------------------
# expect
# ---------------------------------------------------------------------------


def cmd_expect(args, argv) -> int:
    forecast = load_forecast_file(args.forecast)
    gamble = load_depth_gamble_file(args.gamble)
    upper = global_upper_expectation(forecast, gamble)
    lower = global_lower_expectation(forecast, gamble)
    manifest = _manifest("expect", argv, [args.forecast, args.gamble])
    document = {
        "command": "expect",
        "depth": gamble.depth,
        "upper": rational_to_str(upper),
        "lower": rational_to_str(lower),
        "manifest": manifest,
    }
    if args.oracle:
        enumerated = upper_expectation_enum_oracle(forecast, gamble)
        document["oracle"] = rational_to_str(enumerated)
        if enumerated != upper:
            raise _PropertyViolation({
                "command": "expect",
                "ok": False,
                "counterexample": {
                    "property": "oracle_equivalence",
                    "recursion": rational_to_str(upper),
                    "enumeration": rational_to_str(enumerated),
                },
                "manifest": manifest,
            })
    _emit(document)
    return EXIT_OK


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------


def cmd_simulate(args, argv) -> int:
    forecast = load_forecast_file(args.forecast)
    if args.n < 0:
        raise _UsageError(f"--n must be >= 0, got {args.n}")
    if not 0 <= args.seed < 1 << 64:
        raise _UsageError("--seed must be a 64-bit unsigned integer")
    prefix = sample_path(forecast, args.n, args.seed)
    write_path_file(args.out, prefix)
    meta = {
        "seed": args.seed,
        "generator": GENERATOR_NAME,
        "forecast": forecast_to_obj(forecast),
        "n": args.n,
    }
    meta_path = str(args.out) + ".meta.json"
    _write_text(meta_path, dumps_canonical(meta))
    _emit({
        "command": "simulate",
        "n": args.n,
        "ones": sum(prefix.bits),
        "out": str(args.out),
        "meta": meta_path,
        "manifest": _manifest("simulate", argv, [args.forecast], seed=args.seed),
    })
    return EXIT_OK


# ---------------------------------------------------------------------------
# estimate
# ---------------------------------------------------------------------------


def _default_selection_battery():
    return [AlwaysSelection(), FollowSymbolSelection(0), FollowSymbolSelection(1)]


def cmd_estimate(args, argv) -> int:
    prefix = read_path_file(args.path)
    inputs = [args.path]
    if args.battery is not None:
        battery = load_selections_file(args.battery)
        inputs.append(args.battery)
    else:
        battery = _default_selection_battery()
    interval = estimate_interval(prefix, battery, min_count=args.min_count)
    display = f"[{format_rational(interval.lower)}, {format_rational(interval.upper)}]"
    _emit({
        "command": "estimate",
        "n": len(prefix.bits),
        "interval": {
            "lower": rational_to_str(interval.lower),
            "upper": rational_to_str(interval.upper),
        },
        "display": display,
        "min_count": args.min_count,
        "selections": len(battery),
        "manifest": _manifest("estimate", argv, inputs),
    })
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser and dispatch
# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(
        prog="imprand",
        description="Betting-based randomness analysis for binary sequences "
        "under interval forecasts.",
    )
    parser.add_argument("--version", action="version", version=f"imprand {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coherence", help="check the local model's exact laws on random data")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-fault", default=None, help=argparse.SUPPRESS)
    p.set_defaults(handler=cmd_coherence)

    p = sub.add_parser("verify", help="verify a strategy against a forecast to a depth")
    p.add_argument("--strategy", required=True, help="strategy spec JSON file")
    p.add_argument("--forecast", required=True, help="forecast spec JSON file")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--out", default=None, help="write violations as CSV to this file")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("test", help="run strategy and selection diagnostics along a path")
    p.add_argument("--path", required=True, help="path file (ASCII 0/1)")
    p.add_argument("--forecast", required=True, help="forecast spec JSON file")
    p.add_argument("--battery", required=True, help="strategies JSON file")
    p.add_argument("--growth", action="append", default=None,
                   help="growth function (repeatable): linear:SLOPE, sqrt_floor, "
                        "log2_floor, table:V1,V2,...")
    p.add_argument("--selections", default=None, help="selections JSON file")
    p.add_argument("--tolerance", default="0", help="frequency-statistic tolerance (rational)")
    p.add_argument("--min-count", type=int, default=30)
    p.add_argument("--assert-pass", action="store_true",
                   help="exit 1 on any rejection, capital bound breach, or non-pass verdict")
    p.add_argument("--max-capital", default=None,
                   help="with --assert-pass: fail if any max capital reaches this bound")
    p.add_argument("--csv", default=None, help="write per-row CSV to this file")
    p.set_defaults(handler=cmd_test)

    p = sub.add_parser("construct", help="materialize a forecasting system as an explicit table")
    p.add_argument("--mode", required=True, choices=("witness", "perfect", "alternating"))
    p.add_argument("--p", default=None, help="rational low forecast")
    p.add_argument("--q", default=None, help="rational high forecast")
    p.add_argument("--witness", default=None, help="driving path file (witness mode)")
    p.add_argument("--path", default=None, help="reference path file (perfect mode)")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--out", required=True, help="output forecast spec JSON file")
    p.set_defaults(handler=cmd_construct)

    p = sub.add_parser("expect", help="global upper/lower expectation of a depth gamble")
    p.add_argument("--forecast", required=True, help="forecast spec JSON file")
    p.add_argument("--gamble", required=True, help="depth gamble JSON file")
    p.add_argument("--oracle", action="store_true",
                   help="also run the enumeration oracle and assert agreement")
    p.set_defaults(handler=cmd_expect)

    p = sub.add_parser("simulate", help="sample a path prefix from a precise forecast")
    p.add_argument("--forecast", required=True, help="forecast spec JSON file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="output path file")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("estimate", help="bracket a stationary interval from a path")
    p.add_argument("--path", required=True, help="path file (ASCII 0/1)")
    p.add_argument("--battery", default=None, help="selections JSON file")
    p.add_argument("--min-count", type=int, default=30)
    p.set_defaults(handler=cmd_estimate)

    return parser


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"imprand: error: {exc}\n")
        return EXIT_USAGE
    try:
        return args.handler(args, argv)
    except _UsageError as exc:
        sys.stderr.write(f"imprand: error: {exc}\n")
        return EXIT_USAGE
    except (SpecFormatError, DomainError) as exc:
        sys.stderr.write(f"imprand: error: {exc}\n")
        return EXIT_USAGE
    except (DepthError, ResourceError) as exc:
        sys.stderr.write(f"imprand: error: {exc}\n")
        return EXIT_RESOURCE
    except SemanticsError as exc:
        sys.stderr.write(f"imprand: error: {exc}\n")
        return EXIT_SEMANTICS
    except _PropertyViolation as exc:
        _emit(exc.document)
        return EXIT_PROPERTY
    except StrategyRejectedError as exc:
        sys.stderr.write(f"imprand: error: {exc}\n")
        return EXIT_DIAGNOSTIC


if __name__ == "__main__":
    raise SystemExit(main())
