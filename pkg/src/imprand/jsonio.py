"""JSON wire formats for every spec value, plus canonical serialization.

Conventions:

* Rationals travel as exact "num/den" strings ("3/4", "0/1"); bare
  integers are accepted on input as shorthand.  Floats are never
  accepted — they would silently corrupt exactness guarantees.
* Intervals are objects {"lower": ..., "upper": ...}.
* Local gambles are two-element arrays [at0, at1].
* Every spec object carries a "kind" discriminator.
* Explicit tables are keyed by bitstrings ("", "0", "01", ...); a
  multiplier/increment table's value at a key is the [at0, at1] pair,
  i.e. the (situation, outcome) map curried by situation.
* Driving paths of witness/perfect forecasts may be inline bit strings
  ("witness"/"path") or sidecar files ("witness_file"/"path_file"),
  resolved relative to the referencing file's directory.

``dumps_canonical`` fixes key order and layout so that identical values
serialize to identical bytes, which the command-line manifests rely on.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from .errors import SpecFormatError
from .forecasts import (
    AlternatingForecast,
    ExplicitForecastTable,
    ForecastSpec,
    PerfectForecast,
    StationaryForecast,
    WitnessForecast,
)
from .globalexp import ClopenEvent, DepthGamble
from .local import Gamble, IntervalForecast
from .processes import (
    AlwaysSelection,
    ConstantGambleProcess,
    ConstantProcess,
    CountingProcess,
    ExplicitGambleTable,
    ExplicitTableMultiplier,
    ExplicitTableProcess,
    FollowSymbolSelection,
    FromProcessSelection,
    GambleProcessSpec,
    GatedMultiplier,
    KellyBuyMultiplier,
    KellySellMultiplier,
    MultiplierGeneratedProcess,
    MultiplierSpec,
    NeverSelection,
    ProcessSpec,
    RescaledGambleProcess,
    RescaledMultiplier,
    SelectionSpec,
    StrategySpec,
    TemporalGambleProcess,
    TemporalMaskSelection,
    TemporalTableProcess,
    UnitMultiplier,
)
from .randomness import (
    GrowthFn,
    LinearGrowth,
    Log2FloorGrowth,
    SqrtFloorGrowth,
    TableGrowth,
)
from .rationals import as_rational, format_rational
from .situations import Situation, read_path_file


# ---------------------------------------------------------------------------
# Primitives
# ---------------------------------------------------------------------------


def rational_to_str(value) -> str:
    return format_rational(as_rational(value))


def rational_from_obj(obj) -> Fraction:
    if isinstance(obj, bool) or not isinstance(obj, (int, str)):
        raise SpecFormatError(
            f"rationals are written as 'num/den' strings or integers, got {obj!r}"
        )
    return as_rational(obj)


def interval_to_obj(interval: IntervalForecast) -> dict:
    return {
        "lower": rational_to_str(interval.lower),
        "upper": rational_to_str(interval.upper),
    }


def interval_from_obj(obj) -> IntervalForecast:
    if not isinstance(obj, dict):
        raise SpecFormatError(f"interval must be an object with lower/upper, got {obj!r}")
    try:
        return IntervalForecast(
            rational_from_obj(obj["lower"]), rational_from_obj(obj["upper"])
        )
    except KeyError as exc:
        raise SpecFormatError(f"interval needs field {exc.args[0]!r}") from None


def gamble_to_obj(gamble: Gamble) -> list:
    return [rational_to_str(gamble.at0), rational_to_str(gamble.at1)]


def gamble_from_obj(obj) -> Gamble:
    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise SpecFormatError(f"gamble must be an [at0, at1] pair, got {obj!r}")
    return Gamble(rational_from_obj(obj[0]), rational_from_obj(obj[1]))


def _bits_to_str(bits: tuple[int, ...]) -> str:
    return "".join("01"[b] for b in bits)


def _situation_from_key(key) -> Situation:
    if not isinstance(key, str):
        raise SpecFormatError(f"table keys must be bitstrings, got {key!r}")
    return Situation.from_string(key)


def _require(obj: dict, field: str, context: str):
    try:
        return obj[field]
    except KeyError:
        raise SpecFormatError(f"{context} needs field {field!r}") from None


def _kind_of(obj, context: str) -> str:
    if not isinstance(obj, dict):
        raise SpecFormatError(f"{context} must be a JSON object, got {type(obj).__name__}")
    kind = _require(obj, "kind", context)
    if not isinstance(kind, str):
        raise SpecFormatError(f"{context} kind must be a string, got {kind!r}")
    return kind


def _driving_path(obj: dict, inline_field: str, file_field: str, base_dir, context: str) -> Situation:
    if inline_field in obj:
        text = obj[inline_field]
        if not isinstance(text, str):
            raise SpecFormatError(f"{context} {inline_field!r} must be a bitstring")
        return Situation.from_string(text)
    if file_field in obj:
        rel = obj[file_field]
        if not isinstance(rel, str):
            raise SpecFormatError(f"{context} {file_field!r} must be a file path")
        root = Path(base_dir) if base_dir is not None else Path(".")
        return read_path_file(root / rel)
    raise SpecFormatError(f"{context} needs {inline_field!r} or {file_field!r}")


# ---------------------------------------------------------------------------
# Forecast specs
# ---------------------------------------------------------------------------


def forecast_to_obj(spec: ForecastSpec) -> dict:
    if isinstance(spec, StationaryForecast):
        return {
            "kind": "stationary",
            "lower": rational_to_str(spec.interval.lower),
            "upper": rational_to_str(spec.interval.upper),
        }
    if isinstance(spec, AlternatingForecast):
        return {
            "kind": "alternating",
            "p": rational_to_str(spec.p),
            "q": rational_to_str(spec.q),
        }
    if isinstance(spec, WitnessForecast):
        return {
            "kind": "witness",
            "p": rational_to_str(spec.p),
            "q": rational_to_str(spec.q),
            "witness": _bits_to_str(spec.witness.bits),
        }
    if isinstance(spec, PerfectForecast):
        return {"kind": "perfect", "path": _bits_to_str(spec.path.bits)}
    if isinstance(spec, ExplicitForecastTable):
        return {
            "kind": "explicit_table",
            "depth": spec.depth,
            "table": {
                _bits_to_str(s.bits): interval_to_obj(interval)
                for s, interval in sorted(spec.table.items())
            },
        }
    raise SpecFormatError(f"unknown forecast spec {type(spec).__name__}")


def forecast_from_obj(obj, base_dir=None) -> ForecastSpec:
    kind = _kind_of(obj, "forecast spec")
    if kind == "stationary":
        return StationaryForecast(
            IntervalForecast(
                rational_from_obj(_require(obj, "lower", "stationary forecast")),
                rational_from_obj(_require(obj, "upper", "stationary forecast")),
            )
        )
    if kind == "alternating":
        return AlternatingForecast(
            rational_from_obj(_require(obj, "p", "alternating forecast")),
            rational_from_obj(_require(obj, "q", "alternating forecast")),
        )
    if kind == "witness":
        return WitnessForecast(
            rational_from_obj(_require(obj, "p", "witness forecast")),
            rational_from_obj(_require(obj, "q", "witness forecast")),
            _driving_path(obj, "witness", "witness_file", base_dir, "witness forecast"),
        )
    if kind == "perfect":
        return PerfectForecast(
            _driving_path(obj, "path", "path_file", base_dir, "perfect forecast")
        )
    if kind == "explicit_table":
        table_obj = _require(obj, "table", "explicit forecast table")
        if not isinstance(table_obj, dict):
            raise SpecFormatError("explicit forecast table must map bitstrings to intervals")
        table = {
            _situation_from_key(key): interval_from_obj(value)
            for key, value in table_obj.items()
        }
        return ExplicitForecastTable(
            int(_require(obj, "depth", "explicit forecast table")), table
        )
    raise SpecFormatError(f"unknown forecast kind {kind!r}")


# ---------------------------------------------------------------------------
# Selection specs
# ---------------------------------------------------------------------------


def selection_to_obj(spec: SelectionSpec) -> dict:
    if isinstance(spec, AlwaysSelection):
        return {"kind": "always"}
    if isinstance(spec, NeverSelection):
        return {"kind": "never"}
    if isinstance(spec, TemporalMaskSelection):
        return {"kind": "temporal_mask", "mask": _bits_to_str(spec.mask)}
    if isinstance(spec, FollowSymbolSelection):
        return {"kind": "follow_symbol", "symbol": spec.symbol}
    if isinstance(spec, FromProcessSelection):
        return {
            "kind": "from_process",
            "process": process_to_obj(spec.process),
            "r": rational_to_str(spec.rate),
        }
    raise SpecFormatError(f"unknown selection spec {type(spec).__name__}")


def selection_from_obj(obj, base_dir=None) -> SelectionSpec:
    kind = _kind_of(obj, "selection spec")
    if kind == "always":
        return AlwaysSelection()
    if kind == "never":
        return NeverSelection()
    if kind == "temporal_mask":
        mask = _require(obj, "mask", "temporal mask selection")
        if isinstance(mask, str):
            bits = Situation.from_string(mask).bits
        elif isinstance(mask, list):
            bits = tuple(int(b) for b in mask)
        else:
            raise SpecFormatError(f"mask must be a bitstring or bit list, got {mask!r}")
        return TemporalMaskSelection(bits)
    if kind == "follow_symbol":
        symbol = _require(obj, "symbol", "follow_symbol selection")
        if symbol not in (0, 1):
            raise SpecFormatError(f"symbol must be 0 or 1, got {symbol!r}")
        return FollowSymbolSelection(int(symbol))
    if kind == "from_process":
        return FromProcessSelection(
            process_from_obj(_require(obj, "process", "from_process selection"), base_dir),
            rational_from_obj(_require(obj, "r", "from_process selection")),
        )
    raise SpecFormatError(f"unknown selection kind {kind!r}")


# ---------------------------------------------------------------------------
# Value-process specs
# ---------------------------------------------------------------------------


def process_to_obj(spec: ProcessSpec) -> dict:
    if isinstance(spec, ConstantProcess):
        return {"kind": "constant", "value": rational_to_str(spec.value)}
    if isinstance(spec, TemporalTableProcess):
        return {
            "kind": "temporal_table",
            "values": [rational_to_str(v) for v in spec.values],
        }
    if isinstance(spec, CountingProcess):
        return {
            "kind": "counting_from_selection",
            "selection": selection_to_obj(spec.selection),
        }
    if isinstance(spec, MultiplierGeneratedProcess):
        return {
            "kind": "multiplier_generated",
            "multiplier": multiplier_to_obj(spec.multiplier),
        }
    if isinstance(spec, ExplicitTableProcess):
        return {
            "kind": "explicit_table",
            "depth": spec.depth,
            "table": {
                _bits_to_str(s.bits): rational_to_str(v)
                for s, v in sorted(spec.table.items())
            },
        }
    raise SpecFormatError(f"unknown process spec {type(spec).__name__}")


def process_from_obj(obj, base_dir=None) -> ProcessSpec:
    kind = _kind_of(obj, "process spec")
    if kind == "constant":
        return ConstantProcess(rational_from_obj(_require(obj, "value", "constant process")))
    if kind == "temporal_table":
        values = _require(obj, "values", "temporal table process")
        if not isinstance(values, list):
            raise SpecFormatError("temporal table values must be a list")
        return TemporalTableProcess(tuple(rational_from_obj(v) for v in values))
    if kind == "counting_from_selection":
        raw = obj.get("selection", obj.get("sel"))
        if raw is None:
            raise SpecFormatError("counting process needs field 'selection'")
        return CountingProcess(selection_from_obj(raw, base_dir))
    if kind == "multiplier_generated":
        raw = obj.get("multiplier", obj.get("mult"))
        if raw is None:
            raise SpecFormatError("multiplier-generated process needs field 'multiplier'")
        return MultiplierGeneratedProcess(multiplier_from_obj(raw, base_dir))
    if kind == "explicit_table":
        table_obj = _require(obj, "table", "explicit process table")
        if not isinstance(table_obj, dict):
            raise SpecFormatError("explicit process table must map bitstrings to rationals")
        table = {
            _situation_from_key(key): rational_from_obj(value)
            for key, value in table_obj.items()
        }
        return ExplicitTableProcess(int(_require(obj, "depth", "explicit process table")), table)
    raise SpecFormatError(f"unknown process kind {kind!r}")


# ---------------------------------------------------------------------------
# Multiplier specs
# ---------------------------------------------------------------------------


def multiplier_to_obj(spec: MultiplierSpec) -> dict:
    if isinstance(spec, UnitMultiplier):
        return {"kind": "unit"}
    if isinstance(spec, KellyBuyMultiplier):
        return {
            "kind": "kelly_buy",
            "interval": interval_to_obj(spec.interval),
            "stake": rational_to_str(spec.stake),
        }
    if isinstance(spec, KellySellMultiplier):
        return {
            "kind": "kelly_sell",
            "interval": interval_to_obj(spec.interval),
            "stake": rational_to_str(spec.stake),
        }
    if isinstance(spec, ExplicitTableMultiplier):
        return {
            "kind": "explicit_table",
            "depth": spec.depth,
            "table": {
                _bits_to_str(s.bits): gamble_to_obj(g)
                for s, g in sorted(spec.table.items())
            },
        }
    if isinstance(spec, GatedMultiplier):
        return {
            "kind": "gated",
            "base": multiplier_to_obj(spec.base),
            "selection": selection_to_obj(spec.selection),
        }
    if isinstance(spec, RescaledMultiplier):
        return {
            "kind": "rescaled",
            "base": strategy_to_obj(spec.base),
            "cutoff": spec.cutoff,
            "scale": spec.scale,
        }
    raise SpecFormatError(f"unknown multiplier spec {type(spec).__name__}")


def multiplier_from_obj(obj, base_dir=None) -> MultiplierSpec:
    kind = _kind_of(obj, "multiplier spec")
    if kind == "unit":
        return UnitMultiplier()
    if kind in ("kelly_buy", "kelly_sell"):
        interval = interval_from_obj(_require(obj, "interval", kind))
        stake = rational_from_obj(_require(obj, "stake", kind))
        cls = KellyBuyMultiplier if kind == "kelly_buy" else KellySellMultiplier
        return cls(interval, stake)
    if kind == "explicit_table":
        table_obj = _require(obj, "table", "explicit multiplier table")
        if not isinstance(table_obj, dict):
            raise SpecFormatError("explicit multiplier table must map bitstrings to gambles")
        table = {
            _situation_from_key(key): gamble_from_obj(value)
            for key, value in table_obj.items()
        }
        return ExplicitTableMultiplier(
            int(_require(obj, "depth", "explicit multiplier table")), table
        )
    if kind == "gated":
        return GatedMultiplier(
            multiplier_from_obj(_require(obj, "base", "gated multiplier"), base_dir),
            selection_from_obj(_require(obj, "selection", "gated multiplier"), base_dir),
        )
    if kind == "rescaled":
        return RescaledMultiplier(
            strategy_from_obj(_require(obj, "base", "rescaled multiplier"), base_dir),
            int(_require(obj, "cutoff", "rescaled multiplier")),
            int(_require(obj, "scale", "rescaled multiplier")),
        )
    raise SpecFormatError(f"unknown multiplier kind {kind!r}")


# ---------------------------------------------------------------------------
# Additive increment specs
# ---------------------------------------------------------------------------


def gamble_process_to_obj(spec: GambleProcessSpec) -> dict:
    if isinstance(spec, ConstantGambleProcess):
        return {"kind": "constant", "gamble": gamble_to_obj(spec.gamble)}
    if isinstance(spec, TemporalGambleProcess):
        return {
            "kind": "temporal_table",
            "gambles": [gamble_to_obj(g) for g in spec.gambles],
        }
    if isinstance(spec, ExplicitGambleTable):
        return {
            "kind": "explicit_table",
            "depth": spec.depth,
            "table": {
                _bits_to_str(s.bits): gamble_to_obj(g)
                for s, g in sorted(spec.table.items())
            },
        }
    if isinstance(spec, RescaledGambleProcess):
        return {
            "kind": "rescaled",
            "base": strategy_to_obj(spec.base),
            "cutoff": spec.cutoff,
            "scale": spec.scale,
        }
    raise SpecFormatError(f"unknown increment spec {type(spec).__name__}")


def gamble_process_from_obj(obj, base_dir=None) -> GambleProcessSpec:
    kind = _kind_of(obj, "increment spec")
    if kind == "constant":
        return ConstantGambleProcess(
            gamble_from_obj(_require(obj, "gamble", "constant increments"))
        )
    if kind == "temporal_table":
        gambles = _require(obj, "gambles", "temporal increment table")
        if not isinstance(gambles, list):
            raise SpecFormatError("temporal increment gambles must be a list")
        return TemporalGambleProcess(tuple(gamble_from_obj(g) for g in gambles))
    if kind == "explicit_table":
        table_obj = _require(obj, "table", "explicit increment table")
        if not isinstance(table_obj, dict):
            raise SpecFormatError("explicit increment table must map bitstrings to gambles")
        table = {
            _situation_from_key(key): gamble_from_obj(value)
            for key, value in table_obj.items()
        }
        return ExplicitGambleTable(
            int(_require(obj, "depth", "explicit increment table")), table
        )
    if kind == "rescaled":
        return RescaledGambleProcess(
            strategy_from_obj(_require(obj, "base", "rescaled increments"), base_dir),
            int(_require(obj, "cutoff", "rescaled increments")),
            int(_require(obj, "scale", "rescaled increments")),
        )
    raise SpecFormatError(f"unknown increment kind {kind!r}")


# ---------------------------------------------------------------------------
# Strategies
# ---------------------------------------------------------------------------


def strategy_to_obj(spec: StrategySpec) -> dict:
    if spec.is_multiplicative:
        return {
            "kind": "multiplicative",
            "initial": rational_to_str(spec.initial),
            "class_tag": spec.class_tag,
            "multiplier": multiplier_to_obj(spec.increments),
        }
    return {
        "kind": "additive",
        "initial": rational_to_str(spec.initial),
        "class_tag": spec.class_tag,
        "increments": gamble_process_to_obj(spec.increments),
    }


def strategy_from_obj(obj, base_dir=None) -> StrategySpec:
    kind = _kind_of(obj, "strategy spec")
    initial = rational_from_obj(obj.get("initial", 1))
    class_tag = obj.get("class_tag", "C")
    if not isinstance(class_tag, str):
        raise SpecFormatError(f"class_tag must be a string, got {class_tag!r}")
    if kind == "multiplicative":
        increments = multiplier_from_obj(
            _require(obj, "multiplier", "multiplicative strategy"), base_dir
        )
        return StrategySpec(initial, increments, class_tag)
    if kind == "additive":
        increments = gamble_process_from_obj(
            _require(obj, "increments", "additive strategy"), base_dir
        )
        return StrategySpec(initial, increments, class_tag)
    raise SpecFormatError(f"unknown strategy kind {kind!r}")


# ---------------------------------------------------------------------------
# Global gambles and events
# ---------------------------------------------------------------------------


def depth_gamble_to_obj(gamble: DepthGamble) -> dict:
    return {
        "depth": gamble.depth,
        "payoff": {key: format_rational(v) for key, v in sorted(gamble.payoff_map().items())},
    }


def depth_gamble_from_obj(obj) -> DepthGamble:
    if not isinstance(obj, dict):
        raise SpecFormatError("depth gamble must be a JSON object")
    payoff = _require(obj, "payoff", "depth gamble")
    if not isinstance(payoff, dict):
        raise SpecFormatError("depth gamble payoff must map bitstrings to rationals")
    return DepthGamble.from_map(
        int(_require(obj, "depth", "depth gamble")),
        {key: rational_from_obj(value) for key, value in payoff.items()},
    )


def event_to_obj(event: ClopenEvent) -> dict:
    return {
        "depth": event.depth,
        "members": sorted(_bits_to_str(m.bits) for m in event.members),
    }


def event_from_obj(obj) -> ClopenEvent:
    if not isinstance(obj, dict):
        raise SpecFormatError("event must be a JSON object")
    members = _require(obj, "members", "event")
    if not isinstance(members, list):
        raise SpecFormatError("event members must be a list of bitstrings")
    return ClopenEvent.from_strings(
        int(_require(obj, "depth", "event")),
        [m if isinstance(m, str) else str(m) for m in members],
    )


# ---------------------------------------------------------------------------
# Growth functions
# ---------------------------------------------------------------------------


def growth_to_obj(growth: GrowthFn) -> dict:
    if isinstance(growth, LinearGrowth):
        return {"kind": "linear", "slope": rational_to_str(growth.slope)}
    if isinstance(growth, Log2FloorGrowth):
        return {"kind": "log2_floor"}
    if isinstance(growth, SqrtFloorGrowth):
        return {"kind": "sqrt_floor"}
    if isinstance(growth, TableGrowth):
        return {"kind": "table", "values": [rational_to_str(v) for v in growth.values]}
    raise SpecFormatError(f"unknown growth function {type(growth).__name__}")


def growth_from_obj(obj) -> GrowthFn:
    kind = _kind_of(obj, "growth function")
    if kind == "linear":
        return LinearGrowth(rational_from_obj(_require(obj, "slope", "linear growth")))
    if kind == "log2_floor":
        return Log2FloorGrowth()
    if kind == "sqrt_floor":
        return SqrtFloorGrowth()
    if kind == "table":
        values = _require(obj, "values", "growth table")
        if not isinstance(values, list):
            raise SpecFormatError("growth table values must be a list")
        return TableGrowth(tuple(rational_from_obj(v) for v in values))
    raise SpecFormatError(f"unknown growth kind {kind!r}")


# ---------------------------------------------------------------------------
# Files
# ---------------------------------------------------------------------------


def dumps_canonical(obj) -> str:
    """Stable bytes for a JSON value: sorted keys, fixed layout, newline end."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=True) + "\n"


def load_json_file(path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecFormatError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"malformed JSON in {path}: {exc}") from exc


def _file_loader(parse: Callable, label: str) -> Callable:
    def load(path):
        obj = load_json_file(path)
        return parse(obj, Path(path).parent)

    load.__name__ = f"load_{label}_file"
    return load


load_forecast_file = _file_loader(forecast_from_obj, "forecast")
load_selection_file = _file_loader(selection_from_obj, "selection")
load_strategy_file = _file_loader(strategy_from_obj, "strategy")


def load_strategies_file(path) -> list[StrategySpec]:
    """A battery file: {"strategies": [strategy, ...]} or a single strategy."""
    obj = load_json_file(path)
    base = Path(path).parent
    if isinstance(obj, dict) and "strategies" in obj:
        raw = obj["strategies"]
        if not isinstance(raw, list):
            raise SpecFormatError('"strategies" must be a list')
        return [strategy_from_obj(item, base) for item in raw]
    return [strategy_from_obj(obj, base)]


def load_selections_file(path) -> list[SelectionSpec]:
    """A battery file: {"selections": [selection, ...]} or a single selection."""
    obj = load_json_file(path)
    base = Path(path).parent
    if isinstance(obj, dict) and "selections" in obj:
        raw = obj["selections"]
        if not isinstance(raw, list):
            raise SpecFormatError('"selections" must be a list')
        return [selection_from_obj(item, base) for item in raw]
    return [selection_from_obj(obj, base)]


def load_depth_gamble_file(path) -> DepthGamble:
    return depth_gamble_from_obj(load_json_file(path))


def load_event_file(path) -> ClopenEvent:
    return event_from_obj(load_json_file(path))


def file_sha256(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()
