"""Betting-based randomness analysis for binary sequences under interval forecasts.

The package models a sequential betting game on binary outcomes. A
forecasting system attaches an interval forecast to every finite history;
a sceptic buys and sells the next outcome at the interval's endpoints.
Randomness of an observed path is operationalized negatively: no allowed
betting strategy multiplies its capital without bound along the path.

Layers, bottom up:

- ``rationals``, ``local``: exact rational arithmetic; gambles on one
  binary outcome, interval forecasts, upper/lower expectations, the cone
  of offered gambles;
- ``situations``, ``forecasts``: the binary situation tree and the
  forecast-spec kinds (stationary, alternating, witness-driven, perfect,
  explicit table);
- ``processes``: processes on the tree, betting strategies (additive and
  multiplicative), supermartingale verification, selection processes,
  capital rescaling;
- ``globalexp``: global upper/lower expectations of finite-depth gambles
  by backward recursion, with an enumeration oracle;
- ``randomness``: strategy batteries, capital growth diagnostics, and
  selection-frequency statistics along observed paths;
- ``generate``: seeded samplers for precise systems and canonical
  recursive paths;
- ``jsonio``, ``cli``: exact JSON/CSV wire formats and the ``imprand``
  command-line tool.
"""

__version__ = "0.1.0"

from .config import (
    DEFAULT_RECURSION_DEPTH_CAP,
    DEFAULT_VERIFICATION_DEPTH_CAP,
    DEPTH_CAP_ENV,
    ORACLE_DEPTH_CAP,
    recursion_depth_cap,
    verification_depth_cap,
)
from .errors import (
    DepthError,
    DomainError,
    ImprandError,
    ResourceError,
    SemanticsError,
    SpecFormatError,
    StrategyRejectedError,
)
from .forecasts import (
    AlternatingForecast,
    ExplicitForecastTable,
    ForecastSpec,
    PerfectForecast,
    StationaryForecast,
    WitnessForecast,
    contains,
    eval_forecast,
)
from .generate import GENERATOR_NAME, SeededSampler, canonical_path, sample_path
from .globalexp import (
    ClopenEvent,
    DepthGamble,
    global_lower_expectation,
    global_upper_expectation,
    lower_probability,
    upper_expectation_enum_oracle,
    upper_probability,
)
from .local import (
    ConeDecomposition,
    Gamble,
    IntervalForecast,
    cone_decompose,
    is_offered,
    linear_expectation,
    lower_expectation,
    upper_expectation,
)
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
    SupermartingaleReport,
    TemporalGambleProcess,
    TemporalMaskSelection,
    TemporalTableProcess,
    UnitMultiplier,
    Violation,
    capital_at,
    evaluate_capital,
    is_supermartingale,
    max_capital_at_level,
    process_difference,
    rescale_test_process,
    selection_from_process,
    verify_along_path,
)
from .randomness import (
    BatteryResult,
    FreqReport,
    GrowthFn,
    LinearGrowth,
    Log2FloorGrowth,
    SqrtFloorGrowth,
    TableGrowth,
    build_selection_battery,
    church_statistic,
    default_growth_functions,
    estimate_interval,
    run_battery,
    selection_frequency,
)
from .rationals import Rational, as_rational, format_rational
from .situations import (
    PathPrefix,
    Situation,
    read_path_file,
    situations_at_level,
    write_path_file,
)

__all__ = [
    "__version__",
    # config
    "DEFAULT_RECURSION_DEPTH_CAP",
    "DEFAULT_VERIFICATION_DEPTH_CAP",
    "DEPTH_CAP_ENV",
    "ORACLE_DEPTH_CAP",
    "recursion_depth_cap",
    "verification_depth_cap",
    # errors
    "DepthError",
    "DomainError",
    "ImprandError",
    "ResourceError",
    "SemanticsError",
    "SpecFormatError",
    "StrategyRejectedError",
    # local model
    "ConeDecomposition",
    "Gamble",
    "IntervalForecast",
    "cone_decompose",
    "is_offered",
    "linear_expectation",
    "lower_expectation",
    "upper_expectation",
    # rationals
    "Rational",
    "as_rational",
    "format_rational",
    # situations
    "PathPrefix",
    "Situation",
    "read_path_file",
    "situations_at_level",
    "write_path_file",
    # forecasts
    "AlternatingForecast",
    "ExplicitForecastTable",
    "ForecastSpec",
    "PerfectForecast",
    "StationaryForecast",
    "WitnessForecast",
    "contains",
    "eval_forecast",
    # processes
    "AlwaysSelection",
    "ConstantGambleProcess",
    "ConstantProcess",
    "CountingProcess",
    "ExplicitGambleTable",
    "ExplicitTableMultiplier",
    "ExplicitTableProcess",
    "FollowSymbolSelection",
    "FromProcessSelection",
    "GambleProcessSpec",
    "GatedMultiplier",
    "KellyBuyMultiplier",
    "KellySellMultiplier",
    "MultiplierGeneratedProcess",
    "MultiplierSpec",
    "NeverSelection",
    "ProcessSpec",
    "RescaledGambleProcess",
    "RescaledMultiplier",
    "SelectionSpec",
    "StrategySpec",
    "SupermartingaleReport",
    "TemporalGambleProcess",
    "TemporalMaskSelection",
    "TemporalTableProcess",
    "UnitMultiplier",
    "Violation",
    "capital_at",
    "evaluate_capital",
    "is_supermartingale",
    "max_capital_at_level",
    "process_difference",
    "rescale_test_process",
    "selection_from_process",
    "verify_along_path",
    # global expectations
    "ClopenEvent",
    "DepthGamble",
    "global_lower_expectation",
    "global_upper_expectation",
    "lower_probability",
    "upper_expectation_enum_oracle",
    "upper_probability",
    # randomness diagnostics
    "BatteryResult",
    "FreqReport",
    "GrowthFn",
    "LinearGrowth",
    "Log2FloorGrowth",
    "SqrtFloorGrowth",
    "TableGrowth",
    "build_selection_battery",
    "church_statistic",
    "default_growth_functions",
    "estimate_interval",
    "run_battery",
    "selection_frequency",
    # generation
    "GENERATOR_NAME",
    "SeededSampler",
    "canonical_path",
    "sample_path",
]
