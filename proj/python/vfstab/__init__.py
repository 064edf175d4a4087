"""Python interface to the vfstab stability-analysis library."""

from ._core import (
    AdaptationCenter,
    AdmittanceParams,
    ConfigError,
    NumericalError,
    PlantParameters,
    ReferenceSide,
    RunConfig,
    amplitude_spectrum,
    analyze_oscillation,
    build_analysis_loop,
    build_controlled_tf,
    build_loop_gain,
    describing_function,
    distance_d,
    effort,
    eval_delayed_loop,
    invert_describing_function,
    parse_config,
    predict_limit_cycle,
    run,
    sensitivity_d,
    simulate,
)

__all__ = [
    "AdaptationCenter",
    "AdmittanceParams",
    "ConfigError",
    "NumericalError",
    "PlantParameters",
    "ReferenceSide",
    "RunConfig",
    "amplitude_spectrum",
    "analyze_oscillation",
    "build_analysis_loop",
    "build_controlled_tf",
    "build_loop_gain",
    "describing_function",
    "distance_d",
    "effort",
    "eval_delayed_loop",
    "invert_describing_function",
    "parse_config",
    "predict_limit_cycle",
    "run",
    "sensitivity_d",
    "simulate",
]
