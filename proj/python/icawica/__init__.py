"""ICA with independence and constrained assimilation for the 0-1 multidimensional knapsack problem."""

from ._core import (
    BatchEntry,
    DataError,
    IcaConfig,
    Instance,
    InstanceSummary,
    ParseError,
    RunResult,
    Solution,
    SummaryStats,
    average_error,
    enumerate_optimum,
    evaluate,
    generate_instance,
    load_instances,
    parse_instances,
    run,
    run_batch,
    summarize,
    sweep_independence,
)

__all__ = [
    "BatchEntry",
    "DataError",
    "IcaConfig",
    "Instance",
    "InstanceSummary",
    "ParseError",
    "RunResult",
    "Solution",
    "SummaryStats",
    "average_error",
    "enumerate_optimum",
    "evaluate",
    "generate_instance",
    "load_instances",
    "parse_instances",
    "run",
    "run_batch",
    "summarize",
    "sweep_independence",
]
