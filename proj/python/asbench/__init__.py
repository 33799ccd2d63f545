"""Python access to the asbench algorithm selection benchmark harness."""

from ._asbench import (
    AsbenchError,
    DataError,
    InstanceOutcome,
    MeasureTriple,
    ParseError,
    Scenario,
    ScheduleEntry,
    Split,
    UsageError,
    bootstrap_splits,
    evaluate,
    load_scenario,
    mask_test_scenario,
    normalized_scores,
    rank,
    rankings,
    read_schedule,
    reference_schedules,
    schedule_to_string,
    select,
    simulate,
    single_best,
    split,
    subset_scenario,
    summarize,
    validate_scenario,
    write_scenario,
    write_schedule,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
