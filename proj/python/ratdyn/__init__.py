from ._ratdyn import (
    DegenerateError,
    Error,
    InvalidArgument,
    NoDistinctCycleError,
    OrbitDiedError,
    SingularError,
    condition_check,
    equilibria,
    iterate,
    lyapunov_max,
    run_cli,
    saddle_margin,
    stability_margin,
    step,
    two_cycle,
)

__all__ = [
    "DegenerateError",
    "Error",
    "InvalidArgument",
    "NoDistinctCycleError",
    "OrbitDiedError",
    "SingularError",
    "condition_check",
    "equilibria",
    "iterate",
    "lyapunov_max",
    "run_cli",
    "saddle_margin",
    "stability_margin",
    "step",
    "two_cycle",
]
