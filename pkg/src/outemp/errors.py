"""Exception types shared across the package.

Two failure families matter to callers: bad input data (CSV problems,
precondition violations on user-supplied values) and estimation failures
(an estimator's log/ratio leaving its domain). The CLI maps them to
distinct exit codes.
"""

from __future__ import annotations


class InputError(ValueError):
    """Malformed or invalid input data.

    ``line`` carries the 1-based line number of the offending CSV row when
    the error originated in parsing.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class EstimationError(RuntimeError):
    """An estimator could not produce a valid parameter.

    ``stage`` names the pipeline stage that failed; ``ratio`` carries the
    diagnostic autocorrelation ratio for log-domain failures.
    """

    def __init__(self, message: str, stage: str | None = None,
                 ratio: float | None = None):
        if stage is not None:
            message = f"[{stage}] {message}"
        super().__init__(message)
        self.stage = stage
        self.ratio = ratio
