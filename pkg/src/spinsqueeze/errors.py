"""Exception hierarchy shared across the toolkit.

Plain ``ValueError`` is used for malformed arguments; the classes here mark
failure modes that callers (notably the CLI) dispatch on.
"""


class DegenerateDirectionError(ValueError):
    """Mean spin length too small to define a transverse frame."""


class NumericalHealthError(RuntimeError):
    """Base class for integration-quality failures (CLI exit code 3)."""


class CutoffOverflowError(NumericalHealthError):
    """Population leaked into the top of the Fock ladder."""

    def __init__(self, n_max, top_population, suggested_n_max):
        self.n_max = n_max
        self.top_population = top_population
        self.suggested_n_max = suggested_n_max
        super().__init__(
            f"top-Fock population {top_population:.3e} at n_max={n_max}; "
            f"rerun with n_max >= {suggested_n_max}"
        )


class StepSizeError(NumericalHealthError):
    """Norm drift or step-halving disagreement beyond tolerance."""


class OpenLoopError(NumericalHealthError):
    """Motional state failed to return to ground at a loop closure."""


class ResourceError(RuntimeError):
    """Request exceeds the brute-force oracle's size limits (exit code 4)."""
