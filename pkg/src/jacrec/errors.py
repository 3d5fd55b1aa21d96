"""Exception hierarchy shared by all subpackages.

The CLI maps these onto exit codes: 2 for ``InvalidInput``, 3 for
``NumericIndeterminate``, 4 for ``InconsistencyError``.
"""


class JacrecError(Exception):
    exit_code = 1


class InvalidInput(JacrecError, ValueError):
    exit_code = 2


class NumericIndeterminate(JacrecError):
    """A numerical decision fell too close to its threshold."""

    exit_code = 3


class ResourceLimit(NumericIndeterminate):
    """A lattice sum or path integration would exceed its configured cap."""


class ConditioningError(NumericIndeterminate):
    pass


class InconsistencyError(JacrecError):
    """Internal invariant violated (monodromy, Riemann-Hurwitz, calibration drift)."""

    exit_code = 4


class IntegrationError(NumericIndeterminate):
    """Computed periods fail the Riemann relations beyond tolerance."""
