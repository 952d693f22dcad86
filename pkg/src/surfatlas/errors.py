"""Exception types shared across the package.

The CLI maps each family onto an exit code: usage problems exit 2,
resource caps exit 3 and violated structural guarantees exit 1.
"""


class AtlasError(Exception):
    """Base class for every error raised by surfatlas."""

    exit_code = 1


class GroupSpecError(AtlasError, ValueError):
    """A group descriptor could not be parsed or names an unknown family."""

    exit_code = 2


class NotASubgroupError(AtlasError, ValueError):
    """An index set is not closed under multiplication and inversion."""

    exit_code = 2


class NotNormalError(AtlasError, ValueError):
    """A subgroup required to be normal (or central) is not."""

    exit_code = 2


class CapExceeded(AtlasError, RuntimeError):
    """A construction would exceed a configured size cap."""

    exit_code = 3


class TheoremViolation(AtlasError, AssertionError):
    """A property guaranteed by the theory failed on concrete data.

    ``context`` carries whatever diagnostics the raising site collected so
    that the failure can be reproduced.
    """

    exit_code = 1

    def __init__(self, message, **context):
        super().__init__(message)
        self.context = context

    def __str__(self):
        base = super().__str__()
        if not self.context:
            return base
        details = ", ".join(f"{k}={v!r}" for k, v in sorted(self.context.items()))
        return f"{base} [{details}]"
