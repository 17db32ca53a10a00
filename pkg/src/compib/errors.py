"""Exception hierarchy shared by all compib modules.

Exit-code mapping used by the CLI: argparse errors exit 2, ValidationError 3,
PrecisionError 4, InternalInvariantError 5.
"""


class CompibError(Exception):
    """Base class for all compib errors."""


class ValidationError(CompibError):
    """Invalid input: bad polynomial, basis, parameter, or flag combination."""


class CoprimalityError(ValidationError):
    """gcd(D_L, D_M) != 1, so the product basis of the composite is not integral."""


class PrecisionError(CompibError):
    """Certified evaluation failed to resolve an integer below the precision cap."""


class InternalInvariantError(CompibError):
    """A mathematically guaranteed invariant failed; indicates a bug, not bad input."""
