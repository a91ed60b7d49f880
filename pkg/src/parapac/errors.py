"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or inconsistent input (bad widths, bad weights, bad files)."""


class WidthMismatchError(InputError):
    """Operands disagree on the number of variables."""


class SetTooSmallError(InputError):
    """A set in a hitting-set instance is too small to form a cycle gadget."""


class GuardError(RuntimeError):
    """A brute-force enumeration would exceed its size guard."""


class RealizabilityError(RuntimeError):
    """A consistency checker failed inside a learner on a realizable scenario."""
