"""Exception types shared across the package."""


class ContractError(ValueError):
    """An input violated an operation's precondition."""


class RangeError(OverflowError):
    """An input is larger than the supported magnitude for the operation."""
