"""Exception types shared across the package."""


class InvalidSeriesSpec(ValueError):
    """A series has a zero b(i) or q(j) inside the summation range."""


class ReductionContractError(ValueError):
    """A reduced argument fell outside the interval the caller promised."""


class MalformedOracle(ValueError):
    """An argument oracle returned a value violating its scale contract."""


class InvariantViolation(AssertionError):
    """A runtime bound that the evaluation schemes guarantee was breached."""
