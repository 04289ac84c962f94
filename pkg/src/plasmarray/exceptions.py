"""Exception hierarchy shared by all plasmarray modules."""


class PlasmarrayError(Exception):
    """Base class for all package errors."""


class DomainError(PlasmarrayError, ValueError):
    """A physical input is outside its admissible domain."""


class ContractError(PlasmarrayError, ValueError):
    """Objects passed together do not describe the same system."""


class NumericalError(PlasmarrayError, RuntimeError):
    """A solver failed or produced results outside stated tolerances."""


class MemoryBudgetError(NumericalError):
    """A requested construction would exceed the configured memory budget."""


class ConfigError(PlasmarrayError, ValueError):
    """A configuration file or override could not be parsed or validated."""
