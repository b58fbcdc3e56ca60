"""Exception taxonomy; the CLI maps these onto its exit codes."""


class BlowupError(Exception):
    """Base class for library errors."""


class HypothesisError(BlowupError):
    """A theorem hypothesis (dimension, flags, primality, ...) failed."""


class HorizonExhausted(BlowupError):
    """A bounded scan ended before the sought stabilization/witness."""


class ConsistencyError(BlowupError):
    """Two routes that must agree disagreed; indicates a bug, not ambiguity."""
