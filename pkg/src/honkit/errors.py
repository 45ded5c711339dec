"""Exception types shared across the toolkit."""


class HonkitError(Exception):
    """Base class for toolkit-specific errors."""


class ParseError(HonkitError, ValueError):
    """Malformed input data; carries the 1-based line number."""

    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class EmptyCorpusError(HonkitError, ValueError):
    """Input contained no usable paths after filtering."""


class ZeroProbabilityError(HonkitError, ValueError):
    """A path received probability zero under a model that should cover it."""

    def __init__(self, path: tuple, order: int):
        super().__init__(
            f"path {','.join(path)} has zero probability under the order-{order} model"
        )
        self.path = path
        self.order = order


class ConsistencyError(HonkitError, RuntimeError):
    """An internal invariant was violated (e.g. negative test statistic)."""
