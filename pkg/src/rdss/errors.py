class RDSSError(Exception):
    """Base class for toolkit errors."""


class FormatError(RDSSError):
    """Malformed graph, code, or covering file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapExceeded(RDSSError):
    """An exact search would exceed its configured size cap."""

    def __init__(self, what: str, size, cap):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


class NotApplicable(RDSSError):
    """Operation requested on the wrong kind of input (e.g. directed vs undirected)."""


class VerificationError(RDSSError):
    """A code or index code failed a correctness check it was required to pass."""
