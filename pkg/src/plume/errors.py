"""Engine errors with machine-readable codes.

Every failure that can cross a process boundary (HTTP body, CLI stderr)
carries a stable kebab-case ``code`` so transports never have to parse
messages.
"""


class PlumeError(Exception):
    """An engine error with a stable machine-readable code."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"PlumeError(code={self.code!r}, message={self.message!r})"


# Codes that mean "the referenced thing does not exist".
NOT_FOUND_CODES = frozenset(
    {
        "unknown-document",
        "unknown-frame",
        "unknown-parent",
        "unknown-chart",
        "unknown-snippet",
        "unknown-suggestion",
    }
)

# Codes that mean "the request raced or re-applied a resolved action".
CONFLICT_CODES = frozenset(
    {
        "stale-revision",
        "already-resolved",
        "ambiguous-id",
    }
)
