"""Exception types.

Argument problems raise plain :class:`ValueError`; the classes here cover the
numerical outcomes callers are expected to catch separately.
"""


class DomainError(ValueError):
    """Input outside the region where the quantity exists (e.g. C <= c0)."""


class BracketError(RuntimeError):
    """A root could not be bracketed where theory guarantees one."""


class IntegrationError(RuntimeError):
    """Profile integration stopped early; ``partial`` holds what was computed."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial if partial is not None else []
