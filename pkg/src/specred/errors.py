"""Exception types shared across the package."""


class ResourceGuardError(RuntimeError):
    """An input exceeds a configured size guard (CLI exit code 3)."""


class ValidationError(RuntimeError):
    """A constructed object failed its exact re-verification."""
