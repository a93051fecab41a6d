"""Exception types shared across the package."""


class CorepalgError(Exception):
    """Base class for all package errors."""


class ShapeError(CorepalgError, ValueError):
    """Operands have incompatible or invalid shapes."""


class DomainError(CorepalgError, ValueError):
    """A parameter lies outside its valid domain."""


class UnknownGroupError(CorepalgError, KeyError):
    """Catalog lookup failed."""


class NoIntertwinerError(CorepalgError, RuntimeError):
    """The intertwining equation admits only the zero solution."""


class CorepConstructionError(CorepalgError, RuntimeError):
    """Corepresentation preconditions violated (signature or intertwining)."""


class SpecError(CorepalgError, ValueError):
    """Malformed input specification."""
