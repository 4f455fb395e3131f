"""Exception types shared across the package."""


class MalformedInputError(ValueError):
    """Structurally invalid input: wrong shapes, duplicates, bad encodings."""


class DomainError(ValueError):
    """Mathematically invalid input: parity, genus or precondition violations."""


class ResourceCapError(RuntimeError):
    """A computation would exceed its configured resource guard."""
