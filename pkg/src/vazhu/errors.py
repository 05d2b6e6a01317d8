"""Exception hierarchy shared by every layer of the engine."""


class VazhuError(Exception):
    """Base class for all engine errors."""


class ConfigurationError(VazhuError):
    """Inconsistent parameters (duplicate basis keys, bad twist data, caps...)."""


class DimensionMismatch(VazhuError):
    """A vector refers to a basis key outside the ambient space."""


class CapExceeded(VazhuError):
    """A computation would produce a state above its weight cap.

    Raised instead of silently truncating: the graded pieces above the cap
    are simply not known to the computation.
    """

    def __init__(self, weight, cap, what="state"):
        self.weight = weight
        self.cap = cap
        super().__init__(f"{what} of weight {weight} exceeds cap {cap}")


class TruncationError(VazhuError):
    """Coefficient requested beyond the known order of a truncated series."""


class PreconditionError(VazhuError):
    """An operation was called outside its domain (e.g. inhomogeneous input)."""
