"""Error taxonomy shared by the math kernel, notation engine, store and CLI."""


class WrtError(Exception):
    """Base class for all library errors."""


# --- SE(3) kernel ---------------------------------------------------------

class NotARotation(WrtError):
    """Matrix is not orthonormal with determinant +1 within tolerance."""


class BadHomogeneousRow(WrtError):
    """Bottom row of a homogeneous 4x4 matrix is not exactly (0, 0, 0, 1)."""


# --- notation grammar -----------------------------------------------------

class ParseError(WrtError):
    """Malformed command or variable name (braces, brackets, separators)."""


class BadAccent(WrtError):
    """Accent is not in the known vocabulary."""


class ReservedName(WrtError):
    """A reserved suffix word (Tran/Inv/Conj/Herm) was used as a name."""


class AmbiguousContext(WrtError):
    """A concise form cannot be expanded: the context set is not a singleton."""


class UnknownSymbol(WrtError):
    """No command is registered for this quantity symbol."""


# --- frame store ----------------------------------------------------------

class StorageError(WrtError):
    """World file is unreadable or corrupt; never silently repaired."""


class UnknownFrame(WrtError):
    """Frame does not appear in the world."""


class DisconnectedFrames(WrtError):
    """No path between the frames: they live in different trees."""


class CycleError(WrtError):
    """Edge would create a cycle and break the forest invariant."""


class SelfReference(WrtError):
    """Subject and reference frame are the same."""


class UnresolvableEi(WrtError):
    """Coordinate-system frame cannot be related to the reference frame."""
