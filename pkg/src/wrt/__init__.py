"""Reference frame management with RIGID-style notation support.

Three layers: an SE(3) math kernel (:mod:`wrt.se3`), a bidirectional
notation translator (:mod:`wrt.notation`) and a persistent concurrent
frame-pose database (:mod:`wrt.store`) with a command-line front end
(:mod:`wrt.cli`).
"""

from .errors import (
    AmbiguousContext,
    BadAccent,
    BadHomogeneousRow,
    CycleError,
    DisconnectedFrames,
    NotARotation,
    ParseError,
    ReservedName,
    SelfReference,
    StorageError,
    UnknownFrame,
    UnknownSymbol,
    UnresolvableEi,
    WrtError,
)
from .notation import (
    CommandRegistry,
    NotationContext,
    QuantitySpec,
    concise_form,
    expand_form,
    parse_command,
    parse_variable_name,
    render_command,
    to_variable_name,
)
from .se3 import (
    Pose,
    Rotation,
    Vec3,
    add_positions,
    compose_pose,
    compose_rotation,
    inverse_pose,
    matrix_to_pose,
    pose_to_matrix,
    re_express,
    validate_rotation,
)
from .store import QueryResult, World, open_world, purge_world

__version__ = "0.1.0"

__all__ = [
    "AmbiguousContext",
    "BadAccent",
    "BadHomogeneousRow",
    "CommandRegistry",
    "CycleError",
    "DisconnectedFrames",
    "NotARotation",
    "NotationContext",
    "ParseError",
    "Pose",
    "QuantitySpec",
    "QueryResult",
    "ReservedName",
    "Rotation",
    "SelfReference",
    "StorageError",
    "UnknownFrame",
    "UnknownSymbol",
    "UnresolvableEi",
    "Vec3",
    "World",
    "WrtError",
    "add_positions",
    "compose_pose",
    "compose_rotation",
    "concise_form",
    "expand_form",
    "inverse_pose",
    "matrix_to_pose",
    "open_world",
    "parse_command",
    "parse_variable_name",
    "pose_to_matrix",
    "purge_world",
    "re_express",
    "render_command",
    "to_variable_name",
    "validate_rotation",
]
