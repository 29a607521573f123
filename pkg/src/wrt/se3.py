"""SE(3) math kernel: rotations, positions, poses and their composition.

Conventions: a Pose holds the rotation of the subject frame with respect to
the basis frame together with the position of the subject with respect to the
basis, expressed in the basis coordinate system. All values are immutable
64-bit floats; no unit conversion ever happens here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BadHomogeneousRow, NotARotation, ReservedName, ParseError

# Exponent-position abbreviations; barred as frame names so that
# variable-name parsing stays unambiguous.
RESERVED_SUFFIXES = frozenset({"Tran", "Inv", "Conj", "Herm"})

# Validation tolerance for values produced internally.
INTERNAL_TOL = 1e-9
# Validation tolerance at external boundaries (files, CLI, bindings),
# loose enough to accept hand-typed matrices.
BOUNDARY_TOL = 1e-6

_FRAME_CHARS = frozenset(
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789"
)


def check_frame_name(name: str) -> str:
    """Validate a frame identifier: nonempty, [A-Za-z0-9], not reserved."""
    if not isinstance(name, str) or not name or not set(name) <= _FRAME_CHARS:
        raise ParseError(f"invalid frame name: {name!r}")
    if name in RESERVED_SUFFIXES:
        raise ReservedName(f"{name!r} is a reserved suffix abbreviation")
    return name


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Rotation:
    """A 3x3 orthonormal direction-cosine matrix with determinant +1.

    Construct through :func:`validate_rotation` for checked input; direct
    construction only coerces shape and dtype (used on trusted values).
    """

    m: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.m, dtype=np.float64)
        if m.shape != (3, 3):
            raise NotARotation(f"expected 3x3 matrix, got shape {m.shape}")
        object.__setattr__(self, "m", _freeze(m))

    @staticmethod
    def identity() -> "Rotation":
        return Rotation(np.eye(3))

    def transpose(self) -> "Rotation":
        return Rotation(self.m.T)

    def __eq__(self, other) -> bool:
        return isinstance(other, Rotation) and np.array_equal(self.m, other.m)

    def __hash__(self):
        return hash(self.m.tobytes())


@dataclass(frozen=True)
class Vec3:
    """A 3-vector with finite components. Units are opaque to the library."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        for c in (self.x, self.y, self.z):
            if not np.isfinite(c):
                raise ValueError(f"non-finite component in Vec3: {c!r}")
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "z", float(self.z))

    @staticmethod
    def zero() -> "Vec3":
        return Vec3(0.0, 0.0, 0.0)

    @staticmethod
    def from_array(a) -> "Vec3":
        a = np.asarray(a, dtype=np.float64).reshape(3)
        return Vec3(a[0], a[1], a[2])

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def norm(self) -> float:
        return float(np.sqrt(self.x * self.x + self.y * self.y + self.z * self.z))


@dataclass(frozen=True)
class Pose:
    """Rotation plus position; renders as a 4x4 homogeneous matrix."""

    rotation: Rotation = field(default_factory=Rotation.identity)
    position: Vec3 = field(default_factory=Vec3.zero)

    @staticmethod
    def identity() -> "Pose":
        return Pose(Rotation.identity(), Vec3.zero())


def validate_rotation(m, tol: float = INTERNAL_TOL) -> Rotation:
    """Check orthonormality and det +1 within ``tol`` and wrap the matrix.

    The stored matrix is the input unchanged; a failing matrix raises
    :class:`NotARotation` rather than being re-orthonormalized.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = np.asarray(m, dtype=np.float64)
    if m.shape != (3, 3):
        raise NotARotation(f"expected 3x3 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NotARotation("matrix has non-finite entries")
    err = np.abs(m.T @ m - np.eye(3)).max()
    if err > tol:
        raise NotARotation(f"not orthonormal: max |R^T R - I| = {err:g} > {tol:g}")
    det = float(np.linalg.det(m))
    if abs(det - 1.0) > tol:
        raise NotARotation(f"determinant {det:g} differs from +1 by more than {tol:g}")
    return Rotation(m)


def compose_rotation(r_g_f: Rotation, r_f_e: Rotation) -> Rotation:
    """Chain rotations through a shared middle frame.

    Given the rotation of g with respect to f and of f with respect to e,
    return the rotation of g with respect to e.
    """
    return Rotation(r_f_e.m @ r_g_f.m)


def re_express(r_e_f: Rotation, v_in_e: Vec3) -> Vec3:
    """Express the same geometric vector in another coordinate system.

    ``r_e_f`` is the rotation of coordinate system e with respect to f and
    ``v_in_e`` is expressed in e; the result is expressed in f.
    """
    return Vec3.from_array(r_e_f.m @ v_in_e.as_array())


def add_positions(p_f_e: Vec3, p_g_f_e: Vec3) -> Vec3:
    """Add two positions expressed in the same coordinate system."""
    return Vec3(p_f_e.x + p_g_f_e.x, p_f_e.y + p_g_f_e.y, p_f_e.z + p_g_f_e.z)


def compose_pose(x_g_f: Pose, x_f_e: Pose) -> Pose:
    """Chain poses through a shared middle frame f.

    Both poses must be in concise form (coordinate system equal to basis).
    Equivalent to the homogeneous product ``M(x_f_e) @ M(x_g_f)``.
    """
    rot = compose_rotation(x_g_f.rotation, x_f_e.rotation)
    pos = add_positions(x_f_e.position, re_express(x_f_e.rotation, x_g_f.position))
    return Pose(rot, pos)


def inverse_pose(x_s_b: Pose) -> Pose:
    """Invert a pose: the pose of the basis with respect to the subject."""
    rt = x_s_b.rotation.transpose()
    return Pose(rt, Vec3.from_array(-(rt.m @ x_s_b.position.as_array())))


def pose_to_matrix(x: Pose) -> np.ndarray:
    """Render a pose as a 4x4 homogeneous matrix, bottom row (0,0,0,1)."""
    m = np.eye(4)
    m[:3, :3] = x.rotation.m
    m[:3, 3] = x.position.as_array()
    return m


def matrix_to_pose(m, tol: float = INTERNAL_TOL) -> Pose:
    """Parse a 4x4 homogeneous matrix into a pose.

    The bottom row must be exactly (0, 0, 0, 1) and the upper-left 3x3 block
    must pass :func:`validate_rotation` at ``tol``. The round trip through
    :func:`pose_to_matrix` is bit-exact.
    """
    m = np.asarray(m, dtype=np.float64)
    if m.shape != (4, 4):
        raise BadHomogeneousRow(f"expected 4x4 matrix, got shape {m.shape}")
    if not np.array_equal(m[3], [0.0, 0.0, 0.0, 1.0]):
        raise BadHomogeneousRow(f"bottom row is {m[3].tolist()}, not [0, 0, 0, 1]")
    rot = validate_rotation(m[:3, :3], tol=tol)
    if not np.all(np.isfinite(m[:3, 3])):
        raise BadHomogeneousRow("position has non-finite entries")
    return Pose(rot, Vec3.from_array(m[:3, 3]))
