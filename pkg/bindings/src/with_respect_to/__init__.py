"""Fluent access to the wrt frame-pose database.

Typical usage::

    import numpy as np
    import with_respect_to as WRT

    db = WRT.DbConnector()
    db.In('test').Set('b').Wrt('a').Ei('a').As(np.eye(4))
    X_b_a = db.In('test').Get('b').Wrt('a').Ei('a')

Each chain step returns a new immutable builder, so misordered chains fail
with an AttributeError before touching storage. Matrices are copied across
the boundary in both directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

import wrt
from wrt.errors import (
    BadHomogeneousRow,
    CycleError,
    DisconnectedFrames,
    NotARotation,
    ReservedName,
    SelfReference,
    StorageError,
    UnknownFrame,
    UnresolvableEi,
    WrtError,
)

__all__ = [
    "DbConnector",
    "BadHomogeneousRow",
    "CycleError",
    "DisconnectedFrames",
    "NotARotation",
    "ReservedName",
    "SelfReference",
    "StorageError",
    "UnknownFrame",
    "UnresolvableEi",
    "WrtError",
]

__version__ = "0.1.0"


class DbConnector:
    """Entry point: connects to (or creates) worlds under ``db_dir``."""

    def __init__(self, db_dir: Optional[str] = None):
        self._db_dir = db_dir

    def In(self, world: str) -> "_WorldChain":
        return _WorldChain(wrt.open_world(world, self._db_dir))


@dataclass(frozen=True)
class _WorldChain:
    _world: wrt.World

    def Set(self, frame: str) -> "_SetFrame":
        return _SetFrame(self._world, frame)

    def Get(self, frame: str) -> "_GetFrame":
        return _GetFrame(self._world, frame)


@dataclass(frozen=True)
class _SetFrame:
    _world: wrt.World
    _frame: str

    def Wrt(self, basis: str) -> "_SetWrt":
        return _SetWrt(self._world, self._frame, basis)


@dataclass(frozen=True)
class _SetWrt:
    _world: wrt.World
    _frame: str
    _wrt: str

    def Ei(self, ei: str) -> "_SetEi":
        return _SetEi(self._world, self._frame, self._wrt, ei)


@dataclass(frozen=True)
class _SetEi:
    _world: wrt.World
    _frame: str
    _wrt: str
    _ei: str

    def As(self, matrix) -> None:
        m = np.array(matrix, dtype=np.float64)  # copy, never alias
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
        self._world.set_pose(self._frame, self._wrt, self._ei, m)


@dataclass(frozen=True)
class _GetFrame:
    _world: wrt.World
    _frame: str

    def Wrt(self, basis: str) -> "_GetWrt":
        return _GetWrt(self._world, self._frame, basis)


@dataclass(frozen=True)
class _GetWrt:
    _world: wrt.World
    _frame: str
    _wrt: str

    def Ei(self, ei: str) -> np.ndarray:
        result = self._world.get_pose(self._frame, self._wrt, ei)
        return wrt.pose_to_matrix(result.pose)
