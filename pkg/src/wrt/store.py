"""The frame-pose database: named worlds of frames with parent edges.

A world is a forest: every frame has at most one parent edge carrying the
pose of the child with respect to the parent (position expressed in the
parent). Worlds persist as line-oriented ``<name>.wrt`` files written
atomically (temp file + rename) and fsynced before a write returns.

Concurrency: one in-process state is shared by all handles of the same world
file. Readers grab an immutable snapshot reference, so they never block and
never see a torn write; writers serialize on a lock and additionally take an
advisory file lock so concurrent processes do not clobber each other's
checkpoints. Cross-process visibility is reload-on-change, detected by
file-stat comparison.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import (
    CycleError,
    DisconnectedFrames,
    SelfReference,
    StorageError,
    UnknownFrame,
    UnresolvableEi,
)
from .se3 import (
    BOUNDARY_TOL,
    Pose,
    Rotation,
    Vec3,
    check_frame_name,
    matrix_to_pose,
    pose_to_matrix,
)

try:
    import fcntl
except ImportError:  # non-POSIX; writers then rely on the in-process lock only
    fcntl = None

FILE_MAGIC = "WRT1"
DEFAULT_DB_DIR = Path(".wrt")

FORWARD = "forward"
INVERSE = "inverse"

_IDENTITY4 = np.eye(4)
_IDENTITY4.flags.writeable = False


@dataclass(frozen=True)
class Edge:
    """One stored parent link, with its matrices and serialized form cached."""

    parent: str
    pose: Pose
    mat: np.ndarray      # 4x4, child wrt parent
    inv: np.ndarray      # 4x4, parent wrt child
    line: str            # serialized file line for this edge


@dataclass(frozen=True)
class QueryResult:
    """A resolved pose plus the forest path that produced it."""

    pose: Pose
    resolved_path: tuple  # of (from_frame, to_frame, FORWARD|INVERSE)


def _fmt(x: float) -> str:
    # repr() of a Python float is the shortest decimal that round-trips.
    return repr(float(x))


def _edge_line(child: str, parent: str, pose: Pose) -> str:
    r = pose.rotation.m
    p = pose.position
    nums = [r[0, 0], r[0, 1], r[0, 2], r[1, 0], r[1, 1], r[1, 2],
            r[2, 0], r[2, 1], r[2, 2], p.x, p.y, p.z]
    return " ".join([child, parent] + [_fmt(v) for v in nums])


def _make_edge(child: str, parent: str, pose: Pose) -> Edge:
    mat = pose_to_matrix(pose)
    inv = np.eye(4)
    inv[:3, :3] = pose.rotation.m.T
    inv[:3, 3] = -(pose.rotation.m.T @ pose.position.as_array())
    mat.flags.writeable = False
    inv.flags.writeable = False
    return Edge(parent, pose, mat, inv, _edge_line(child, parent, pose))


def _chain_product(mats: list) -> np.ndarray:
    """Ordered product of 4x4 matrices via pairwise tree reduction."""
    if not mats:
        return _IDENTITY4
    if len(mats) == 1:
        return mats[0]
    arr = np.stack(mats)
    while arr.shape[0] > 1:
        n = arr.shape[0]
        half = n // 2
        paired = arr[0 : 2 * half : 2] @ arr[1 : 2 * half : 2]
        if n % 2:
            arr = np.concatenate([paired, arr[2 * half :]], axis=0)
        else:
            arr = paired
    return arr[0]


class _WorldState:
    """In-process shared state for one world file."""

    def __init__(self, path: Path):
        self.path = path
        self.lock = threading.RLock()
        # (version, edges, frames) swapped atomically; readers grab the
        # reference once.
        self.snapshot: tuple[int, dict[str, Edge], frozenset] = (0, {}, frozenset())
        self.file_sig = None  # (mtime_ns, size) of the last state we loaded/wrote

    # -- persistence -------------------------------------------------------

    def _stat_sig(self):
        try:
            st = os.stat(self.path)
        except FileNotFoundError:
            return None
        return (st.st_mtime_ns, st.st_size)

    def refresh(self):
        """Reload from disk if another process changed the file."""
        sig = self._stat_sig()
        if sig == self.file_sig:
            return
        with self.lock:
            sig = self._stat_sig()
            if sig == self.file_sig:
                return
            if sig is None:
                # file vanished (e.g. purge by another process)
                self.snapshot = (0, {}, frozenset())
                self.file_sig = None
                return
            self.snapshot = _load_file(self.path)
            self.file_sig = sig

    def write_checkpoint(self):
        version, edges, _ = self.snapshot
        tmp = self.path.with_suffix(".wrt.tmp")
        lines = [FILE_MAGIC]
        lines.extend(e.line for e in edges.values())
        lines.append(f"#v {version}")
        data = "\n".join(lines) + "\n"
        with open(tmp, "w", encoding="ascii") as f:
            f.write(data)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, self.path)
        self.file_sig = self._stat_sig()


def _frame_set(edges: dict[str, Edge]) -> frozenset:
    frames = set(edges)
    frames.update(e.parent for e in edges.values())
    return frozenset(frames)


def _load_file(path: Path) -> tuple[int, dict[str, Edge], frozenset]:
    try:
        text = path.read_text(encoding="ascii")
    except (OSError, UnicodeDecodeError) as exc:
        raise StorageError(f"cannot read world file {path}: {exc}") from exc
    lines = text.splitlines()
    if not lines or lines[0] != FILE_MAGIC:
        raise StorageError(f"{path}: bad header, expected {FILE_MAGIC!r}")
    if len(lines) < 2 or not lines[-1].startswith("#v "):
        raise StorageError(f"{path}: missing version trailer")
    try:
        version = int(lines[-1][3:])
    except ValueError as exc:
        raise StorageError(f"{path}: bad version trailer {lines[-1]!r}") from exc
    edges: dict[str, Edge] = {}
    for lineno, line in enumerate(lines[1:-1], start=2):
        parts = line.split()
        if len(parts) != 14:
            raise StorageError(f"{path}:{lineno}: expected 14 fields")
        child, parent = parts[0], parts[1]
        try:
            check_frame_name(child)
            check_frame_name(parent)
            vals = [float(v) for v in parts[2:]]
            m = np.eye(4)
            m[:3, :3] = np.array(vals[:9]).reshape(3, 3)
            m[:3, 3] = vals[9:]
            pose = matrix_to_pose(m, tol=BOUNDARY_TOL)
        except Exception as exc:
            raise StorageError(f"{path}:{lineno}: corrupt edge: {exc}") from exc
        if child in edges:
            raise StorageError(f"{path}:{lineno}: duplicate edge for {child!r}")
        edges[child] = _make_edge(child, parent, pose)
    _check_forest(edges, path)
    return version, edges, _frame_set(edges)


def _check_forest(edges: dict[str, Edge], path: Path):
    for start in edges:
        seen = {start}
        f = start
        while f in edges:
            f = edges[f].parent
            if f in seen:
                raise StorageError(f"{path}: cycle through frame {f!r}")
            seen.add(f)


# Shared states keyed by resolved file path.
_STATES: dict[Path, _WorldState] = {}
_STATES_LOCK = threading.Lock()


def _reset_state_cache():
    """Drop all shared in-process state (test hook simulating a restart)."""
    with _STATES_LOCK:
        _STATES.clear()


class World:
    """Handle to a named world. Handles of the same world share state."""

    def __init__(self, name: str, state: _WorldState):
        self.name = name
        self._state = state

    @property
    def version(self) -> int:
        self._state.refresh()
        return self._state.snapshot[0]

    # -- queries -----------------------------------------------------------

    def list_frames(self) -> set:
        self._state.refresh()
        return set(self._state.snapshot[2])

    def resolve_path(self, frm: str, to: str) -> list:
        check_frame_name(frm)
        check_frame_name(to)
        self._state.refresh()
        _, edges, frames = self._state.snapshot
        return _resolve(edges, frames, frm, to)[0]

    def get_pose(self, subject: str, wrt: str, ei: str) -> QueryResult:
        check_frame_name(subject)
        check_frame_name(wrt)
        check_frame_name(ei)
        self._state.refresh()
        _, edges, frames = self._state.snapshot
        if subject == wrt == ei:
            return QueryResult(Pose.identity(), ())
        path, mats = _resolve(edges, frames, subject, wrt)
        m = _chain_product(mats)
        pos = m[:3, 3]
        if ei != wrt:
            try:
                _, ei_mats = _resolve(edges, frames, wrt, ei)
            except (UnknownFrame, DisconnectedFrames) as exc:
                raise UnresolvableEi(
                    f"cannot relate coordinate system {ei!r} to {wrt!r}: {exc}"
                ) from exc
            r_wrt_ei = _chain_product(ei_mats)[:3, :3]
            pos = r_wrt_ei @ pos
        pose = Pose(Rotation(m[:3, :3]), Vec3.from_array(pos))
        return QueryResult(pose, tuple(path))

    # -- mutation ----------------------------------------------------------

    def set_pose(self, subject: str, wrt: str, ei: str, matrix) -> None:
        check_frame_name(subject)
        check_frame_name(wrt)
        check_frame_name(ei)
        if subject == wrt:
            raise SelfReference(f"cannot set {subject!r} with respect to itself")
        pose = matrix_to_pose(matrix, tol=BOUNDARY_TOL)
        state = self._state
        with state.lock, _file_lock(state.path):
            state.refresh()
            version, edges, frames = state.snapshot
            if ei != wrt:
                try:
                    _, mats = _resolve(edges, frames, ei, wrt)
                except (UnknownFrame, DisconnectedFrames) as exc:
                    raise UnresolvableEi(
                        f"cannot relate coordinate system {ei!r} to {wrt!r}: {exc}"
                    ) from exc
                r_ei_wrt = _chain_product(mats)[:3, :3]
                pose = Pose(pose.rotation,
                            Vec3.from_array(r_ei_wrt @ pose.position.as_array()))
            # cycle check: walk up from wrt; reaching subject would close a loop
            f = wrt
            while f in edges:
                f = edges[f].parent
                if f == subject:
                    raise CycleError(
                        f"{wrt!r} descends from {subject!r}; edge would close a cycle"
                    )
            new_edges = dict(edges)
            new_edges[subject] = _make_edge(subject, wrt, pose)
            state.snapshot = (version + 1, new_edges, _frame_set(new_edges))
            state.write_checkpoint()


def _resolve(edges: dict[str, Edge], known: frozenset, frm: str, to: str):
    """Unique simple path frm -> to; returns (path entries, matrices).

    The matrices multiply left to right into the pose of ``frm`` with respect
    to ``to`` (position expressed in ``to``).
    """
    for f in (frm, to):
        if f not in known:
            raise UnknownFrame(f"frame {f!r} is not in the world")
    if frm == to:
        return [], []
    # ancestor chains up to the roots
    up_from = _ancestry(edges, frm)
    up_to = _ancestry(edges, to)
    anc_to = {f: i for i, f in enumerate(up_to)}
    lca = None
    for i, f in enumerate(up_from):
        if f in anc_to:
            lca = f
            up_from = up_from[: i + 1]
            up_to = up_to[: anc_to[f] + 1]
            break
    if lca is None:
        raise DisconnectedFrames(f"no path between {frm!r} and {to!r}")
    path = []
    mats = []  # one matrix per traversal step, in traversal order
    for child in up_from[:-1]:
        path.append((child, edges[child].parent, FORWARD))
        mats.append(edges[child].mat)
    down = []
    down_mats = []
    for child in up_to[:-1]:
        down.append((edges[child].parent, child, INVERSE))
        down_mats.append(edges[child].inv)
    down.reverse()
    down_mats.reverse()
    path.extend(down)
    mats.extend(down_mats)
    # with steps f0 -> f1 -> ... -> fn and step matrices M_i = pose(f_i wrt
    # f_{i+1}), pose(frm wrt to) = M_{n-1} @ ... @ M_0
    mats.reverse()
    return path, mats


def _ancestry(edges: dict[str, Edge], f: str) -> list:
    chain = [f]
    while f in edges:
        f = edges[f].parent
        chain.append(f)
    return chain


class _file_lock:
    """Advisory exclusive lock on ``<world>.wrt.lock`` for writers."""

    def __init__(self, path: Path):
        self.path = path.with_suffix(".wrt.lock")
        self.fd = None

    def __enter__(self):
        if fcntl is not None:
            self.fd = os.open(self.path, os.O_CREAT | os.O_RDWR, 0o644)
            fcntl.flock(self.fd, fcntl.LOCK_EX)
        return self

    def __exit__(self, *exc):
        if self.fd is not None:
            fcntl.flock(self.fd, fcntl.LOCK_UN)
            os.close(self.fd)
            self.fd = None


def open_world(name: str, db_dir: Optional[os.PathLike] = None) -> World:
    """Open or create the world ``name`` under ``db_dir`` (default ``.wrt/``).

    Opens of the same world share one in-process state; on-disk content is
    the cross-process source of truth.
    """
    check_frame_name(name)
    db_dir = Path(db_dir) if db_dir is not None else DEFAULT_DB_DIR
    db_dir.mkdir(parents=True, exist_ok=True)
    path = (db_dir / f"{name}.wrt").resolve()
    with _STATES_LOCK:
        state = _STATES.get(path)
        if state is None:
            state = _WorldState(path)
            _STATES[path] = state
    state.refresh()
    return World(name, state)


def purge_world(name: str, db_dir: Optional[os.PathLike] = None) -> None:
    """Delete a world's file and drop its in-process state. CLI plumbing."""
    check_frame_name(name)
    db_dir = Path(db_dir) if db_dir is not None else DEFAULT_DB_DIR
    path = (db_dir / f"{name}.wrt").resolve()
    with _STATES_LOCK:
        _STATES.pop(path, None)
    for p in (path, path.with_suffix(".wrt.lock")):
        try:
            os.unlink(p)
        except FileNotFoundError:
            pass
