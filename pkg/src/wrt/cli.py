"""Command-line front door: set/get poses in named worlds, translate notation.

Exit codes: 0 success, 1 usage error, 2 unknown frame / disconnected,
3 parse or validation error, 4 storage error. Diagnostics go to stderr only.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import notation, store
from .errors import (
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
    UnresolvableEi,
    AmbiguousContext,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNKNOWN_FRAME = 2
EXIT_VALIDATION = 3
EXIT_STORAGE = 4

_FRAME_ERRORS = (UnknownFrame, DisconnectedFrames)
_VALIDATION_ERRORS = (
    NotARotation,
    BadHomogeneousRow,
    ParseError,
    BadAccent,
    ReservedName,
    SelfReference,
    CycleError,
    UnresolvableEi,
    AmbiguousContext,
)


class _UsageError(Exception):
    pass


import re

_NEGATIVE_REAL = re.compile(r"^-(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?$")


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # accept scientific-notation negatives as values, not option flags
        self._negative_number_matcher = _NEGATIVE_REAL

    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="wrt", description="Reference frame database and notation translator")
    sub = parser.add_subparsers(dest="command", required=True)

    def world_flags(p):
        p.add_argument("-w", "--world", required=True, help="world name")
        p.add_argument("--db-dir", default=".wrt", help="directory holding world files")

    p_set = sub.add_parser("set", help="store the pose of a frame")
    world_flags(p_set)
    p_set.add_argument("-f", "--frame", required=True, help="subject frame")
    p_set.add_argument("--wrt", required=True, help="reference frame")
    p_set.add_argument("--ei", required=True, help="coordinate system of the position")
    p_set.add_argument("--pose", nargs=16, type=float, required=True,
                       metavar="X", help="16 reals, row-major homogeneous matrix")

    p_get = sub.add_parser("get", help="query the pose between two frames")
    world_flags(p_get)
    p_get.add_argument("-f", "--frame", required=True, help="subject frame")
    p_get.add_argument("--wrt", required=True, help="reference frame")
    p_get.add_argument("--ei", required=True, help="coordinate system for the position")

    p_frames = sub.add_parser("frames", help="list frames in a world")
    world_flags(p_frames)

    p_tr = sub.add_parser("translate", help="translate between notation forms")
    direction = p_tr.add_mutually_exclusive_group(required=True)
    direction.add_argument("--to-var", metavar="TEXT",
                           help="typeset command to variable name")
    direction.add_argument("--to-latex", metavar="TEXT",
                           help="variable name to typeset command")
    p_tr.add_argument("--commands", metavar="FILE",
                      help="extra 'CommandName symbol' registry entries, one per line")

    p_purge = sub.add_parser("purge", help="delete a world file")
    world_flags(p_purge)

    return parser


def _print_pose(matrix: np.ndarray) -> None:
    print(" ".join(store._fmt(v) for v in matrix.reshape(16)))


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"wrt: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.command == "set":
            world = store.open_world(args.world, args.db_dir)
            m = np.array(args.pose, dtype=float).reshape(4, 4)
            world.set_pose(args.frame, args.wrt, args.ei, m)
        elif args.command == "get":
            world = store.open_world(args.world, args.db_dir)
            result = world.get_pose(args.frame, args.wrt, args.ei)
            from .se3 import pose_to_matrix

            _print_pose(pose_to_matrix(result.pose))
        elif args.command == "frames":
            world = store.open_world(args.world, args.db_dir)
            for name in sorted(world.list_frames()):
                print(name)
        elif args.command == "translate":
            registry = notation.DEFAULT_REGISTRY
            if args.commands:
                registry = notation.CommandRegistry()
                registry.load_config(Path(args.commands).read_text())
            if args.to_var is not None:
                spec = notation.parse_command(args.to_var, registry)
                print(notation.to_variable_name(spec))
            else:
                spec = notation.parse_variable_name(args.to_latex)
                print(notation.render_command(spec, registry=registry))
        elif args.command == "purge":
            store.purge_world(args.world, args.db_dir)
    except _FRAME_ERRORS as exc:
        print(f"wrt: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN_FRAME
    except _VALIDATION_ERRORS as exc:
        print(f"wrt: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except StorageError as exc:
        print(f"wrt: {exc}", file=sys.stderr)
        return EXIT_STORAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
