"""Grammar engine for RIGID quantity descriptors.

Handles the typeset command form (``\\Pos[dot]{s}{b}{c}\\Tran``), the
source-code variable form (``pdot_s_b_c_Tran``) and the concise/exhaustive
rewriting rules, all bidirectionally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Optional

from .errors import (
    AmbiguousContext,
    BadAccent,
    ParseError,
    ReservedName,
)
from .se3 import RESERVED_SUFFIXES, check_frame_name

ACCENTS = ("ddot", "dot", "hat")  # longest first for suffix stripping

_SYMBOL_RE = re.compile(r"^[A-Za-z0-9]+$")


@dataclass(frozen=True)
class QuantitySpec:
    """One quantity descriptor: symbol, accent, frames and exponent suffix."""

    symbol: str
    accent: Optional[str] = None
    subject: Optional[str] = None
    basis: Optional[str] = None
    coordsys: Optional[str] = None
    suffix: Optional[str] = None

    def __post_init__(self):
        if not self.symbol or not _SYMBOL_RE.match(self.symbol):
            raise ParseError(f"invalid quantity symbol: {self.symbol!r}")
        if self.symbol in RESERVED_SUFFIXES:
            raise ReservedName(f"symbol {self.symbol!r} is a reserved suffix word")
        if self.accent is not None and self.accent not in ACCENTS:
            raise BadAccent(f"unknown accent {self.accent!r}")
        if self.suffix is not None and self.suffix not in RESERVED_SUFFIXES:
            raise ParseError(f"unknown suffix {self.suffix!r}")
        for frame in (self.subject, self.basis, self.coordsys):
            if frame is not None:
                check_frame_name(frame)
        if self.coordsys is not None and self.basis is None:
            raise ParseError("coordinate system given without a basis")
        if self.basis is not None and self.subject is None:
            raise ParseError("basis given without a subject")

    @property
    def frames(self) -> tuple:
        return tuple(f for f in (self.subject, self.basis, self.coordsys) if f)


@dataclass(frozen=True)
class NotationContext:
    """The sets of subjects and bases in play, for concise-form legality."""

    subjects: frozenset = frozenset()
    bases: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "subjects", frozenset(self.subjects))
        object.__setattr__(self, "bases", frozenset(self.bases))


class CommandRegistry:
    """Maps command names to quantity symbols (and back).

    Mirrors the command factory of the typesetting package: ``Pos``, ``Rot``
    and ``Pose`` are predefined, further commands can be registered. A symbol
    can be flagged as not taking a coordinate system (orientations do not).
    """

    def __init__(self):
        self._by_command: dict[str, str] = {}
        self._by_symbol: dict[str, str] = {}
        self._no_coordsys: set[str] = set()
        self.register("Pos", "p")
        self.register("Rot", "R", takes_coordsys=False)
        self.register("Pose", "X")

    def register(self, command: str, symbol: str, takes_coordsys: bool = True):
        if not re.match(r"^[A-Za-z]+$", command):
            raise ParseError(f"invalid command name: {command!r}")
        if command in RESERVED_SUFFIXES:
            raise ReservedName(f"command {command!r} is a reserved suffix word")
        if not _SYMBOL_RE.match(symbol) or symbol in RESERVED_SUFFIXES:
            raise ParseError(f"invalid symbol: {symbol!r}")
        self._by_command[command] = symbol
        # First registration wins the reverse mapping, like the predefined
        # \Pos/\Rot/\Pose commands keep p/R/X.
        self._by_symbol.setdefault(symbol, command)
        if not takes_coordsys:
            self._no_coordsys.add(symbol)

    def symbol_for(self, command: str) -> Optional[str]:
        return self._by_command.get(command)

    def command_for(self, symbol: str) -> Optional[str]:
        return self._by_symbol.get(symbol)

    def takes_coordsys(self, symbol: str) -> bool:
        return symbol not in self._no_coordsys

    def load_config(self, text: str):
        """Load ``CommandName symbol`` pairs, one per line.

        Blank lines and lines starting with ``#`` are skipped.
        """
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(f"config line {lineno}: expected 'Command symbol'")
            self.register(parts[0], parts[1])


DEFAULT_REGISTRY = CommandRegistry()

_COMMAND_RE = re.compile(
    r"""^\\(?P<name>[A-Za-z]+)
        (?:\[\\?(?P<accent>[A-Za-z]+)\])?
        (?P<groups>(?:\{[^{}]*\})*)
        (?:\\(?P<suffix>[A-Za-z]+))?$""",
    re.VERBOSE,
)


def parse_command(text: str, registry: CommandRegistry = DEFAULT_REGISTRY) -> QuantitySpec:
    """Parse a typeset command like ``\\Rot{s}{b}\\Inv`` into a QuantitySpec.

    Accent brackets accept both ``[dot]`` and ``[\\dot]``. Command names
    without a registry entry keep the name itself as the symbol.
    """
    m = _COMMAND_RE.match(text.strip())
    if m is None:
        raise ParseError(f"not a notation command: {text!r}")
    name = m.group("name")
    # The leading letters swallow a trailing suffix word when there are no
    # arguments in between, e.g. a literal "\PosTran" stays one name.
    suffix = m.group("suffix")
    if suffix is not None and suffix not in RESERVED_SUFFIXES:
        raise ParseError(f"unknown trailing command: \\{suffix}")
    accent = m.group("accent")
    if accent is not None and accent not in ACCENTS:
        raise BadAccent(f"unknown accent {accent!r}")
    groups = re.findall(r"\{([^{}]*)\}", m.group("groups"))
    if len(groups) > 3:
        raise ParseError(f"too many argument groups in {text!r}")
    for g in groups:
        check_frame_name(g)
    symbol = registry.symbol_for(name) or name
    fields = dict(zip(("subject", "basis", "coordsys"), groups))
    return QuantitySpec(symbol=symbol, accent=accent, suffix=suffix, **fields)


def to_variable_name(q: QuantitySpec) -> str:
    """Render a QuantitySpec as a source-code variable name.

    Accent names attach directly to the symbol; frames and the suffix follow
    in spoken order, separated by underscores.
    """
    parts = [q.symbol + (q.accent or "")]
    parts.extend(q.frames)
    if q.suffix:
        parts.append(q.suffix)
    return "_".join(parts)


def parse_variable_name(text: str) -> QuantitySpec:
    """Parse a variable name like ``pdot_s_b`` back into a QuantitySpec.

    Inverse of :func:`to_variable_name` on its image. The accent is the
    longest accent name trailing the first token that leaves a nonempty
    symbol; a reserved word is only legal as the final token.
    """
    if not text or text.startswith("_") or text.endswith("_") or "__" in text:
        raise ParseError(f"malformed variable name: {text!r}")
    tokens = text.split("_")
    head, rest = tokens[0], tokens[1:]
    suffix = None
    if rest and rest[-1] in RESERVED_SUFFIXES:
        suffix = rest.pop()
    if len(rest) > 3:
        raise ParseError(f"more than three frame fields in {text!r}")
    for t in rest:
        check_frame_name(t)
    accent = None
    for a in ACCENTS:
        if head.endswith(a) and len(head) > len(a):
            head, accent = head[: -len(a)], a
            break
    fields = dict(zip(("subject", "basis", "coordsys"), rest))
    return QuantitySpec(symbol=head, accent=accent, suffix=suffix, **fields)


def render_command(
    q: QuantitySpec,
    concise_mode: bool = False,
    registry: CommandRegistry = DEFAULT_REGISTRY,
) -> str:
    """Render a QuantitySpec as a typeset command.

    With ``concise_mode`` the coordinate-system group is omitted whenever it
    equals the basis. Symbols without a registered command are emitted as the
    command name itself. Accents are emitted without a backslash, matching
    the translation-table spelling; the parser accepts both.
    """
    name = registry.command_for(q.symbol) or q.symbol
    out = ["\\", name]
    if q.accent:
        out.append(f"[{q.accent}]")
    frames = list(q.frames)
    if concise_mode and q.coordsys is not None and q.coordsys == q.basis:
        frames = frames[:-1]
    out.extend(f"{{{f}}}" for f in frames)
    if q.suffix:
        out.append(f"\\{q.suffix}")
    return "".join(out)


def concise_form(
    q: QuantitySpec,
    ctx: NotationContext,
    registry: CommandRegistry = DEFAULT_REGISTRY,
) -> QuantitySpec:
    """Apply the maximal legal elision for the given context.

    Drops the coordinate system when it equals the basis, then the basis when
    the context has that single basis, then the subject when the context
    additionally has that single subject.
    """
    s, b, c = q.subject, q.basis, q.coordsys
    if c is not None and c == b:
        c = None
    if c is None and b is not None and ctx.bases == {b}:
        b = None
        if s is not None and ctx.subjects == {s}:
            s = None
    return replace(q, subject=s, basis=b, coordsys=c)


def expand_form(
    q: QuantitySpec,
    ctx: NotationContext,
    registry: CommandRegistry = DEFAULT_REGISTRY,
) -> QuantitySpec:
    """Recover the exhaustive form of a concise descriptor.

    A missing subject or basis requires the corresponding context set to be
    a singleton; a missing coordinate system expands to the basis, except for
    symbols that take none (orientations).
    """
    s, b, c = q.subject, q.basis, q.coordsys
    if s is None:
        if len(ctx.subjects) != 1:
            raise AmbiguousContext(
                f"cannot recover subject: context has {len(ctx.subjects)} subjects"
            )
        (s,) = ctx.subjects
    if b is None:
        if len(ctx.bases) != 1:
            raise AmbiguousContext(
                f"cannot recover basis: context has {len(ctx.bases)} bases"
            )
        (b,) = ctx.bases
    if c is None and registry.takes_coordsys(q.symbol):
        c = b
    return replace(q, subject=s, basis=b, coordsys=c)
