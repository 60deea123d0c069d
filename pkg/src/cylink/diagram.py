"""Slice-word model of unoriented framed tangles in the cylinder.

A diagram is a vertical stack of elementary slices read bottom to top:
crossings ``x<i>+/-`` of adjacent strands, cups/caps creating and closing
strand pairs, the cylinder twist ``t+/-`` on the leftmost strand, and
point/copoint slices where the leftmost strand begins or ends on the
cylinder axis.  Axis slices (twist, point, copoint) are only legal at the
leftmost position, next to the axis.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .braid import BraidWord

Slice = tuple


class DiagramError(ValueError):
    """Base class for slice-word errors."""


class WidthMismatch(DiagramError):
    """A slice or composition does not fit the current strand count."""


class BadPosition(DiagramError):
    """A slice position index is not valid at its local width."""


class AxisGeneratorNotLeftmost(DiagramError):
    """Twist/point/copoint claimed away from the leftmost strand."""


def cup(i: int) -> Slice:
    return ("cup", i)


def cap(i: int) -> Slice:
    return ("cap", i)


def cross(i: int, sign: int) -> Slice:
    return ("x", i, sign)


def twist(sign: int, pos: int = 1) -> Slice:
    return ("t", sign) if pos == 1 else ("t", sign, pos)


def point(pos: int = 1) -> Slice:
    return ("point",) if pos == 1 else ("point", pos)


def copoint(pos: int = 1) -> Slice:
    return ("copoint",) if pos == 1 else ("copoint", pos)


def slice_width_delta(s: Slice) -> int:
    kind = s[0]
    if kind == "cup":
        return 2
    if kind == "cap":
        return -2
    if kind == "point":
        return 1
    if kind == "copoint":
        return -1
    return 0


def check_slice(s: Slice, width: int) -> int:
    """Validate one slice at the given width; return the width above it."""
    kind = s[0]
    if kind == "cup":
        i = s[1]
        if not 1 <= i <= width + 1:
            raise BadPosition(f"cup at {i} invalid at width {width}")
        return width + 2
    if kind == "cap":
        i = s[1]
        if not 1 <= i <= width - 1:
            raise BadPosition(f"cap at {i} invalid at width {width}")
        return width - 2
    if kind == "x":
        i, sign = s[1], s[2]
        if sign not in (1, -1):
            raise DiagramError(f"bad crossing sign {sign}")
        if not 1 <= i <= width - 1:
            raise BadPosition(f"crossing at {i} invalid at width {width}")
        return width
    if kind == "t":
        if len(s) > 2 and s[2] != 1:
            raise AxisGeneratorNotLeftmost(f"twist claimed at position {s[2]}")
        if s[1] not in (1, -1):
            raise DiagramError(f"bad twist sign {s[1]}")
        if width < 1:
            raise WidthMismatch("twist needs at least one strand")
        return width
    if kind == "point":
        if len(s) > 1 and s[1] != 1:
            raise AxisGeneratorNotLeftmost(f"point claimed at position {s[1]}")
        return width + 1
    if kind == "copoint":
        if len(s) > 1 and s[1] != 1:
            raise AxisGeneratorNotLeftmost(f"copoint claimed at position {s[1]}")
        if width < 1:
            raise WidthMismatch("copoint needs at least one strand")
        return width - 1
    raise DiagramError(f"unknown slice kind {kind!r}")


@dataclass(frozen=True)
class TangleWord:
    """A composable stack of slices with explicit boundary widths."""

    width_in: int
    slices: tuple[Slice, ...] = ()
    width_out: int = field(default=-1)

    def __post_init__(self):
        if self.width_out == -1:
            w = self.width_in
            for s in self.slices:
                w += slice_width_delta(s)
            object.__setattr__(self, "width_out", w)

    def is_closed(self) -> bool:
        return self.width_in == 0 and self.width_out == 0


def validate(t: TangleWord) -> None:
    """Check all width and position invariants; raise at the first bad slice."""
    if t.width_in < 0:
        raise WidthMismatch("negative input width")
    w = t.width_in
    for n, s in enumerate(t.slices):
        try:
            w = check_slice(s, w)
        except DiagramError as exc:
            raise type(exc)(f"slice {n}: {exc}") from None
    if w != t.width_out:
        raise WidthMismatch(
            f"declared output width {t.width_out} but slices end at {w}"
        )


def identity(width: int) -> TangleWord:
    return TangleWord(width, ())


def compose(t1: TangleWord, t2: TangleWord) -> TangleWord:
    """Stack ``t2`` on top of ``t1``."""
    if t1.width_out != t2.width_in:
        raise WidthMismatch(f"{t1.width_out} != {t2.width_in}")
    return TangleWord(t1.width_in, t1.slices + t2.slices, t2.width_out)


def from_braid(word: BraidWord) -> TangleWord:
    """Interpret a braid word as a width-preserving tangle."""
    slices = []
    for idx, sign in word.letters:
        if idx == 0:
            slices.append(twist(sign))
        else:
            slices.append(cross(idx, sign))
    return TangleWord(word.strands, tuple(slices), word.strands)


def closure(word: BraidWord) -> TangleWord:
    """Annular trace closure: join top strand i to bottom strand i.

    Nested cups create pairs ``(i, 2n+1-i)``, the braid acts on the left
    block, and nested caps close each strand around the right side, away
    from the axis.
    """
    n = word.strands
    slices: list[Slice] = [cup(i) for i in range(1, n + 1)]
    slices.extend(from_braid(word).slices)
    slices.extend(cap(i) for i in range(n, 0, -1))
    return TangleWord(0, tuple(slices), 0)


def _support(s: Slice) -> tuple[int, int]:
    kind = s[0]
    if kind in ("cup", "cap"):
        return (s[1], s[1] + 1)
    if kind == "x":
        return (s[1], s[1] + 1)
    return (1, 1)


_KIND_RANK = {"cap": 0, "copoint": 1, "x": 2, "t": 3, "point": 4, "cup": 5}


def _sort_key(s: Slice):
    return (_support(s)[0], _KIND_RANK[s[0]], s[1:])


def simplify(t: TangleWord) -> TangleWord:
    """Cheap canonical form preserving the skein value.

    Cancels adjacent inverse crossing and twist pairs and sorts adjacent
    width-preserving slices with disjoint strand support into a fixed
    leftmost-first order.  Idempotent.
    """
    validate(t)
    slices = list(t.slices)
    changed = True
    while changed:
        changed = False
        # Cancel adjacent inverse pairs.
        out: list[Slice] = []
        for s in slices:
            if out:
                prev = s_prev = out[-1]
                if (
                    s[0] == "x"
                    and s_prev[0] == "x"
                    and s[1] == s_prev[1]
                    and s[2] == -s_prev[2]
                ) or (s[0] == "t" and s_prev[0] == "t" and s[1] == -s_prev[1]):
                    out.pop()
                    changed = True
                    continue
            out.append(s)
        slices = out
        # Bubble-sort width-preserving disjoint neighbours leftmost-first.
        for k in range(len(slices) - 1):
            a, b = slices[k], slices[k + 1]
            if slice_width_delta(a) != 0 or slice_width_delta(b) != 0:
                continue
            lo_a, hi_a = _support(a)
            lo_b, hi_b = _support(b)
            if hi_b < lo_a or lo_b > hi_a:
                if _sort_key(b) < _sort_key(a):
                    slices[k], slices[k + 1] = b, a
                    changed = True
    return TangleWord(t.width_in, tuple(slices), t.width_out)


# ---------------------------------------------------------------------------
# Text form
# ---------------------------------------------------------------------------

_SLICE_RE = re.compile(r"^(cup|cap)(\d+)$|^x(\d+)([+-])$|^t([+-])$|^(point|copoint)$")
_CLOSURE_RE = re.compile(r"^closure\((?P<word>[^,]*),\s*n\s*=\s*(?P<n>\d+)\)$")


def parse_diagram(text: str, width_in: int = 0) -> TangleWord:
    """Parse the textual slice form, e.g. ``"cup1; x1+; t+; cap1"``.

    The closed form ``closure(t0 t1, n=2)`` is also accepted.
    """
    from .braid import parse_word

    text = text.strip()
    m = _CLOSURE_RE.match(text)
    if m:
        return closure(parse_word(m.group("word"), int(m.group("n"))))
    slices: list[Slice] = []
    if text:
        for chunk in text.split(";"):
            token = chunk.strip()
            if not token:
                continue
            sm = _SLICE_RE.match(token)
            if not sm:
                raise DiagramError(f"bad slice token {token!r}")
            if sm.group(1):
                slices.append((sm.group(1), int(sm.group(2))))
            elif sm.group(3):
                slices.append(cross(int(sm.group(3)), 1 if sm.group(4) == "+" else -1))
            elif sm.group(5):
                slices.append(twist(1 if sm.group(5) == "+" else -1))
            else:
                slices.append((sm.group(6),))
    t = TangleWord(width_in, tuple(slices))
    validate(t)
    return t


def format_diagram(t: TangleWord) -> str:
    """Serialize back into the slice grammar."""
    chunks = []
    for s in t.slices:
        kind = s[0]
        if kind in ("cup", "cap"):
            chunks.append(f"{kind}{s[1]}")
        elif kind == "x":
            chunks.append(f"x{s[1]}{'+' if s[2] > 0 else '-'}")
        elif kind == "t":
            chunks.append(f"t{'+' if s[1] > 0 else '-'}")
        else:
            chunks.append(kind)
    return "; ".join(chunks)
