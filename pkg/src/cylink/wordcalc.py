"""Formal-word calculus for a strict tensor-category action.

Words are trees built from generator leaves ``[f]``, identity leaves
``[id_Y]``, an action node ``a * g`` applying a morphism label ``g`` of
the acting category, and composition ``a b``.  Seven invertible moves
generate the equivalence; every word normalizes to a product
``h_1 ... h_m`` whose factors are ``[f] * id_X`` or ``[id_Y] * g``, and
the move trace of the normalization is recorded and replayable.

Labels are opaque: object labels are tuples of atoms, morphism labels are
syntax trees over atoms with tensor/composition chains flattened and
identity parts dropped, so structural equality is the only equality used.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator, Optional

AObj = tuple  # tuple of atomic object labels; () is the tensor unit


class WordError(ValueError):
    """Base class for formal-word errors."""


class PatternMismatch(WordError):
    """A move does not apply at the requested position."""


class CompositionTypeError(WordError):
    """Source/target labels do not line up."""


# ---------------------------------------------------------------------------
# Morphism labels of the acting category
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AId:
    obj: AObj

    def __str__(self):
        return f"id[{','.join(self.obj)}]" if self.obj else "id1"


@dataclass(frozen=True)
class AAtom:
    name: str
    src: AObj
    tgt: AObj

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class ATens:
    parts: tuple

    def __str__(self):
        return "(" + " @ ".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class AComp:
    parts: tuple

    def __str__(self):
        return "(" + " . ".join(map(str, self.parts)) + ")"


def asrc(g) -> AObj:
    if isinstance(g, AId):
        return g.obj
    if isinstance(g, AAtom):
        return g.src
    if isinstance(g, ATens):
        out: tuple = ()
        for p in g.parts:
            out = out + asrc(p)
        return out
    if isinstance(g, AComp):
        return asrc(g.parts[-1])
    raise TypeError(f"not a morphism label: {g!r}")


def atgt(g) -> AObj:
    if isinstance(g, AId):
        return g.obj
    if isinstance(g, AAtom):
        return g.tgt
    if isinstance(g, ATens):
        out: tuple = ()
        for p in g.parts:
            out = out + atgt(p)
        return out
    if isinstance(g, AComp):
        return atgt(g.parts[0])
    raise TypeError(f"not a morphism label: {g!r}")


def atens(*gs):
    """Tensor of morphism labels, flattened, with identity parts fused."""
    parts: list = []
    for g in gs:
        items = g.parts if isinstance(g, ATens) else (g,)
        for item in items:
            if isinstance(item, AId) and not item.obj:
                continue
            if parts and isinstance(parts[-1], AId) and isinstance(item, AId):
                parts[-1] = AId(parts[-1].obj + item.obj)
            else:
                parts.append(item)
    if not parts:
        return AId(())
    if len(parts) == 1:
        return parts[0]
    return ATens(tuple(parts))


def acomp(*gs):
    """Composition of morphism labels (left acts last), identities dropped."""
    parts: list = []
    for g in gs:
        items = g.parts if isinstance(g, AComp) else (g,)
        for item in items:
            if isinstance(item, AId):
                continue
            parts.append(item)
    for left, right in zip(parts, parts[1:]):
        if asrc(left) != atgt(right):
            raise CompositionTypeError(
                f"cannot compose {left} after {right}"
            )
    if not parts:
        objs = [g.obj for g in gs if isinstance(g, AId)]
        if objs and any(o != objs[0] for o in objs):
            raise CompositionTypeError("identity labels disagree")
        return AId(objs[0] if objs else ())
    if len(parts) == 1:
        return parts[0]
    return AComp(tuple(parts))


def comp_splits(g) -> list[tuple]:
    """All ways to write ``g`` as ``g_left . g_right`` (including trivial)."""
    out = [(AId(atgt(g)), g), (g, AId(asrc(g)))]
    if isinstance(g, AComp):
        for k in range(1, len(g.parts)):
            out.append((acomp(*g.parts[:k]), acomp(*g.parts[k:])))
    return out


def tens_splits(g) -> list[tuple]:
    """All ways to write ``g`` as ``g_left (x) g_right`` (nontrivial)."""
    out = []
    if isinstance(g, ATens):
        for k in range(1, len(g.parts)):
            out.append((atens(*g.parts[:k]), atens(*g.parts[k:])))
    if isinstance(g, AId) and len(g.obj) >= 2:
        for k in range(1, len(g.obj)):
            out.append((AId(g.obj[:k]), AId(g.obj[k:])))
    return out


# ---------------------------------------------------------------------------
# Formal words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BObj:
    """An object of the acted-on category: a base atom with tensor factors."""

    base: str
    factors: AObj = ()

    def extend(self, more: AObj) -> "BObj":
        return BObj(self.base, self.factors + tuple(more))

    def __str__(self):
        return "*".join((self.base,) + self.factors)


@dataclass(frozen=True)
class Gen:
    name: str
    src: BObj
    tgt: BObj

    def __str__(self):
        return f"[{self.name}]"


@dataclass(frozen=True)
class IdW:
    obj: BObj

    def __str__(self):
        return f"[id {self.obj}]"


@dataclass(frozen=True)
class Act:
    word: Any
    label: Any

    def __str__(self):
        return f"({self.word} * {self.label})"


@dataclass(frozen=True)
class Comp:
    left: Any  # applied second
    right: Any  # applied first

    def __str__(self):
        return f"({self.left} {self.right})"


FormalWord = Any  # Gen | IdW | Act | Comp


def wsrc(w) -> BObj:
    if isinstance(w, Gen):
        return w.src
    if isinstance(w, IdW):
        return w.obj
    if isinstance(w, Act):
        return wsrc(w.word).extend(asrc(w.label))
    if isinstance(w, Comp):
        return wsrc(w.right)
    raise TypeError(f"not a formal word: {w!r}")


def wtgt(w) -> BObj:
    if isinstance(w, Gen):
        return w.tgt
    if isinstance(w, IdW):
        return w.obj
    if isinstance(w, Act):
        return wtgt(w.word).extend(atgt(w.label))
    if isinstance(w, Comp):
        return wtgt(w.left)
    raise TypeError(f"not a formal word: {w!r}")


def make_comp(left, right) -> Comp:
    if wsrc(left) != wtgt(right):
        raise CompositionTypeError(
            f"cannot compose {left} after {right}: "
            f"{wsrc(left)} != {wtgt(right)}"
        )
    return Comp(left, right)


def subwords(w) -> frozenset:
    """The recursively defined set of sub-words (and acting labels)."""
    if isinstance(w, (Gen, IdW)):
        return frozenset([w])
    if isinstance(w, Act):
        return frozenset([w, w.label]) | subwords(w.word)
    if isinstance(w, Comp):
        return frozenset([w]) | subwords(w.left) | subwords(w.right)
    raise TypeError(f"not a formal word: {w!r}")


# ---------------------------------------------------------------------------
# Moves
# ---------------------------------------------------------------------------

MOVE_NAMES = (
    "assoc",        # (ab)c <-> a(bc)
    "left_id",      # [id] a <-> a
    "right_id",     # a [id] <-> a
    "unit_act",     # a * id1 <-> a
    "id_split",     # [id_{Y*X}] <-> [id_Y] * id_X
    "act_merge",    # (a*g)*g' <-> a*(g (x) g')
    "interchange",  # (a*g)(a'*g') <-> (aa') * (g . g')
)


@dataclass(frozen=True)
class Move:
    rule: str
    path: tuple[int, ...] = ()
    forward: bool = True
    param: Any = None


def _child_count(w) -> int:
    if isinstance(w, Comp):
        return 2
    if isinstance(w, Act):
        return 1
    return 0


def _get(w, path):
    for step in path:
        if isinstance(w, Comp):
            w = w.left if step == 0 else w.right
        elif isinstance(w, Act) and step == 0:
            w = w.word
        else:
            raise PatternMismatch(f"bad path step {step} at {w}")
    return w


def _put(w, path, new):
    if not path:
        return new
    step = path[0]
    if isinstance(w, Comp):
        if step == 0:
            return Comp(_put(w.left, path[1:], new), w.right)
        return Comp(w.left, _put(w.right, path[1:], new))
    if isinstance(w, Act) and step == 0:
        return Act(_put(w.word, path[1:], new), w.label)
    raise PatternMismatch(f"bad path step {step} at {w}")


def _apply_local(node, move: Move):
    rule, fwd, param = move.rule, move.forward, move.param
    if rule == "assoc":
        if fwd:
            if isinstance(node, Comp) and isinstance(node.left, Comp):
                return Comp(node.left.left, Comp(node.left.right, node.right))
        else:
            if isinstance(node, Comp) and isinstance(node.right, Comp):
                return Comp(Comp(node.left, node.right.left), node.right.right)
        raise PatternMismatch(f"assoc does not apply at {node}")
    if rule == "left_id":
        if fwd:
            if isinstance(node, Comp) and isinstance(node.left, IdW):
                return node.right
        else:
            return Comp(IdW(wtgt(node)), node)
        raise PatternMismatch(f"left_id does not apply at {node}")
    if rule == "right_id":
        if fwd:
            if isinstance(node, Comp) and isinstance(node.right, IdW):
                return node.left
        else:
            return Comp(node, IdW(wsrc(node)))
        raise PatternMismatch(f"right_id does not apply at {node}")
    if rule == "unit_act":
        if fwd:
            if (isinstance(node, Act) and isinstance(node.label, AId)
                    and node.label.obj == ()):
                return node.word
        else:
            return Act(node, AId(()))
        raise PatternMismatch(f"unit_act does not apply at {node}")
    if rule == "id_split":
        if fwd:
            if isinstance(node, IdW) and node.obj.factors:
                k = param if param is not None else len(node.obj.factors) - 0
                factors = node.obj.factors
                if not 0 < k <= len(factors):
                    raise PatternMismatch("bad id_split position")
                return Act(IdW(BObj(node.obj.base, factors[:len(factors) - k])),
                           AId(factors[len(factors) - k:]))
        else:
            if isinstance(node, Act) and isinstance(node.word, IdW) \
                    and isinstance(node.label, AId):
                return IdW(node.word.obj.extend(node.label.obj))
        raise PatternMismatch(f"id_split does not apply at {node}")
    if rule == "act_merge":
        if fwd:
            if isinstance(node, Act) and isinstance(node.word, Act):
                return Act(node.word.word, atens(node.word.label, node.label))
        else:
            if isinstance(node, Act) and param is not None:
                g_left, g_right = param
                if atens(g_left, g_right) == node.label:
                    return Act(Act(node.word, g_left), g_right)
        raise PatternMismatch(f"act_merge does not apply at {node}")
    if rule == "interchange":
        if fwd:
            if (isinstance(node, Comp) and isinstance(node.left, Act)
                    and isinstance(node.right, Act)):
                a, g = node.left.word, node.left.label
                a2, g2 = node.right.word, node.right.label
                try:
                    return Act(make_comp(a, a2), acomp(g, g2))
                except CompositionTypeError:
                    raise PatternMismatch(
                        f"interchange factors do not align at {node}"
                    ) from None
        else:
            if isinstance(node, Act) and isinstance(node.word, Comp) \
                    and param is not None:
                g_left, g_right = param
                if acomp(g_left, g_right) == node.label:
                    return make_comp(Act(node.word.left, g_left),
                                     Act(node.word.right, g_right))
        raise PatternMismatch(f"interchange does not apply at {node}")
    raise PatternMismatch(f"unknown rule {rule!r}")


def apply_move(w, move: Move):
    """Apply one move at its path; raises PatternMismatch if it does not fit."""
    node = _get(w, move.path)
    return _put(w, move.path, _apply_local(node, move))


def reverse_move(before, move: Move) -> Move:
    """The move undoing ``move`` when applied to its result."""
    node = _get(before, move.path)
    rule, fwd = move.rule, move.forward
    param = None
    if rule == "id_split" and not fwd:
        param = len(node.label.obj)
    elif rule == "act_merge" and fwd:
        param = (node.word.label, node.label)
    elif rule == "interchange" and fwd:
        param = (node.left.label, node.right.label)
    return Move(rule, move.path, not fwd, param)


def _local_moves(node, path) -> Iterator[Move]:
    if isinstance(node, Comp):
        if isinstance(node.left, Comp):
            yield Move("assoc", path, True)
        if isinstance(node.right, Comp):
            yield Move("assoc", path, False)
        if isinstance(node.left, IdW):
            yield Move("left_id", path, True)
        if isinstance(node.right, IdW):
            yield Move("right_id", path, True)
        if isinstance(node.left, Act) and isinstance(node.right, Act):
            yield Move("interchange", path, True)
    if isinstance(node, Act):
        if isinstance(node.label, AId) and node.label.obj == ():
            yield Move("unit_act", path, True)
        if isinstance(node.word, Act):
            yield Move("act_merge", path, True)
        if isinstance(node.word, IdW) and isinstance(node.label, AId):
            yield Move("id_split", path, False)
        for split in tens_splits(node.label):
            yield Move("act_merge", path, False, split)
        if isinstance(node.word, Comp):
            for split in comp_splits(node.label):
                yield Move("interchange", path, False, split)
    if isinstance(node, IdW) and node.obj.factors:
        for k in range(1, len(node.obj.factors) + 1):
            yield Move("id_split", path, True, k)
    yield Move("left_id", path, False)
    yield Move("right_id", path, False)
    yield Move("unit_act", path, False)


def moves(w) -> list[Move]:
    """All moves applicable anywhere in the word."""
    out: list[Move] = []

    def walk(node, path):
        out.extend(_local_moves(node, path))
        if isinstance(node, Comp):
            walk(node.left, path + (0,))
            walk(node.right, path + (1,))
        elif isinstance(node, Act):
            walk(node.word, path + (0,))

    walk(w, ())
    return out


# ---------------------------------------------------------------------------
# Normal form
# ---------------------------------------------------------------------------


def is_h_factor(w) -> bool:
    """``[f] * id_X`` or ``[id_Y] * g``."""
    return isinstance(w, Act) and (
        (isinstance(w.word, Gen) and isinstance(w.label, AId))
        or isinstance(w.word, IdW)
    )


def is_normal_form(w) -> bool:
    """An identity leaf (empty product) or a left-bracketed h-factor chain."""
    if isinstance(w, IdW):
        return True
    while isinstance(w, Comp):
        if not is_h_factor(w.right):
            return False
        w = w.left
    return is_h_factor(w)


class _Normalizer:
    def __init__(self):
        self.trace: list[Move] = []
        self.word = None

    def step(self, move: Move):
        self.word = apply_move(self.word, move)
        self.trace.append(move)

    def run(self, w):
        self.word = w
        self._norm(())
        return self.word, self.trace

    # Normalize the subword at ``path`` in place.

    def _norm(self, path):
        node = _get(self.word, path)
        if isinstance(node, Gen):
            self.step(Move("unit_act", path, False))
            return
        if isinstance(node, IdW):
            if node.obj.factors:
                pass  # an identity is already an empty product
            return
        if isinstance(node, Comp):
            self._norm(path + (0,))
            self._norm(path + (1,))
            self._combine(path)
            return
        if isinstance(node, Act):
            self._norm(path + (0,))
            inner = _get(self.word, path + (0,))
            label = _get(self.word, path).label
            if isinstance(inner, IdW):
                if isinstance(label, AId):
                    self.step(Move("id_split", path, False))
                return
            # inner is a normalized chain h_1 ... h_m; split the action
            # into (chain * id) ([id] * g) and distribute the identity.
            if not isinstance(label, AId):
                self.step(Move("right_id", path + (0,), False))
                self.step(Move(
                    "interchange", path, False, (AId(atgt(label)), label)
                ))
                self._distribute_id(path + (0,))
                self._norm(path + (1,))
                self._combine(path)
            else:
                self._distribute_id(path)
            return
        raise TypeError(f"not a formal word: {node!r}")

    def _distribute_id(self, path):
        """Turn ``(h_1 ... h_m) * id_X`` into a chain of h-factors."""
        node = _get(self.word, path)
        assert isinstance(node, Act) and isinstance(node.label, AId)
        label = node.label
        if isinstance(node.word, IdW):
            self.step(Move("id_split", path, False))
            return
        if isinstance(node.word, Comp):
            self.step(Move("interchange", path, False, (label, AId(label.obj))))
            self._distribute_id(path + (0,))
            self._distribute_id(path + (1,))
            self._combine(path)
            return
        # A single h-factor under an identity action: fuse the labels.
        assert isinstance(node.word, Act)
        self.step(Move("act_merge", path, True))
        inner = _get(self.word, path)
        if isinstance(inner.word, Gen) and not isinstance(inner.label, AId):
            raise WordError("generator factor lost its identity label")

    def _combine(self, path):
        """Flatten ``Comp(normal, normal)`` into one left chain."""
        node = _get(self.word, path)
        assert isinstance(node, Comp)
        if isinstance(node.left, IdW):
            self.step(Move("left_id", path, True))
            return
        if isinstance(node.right, IdW):
            self.step(Move("right_id", path, True))
            return
        # Rotate right-chains up: a (b c) -> (a b) c.
        while isinstance(_get(self.word, path).right, Comp):
            self.step(Move("assoc", path, False))
            self._combine(path + (0,))


def normalize(w) -> tuple[FormalWord, list[Move]]:
    """Normal form plus the replayable move trace reaching it."""
    norm, trace = _Normalizer().run(w)
    if not is_normal_form(norm):
        raise WordError(f"normalization produced a non-normal word: {norm}")
    return norm, trace


def replay(w, trace: list[Move]):
    """Apply a move trace; the certificate check for normalize/equivalence."""
    for move in trace:
        w = apply_move(w, move)
    return w


# ---------------------------------------------------------------------------
# Bounded equivalence search
# ---------------------------------------------------------------------------


def equivalent_bounded(w1, w2, depth: int, *, max_states: int = 20000):
    """Bidirectional breadth-first search over moves, up to ``depth`` total.

    Returns ``("equivalent", certificate)`` with a verified move sequence
    from ``w1`` to ``w2``, or ``("unknown", None)``.  Never returns a false
    positive: the certificate is replayed before being returned.
    """
    if depth < 0:
        raise WordError("depth must be nonnegative")
    if w1 == w2:
        return ("equivalent", [])
    fwd: dict = {w1: []}
    bwd: dict = {w2: []}
    frontier_f = [w1]
    frontier_b = [w2]
    used = 0
    states = 2

    def certificate(meet):
        path1 = fwd[meet]
        path2 = bwd[meet]
        # Replay the backward path from w2 to the meeting word, recording
        # the words it passes through, then reverse each move.
        cur = w2
        steps = []
        for move in path2:
            steps.append((cur, move))
            cur = apply_move(cur, move)
        back = [reverse_move(word_before, move)
                for word_before, move in reversed(steps)]
        cert = list(path1) + back
        if replay(w1, cert) != w2:
            raise WordError("internal error: certificate failed to replay")
        return cert

    while used < depth and (frontier_f or frontier_b):
        expand_forward = len(frontier_f) <= len(frontier_b)
        frontier = frontier_f if expand_forward else frontier_b
        table = fwd if expand_forward else bwd
        other = bwd if expand_forward else fwd
        new_frontier = []
        for word in frontier:
            for move in moves(word):
                try:
                    nxt = apply_move(word, move)
                except (PatternMismatch, CompositionTypeError):
                    continue
                if nxt in table:
                    continue
                table[nxt] = table[word] + [move]
                states += 1
                if nxt in other:
                    return ("equivalent", certificate(nxt))
                if states > max_states:
                    return ("unknown", None)
                new_frontier.append(nxt)
        if expand_forward:
            frontier_f = new_frontier
        else:
            frontier_b = new_frontier
        used += 1
    return ("unknown", None)
