"""Skein-relation engine for closed cylinder diagrams.

Evaluates a closed diagram to an exact element of the coefficient ring by
terminating rewriting: crossings are removed by kink/curl rules, planar
slides, and Kauffman-style crossing switches guided by a descending
traversal; twist powers are reduced into the span of {1, twist,
point-copoint insertion}; pointed arcs and free circles are extracted as
their scalar values.  All rule coefficients come from a verified parameter
table, and two independent site-selection strategies are provided so that
strategy independence can be tested.

All values are immutable; a fresh evaluator owns its own memo table, whose
entries are immutable once inserted, so concurrent readers are safe.
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass
from typing import Optional

from .braid import BraidWord, crossing_exponent_sum
from .diagram import TangleWord, closure, simplify, validate
from .ring import LaurentPoly, ParamTable, table_verified


class SkeinError(ValueError):
    """Base class for evaluation errors."""


class NonClosedDiagram(SkeinError):
    """Evaluation is defined for closed diagrams only."""


class ResourceLimit(SkeinError):
    """The configured term/size budget was exceeded."""


class UnverifiedParamTable(SkeinError):
    """Coefficients must come from a table passing all identities."""


class EngineStuck(RuntimeError):
    """No rewrite applies; indicates a gap in the rule set."""


@dataclass(frozen=True)
class Budget:
    """Resource budget for one evaluation call."""

    max_steps: int = 500_000
    max_slices: int = 600


@dataclass(frozen=True)
class RewriteRule:
    """Descriptive record of one local rewrite of the engine."""

    rule_id: str
    description: str
    coefficients: tuple[tuple[str, LaurentPoly], ...] = ()


def rule_set(table: ParamTable) -> list[RewriteRule]:
    """The rewrite rules with their exact coefficients from ``table``.

    Descriptive only; the evaluator implements the same rules internally.
    """
    if not table_verified(table):
        raise UnverifiedParamTable("parameter table fails its identities")
    one = LaurentPoly.one()
    lam = table["lambda"]
    lam_inv = lam.inverse()
    delta = table["delta"]
    alpha = table["alpha"]
    alpha_inv = alpha.inverse()
    beta = table["beta"]
    gamma = table["gamma"]
    eps = table["epsilon"]
    mu = table["mu"]
    nu = table["nu"]
    x0 = table["x0"]
    return [
        RewriteRule(
            "SK1+", "switch a positive crossing",
            (("switched", one), ("identity smoothing", delta),
             ("cap-cup smoothing", -delta)),
        ),
        RewriteRule(
            "SK1-", "switch a negative crossing",
            (("switched", one), ("identity smoothing", -delta),
             ("cap-cup smoothing", delta)),
        ),
        RewriteRule(
            "SK2", "remove a kink at a cup or cap",
            (("positive kink", lam), ("negative kink", lam_inv)),
        ),
        RewriteRule("SK3", "null-homotopic circle", (("value", table["A0"]),)),
        RewriteRule(
            "SK4", "expand an inverse twist",
            (("twist", alpha), ("identity", beta), ("point pair", gamma)),
        ),
        RewriteRule(
            "SK4'", "reduce a double twist",
            (("identity", alpha_inv), ("twist", -(alpha_inv * beta)),
             ("point pair", -(alpha_inv * gamma))),
        ),
        RewriteRule("SK5", "pointed circle", (("value", x0),)),
        RewriteRule("SK6", "doubly-pointed wrapped circle",
                    (("value", table["x0p"]),)),
        RewriteRule("SK7", "winding +1 circle", (("value", table["A1"]),)),
        RewriteRule("SK8", "winding -1 circle", (("value", table["Am1"]),)),
        RewriteRule(
            "SK9", "point pair past a positive crossing",
            (("identity", eps), ("twist", mu), ("point pair", nu)),
        ),
        RewriteRule(
            "SK9-", "point pair past a negative crossing",
            (("identity", eps - delta * x0), ("twist", mu),
             ("point pair", nu + delta)),
        ),
        RewriteRule("ABSORB", "twist absorbed by an adjacent point/copoint",
                    (("value", one),)),
    ]


# ---------------------------------------------------------------------------
# Adjacent-slice commutation with index shifts
# ---------------------------------------------------------------------------


def swap_adj(a: tuple, b: tuple) -> Optional[tuple[tuple, tuple]]:
    """If stacking ``a`` then ``b`` equals ``b'`` then ``a'``, return them.

    Only genuinely disjoint slices commute; overlapping pairs (shared
    strands, axis events) return ``None`` and are handled by rewrite rules.
    """
    ka, kb = a[0], b[0]
    if ka == "cup":
        i = a[1]
        if kb == "cup":
            j = b[1]
            if j <= i:
                return (("cup", j), ("cup", i + 2))
            if j >= i + 2:
                return (("cup", j - 2), ("cup", i))
            return None
        if kb == "cap":
            j = b[1]
            if j + 1 < i:
                return (("cap", j), ("cup", i - 2))
            if j > i + 1:
                return (("cap", j - 2), ("cup", i))
            return None
        if kb == "x":
            j, s = b[1], b[2]
            if j + 1 < i:
                return (("x", j, s), ("cup", i))
            if j > i + 1:
                return (("x", j - 2, s), ("cup", i))
            return None
        if kb == "t":
            return (b, a) if i >= 2 else None
        if kb == "point":
            return (b, ("cup", i + 1))
        if kb == "copoint":
            return (b, ("cup", i - 1)) if i >= 2 else None
    elif ka == "cap":
        i = a[1]
        if kb == "cup":
            j = b[1]
            if j <= i - 1:
                return (("cup", j), ("cap", i + 2))
            return (("cup", j + 2), ("cap", i))
        if kb == "cap":
            j = b[1]
            if j + 1 < i:
                return (("cap", j), ("cap", i - 2))
            if j >= i:
                return (("cap", j + 2), ("cap", i))
            return None
        if kb == "x":
            j, s = b[1], b[2]
            if j + 1 < i:
                return (("x", j, s), ("cap", i))
            if j >= i:
                return (("x", j + 2, s), ("cap", i))
            return None
        if kb == "t":
            return (b, a) if i >= 2 else None
        if kb == "point":
            return (b, ("cap", i + 1))
        if kb == "copoint":
            return (b, ("cap", i - 1)) if i >= 2 else None
    elif ka == "x":
        i, s = a[1], a[2]
        if kb == "cup":
            j = b[1]
            if j <= i:
                return (("cup", j), ("x", i + 2, s))
            if j >= i + 2:
                return (("cup", j), ("x", i, s))
            return None
        if kb == "cap":
            j = b[1]
            if j <= i - 2:
                return (("cap", j), ("x", i - 2, s))
            if j >= i + 2:
                return (("cap", j), ("x", i, s))
            return None
        if kb == "x":
            j = b[1]
            if abs(j - i) >= 2:
                return (b, a)
            return None
        if kb == "t":
            return (b, a) if i >= 2 else None
        if kb == "point":
            return (b, ("x", i + 1, s))
        if kb == "copoint":
            return (b, ("x", i - 1, s)) if i >= 2 else None
    elif ka == "t":
        if kb in ("cup", "cap", "x") and b[1] >= 2:
            return (b, a)
        return None
    elif ka == "point":
        if kb == "cup" and b[1] >= 2:
            return (("cup", b[1] - 1), a)
        if kb == "cap" and b[1] >= 2:
            return (("cap", b[1] - 1), a)
        if kb == "x" and b[1] >= 2:
            return (("x", b[1] - 1, b[2]), a)
        return None
    elif ka == "copoint":
        if kb == "cup":
            return (("cup", b[1] + 1), a)
        if kb == "cap":
            return (("cap", b[1] + 1), a)
        if kb == "x":
            return (("x", b[1] + 1, b[2]), a)
        return None
    return None


def _pack(slices: tuple, idxs: list[int]) -> Optional[list]:
    """Bubble the given slices (in order) adjacent at the first index."""
    s = list(slices)
    base = idxs[0]
    for k, j in enumerate(idxs[1:], start=1):
        target = base + k
        jj = j
        while jj > target:
            swapped = swap_adj(s[jj - 1], s[jj])
            if swapped is None:
                return None
            s[jj - 1], s[jj] = swapped
            jj -= 1
    return s


# ---------------------------------------------------------------------------
# Curve tracing
# ---------------------------------------------------------------------------


class _Trace:
    """Strand- and component-structure of a closed slice word."""

    __slots__ = ("birth", "death", "events", "crossings", "parent", "n")

    def __init__(self, slices):
        self.birth = {}
        self.death = {}
        self.events = {}
        self.crossings = {}
        self.parent = {}
        pos: list[int] = []
        n = 0
        for idx, s in enumerate(slices):
            kind = s[0]
            if kind == "cup":
                i = s[1]
                a, b = n, n + 1
                n += 2
                self.events[a] = []
                self.events[b] = []
                self.parent[a] = a
                self.parent[b] = b
                self.birth[a] = (idx, "cup", 0, b)
                self.birth[b] = (idx, "cup", 1, a)
                pos[i - 1:i - 1] = [a, b]
                self._union(a, b)
            elif kind == "cap":
                i = s[1]
                a, b = pos[i - 1], pos[i]
                self.death[a] = (idx, "cap", 0, b)
                self.death[b] = (idx, "cap", 1, a)
                del pos[i - 1:i + 1]
                self._union(a, b)
            elif kind == "x":
                i, sg = s[1], s[2]
                a, b = pos[i - 1], pos[i]
                self.events[a].append((idx, "x", 0, sg, b))
                self.events[b].append((idx, "x", 1, sg, a))
                self.crossings[idx] = (a, b, sg)
                pos[i - 1], pos[i] = b, a
            elif kind == "t":
                a = pos[0]
                self.events[a].append((idx, "t", s[1], None, None))
            elif kind == "point":
                a = n
                n += 1
                self.events[a] = []
                self.parent[a] = a
                self.birth[a] = (idx, "point", 0, None)
                pos[0:0] = [a]
            elif kind == "copoint":
                a = pos[0]
                self.death[a] = (idx, "copoint", 0, None)
                del pos[0]
        self.n = n
        if pos:
            raise NonClosedDiagram("strands left open at the top")

    def _find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def _union(self, x: int, y: int) -> None:
        rx, ry = self._find(x), self._find(y)
        if rx != ry:
            self.parent[ry] = rx

    def components(self) -> dict[int, list[int]]:
        comps: dict[int, list[int]] = {}
        for sid in range(self.n):
            comps.setdefault(self._find(sid), []).append(sid)
        return comps

    def first_event(self, sid: int):
        evs = self.events[sid]
        return evs[0] if evs else None

    def last_event(self, sid: int):
        evs = self.events[sid]
        return evs[-1] if evs else None

    def next_on_curve(self, sid: int, idx: int, forward: bool = True):
        """First thing met walking along the curve from an event.

        Starting on strand ``sid`` just past slice ``idx`` (toward the
        death end when ``forward``), walk through cups and caps until an
        event, an axis endpoint, or the starting point again is reached.
        Returns ``("event", e, strand)``, ``("end", kind)`` or ``("loop",)``.
        """
        cur = sid
        up = forward
        bound = idx
        start = (sid, idx)
        guard = 0
        while True:
            guard += 1
            if guard > 100000:
                raise EngineStuck("runaway curve walk")
            if up:
                for e in self.events[cur]:
                    if e[0] > bound:
                        if (cur, e[0]) == start:
                            return ("loop",)
                        return ("event", e, cur)
                end = self.death[cur]
                if end[1] == "copoint":
                    return ("end", "copoint")
                cur, up, bound = end[3], False, end[0]
            else:
                for e in reversed(self.events[cur]):
                    if e[0] < bound:
                        if (cur, e[0]) == start:
                            return ("loop",)
                        return ("event", e, cur)
                end = self.birth[cur]
                if end[1] == "point":
                    return ("end", "point")
                cur, up, bound = end[3], True, end[0]

    def next_event_after(self, sid: int, idx: int):
        for e in self.events[sid]:
            if e[0] > idx:
                return e
        return None

    def prev_event_before(self, sid: int, idx: int):
        out = None
        for e in self.events[sid]:
            if e[0] < idx:
                out = e
            else:
                break
        return out


# ---------------------------------------------------------------------------
# The evaluator
# ---------------------------------------------------------------------------


_UP, _DOWN = 0, 1


class Evaluator:
    """Exact skein evaluation with a shared memo table.

    ``strategy`` is ``"priority"`` (a fixed deterministic rule order) or
    ``"random"`` (seeded random choice among all applicable rewrites);
    both give identical results, which the test suite checks.
    """

    def __init__(self, table: ParamTable, *, strategy: str = "priority",
                 seed: int = 0, budget: Budget | None = None):
        if not table_verified(table):
            raise UnverifiedParamTable(
                "refusing to evaluate with a table that fails its identities"
            )
        if strategy not in ("priority", "random"):
            raise SkeinError(f"unknown strategy {strategy!r}")
        self.table = table
        self.strategy = strategy
        self.budget = budget or Budget()
        self._rng = _random.Random(seed)
        self._memo: dict[tuple, LaurentPoly] = {}
        self._steps = 0

        one = LaurentPoly.one()
        self._one = one
        self._zero = LaurentPoly.zero()
        self._lam = table["lambda"]
        self._lam_inv = self._lam.inverse()
        self._delta = table["delta"]
        self._alpha = table["alpha"]
        self._alpha_inv = self._alpha.inverse()
        self._beta = table["beta"]
        self._gamma = table["gamma"]
        self._A0 = table["A0"]
        self._A1 = table["A1"]
        self._Am1 = table["Am1"]
        self._x0 = table["x0"]
        self._x0p = table["x0p"]
        self._eps = table["epsilon"]
        self._mu = table["mu"]
        self._nu = table["nu"]

    # -- public API ----------------------------------------------------

    def evaluate(self, t: TangleWord) -> LaurentPoly:
        """Exact value of a closed diagram."""
        validate(t)
        if not t.is_closed():
            raise NonClosedDiagram(
                f"diagram has boundary widths {t.width_in} -> {t.width_out}"
            )
        self._steps = 0
        return self._value(t.slices)

    def invariant(self, word: BraidWord) -> LaurentPoly:
        """Writhe-normalized closure value: an invariant of the braid class.

        The normalization divides by lambda to the exponent sum of the
        ordinary (index >= 1) letters only; the axis twist count is part
        of the invariant, not of the framing normalization.
        """
        e = crossing_exponent_sum(word)
        return (self._lam ** (-e)) * self.evaluate(closure(word))

    # -- core loop ------------------------------------------------------

    def _simp(self, slices: tuple) -> tuple:
        return simplify(TangleWord(0, tuple(slices), 0)).slices

    def _value(self, slices) -> LaurentPoly:
        coef = self._one
        cur = self._simp(tuple(slices))
        while True:
            if not cur:
                return coef
            hit = self._memo.get(cur)
            if hit is not None:
                return coef * hit
            action = self._find_action(cur)
            if action is None:
                raise EngineStuck(
                    "no rewrite applies to: "
                    + "; ".join(map(str, cur))
                )
            if isinstance(action, tuple) and action[0] == "split":
                total = self._value(action[1]) * self._value(action[2])
                self._memo[cur] = total
                return coef * total
            branches = action
            if len(branches) == 1:
                c, w = branches[0]
                coef = coef * c
                cur = self._simp(w)
                continue
            total = self._zero
            for c, w in branches:
                total = total + c * self._value(w)
            self._memo[cur] = total
            return coef * total

    # -- rule search -----------------------------------------------------

    def _find_action(self, slices: tuple):
        self._steps += 1
        if self._steps > self.budget.max_steps:
            raise ResourceLimit(
                f"evaluation exceeded {self.budget.max_steps} rewrite steps"
            )
        if len(slices) > self.budget.max_slices:
            raise ResourceLimit(
                f"diagram grew past {self.budget.max_slices} slices"
            )
        tr = _Trace(slices)
        # Crossing-removing and structural rules run first; the twist
        # rules that insert point pairs are deferred until the diagram is
        # crossing-free, so points only ever meet crossings in diagrams
        # that were given that way (where the point/crossing rule applies).
        finders = (
            self._find_cancel_x,
            self._find_cancel_t,
            self._find_absorb,
            self._find_kink,
            self._find_capkink,
            self._find_twisted_kink,
            self._find_curl,
            self._find_snake,
            self._find_circle,
            self._find_arc,
            self._find_whole,
            self._find_sk9,
            self._find_slide_cup,
            self._find_slide_cap,
            self._find_split,
            self._find_via_orbit,
        )
        late = (self._find_merge_t, self._find_sk4)
        if self.strategy == "priority":
            for finder in finders:
                action = finder(slices, tr)
                if action is not None:
                    return action
            if tr.crossings:
                return self._find_switch(slices, tr)
            for finder in late:
                action = finder(slices, tr)
                if action is not None:
                    return action
            return None
        candidates: list = []
        for finder in finders:
            finder(slices, tr, collect=candidates)
        if candidates:
            return self._rng.choice(candidates)
        if tr.crossings:
            return self._find_switch(slices, tr)
        for finder in late:
            finder(slices, tr, collect=candidates)
        if candidates:
            return self._rng.choice(candidates)
        return None

    # Every finder supports two modes: return the first action (priority)
    # or append all applicable actions to ``collect`` and return None.

    def _emit(self, collect, action):
        if collect is None:
            return action
        collect.append(action)
        return None

    def _find_cancel_x(self, slices, tr: _Trace, collect=None):
        for idx2, (a, b, s2) in sorted(tr.crossings.items()):
            pa = tr.prev_event_before(a, idx2)
            pb = tr.prev_event_before(b, idx2)
            if pa is None or pb is None:
                continue
            if pa[0] != pb[0] or pa[1] != "x":
                continue
            idx1 = pa[0]
            u, v, s1 = tr.crossings[idx1]
            if s1 != -s2 or (u, v) != (b, a):
                continue
            packed = _pack(slices, [idx1, idx2])
            if packed is None:
                continue
            base = idx1
            p, q = packed[base], packed[base + 1]
            if p[0] == "x" and q[0] == "x" and p[1] == q[1] and p[2] == -q[2]:
                new = tuple(packed[:base] + packed[base + 2:])
                action = [(self._one, new)]
                out = self._emit(collect, action)
                if out is not None:
                    return out
        return None

    def _twist_pairs(self, tr: _Trace):
        """Twist boxes followed along the curve by another twist box."""
        out = []
        for sid in range(tr.n):
            for e in tr.events[sid]:
                if e[1] != "t":
                    continue
                nxt = tr.next_on_curve(sid, e[0], forward=True)
                if nxt[0] == "event" and nxt[1][1] == "t":
                    out.append((e, nxt[1]))
        return out

    def _relocate_pair(self, slices, e1, e2):
        """Move box ``e2`` directly above box ``e1``; boxes slide freely
        along their curve through cups and caps, keeping their letters."""
        i1, i2 = e1[0], e2[0]
        work = list(slices)
        moved = work.pop(i2)
        if i2 < i1:
            i1 -= 1
        work.insert(i1 + 1, ("t", e2[2]))
        return work, i1

    def _find_cancel_t(self, slices, tr: _Trace, collect=None):
        for e1, e2 in self._twist_pairs(tr):
            if e1[2] != -e2[2]:
                continue
            work, base = self._relocate_pair(slices, e1, e2)
            new = tuple(work[:base] + work[base + 2:])
            out = self._emit(collect, [(self._one, new)])
            if out is not None:
                return out
        return None

    def _find_absorb(self, slices, tr: _Trace, collect=None):
        for sid in range(tr.n):
            for e in tr.events[sid]:
                if e[1] != "t":
                    continue
                fwd = tr.next_on_curve(sid, e[0], forward=True)
                bwd = tr.next_on_curve(sid, e[0], forward=False)
                if (fwd[0] == "end" and fwd[1] == "copoint") or (
                        bwd[0] == "end" and bwd[1] == "point"):
                    new = slices[:e[0]] + slices[e[0] + 1:]
                    out = self._emit(collect, [(self._one, new)])
                    if out is not None:
                        return out
        return None

    def _find_kink(self, slices, tr: _Trace, collect=None):
        for idx, (a, b, sg) in sorted(tr.crossings.items()):
            ba, bb = tr.birth[a], tr.birth[b]
            if not (ba[1] == "cup" and bb[1] == "cup" and ba[0] == bb[0]):
                continue
            if tr.first_event(a)[0] != idx or tr.first_event(b)[0] != idx:
                continue
            packed = _pack(slices, [ba[0], idx])
            if packed is None:
                continue
            base = ba[0]
            p, q = packed[base], packed[base + 1]
            if p[0] == "cup" and q[0] == "x" and q[1] == p[1]:
                new = tuple(packed[:base + 1] + packed[base + 2:])
                coeff = self._lam_inv if sg > 0 else self._lam
                out = self._emit(collect, [(coeff, new)])
                if out is not None:
                    return out
        return None

    def _find_capkink(self, slices, tr: _Trace, collect=None):
        for idx, (a, b, sg) in sorted(tr.crossings.items()):
            da, db = tr.death.get(a), tr.death.get(b)
            if da is None or db is None:
                continue
            if not (da[1] == "cap" and db[1] == "cap" and da[0] == db[0]):
                continue
            if tr.last_event(a)[0] != idx or tr.last_event(b)[0] != idx:
                continue
            packed = _pack(slices, [idx, da[0]])
            if packed is None:
                continue
            base = idx
            p, q = packed[base], packed[base + 1]
            if p[0] == "x" and q[0] == "cap" and q[1] == p[1]:
                new = tuple(packed[:base] + packed[base + 1:])
                coeff = self._lam_inv if sg > 0 else self._lam
                out = self._emit(collect, [(coeff, new)])
                if out is not None:
                    return out
        return None

    def _twisted_kink_action(self, word: tuple, start: int):
        """Rewrite at a literal ``[cup(1), t.., x(1,s)]`` or
        ``[x(1,s), t.., cap(1)]`` germ beginning at ``start``.

        The pair twist is central and fixes cups and caps, so a box next
        to the crossing hops through it, flipping both signs; when the
        signs match, the crossing is switched instead.  Each application
        shrinks the box run or flips the crossing toward the hop case.
        """
        anchor = word[start]
        if anchor[0] == "cup" and anchor[1] == 1:
            k = start + 1
            while k < len(word) and word[k][0] == "t":
                k += 1
            if k == start + 1 or k >= len(word):
                return None
            x = word[k]
            if x[0] != "x" or x[1] != 1:
                return None
            e = word[k - 1][1]
            s = x[2]
            head, tail = word[:k - 1], word[k + 1:]
            if (e, s) in ((1, -1), (-1, 1)):
                new = head + (("x", 1, -s), ("t", -e)) + tail
                return [(self._one, new)]
            switched = word[:k] + (("x", 1, -s),) + tail
            deleted = word[:k] + tail
            paired = word[:k] + (("cap", 1), ("cup", 1)) + tail
            if s > 0:
                return [(self._one, switched), (self._delta, deleted),
                        (-self._delta, paired)]
            return [(self._one, switched), (-self._delta, deleted),
                    (self._delta, paired)]
        if anchor[0] == "x" and anchor[1] == 1:
            if start + 1 >= len(word) or word[start + 1][0] != "t":
                return None
            k = start + 1
            while k < len(word) and word[k][0] == "t":
                k += 1
            if k >= len(word) or word[k] != ("cap", 1):
                return None
            s = anchor[2]
            e = word[start + 1][1]
            head = word[:start]
            rest = word[start + 2:]
            if (s, e) in ((-1, 1), (1, -1)):
                new = head + (("t", -e), ("x", 1, -s)) + rest
                return [(self._one, new)]
            switched = head + (("x", 1, -s),) + word[start + 1:]
            deleted = head + word[start + 1:]
            paired = head + (("cap", 1), ("cup", 1)) + word[start + 1:]
            if s > 0:
                return [(self._one, switched), (self._delta, deleted),
                        (-self._delta, paired)]
            return [(self._one, switched), (-self._delta, deleted),
                    (self._delta, paired)]
        return None

    def _find_twisted_kink(self, slices, tr: _Trace, collect=None):
        for start in range(len(slices)):
            action = self._twisted_kink_action(slices, start)
            if action is not None:
                out = self._emit(collect, action)
                if out is not None:
                    return out
        return None

    def _find_curl(self, slices, tr: _Trace, collect=None):
        # A strand crosses one fresh leg of a cup whose other leg caps it
        # straight back: a framing curl worth lambda^(+sign).
        for idx, (a, b, sg) in sorted(tr.crossings.items()):
            for leg, through, slot in ((b, a, 1), (a, b, 0)):
                birth = tr.birth[leg]
                if birth[1] != "cup":
                    continue
                cup_idx = birth[0]
                partner = birth[3]
                if partner in (a, b):
                    continue
                first = tr.first_event(leg)
                if first is None or first[0] != idx:
                    continue
                if tr.events[partner]:
                    continue
                d_through = tr.death.get(through)
                d_partner = tr.death.get(partner)
                if d_through is None or d_partner is None:
                    continue
                if not (d_through[1] == "cap" and d_through[0] == d_partner[0]):
                    continue
                if tr.next_event_after(through, idx) is not None:
                    continue
                cap_idx = d_through[0]
                packed = _pack(slices, [cup_idx, idx, cap_idx])
                if packed is None:
                    continue
                base = cup_idx
                p, q, r = packed[base], packed[base + 1], packed[base + 2]
                okA = (p[0] == "cup" and q[0] == "x" and r[0] == "cap"
                       and q[1] == p[1] - 1 and r[1] == p[1])
                okB = (p[0] == "cup" and q[0] == "x" and r[0] == "cap"
                       and q[1] == p[1] + 1 and r[1] == p[1])
                if okA or okB:
                    new = tuple(packed[:base] + packed[base + 3:])
                    coeff = self._lam if sg > 0 else self._lam_inv
                    out = self._emit(collect, [(coeff, new)])
                    if out is not None:
                        return out
        return None

    def _find_snake(self, slices, tr: _Trace, collect=None):
        for sid in range(tr.n):
            birth = tr.birth[sid]
            death = tr.death.get(sid)
            if death is None or birth[1] != "cup" or death[1] != "cap":
                continue
            if tr.events[sid]:
                continue
            cup_partner = birth[3]
            cap_partner = death[3]
            if cup_partner == cap_partner:
                continue  # a free circle, handled elsewhere
            packed = _pack(slices, [birth[0], death[0]])
            if packed is None:
                continue
            base = birth[0]
            p, q = packed[base], packed[base + 1]
            if p[0] == "cup" and q[0] == "cap" and abs(p[1] - q[1]) == 1:
                new = tuple(packed[:base] + packed[base + 2:])
                out = self._emit(collect, [(self._one, new)])
                if out is not None:
                    return out
        return None

    def _find_circle(self, slices, tr: _Trace, collect=None):
        for root, sids in sorted(tr.components().items()):
            if len(sids) != 2:
                continue
            a, b = sids
            ba, bb = tr.birth[a], tr.birth[b]
            da, db = tr.death.get(a), tr.death.get(b)
            if da is None or db is None:
                continue
            if not (ba[1] == "cup" and ba[0] == bb[0]
                    and da[1] == "cap" and da[0] == db[0]):
                continue
            evs = tr.events[a] + tr.events[b]
            if any(e[1] != "t" for e in evs):
                continue
            if len(evs) == 0:
                packed = _pack(slices, [ba[0], da[0]])
                if packed is None:
                    continue
                base = ba[0]
                p, q = packed[base], packed[base + 1]
                if p[0] == "cup" and q[0] == "cap" and p[1] == q[1]:
                    new = tuple(packed[:base] + packed[base + 2:])
                    out = self._emit(collect, [(self._A0, new)])
                    if out is not None:
                        return out
            elif len(evs) == 1:
                t_idx, _, sgn, _, _ = evs[0]
                packed = _pack(slices, [ba[0], t_idx, da[0]])
                if packed is None:
                    continue
                base = ba[0]
                p, q, r = packed[base], packed[base + 1], packed[base + 2]
                if (p[0] == "cup" and q[0] == "t" and r[0] == "cap"
                        and p[1] == r[1] == 1):
                    new = tuple(packed[:base] + packed[base + 3:])
                    value = self._A1 if sgn > 0 else self._Am1
                    out = self._emit(collect, [(value, new)])
                    if out is not None:
                        return out
        return None

    def _find_arc(self, slices, tr: _Trace, collect=None):
        for root, sids in sorted(tr.components().items()):
            if any(tr.events[s] for s in sids):
                continue
            points = [s for s in sids if tr.birth[s][1] == "point"]
            copoints = [s for s in sids if tr.death[s][1] == "copoint"]
            if len(points) != 1 or len(copoints) != 1:
                continue
            if len(sids) == 1:
                sid = sids[0]
                p_idx = tr.birth[sid][0]
                q_idx = tr.death[sid][0]
                packed = _pack(slices, [p_idx, q_idx])
                if packed is None:
                    continue
                base = p_idx
                if packed[base][0] == "point" and packed[base + 1][0] == "copoint":
                    new = tuple(packed[:base] + packed[base + 2:])
                    out = self._emit(collect, [(self._x0, new)])
                    if out is not None:
                        return out
            elif len(sids) == 3:
                # The wrapped arc: cup pair (L, R), L dies on the axis,
                # a new point-born strand caps back with R.
                p_sid = points[0]
                q_sid = copoints[0]
                if tr.birth[q_sid][1] != "cup":
                    continue
                cup_idx = tr.birth[q_sid][0]
                r_sid = tr.birth[q_sid][3]
                d = tr.death.get(p_sid)
                if d is None or d[1] != "cap" or d[3] != r_sid:
                    continue
                q_idx = tr.death[q_sid][0]
                p_idx = tr.birth[p_sid][0]
                cap_idx = d[0]
                if not (cup_idx < q_idx < p_idx < cap_idx):
                    continue
                packed = _pack(slices, [cup_idx, q_idx, p_idx, cap_idx])
                if packed is None:
                    continue
                base = cup_idx
                quad = packed[base:base + 4]
                if (quad[0] == ("cup", 1) and quad[1][0] == "copoint"
                        and quad[2][0] == "point" and quad[3] == ("cap", 1)):
                    new = tuple(packed[:base] + packed[base + 4:])
                    out = self._emit(collect, [(self._x0p, new)])
                    if out is not None:
                        return out
        return None

    def _find_merge_t(self, slices, tr: _Trace, collect=None):
        for e1, e2 in self._twist_pairs(tr):
            if not (e1[2] == 1 and e2[2] == 1):
                continue
            work, base = self._relocate_pair(slices, e1, e2)
            head = work[:base]
            tail = work[base + 2:]
            action = [
                (self._alpha_inv, tuple(head + tail)),
                (-(self._alpha_inv * self._beta),
                 tuple(head + [("t", 1)] + tail)),
                (-(self._alpha_inv * self._gamma),
                 tuple(head + [("copoint",), ("point",)] + tail)),
            ]
            out = self._emit(collect, action)
            if out is not None:
                return out
        return None

    def _find_whole(self, slices, tr: _Trace, collect=None):
        # Terminal values for a diagram that is a single closed component
        # free of crossings: a circle winding 0 or +-1 times, or a single
        # axis-to-axis arc classified by the order of its endpoints.
        if tr.crossings:
            return None
        comps = tr.components()
        if len(comps) != 1:
            return None
        sids = next(iter(comps.values()))
        twists = [e for s in sids for e in tr.events[s] if e[1] == "t"]
        points = [s for s in sids if tr.birth[s][1] == "point"]
        copoints = [s for s in sids if tr.death[s][1] == "copoint"]
        if points or copoints:
            if twists:
                return None
            value = self._arc_value(tr, points, copoints)
            if value is None:
                return None
            return self._emit(collect, [(value, ())])
        if len(twists) == 0:
            return self._emit(collect, [(self._A0, ())])
        if len(twists) == 1:
            value = self._A1 if twists[0][2] > 0 else self._Am1
            return self._emit(collect, [(value, ())])
        return None

    def _arc_value(self, tr: _Trace, points, copoints):
        """Value of a crossing-free, twist-free axis-to-axis arc.

        A birth/death arc has two classes by axis-endpoint order (the
        endpoints cannot slide past each other); an arc with both ends of
        the same kind has a single class, whose value the duality axioms
        identify with the plain pointed circle.
        """
        if len(points) == 1 and len(copoints) == 1:
            p_idx = tr.birth[points[0]][0]
            q_idx = tr.death[copoints[0]][0]
            return self._x0 if p_idx < q_idx else self._x0p
        if (len(points), len(copoints)) in ((2, 0), (0, 2)):
            return self._x0
        return None

    def _find_sk4(self, slices, tr: _Trace, collect=None):
        for idx, s in enumerate(slices):
            if s[0] == "t" and s[1] == -1:
                head, tail = slices[:idx], slices[idx + 1:]
                action = [
                    (self._alpha, head + (("t", 1),) + tail),
                    (self._beta, head + tail),
                    (self._gamma, head + (("copoint",), ("point",)) + tail),
                ]
                out = self._emit(collect, action)
                if out is not None:
                    return out
        return None

    def _find_sk9(self, slices, tr: _Trace, collect=None):
        for idx, (a, b, sg) in sorted(tr.crossings.items()):
            if tr.birth[a][1] != "point":
                continue
            first = tr.first_event(a)
            if first is None or first[0] != idx:
                continue
            death_b = tr.death.get(b)
            if death_b is None or death_b[1] != "copoint":
                continue
            if tr.next_event_after(b, idx) is not None:
                continue
            p_idx = tr.birth[a][0]
            q_idx = death_b[0]
            packed = _pack(slices, [p_idx, idx, q_idx])
            if packed is None:
                continue
            base = p_idx
            trio = packed[base:base + 3]
            if not (trio[0][0] == "point" and trio[1] == ("x", 1, sg)
                    and trio[2][0] == "copoint"):
                continue
            head = packed[:base]
            tail = packed[base + 3:]
            if sg > 0:
                const = self._eps
                pair_coeff = self._nu
            else:
                const = self._eps - self._delta * self._x0
                pair_coeff = self._nu + self._delta
            action = [
                (const, tuple(head + tail)),
                (self._mu, tuple(head + [("t", 1)] + tail)),
                (pair_coeff, tuple(head + [("copoint",), ("point",)] + tail)),
            ]
            out = self._emit(collect, action)
            if out is not None:
                return out
        return None

    def _find_slide_cup(self, slices, tr: _Trace, collect=None):
        # [cup(i+1), x(i, s)] -> [cup(i), x(i+1, -s)]: pull the cup toward
        # the axis past a crossing on its fresh left leg.
        for idx, (a, b, sg) in sorted(tr.crossings.items()):
            birth_b = tr.birth[b]
            if birth_b[1] != "cup":
                continue
            if birth_b[2] != 0:
                continue
            partner = birth_b[3]
            if partner in (a, b):
                continue
            first = tr.first_event(b)
            if first is None or first[0] != idx:
                continue
            cup_idx = birth_b[0]
            packed = _pack(slices, [cup_idx, idx])
            if packed is None:
                continue
            base = cup_idx
            p, q = packed[base], packed[base + 1]
            if p[0] == "cup" and q[0] == "x" and q[1] == p[1] - 1:
                i = q[1]
                new = tuple(
                    packed[:base]
                    + [("cup", i), ("x", i + 1, -q[2])]
                    + packed[base + 2:]
                )
                out = self._emit(collect, [(self._one, new)])
                if out is not None:
                    return out
        return None

    def _find_slide_cap(self, slices, tr: _Trace, collect=None):
        # [x(i, s), cap(i+1)] -> [x(i+1, -s), cap(i)]: pull the cap toward
        # the axis past a crossing feeding its left strand.
        for idx, (a, b, sg) in sorted(tr.crossings.items()):
            death_a = tr.death.get(a)
            if death_a is None or death_a[1] != "cap":
                continue
            if death_a[2] != 0:
                continue
            partner = death_a[3]
            if partner in (a, b):
                continue
            if tr.next_event_after(a, idx) is not None:
                continue
            cap_idx = death_a[0]
            packed = _pack(slices, [idx, cap_idx])
            if packed is None:
                continue
            base = idx
            p, q = packed[base], packed[base + 1]
            if p[0] == "x" and q[0] == "cap" and q[1] == p[1] + 1:
                i = p[1]
                new = tuple(
                    packed[:base]
                    + [("x", i + 1, -p[2]), ("cap", i)]
                    + packed[base + 2:]
                )
                out = self._emit(collect, [(self._one, new)])
                if out is not None:
                    return out
        return None

    def _find_split(self, slices, tr: _Trace, collect=None):
        # A component that is on the same side (over or under) at every
        # crossing with other components, and never touches the axis, can
        # be pushed away radially: the value splits as a product.
        comps = tr.components()
        if len(comps) < 2:
            return None
        order = sorted(
            comps.items(), key=lambda kv: min(tr.birth[s][0] for s in kv[1])
        )
        for root, sids in order:
            sset = set(sids)
            if any(tr.birth[s][1] == "point" for s in sids):
                continue
            if any(tr.death[s][1] == "copoint" for s in sids):
                continue
            side = None
            consistent = True
            for idx, (a, b, sg) in tr.crossings.items():
                a_in, b_in = a in sset, b in sset
                if a_in == b_in:
                    continue
                over = a if sg == 1 else b
                c_over = over in sset
                if side is None:
                    side = c_over
                elif side != c_over:
                    consistent = False
                    break
            if not consistent:
                continue
            part, rest = _split_words(slices, sset)
            action = ("split", part, rest)
            if collect is None:
                return action
            collect.append(action)
        return None

    # -- search over isotopic presentations ------------------------------

    _ORBIT_LIMIT = 3000

    def _find_via_orbit(self, slices, tr: _Trace, collect=None):
        """Search value-preserving repositionings for a literal reduction.

        Breadth-first over adjacent commutations and cup/cap slides (all
        orientations); every visited word is an equal diagram, so a
        reduction found anywhere applies with its coefficients unchanged.
        """
        start = tuple(slices)
        seen = {start}
        frontier = [start]
        while frontier:
            new_frontier = []
            for word in frontier:
                action = self._literal_reduction(word)
                if action is not None:
                    return self._emit(collect, action)
                for nxt in self._orbit_neighbors(word):
                    if nxt in seen:
                        continue
                    seen.add(nxt)
                    if len(seen) > self._ORBIT_LIMIT:
                        return None
                    new_frontier.append(nxt)
            frontier = new_frontier
        return None

    @staticmethod
    def _orbit_neighbors(word: tuple):
        out = []
        for k in range(len(word) - 1):
            a, b = word[k], word[k + 1]
            swapped = swap_adj(a, b)
            if swapped is not None:
                out.append(word[:k] + swapped + word[k + 2:])
            if a[0] == "cup" and b[0] == "x":
                i, s = b[1], b[2]
                if a[1] == i + 1:
                    out.append(word[:k] + (("cup", i), ("x", i + 1, -s))
                               + word[k + 2:])
                elif a[1] == i - 1:
                    out.append(word[:k] + (("cup", i), ("x", i - 1, -s))
                               + word[k + 2:])
            if a[0] == "x" and b[0] == "cap":
                i, s = a[1], a[2]
                if b[1] == i + 1:
                    out.append(word[:k] + (("x", i + 1, -s), ("cap", i))
                               + word[k + 2:])
                elif b[1] == i - 1:
                    out.append(word[:k] + (("x", i - 1, -s), ("cap", i))
                               + word[k + 2:])
            if k + 2 < len(word):
                c = word[k + 2]
                if a[0] == b[0] == c[0] == "x":
                    i, j, l = a[1], b[1], c[1]
                    e1, e2, e3 = a[2], b[2], c[2]
                    # Braid-relation shuffles, including the conjugated
                    # mixed-sign forms.
                    if i == l and abs(j - i) == 1:
                        if e1 == e2 == e3:
                            out.append(word[:k] + (("x", j, e1), ("x", i, e1),
                                                   ("x", j, e1)) + word[k + 3:])
                        if e1 == -e3:
                            out.append(word[:k] + (("x", j, -e1), ("x", i, e2),
                                                   ("x", j, e1)) + word[k + 3:])
        return out

    def _literal_reduction(self, word: tuple):
        for k in range(len(word)):
            a = word[k]
            b = word[k + 1] if k + 1 < len(word) else None
            if b is not None:
                if (a[0] == "x" and b[0] == "x" and a[1] == b[1]
                        and a[2] == -b[2]):
                    return [(self._one, word[:k] + word[k + 2:])]
                if a[0] == "cup" and b[0] == "x" and b[1] == a[1]:
                    coeff = self._lam_inv if b[2] > 0 else self._lam
                    return [(coeff, word[:k + 1] + word[k + 2:])]
                if a[0] == "x" and b[0] == "cap" and b[1] == a[1]:
                    coeff = self._lam_inv if a[2] > 0 else self._lam
                    return [(coeff, word[:k] + word[k + 1:])]
                if (a[0] == "cup" and b[0] == "cap"
                        and abs(a[1] - b[1]) == 1):
                    return [(self._one, word[:k] + word[k + 2:])]
                if a[0] == "cup" and b[0] == "cap" and a[1] == b[1]:
                    return [(self._A0, word[:k] + word[k + 2:])]
                if a[0] == "point" and b[0] == "copoint":
                    return [(self._x0, word[:k] + word[k + 2:])]
            if k + 2 < len(word):
                c = word[k + 2]
                if (a[0] == "cup" and a[1] == 1 and b is not None
                        and b[0] == "t" and c == ("cap", 1)):
                    value = self._A1 if b[1] > 0 else self._Am1
                    return [(value, word[:k] + word[k + 3:])]
                if (a[0] == "cup" and a[1] == 1 and b is not None
                        and b[0] == "copoint" and c[0] == "copoint"):
                    return [(self._x0, word[:k] + word[k + 3:])]
                if (a[0] == "point" and b is not None and b[0] == "point"
                        and c == ("cap", 1)):
                    return [(self._x0, word[:k] + word[k + 3:])]
                if (a[0] == "point" and b is not None and b[0] == "x"
                        and b[1] == 1 and c[0] == "copoint"):
                    sg = b[2]
                    head, tail = word[:k], word[k + 3:]
                    if sg > 0:
                        const, pair_coeff = self._eps, self._nu
                    else:
                        const = self._eps - self._delta * self._x0
                        pair_coeff = self._nu + self._delta
                    return [
                        (const, head + tail),
                        (self._mu, head + (("t", 1),) + tail),
                        (pair_coeff, head + (("copoint",), ("point",)) + tail),
                    ]
            if k + 3 < len(word):
                if (a == ("cup", 1) and word[k + 1][0] == "copoint"
                        and word[k + 2][0] == "point"
                        and word[k + 3] == ("cap", 1)):
                    return [(self._x0p, word[:k] + word[k + 4:])]
            action = self._twisted_kink_action(word, k)
            if action is not None:
                return action
        return None

    # -- crossing switches --------------------------------------------

    def _find_switch(self, slices, tr: _Trace):
        passages = self._traversal(tr)
        idx = self._first_bad(passages)
        if idx is None:
            if tr.crossings:
                action = self._unknot_crossing(slices, tr, passages)
                if action is not None:
                    return action
                raise EngineStuck(
                    "descending diagram with residual crossings: "
                    + "; ".join(map(str, slices))
                )
            return None
        i, sg = slices[idx][1], slices[idx][2]
        head, tail = slices[:idx], slices[idx + 1:]
        switched = head + (("x", i, -sg),) + tail
        smoothed_id = head + tail
        smoothed_pair = head + (("cap", i), ("cup", i)) + tail
        if sg > 0:
            return [
                (self._one, switched),
                (self._delta, smoothed_id),
                (-self._delta, smoothed_pair),
            ]
        return [
            (self._one, switched),
            (-self._delta, smoothed_id),
            (self._delta, smoothed_pair),
        ]

    def _traversal(self, tr: _Trace):
        """Walk every crossing-bearing component from a fixed basepoint.

        Returns the crossing passages in traversal order as tuples
        ``(idx, strand, slot, sign, direction, component)``.
        """
        if not tr.crossings:
            return []
        comps = tr.components()
        starts = []
        for root, sids in comps.items():
            if not any(any(e[1] == "x" for e in tr.events[s]) for s in sids):
                continue
            arc_start = None
            for s in sids:
                if tr.birth[s][1] == "point":
                    arc_start = s
                    break
            if arc_start is not None:
                start = arc_start
            else:
                start = min(sids, key=lambda s: (tr.birth[s][0], tr.birth[s][2]))
            starts.append((tr.birth[start][0], start, root))
        starts.sort()
        passages = []
        for _, start, root in starts:
            cur, direction = start, _UP
            visited_legs = set()
            while True:
                if (cur, direction) in visited_legs:
                    break
                visited_legs.add((cur, direction))
                evs = tr.events[cur] if direction == _UP else list(
                    reversed(tr.events[cur])
                )
                for e in evs:
                    if e[1] == "t":
                        passages.append((e[0], cur, "t", e[2], None, root))
                        continue
                    idx, _, slot, sg, _ = e
                    if direction == _UP:
                        dirvec = (1, 1) if slot == 0 else (-1, 1)
                    else:
                        dirvec = (-1, -1) if slot == 0 else (1, -1)
                    passages.append((idx, cur, slot, sg, dirvec, root))
                end = tr.death.get(cur) if direction == _UP else tr.birth[cur]
                kind = end[1]
                if kind in ("point", "copoint"):
                    break
                cur = end[3]
                direction = _DOWN if direction == _UP else _UP
        return passages

    @staticmethod
    def _first_bad(passages):
        seen: set[int] = set()
        for idx, _, slot, sg, _, _ in passages:
            if slot == "t" or idx in seen:
                continue
            seen.add(idx)
            if (slot == 0) != (sg == 1):
                return idx
        return None

    def _unknot_crossing(self, slices, tr: _Trace, passages):
        """Remove a descending self-crossing with a crossing-free loop.

        Such a crossing is a framing curl of an unknotted stretch of one
        component (its loop carries only twist boxes and extrema); removing
        it costs lambda to the crossing's writhe, computed from the two
        passage directions of the traversal.
        """
        n_comps = len(tr.components())
        by_idx: dict[int, list[int]] = {}
        for n, p in enumerate(passages):
            if p[2] == "t":
                continue
            by_idx.setdefault(p[0], []).append(n)
        for idx in sorted(by_idx):
            pos = by_idx[idx]
            if len(pos) != 2:
                continue
            n1, n2 = pos
            p1, p2 = passages[n1], passages[n2]
            if p1[5] != p2[5]:
                continue
            # The loop must be a plain curl: free of other crossings and
            # of twist boxes (a box changes the loop's class).
            if any(passages[k][0] != idx or passages[k][2] == "t"
                   for k in range(n1 + 1, n2)):
                continue
            over1 = (p1[2] == 0) == (p1[3] == 1)
            over_dir = p1[4] if over1 else p2[4]
            under_dir = p2[4] if over1 else p1[4]
            det = over_dir[0] * under_dir[1] - over_dir[1] * under_dir[0]
            w = 1 if det > 0 else -1
            coeff = self._lam if w > 0 else self._lam_inv
            # Contracting the loop must keep the curve connected: of the
            # two smoothings of a self-crossing, pick the one preserving
            # the component count (the other splits the loop off).
            i = slices[idx][1]
            straight = slices[:idx] + slices[idx + 1:]
            rejoined = slices[:idx] + (("cap", i), ("cup", i)) + slices[idx + 1:]
            for candidate in (straight, rejoined):
                try:
                    if len(_Trace(candidate).components()) == n_comps:
                        return [(coeff, candidate)]
                except NonClosedDiagram:
                    continue
        return None


def _split_words(slices, in_c: set) -> tuple[tuple, tuple]:
    """Separate the slices of one component from the rest.

    Strand ids follow the same numbering as :class:`_Trace`.  Crossings
    between the two classes are dropped (valid only under the split rule's
    same-side precondition); positions are renumbered within each class.
    """
    pos: list[tuple[int, bool]] = []
    n = 0
    out_c: list = []
    out_r: list = []

    def emit(is_c: bool, item):
        (out_c if is_c else out_r).append(item)

    def class_index(upto: int, is_c: bool) -> int:
        return sum(1 for _, c in pos[:upto] if c == is_c)

    for s in slices:
        kind = s[0]
        if kind == "cup":
            i = s[1]
            a, b = n, n + 1
            n += 2
            is_c = a in in_c
            emit(is_c, ("cup", class_index(i - 1, is_c) + 1))
            pos[i - 1:i - 1] = [(a, is_c), (b, is_c)]
        elif kind == "cap":
            i = s[1]
            (_, ca), (_, cb) = pos[i - 1], pos[i]
            if ca != cb:
                raise EngineStuck("cap joins strands of different components")
            emit(ca, ("cap", class_index(i - 1, ca) + 1))
            del pos[i - 1:i + 1]
        elif kind == "x":
            i, sg = s[1], s[2]
            (_, ca), (_, cb) = pos[i - 1], pos[i]
            if ca == cb:
                emit(ca, ("x", class_index(i - 1, ca) + 1, sg))
            pos[i - 1], pos[i] = pos[i], pos[i - 1]
        elif kind == "t":
            _, ca = pos[0]
            emit(ca, ("t", s[1]))
        elif kind == "point":
            a = n
            n += 1
            is_c = a in in_c
            emit(is_c, ("point",))
            pos[0:0] = [(a, is_c)]
        elif kind == "copoint":
            _, ca = pos[0]
            emit(ca, ("copoint",))
            del pos[0]
    return tuple(out_c), tuple(out_r)


# ---------------------------------------------------------------------------
# Convenience functions
# ---------------------------------------------------------------------------


def evaluate(t: TangleWord, table: ParamTable, *, strategy: str = "priority",
             seed: int = 0, budget: Budget | None = None) -> LaurentPoly:
    """Evaluate one closed diagram with a fresh evaluator."""
    return Evaluator(table, strategy=strategy, seed=seed,
                     budget=budget).evaluate(t)


def invariant(word: BraidWord, table: ParamTable, *, strategy: str = "priority",
              seed: int = 0, budget: Budget | None = None) -> LaurentPoly:
    """Writhe-normalized invariant of the annular closure of ``word``."""
    return Evaluator(table, strategy=strategy, seed=seed,
                     budget=budget).invariant(word)
