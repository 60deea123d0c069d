"""The cylinder (type-B) braid group on n strands.

Words are sequences of generators ``tau_0 .. tau_{n-1}`` and their
inverses; ``tau_0`` is the strand winding once around the cylinder axis
and ``tau_1 ..`` are ordinary crossings.  Word equality is decided by
embedding into the ordinary braid group on ``n + 1`` strands (the axis
becomes a fixed extra strand, ``tau_0`` a double crossing with it) and
running handle reduction there.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence


class BraidError(ValueError):
    """Base class for braid-word errors."""


class WordSyntaxError(BraidError):
    """A token does not match the word grammar."""


class IndexOutOfRange(BraidError):
    """A generator index is not valid for the declared strand count."""


class StrandMismatch(BraidError):
    """Two words live on different strand counts."""


@dataclass(frozen=True)
class BraidWord:
    """A word in the cylinder braid group on ``strands`` strands.

    Letters are ``(index, sign)`` with ``0 <= index < strands`` and sign
    ``+1`` or ``-1``; the leftmost letter acts first (bottom of a diagram).
    """

    strands: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.strands < 0:
            raise IndexOutOfRange("strand count must be >= 0")
        for idx, sign in self.letters:
            if not 0 <= idx < self.strands:
                raise IndexOutOfRange(
                    f"generator index {idx} out of range for {self.strands} strands"
                )
            if sign not in (1, -1):
                raise WordSyntaxError(f"bad sign {sign}")

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise StrandMismatch(f"{self.strands} != {other.strands}")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(
            self.strands, tuple((i, -s) for i, s in reversed(self.letters))
        )

    def __len__(self) -> int:
        return len(self.letters)


@dataclass(frozen=True)
class ArtinWord:
    """A word in the ordinary braid group on ``strands`` strands.

    Letters are ``(index, sign)`` with ``1 <= index <= strands - 1``.
    """

    strands: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for idx, sign in self.letters:
            if not 1 <= idx <= self.strands - 1:
                raise IndexOutOfRange(
                    f"generator index {idx} out of range for {self.strands} strands"
                )
            if sign not in (1, -1):
                raise WordSyntaxError(f"bad sign {sign}")

    def __mul__(self, other: "ArtinWord") -> "ArtinWord":
        if self.strands != other.strands:
            raise StrandMismatch(f"{self.strands} != {other.strands}")
        return ArtinWord(self.strands, self.letters + other.letters)

    def inverse(self) -> "ArtinWord":
        return ArtinWord(
            self.strands, tuple((i, -s) for i, s in reversed(self.letters))
        )


_TOKEN_RE = re.compile(r"^([tT])(\d+)$")


def parse_word(text: str, strands: int) -> BraidWord:
    """Parse whitespace-separated tokens ``t<k>`` / ``T<k>`` (inverse)."""
    letters = []
    for token in text.split():
        m = _TOKEN_RE.match(token)
        if not m:
            raise WordSyntaxError(f"bad token {token!r}")
        idx = int(m.group(2))
        if idx >= strands:
            raise IndexOutOfRange(
                f"token {token!r} needs strand index < {strands}"
            )
        letters.append((idx, 1 if m.group(1) == "t" else -1))
    return BraidWord(strands, tuple(letters))


def format_word(word: BraidWord) -> str:
    """Serialize back into the ``t<k>`` / ``T<k>`` grammar."""
    return " ".join(("t" if s > 0 else "T") + str(i) for i, s in word.letters)


def free_reduce(word: BraidWord) -> BraidWord:
    """Cancel adjacent inverse pairs until none remain."""
    stack: list[tuple[int, int]] = []
    for letter in word.letters:
        if stack and stack[-1][0] == letter[0] and stack[-1][1] == -letter[1]:
            stack.pop()
        else:
            stack.append(letter)
    return BraidWord(word.strands, tuple(stack))


def embed(word: BraidWord) -> ArtinWord:
    """Embed into the ordinary braid group on ``strands + 1`` strands.

    The axis becomes a fixed extra strand on the left: ``tau_0`` maps to
    ``sigma_1^2`` (a full loop around the axis strand) and ``tau_i`` maps
    to ``sigma_{i+1}`` for ``i >= 1``.  The map is a group homomorphism.
    """
    letters: list[tuple[int, int]] = []
    for idx, sign in word.letters:
        if idx == 0:
            letters.append((1, sign))
            letters.append((1, sign))
        else:
            letters.append((idx + 1, sign))
    return ArtinWord(word.strands + 1, tuple(letters))


def _free_reduce_letters(letters: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    stack: list[tuple[int, int]] = []
    for letter in letters:
        if stack and stack[-1][0] == letter[0] and stack[-1][1] == -letter[1]:
            stack.pop()
        else:
            stack.append(letter)
    return stack


def permutation(word: ArtinWord) -> tuple[int, ...]:
    """Underlying permutation (image of each strand position)."""
    perm = list(range(word.strands))
    for idx, _sign in word.letters:
        perm[idx - 1], perm[idx] = perm[idx], perm[idx - 1]
    return tuple(perm)


_MAX_HANDLE_STEPS = 2_000_000


def handle_reduce(word: ArtinWord) -> ArtinWord:
    """Reduce until no handle remains.

    A handle is a subword ``sigma_i^e .. sigma_i^-e`` whose interior uses
    only indices > i; reduction deletes the pair and conjugates interior
    ``sigma_{i+1}`` letters.  The first-closing handle is reduced each
    round, which contains no nested handle.
    """
    letters = _free_reduce_letters(word.letters)
    steps = 0
    while True:
        steps += 1
        if steps > _MAX_HANDLE_STEPS:
            raise RuntimeError("handle reduction exceeded its step budget")
        handle = None
        last_seen: dict[int, int] = {}
        for j, (idx, sign) in enumerate(letters):
            k = last_seen.get(idx)
            if k is not None and letters[k][1] == -sign:
                if all(letters[p][0] > idx for p in range(k + 1, j)):
                    handle = (k, j)
                    break
            last_seen[idx] = j
        if handle is None:
            break
        k, j = handle
        i, e = letters[k][0], letters[k][1]
        replacement: list[tuple[int, int]] = []
        for m, d in letters[k + 1:j]:
            if m == i + 1:
                replacement.extend([(i + 1, -e), (i, d), (i + 1, e)])
            else:
                replacement.append((m, d))
        letters = _free_reduce_letters(letters[:k] + replacement + letters[j + 1:])
    return ArtinWord(word.strands, tuple(letters))


def is_trivial(word: ArtinWord) -> bool:
    """True iff the word represents the identity braid."""
    letters = _free_reduce_letters(word.letters)
    if not letters:
        return True
    if permutation(ArtinWord(word.strands, tuple(letters))) != tuple(
        range(word.strands)
    ):
        return False
    sums: dict[int, int] = {}
    for idx, sign in letters:
        sums[idx] = sums.get(idx, 0) + sign
    if any(v != 0 for v in sums.values()):
        return False
    return not handle_reduce(ArtinWord(word.strands, tuple(letters))).letters


def equivalent(w1: BraidWord, w2: BraidWord) -> bool:
    """Decide whether two words represent the same group element."""
    if w1.strands != w2.strands:
        raise StrandMismatch(f"{w1.strands} != {w2.strands}")
    return is_trivial(embed(w1 * w2.inverse()))


def abelianize(word: BraidWord) -> tuple[int, int]:
    """(exponent sum of tau_0, exponent sum of all tau_i with i >= 1).

    Both counts are invariant under the defining relations, giving a fast
    certificate of inequivalence.
    """
    axis = 0
    rest = 0
    for idx, sign in word.letters:
        if idx == 0:
            axis += sign
        else:
            rest += sign
    return axis, rest


def crossing_exponent_sum(word: BraidWord) -> int:
    """Exponent sum of the ordinary (index >= 1) letters only."""
    return abelianize(word)[1]


def defining_relations(strands: int) -> list[tuple[BraidWord, BraidWord]]:
    """All defining relation instances on the given strand count.

    Far commutation for ordinary generators, the braid relation, far
    commutation with the axis twist, and the four-braid relation
    ``t0 t1 t0 t1 = t1 t0 t1 t0``.
    """
    n = strands
    rels: list[tuple[BraidWord, BraidWord]] = []

    def w(*letters: tuple[int, int]) -> BraidWord:
        return BraidWord(n, tuple(letters))

    for i in range(1, n):
        for j in range(i + 2, n):
            rels.append((w((i, 1), (j, 1)), w((j, 1), (i, 1))))
    for i in range(1, n - 1):
        j = i + 1
        rels.append((w((i, 1), (j, 1), (i, 1)), w((j, 1), (i, 1), (j, 1))))
    for i in range(2, n):
        rels.append((w((0, 1), (i, 1)), w((i, 1), (0, 1))))
    if n >= 2:
        rels.append((
            w((0, 1), (1, 1), (0, 1), (1, 1)),
            w((1, 1), (0, 1), (1, 1), (0, 1)),
        ))
    return rels


def random_word(rng, strands: int, length: int) -> BraidWord:
    """Uniform random word (for property-test corpora)."""
    letters = tuple(
        (rng.randrange(strands), rng.choice((1, -1))) for _ in range(length)
    )
    return BraidWord(strands, letters)
