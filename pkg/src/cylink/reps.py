"""Matrix representations of the cylinder braid group, checked exactly.

A candidate representation is a braiding matrix R on V (x) V plus a
cylinder-twist matrix F on V, optionally with cup/cap vectors and
point/copoint vectors.  All checks are exact: entries are rationals or
ring elements, never floats.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Sequence

from .braid import BraidWord
from .ring import LaurentPoly, NotInvertible, ParamTable


class RepsError(ValueError):
    """Base class for representation-harness errors."""


class DimensionMismatch(RepsError):
    """Matrix shapes do not fit the requested operation."""


class PreconditionFailed(RepsError):
    """A representation was used before its defining checks passed."""


class MissingField(RepsError):
    """A required optional field (cup/cap/point data) is absent."""


class FunctionalEquationViolated(RepsError):
    """Character-example tables fail bilinearity or the twist equation."""


def _scalar(value):
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"bad matrix entry {value!r}")


def _inv_scalar(value):
    if isinstance(value, LaurentPoly):
        return value.inverse()
    if value == 0:
        raise NotInvertible("zero pivot")
    return Fraction(1) / value


def _is_zero(value) -> bool:
    if isinstance(value, LaurentPoly):
        return value.is_zero()
    return value == 0


class Matrix:
    """A dense exact matrix with rational or ring-element entries."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence]):
        rows = [tuple(_scalar(x) for x in row) for row in data]
        if not rows:
            raise DimensionMismatch("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("ragged rows")
        self.rows = len(rows)
        self.cols = width
        self.data = tuple(rows)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, entries: Sequence) -> "Matrix":
        return cls([[x] for x in entries])

    @classmethod
    def row(cls, entries: Sequence) -> "Matrix":
        return cls([list(entries)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        for r1, r2 in zip(self.data, other.data):
            for x, y in zip(r1, r2):
                if not _entries_equal(x, y):
                    return False
        return True

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by "
                f"{other.rows}x{other.cols}"
            )
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = None
                for k in range(self.cols):
                    term = self.data[i][k] * other.data[k][j]
                    acc = term if acc is None else acc + term
                row.append(acc)
            out.append(row)
        return Matrix(out)

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in addition")
        return Matrix([
            [x + y for x, y in zip(r1, r2)]
            for r1, r2 in zip(self.data, other.data)
        ])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-1)

    def scale(self, factor) -> "Matrix":
        factor = _scalar(factor) if not isinstance(factor, LaurentPoly) else factor
        return Matrix([[factor * x for x in row] for row in self.data])

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker (tensor) product."""
        out = []
        for i in range(self.rows):
            for k in range(other.rows):
                row = []
                for j in range(self.cols):
                    for l in range(other.cols):
                        row.append(self.data[i][j] * other.data[k][l])
                out.append(row)
        return Matrix(out)

    def inverse(self) -> "Matrix":
        """Exact inverse by Gauss-Jordan elimination."""
        if self.rows != self.cols:
            raise DimensionMismatch("only square matrices invert")
        n = self.rows
        work = [list(row) + [Fraction(1) if i == j else Fraction(0)
                             for j in range(n)]
                for i, row in enumerate(self.data)]
        for col in range(n):
            pivot = None
            for r in range(col, n):
                if not _is_zero(work[r][col]):
                    pivot = r
                    break
            if pivot is None:
                raise NotInvertible("singular matrix")
            work[col], work[pivot] = work[pivot], work[col]
            inv = _inv_scalar(work[col][col])
            work[col] = [inv * x for x in work[col]]
            for r in range(n):
                if r == col or _is_zero(work[r][col]):
                    continue
                factor = work[r][col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
        return Matrix([row[n:] for row in work])

    def is_zero(self) -> bool:
        return all(_is_zero(x) for row in self.data for x in row)

    def first_difference(self, other: "Matrix"):
        for i in range(self.rows):
            for j in range(self.cols):
                if not _entries_equal(self.data[i][j], other.data[i][j]):
                    return {"row": i, "col": j,
                            "left": str(self.data[i][j]),
                            "right": str(other.data[i][j])}
        return None


def _entries_equal(x, y) -> bool:
    if isinstance(x, LaurentPoly) or isinstance(y, LaurentPoly):
        lx = x if isinstance(x, LaurentPoly) else LaurentPoly.const(x)
        ly = y if isinstance(y, LaurentPoly) else LaurentPoly.const(y)
        return lx == ly
    return x == y


class RepData:
    """A candidate tensor representation of the cylinder braid group."""

    def __init__(self, dim: int, R: Matrix, F: Matrix, *,
                 b: Matrix | None = None, d: Matrix | None = None,
                 b0: Matrix | None = None, d0: Matrix | None = None,
                 endos: Sequence[Matrix] = ()):
        if R.rows != R.cols or R.rows != dim * dim:
            raise DimensionMismatch(f"R must be {dim * dim}x{dim * dim}")
        if F.rows != F.cols or F.rows != dim:
            raise DimensionMismatch(f"F must be {dim}x{dim}")
        if b is not None and (b.rows, b.cols) != (dim * dim, 1):
            raise DimensionMismatch("cup vector must be d^2 x 1")
        if d is not None and (d.rows, d.cols) != (1, dim * dim):
            raise DimensionMismatch("cap vector must be 1 x d^2")
        if b0 is not None and (b0.rows, b0.cols) != (dim, 1):
            raise DimensionMismatch("point vector must be d x 1")
        if d0 is not None and (d0.rows, d0.cols) != (1, dim):
            raise DimensionMismatch("copoint vector must be 1 x d")
        self.dim = dim
        self.R = R
        self.F = F
        self.b = b
        self.d = d
        self.b0 = b0
        self.d0 = d0
        self.endos = tuple(endos)
        self._checked: bool | None = None

    def braid_checks_pass(self) -> bool:
        if self._checked is None:
            self._checked = check_ybe(self.R) and check_four_braid(self.R, self.F)
        return self._checked


def check_ybe(R: Matrix) -> bool:
    """Exact Yang-Baxter check on V (x) V (x) V."""
    if R.rows != R.cols:
        raise DimensionMismatch("R must be square")
    d2 = R.rows
    d = _isqrt(d2)
    if d * d != d2:
        raise DimensionMismatch("R must act on a tensor square")
    eye = Matrix.identity(d)
    r12 = R.kron(eye)
    r23 = eye.kron(R)
    return r12 * r23 * r12 == r23 * r12 * r23


def check_four_braid(R: Matrix, F: Matrix) -> bool:
    """Exact four-braid (reflection-type) check on V (x) V.

    Both orderings of the pair twist must agree:
    R (F x I) R (F x I) == (F x I) R (F x I) R.
    """
    d = F.rows
    if F.rows != F.cols:
        raise DimensionMismatch("F must be square")
    if R.rows != R.cols or R.rows != d * d:
        raise DimensionMismatch("R must act on the tensor square of F's space")
    fi = F.kron(Matrix.identity(d))
    return R * fi * R * fi == fi * R * fi * R


def pair_twist(R: Matrix, F: Matrix) -> Matrix:
    """The induced twist on V (x) V: R (F x I) R (F x I)."""
    fi = F.kron(Matrix.identity(F.rows))
    return R * fi * R * fi


def represent(word: BraidWord, data: RepData) -> Matrix:
    """The representing matrix of a braid word on dim^strands.

    The axis twist acts as F on the first factor; ordinary generator i
    acts as R on factors (i, i+1).  Letters multiply left to right, so
    concatenation of words maps to matrix product in the same order.
    """
    if not data.braid_checks_pass():
        raise PreconditionFailed(
            "representation data fails the braiding checks"
        )
    n = word.strands
    d = data.dim
    out = Matrix.identity(d ** n)
    eye = Matrix.identity(d)
    cache: dict[tuple[int, int], Matrix] = {}

    def gen_matrix(idx: int, sign: int) -> Matrix:
        key = (idx, sign)
        if key not in cache:
            if idx == 0:
                mat = data.F if sign > 0 else data.F.inverse()
                for _ in range(n - 1):
                    mat = mat.kron(eye)
            else:
                mat = data.R if sign > 0 else data.R.inverse()
                for _ in range(idx - 1):
                    mat = eye.kron(mat)
                for _ in range(n - idx - 1):
                    mat = mat.kron(eye)
            cache[key] = mat
        return cache[key]

    for idx, sign in word.letters:
        out = out * gen_matrix(idx, sign)
    return out


def check_point_axioms(data: RepData, table: ParamTable | None = None,
                       env: dict | None = None) -> list[dict]:
    """Check every point-structure axiom at the matrix level.

    Returns one report entry per axiom: ``{"axiom", "holds"}`` plus the
    first differing entry when an axiom fails.  The skein-compatibility
    check (the crossing/point-pair relation) runs when ``table`` and
    ``env`` are supplied.
    """
    needed = {"b": data.b, "d": data.d, "b0": data.b0, "d0": data.d0}
    missing = [k for k, v in needed.items() if v is None]
    if missing:
        raise MissingField(f"point-axiom checks need fields: {missing}")
    d = data.dim
    eye = Matrix.identity(d)
    R = data.R
    F = data.F
    b, dmat, b0, d0 = data.b, data.d, data.b0, data.d0
    report: list[dict] = []

    def add(name: str, left: Matrix, right: Matrix):
        entry = {"axiom": name, "holds": left == right}
        if not entry["holds"]:
            entry["counterexample"] = left.first_difference(right)
        report.append(entry)

    add("copoint_from_cap", dmat * b0.kron(eye), d0)
    add("point_from_cup", d0.kron(eye) * b, b0)
    add("twist_fixes_point", F * b0, b0)
    add("twist_fixes_copoint", d0 * F, d0)
    add("point_braiding", F.kron(eye) * R * b0.kron(eye),
        R.inverse() * b0.kron(eye) * F)
    add("copoint_braiding", F * d0.kron(eye),
        d0.kron(eye) * R * F.kron(eye) * R)
    T = pair_twist(R, F)
    add("pair_twist_fixes_cup", T * b, b)
    add("pair_twist_fixes_cap", dmat * T, dmat)
    for k, f in enumerate(data.endos):
        add(f"twist_endo_naturality[{k}]", F * f, f * F)
        add(f"point_endo_naturality[{k}]", f * b0, b0)
        add(f"copoint_endo_naturality[{k}]", d0 * f, d0)
    if table is not None and env is not None:
        eps = table["epsilon"].substitute(env)
        mu = table["mu"].substitute(env)
        nu = table["nu"].substitute(env)
        lhs = d0.kron(eye) * R * b0.kron(eye)
        rhs = eye.scale(eps) + F.scale(mu) + (b0 * d0).scale(nu)
        add("crossing_point_pair", lhs, rhs)
    return report


def character_example(m: int, c: Sequence[Sequence], t: Sequence) -> RepData:
    """Diagonal representation from a bilinear pairing on Z/m.

    ``c`` is an m-by-m table of units, bilinear in both slots, and ``t``
    a length-m table of units satisfying
    ``t(g+g') = c(g,g') c(g',g) t(g) t(g')``; both conditions are checked
    exhaustively.  The result acts on the group-algebra basis by
    ``R(e_g (x) e_h) = c(g,h) e_h (x) e_g`` and ``F(e_g) = t(g) e_g``.
    """
    if m < 1:
        raise RepsError("group order must be positive")
    cval = [[_scalar(x) for x in row] for row in c]
    tval = [_scalar(x) for x in t]
    if len(cval) != m or any(len(row) != m for row in cval) or len(tval) != m:
        raise DimensionMismatch("tables must be m x m and length m")
    for row in cval:
        for x in row:
            if _is_zero(x):
                raise FunctionalEquationViolated("pairing values must be units")
    for x in tval:
        if _is_zero(x):
            raise FunctionalEquationViolated("twist values must be units")
    for g in range(m):
        for g2 in range(m):
            for h in range(m):
                if not _entries_equal(
                    cval[(g + g2) % m][h], cval[g][h] * cval[g2][h]
                ):
                    raise FunctionalEquationViolated(
                        f"pairing not bilinear at c({g}+{g2},{h})"
                    )
                if not _entries_equal(
                    cval[h][(g + g2) % m], cval[h][g] * cval[h][g2]
                ):
                    raise FunctionalEquationViolated(
                        f"pairing not bilinear at c({h},{g}+{g2})"
                    )
    for g in range(m):
        for g2 in range(m):
            expect = cval[g][g2] * cval[g2][g] * tval[g] * tval[g2]
            if not _entries_equal(tval[(g + g2) % m], expect):
                raise FunctionalEquationViolated(
                    f"twist table fails at t({g}+{g2})"
                )
    zero = Fraction(0)
    R = [[zero] * (m * m) for _ in range(m * m)]
    for g in range(m):
        for h in range(m):
            R[h * m + g][g * m + h] = cval[g][h]
    F = [[tval[g] if g == h else zero for h in range(m)] for g in range(m)]
    return RepData(m, Matrix(R), Matrix(F))


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


def _matrix_from_json(obj, rows=None, cols=None) -> Matrix:
    mat = Matrix(obj)
    if rows is not None and (mat.rows, mat.cols) != (rows, cols):
        raise DimensionMismatch(
            f"expected {rows}x{cols}, got {mat.rows}x{mat.cols}"
        )
    return mat


def load_rep(source) -> RepData:
    """Load representation data from a JSON file path or dict."""
    if isinstance(source, dict):
        obj = source
    else:
        with open(source, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    if "dim" not in obj or "R" not in obj or "F" not in obj:
        raise MissingField("representation JSON needs dim, R and F")
    dim = int(obj["dim"])
    kwargs = {}
    if "b" in obj:
        kwargs["b"] = Matrix.column([row for row in obj["b"]])
    if "d" in obj:
        kwargs["d"] = Matrix.row(list(obj["d"]))
    if "b0" in obj:
        kwargs["b0"] = Matrix.column(list(obj["b0"]))
    if "d0" in obj:
        kwargs["d0"] = Matrix.row(list(obj["d0"]))
    if "endos" in obj:
        kwargs["endos"] = [Matrix(e) for e in obj["endos"]]
    return RepData(dim, _matrix_from_json(obj["R"], dim * dim, dim * dim),
                   _matrix_from_json(obj["F"], dim, dim), **kwargs)


def _isqrt(n: int) -> int:
    r = int(n ** 0.5)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r
