"""Exact arithmetic in the coefficient ring of the solid-torus invariant.

Values live in the ring of Laurent polynomials over Q in six free
parameters ``delta, lambda, alpha, gamma, x0, A1``.  The seven remaining
named parameters of the skein system (``A0, beta, Am1, x0p, epsilon, mu,
nu``) are derived Laurent polynomials in the free six; :func:`derive_params`
builds the full thirteen-entry table and :func:`verify_identities` checks
the defining identities exactly.

No floating point is used anywhere: coefficients are ``fractions.Fraction``
and all comparisons are exact.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

#: The six free parameters, in the fixed global order used by every
#: exponent vector, serialization, and monomial comparison.
VARIABLES = ("delta", "lambda", "alpha", "gamma", "x0", "A1")

_NVARS = len(VARIABLES)
_VAR_INDEV = {name: i for i, name in enumerate(VARIABLES)}

#: All thirteen named parameters of the skein system, free ones first.
PARAM_NAMES = (
    "delta", "lambda", "alpha", "gamma", "x0", "A1",
    "A0", "beta", "Am1", "x0p", "epsilon", "mu", "nu",
)

Monomial = tuple  # exponent vector of length 6, entries may be negative

_UNIT: Monomial = (0,) * _NVARS


class RingError(ValueError):
    """Base class for coefficient-ring errors."""


class ZeroAtNegativePower(RingError):
    """A parameter occurring with a negative exponent was assigned zero."""


class MissingParameter(RingError):
    """A substitution environment omits a parameter that occurs."""


class ParseError(RingError):
    """Malformed textual form of a ring element."""


class NotInvertible(RingError):
    """Inverse requested of an element that is not a unit of the ring."""


def _mono_sort_key(mono: Monomial):
    # Global monomial order: descending total degree, then descending
    # lexicographic on exponent vectors.  Equal serializations iff equal
    # elements.
    return (-sum(mono), tuple(-e for e in mono))


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class LaurentPoly:
    """Immutable multivariate Laurent polynomial over Q.

    Terms map exponent vectors (length 6, one slot per entry of
    ``VARIABLES``) to nonzero rational coefficients.
    """

    __slots__ = ("_terms", "_key")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = _as_fraction(coeff)
                if coeff == 0:
                    continue
                mono = tuple(mono)
                if len(mono) != _NVARS:
                    raise RingError(f"exponent vector {mono} has wrong length")
                clean[mono] = clean.get(mono, Fraction(0)) + coeff
                if clean[mono] == 0:
                    del clean[mono]
        self._terms = clean
        self._key = None

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({_UNIT: Fraction(1)})

    @classmethod
    def const(cls, value) -> "LaurentPoly":
        return cls({_UNIT: _as_fraction(value)})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "LaurentPoly":
        if name not in _VAR_INDEV:
            raise RingError(f"unknown parameter {name!r}")
        mono = [0] * _NVARS
        mono[_VAR_INDEV[name]] = power
        return cls({tuple(mono): Fraction(1)})

    # -- basic protocol ----------------------------------------------

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        """Terms in the global monomial order."""
        return iter(sorted(self._terms.items(), key=lambda kv: _mono_sort_key(kv[0])))

    def _sorted_key(self):
        if self._key is None:
            self._key = tuple(
                (mono, coeff)
                for mono, coeff in sorted(
                    self._terms.items(), key=lambda kv: _mono_sort_key(kv[0])
                )
            )
        return self._key

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._sorted_key())

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for mono, coeff in other._terms.items():
            acc = terms.get(mono, Fraction(0)) + coeff
            if acc == 0:
                terms.pop(mono, None)
            else:
                terms[mono] = acc
        return _raw(terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return _raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._terms or not other._terms:
            return LaurentPoly.zero()
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                acc = terms.get(mono, Fraction(0)) + c1 * c2
                if acc == 0:
                    terms.pop(mono, None)
                else:
                    terms[mono] = acc
        return _raw(terms)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "LaurentPoly":
        if not isinstance(power, int):
            raise TypeError("exponents must be integers")
        if power == 0:
            return LaurentPoly.one()
        base = self if power > 0 else self.inverse()
        out = LaurentPoly.one()
        for _ in range(abs(power)):
            out = out * base
        return out

    def inverse(self) -> "LaurentPoly":
        """Inverse of a unit (a single-term element).

        General rational functions are outside this ring; asking for the
        inverse of a multi-term element raises :class:`NotInvertible`.
        """
        if len(self._terms) != 1:
            raise NotInvertible(f"{self.to_text()!r} is not a monomial unit")
        (mono, coeff), = self._terms.items()
        return _raw({tuple(-e for e in mono): Fraction(1) / coeff})

    # -- evaluation ----------------------------------------------------

    def substitute(self, env: Mapping[str, object]) -> Fraction:
        """Exact rational value under ``env``; a ring homomorphism.

        Every parameter occurring in ``self`` must be assigned; assigning
        zero to a parameter that occurs with a negative exponent raises
        :class:`ZeroAtNegativePower`.
        """
        vals: dict[int, Fraction] = {}
        for name, value in env.items():
            if name not in _VAR_INDEV:
                raise RingError(f"unknown parameter {name!r}")
            vals[_VAR_INDEV[name]] = _as_fraction(value)
        total = Fraction(0)
        for mono, coeff in self._terms.items():
            term = coeff
            for idx, exp in enumerate(mono):
                if exp == 0:
                    continue
                if idx not in vals:
                    raise MissingParameter(
                        f"parameter {VARIABLES[idx]!r} occurs but is not assigned"
                    )
                base = vals[idx]
                if base == 0:
                    if exp < 0:
                        raise ZeroAtNegativePower(
                            f"parameter {VARIABLES[idx]!r} assigned 0 but raised "
                            f"to power {exp}"
                        )
                    term = Fraction(0)
                    break
                term *= base ** exp
            total += term
        return total

    def constant_value(self) -> Fraction:
        """The value of a constant element (raises if any variable occurs)."""
        if not self._terms:
            return Fraction(0)
        if set(self._terms) != {_UNIT}:
            raise RingError(f"{self.to_text()!r} is not constant")
        return self._terms[_UNIT]

    # -- serialization ---------------------------------------------------

    def to_text(self) -> str:
        """Canonical text form; ``parse(to_text(a)) == a``."""
        if not self._terms:
            return "0"
        chunks: list[str] = []
        for n, (mono, coeff) in enumerate(self.items()):
            sign = "-" if coeff < 0 else "+"
            body = _term_text(mono, abs(coeff))
            if n == 0:
                chunks.append(body if sign == "+" else "-" + body)
            else:
                chunks.append(f" {sign} {body}")
        return "".join(chunks)

    __str__ = to_text

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r})"

    def to_json_obj(self) -> list[dict]:
        """JSON form: list of ``{"coeff": "p/q", "exp": [...]}`` in order."""
        out = []
        for mono, coeff in self.items():
            out.append({"coeff": _frac_text(coeff), "exp": list(mono)})
        return out

    @classmethod
    def from_json_obj(cls, obj: Iterable[dict]) -> "LaurentPoly":
        terms: dict[Monomial, Fraction] = {}
        for entry in obj:
            mono = tuple(int(e) for e in entry["exp"])
            terms[mono] = terms.get(mono, Fraction(0)) + Fraction(entry["coeff"])
        return cls(terms)


def _raw(terms: dict) -> LaurentPoly:
    poly = LaurentPoly.__new__(LaurentPoly)
    poly._terms = terms
    poly._key = None
    return poly


def _coerce(value):
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return LaurentPoly.const(value)
    return NotImplemented


def _frac_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _term_text(mono: Monomial, coeff: Fraction) -> str:
    factors = []
    for name, exp in zip(VARIABLES, mono):
        if exp == 0:
            continue
        factors.append(name if exp == 1 else f"{name}^{exp}")
    if not factors:
        return _frac_text(coeff)
    if coeff == 1:
        return " ".join(factors)
    return f"{_frac_text(coeff)} * " + " ".join(factors)


_TERM_RE = re.compile(
    r"""^\s*
        (?:(?P<coeff>\d+(?:/\d+)?)\s*(?:\*\s*)?)?     # optional rational coefficient
        (?P<factors>[A-Za-z0-9_^\- ]*?)
        \s*$""",
    re.VERBOSE,
)
_FACTOR_RE = re.compile(r"^(?P<name>[A-Za-z][A-Za-z0-9]*)(?:\^(?P<exp>-?\d+))?$")


def parse_elem(text: str) -> LaurentPoly:
    """Parse the canonical text form back into an element."""
    text = text.strip()
    if not text:
        raise ParseError("empty ring-element text")
    if text == "0":
        return LaurentPoly.zero()
    # Split into signed terms at top level.
    pieces: list[tuple[int, str]] = []
    sign = 1
    buf: list[str] = []
    i = 0
    if text[0] == "-":
        sign = -1
        i = 1
    elif text[0] == "+":
        i = 1
    while i < len(text):
        ch = text[i]
        if ch in "+-" and i > 0 and text[i - 1] == " ":
            pieces.append((sign, "".join(buf)))
            buf = []
            sign = 1 if ch == "+" else -1
        else:
            buf.append(ch)
        i += 1
    pieces.append((sign, "".join(buf)))

    total = LaurentPoly.zero()
    for sgn, chunk in pieces:
        chunk = chunk.strip()
        if not chunk:
            raise ParseError(f"empty term in {text!r}")
        m = _TERM_RE.match(chunk)
        if not m:
            raise ParseError(f"bad term {chunk!r}")
        coeff = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
        mono = [0] * _NVARS
        factors = m.group("factors").split()
        for factor in factors:
            fm = _FACTOR_RE.match(factor)
            if not fm or fm.group("name") not in _VAR_INDEV:
                raise ParseError(f"bad factor {factor!r} in {chunk!r}")
            exp = int(fm.group("exp")) if fm.group("exp") else 1
            mono[_VAR_INDEV[fm.group("name")]] += exp
        total = total + LaurentPoly({tuple(mono): sgn * coeff})
    return total


# ---------------------------------------------------------------------------
# The thirteen-parameter table
# ---------------------------------------------------------------------------


class ParamTable:
    """The thirteen named skein parameters as exact ring elements.

    Free entries are bare monomials; the other seven are derived so that
    every identity checked by :func:`verify_identities` holds exactly.
    """

    __slots__ = ("entries", "_fingerprint")

    def __init__(self, entries: Mapping[str, LaurentPoly]):
        missing = [n for n in PARAM_NAMES if n not in entries]
        if missing:
            raise RingError(f"parameter table is missing entries: {missing}")
        self.entries = {n: entries[n] for n in PARAM_NAMES}
        self._fingerprint = None

    def __getitem__(self, name: str) -> LaurentPoly:
        return self.entries[name]

    def with_entry(self, name: str, value: LaurentPoly) -> "ParamTable":
        """A copy with one entry replaced (used to probe identity failures)."""
        if name not in self.entries:
            raise RingError(f"unknown parameter {name!r}")
        entries = dict(self.entries)
        entries[name] = value
        return ParamTable(entries)

    def fingerprint(self):
        if self._fingerprint is None:
            self._fingerprint = tuple(
                (name, self.entries[name]._sorted_key()) for name in PARAM_NAMES
            )
        return self._fingerprint

    def __eq__(self, other) -> bool:
        return isinstance(other, ParamTable) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.fingerprint())

    def substituted(self, env: Mapping[str, object]) -> "ParamTable":
        """Evaluate every entry at ``env``, giving a constant table."""
        out = {}
        for name, poly in self.entries.items():
            out[name] = LaurentPoly.const(poly.substitute(env))
        return ParamTable(out)


def derive_params() -> ParamTable:
    """The symbolic table: six free monomials plus seven derived entries."""
    delta = LaurentPoly.var("delta")
    lam = LaurentPoly.var("lambda")
    alpha = LaurentPoly.var("alpha")
    gamma = LaurentPoly.var("gamma")
    x0 = LaurentPoly.var("x0")
    a1 = LaurentPoly.var("A1")

    lam_inv = LaurentPoly.var("lambda", -1)
    delta_inv = LaurentPoly.var("delta", -1)
    gamma_inv = LaurentPoly.var("gamma", -1)

    a0 = LaurentPoly.one() + (lam - lam_inv) * delta_inv
    beta = LaurentPoly.one() - alpha - gamma * x0
    am1 = lam * lam * a1
    x0p = gamma_inv * (lam * lam * a1 - alpha * a1 - beta * a0)
    nu = -(alpha * lam)
    mu = gamma_inv * (alpha * delta - alpha * alpha * lam + lam_inv)
    eps = -(gamma_inv * (alpha * beta * lam + alpha * delta * a1 + beta * lam_inv))

    return ParamTable({
        "delta": delta, "lambda": lam, "alpha": alpha, "gamma": gamma,
        "x0": x0, "A1": a1,
        "A0": a0, "beta": beta, "Am1": am1, "x0p": x0p,
        "epsilon": eps, "mu": mu, "nu": nu,
    })


#: Human-readable names of the nine checked identities, in report order.
IDENTITY_NAMES = (
    "A0*delta - delta = lambda - lambda^-1",
    "1 = alpha + beta + gamma*x0",
    "Am1 = alpha*A1 + beta*A0 + gamma*x0p",
    "A1*lambda^2 = Am1",
    "gamma*x0 = 1 - alpha - beta",
    "gamma*x0p = Am1 - alpha*A1 - beta*A0",
    "nu = -alpha*lambda",
    "mu = gamma^-1 * (alpha*delta - alpha^2*lambda + lambda^-1)",
    "epsilon = -gamma^-1 * (alpha*beta*lambda + alpha*delta*A1 + beta*lambda^-1)",
)


def verify_identities(table: ParamTable) -> list[tuple[str, bool]]:
    """Check the nine parameter identities as exact ring equalities.

    The two identities involving ``gamma^-1`` are compared with ``gamma``
    cleared to both sides, which is equivalent whenever ``gamma`` is a unit
    and stays well defined for broken tables used in tests.
    """
    t = table
    one = LaurentPoly.one()
    lam_inv_like = _safe_inverse(t["lambda"])
    checks = [
        t["A0"] * t["delta"] - t["delta"] == t["lambda"] - lam_inv_like,
        one == t["alpha"] + t["beta"] + t["gamma"] * t["x0"],
        t["Am1"] == t["alpha"] * t["A1"] + t["beta"] * t["A0"] + t["gamma"] * t["x0p"],
        t["A1"] * t["lambda"] * t["lambda"] == t["Am1"],
        t["gamma"] * t["x0"] == one - t["alpha"] - t["beta"],
        t["gamma"] * t["x0p"] == t["Am1"] - t["alpha"] * t["A1"] - t["beta"] * t["A0"],
        t["nu"] == -(t["alpha"] * t["lambda"]),
        t["mu"] * t["gamma"]
        == t["alpha"] * t["delta"] - t["alpha"] * t["alpha"] * t["lambda"] + lam_inv_like,
        t["epsilon"] * t["gamma"]
        == -(t["alpha"] * t["beta"] * t["lambda"]
             + t["alpha"] * t["delta"] * t["A1"]
             + t["beta"] * lam_inv_like),
    ]
    return list(zip(IDENTITY_NAMES, checks))


def _safe_inverse(poly: LaurentPoly) -> LaurentPoly:
    try:
        return poly.inverse()
    except NotInvertible:
        # Broken test tables may make lambda non-invertible; the identities
        # involving lambda^-1 then simply fail against zero.
        return LaurentPoly.zero()


def table_verified(table: ParamTable) -> bool:
    return all(ok for _, ok in verify_identities(table))


def reduced_table(env: Mapping[str, object]) -> ParamTable:
    """Constant table in the reduced regime where ``x0`` equals ``x0p``.

    Symbolically the extra constraint pins ``A1`` only up to division by
    ``lambda^2 - alpha``, which is not a unit of the Laurent ring, so the
    reduced table requires exact rational values for the other five free
    parameters and solves for ``A1``:

        A1 = (gamma*x0 + beta*A0) / (lambda^2 - alpha)
    """
    needed = ("delta", "lambda", "alpha", "gamma", "x0")
    vals = {}
    for name in needed:
        if name not in env:
            raise RingError(f"reduced mode needs a value for {name!r}")
        vals[name] = _as_fraction(env[name])
    extra = set(env) - set(needed) - {"A1"}
    if extra:
        raise RingError(f"unexpected parameters for reduced mode: {sorted(extra)}")
    lam = vals["lambda"]
    alpha = vals["alpha"]
    delta = vals["delta"]
    gamma = vals["gamma"]
    x0 = vals["x0"]
    if delta == 0 or lam == 0 or gamma == 0:
        raise ZeroAtNegativePower("delta, lambda and gamma must be nonzero")
    if lam * lam == alpha:
        raise RingError("reduced mode is singular when lambda^2 equals alpha")
    a0 = 1 + (lam - 1 / lam) / delta
    beta = 1 - alpha - gamma * x0
    a1 = (gamma * x0 + beta * a0) / (lam * lam - alpha)
    full_env = dict(vals)
    full_env["A1"] = a1
    return derive_params().substituted(full_env)


def reduced_constraint(table: ParamTable) -> LaurentPoly:
    """The element ``x0p - x0``; zero exactly in the reduced regime."""
    return table["x0p"] - table["x0"]
