"""Exact multivariate Laurent polynomial arithmetic over the integers.

Cluster variables live here: every variable produced by an exchange
relation is a Laurent polynomial in the initial variables x1..xn with
integer coefficients, and all engine arithmetic stays integral.  Any
division that fails to be exact is surfaced as a hard error instead of
silently widening the coefficient ring.
"""

from __future__ import annotations

from typing import Iterator, Mapping


class InexactDivisionError(ArithmeticError):
    """No exact integer Laurent quotient exists for the requested division."""


def _same_arity(a: "LaurentPoly", b: "LaurentPoly") -> None:
    if a.nvars != b.nvars:
        raise ValueError(f"arity mismatch: {a.nvars} vs {b.nvars} variables")


class LaurentPoly:
    """A Laurent polynomial in x1..xn with integer coefficients.

    Terms map integer exponent vectors (length ``nvars``, entries may be
    negative) to nonzero integer coefficients.  Zero coefficients are never
    stored and the zero polynomial is the empty map, so structural equality
    coincides with mathematical equality and two construction orders of the
    same polynomial hash identically.
    """

    __slots__ = ("nvars", "_terms", "_key", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], int] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean: dict[tuple[int, ...], int] = {}
        if terms:
            for exps, coeff in terms.items():
                if len(exps) != nvars:
                    raise ValueError(
                        f"exponent vector {exps!r} has length {len(exps)}, expected {nvars}"
                    )
                c = int(coeff)
                if c:
                    clean[tuple(int(e) for e in exps)] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_key", tuple(sorted(clean.items())))
        object.__setattr__(self, "_hash", hash((nvars, self._key)))

    def __setattr__(self, name, value):  # immutable value type
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, i: int) -> "LaurentPoly":
        """The initial variable x_i, 1-based."""
        if not 1 <= i <= nvars:
            raise ValueError(f"variable index {i} out of range 1..{nvars}")
        exps = [0] * nvars
        exps[i - 1] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, nvars: int, exps, coeff: int = 1) -> "LaurentPoly":
        return cls(nvars, {tuple(exps): coeff})

    # -- inspection --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_one(self) -> bool:
        return self._key == (((0,) * self.nvars, 1),)

    @property
    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def terms(self) -> Iterator[tuple[tuple[int, ...], int]]:
        """Terms in canonical (ascending lexicographic) order."""
        return iter(self._key)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, exps) -> int:
        return self._terms.get(tuple(exps), 0)

    @property
    def sort_key(self):
        """Deterministic total-order key; used to canonicalize clusters."""
        return self._key

    def min_exponents(self) -> tuple[int, ...]:
        """Componentwise minimum exponent across terms; zero polynomial rejected."""
        if self.is_zero:
            raise ValueError("zero polynomial has no exponent range")
        cols = zip(*self._terms)
        return tuple(min(col) for col in cols)

    def max_exponents(self) -> tuple[int, ...]:
        if self.is_zero:
            raise ValueError("zero polynomial has no exponent range")
        cols = zip(*self._terms)
        return tuple(max(col) for col in cols)

    def denominator_vector(self) -> tuple[int, ...]:
        """Componentwise negation of the minimum exponent of each variable."""
        return tuple(-m for m in self.min_exponents())

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        _same_arity(self, other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly(self.nvars, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        _same_arity(self, other)
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return LaurentPoly(self.nvars, out)

    def __pow__(self, k: int) -> "LaurentPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def exact_div(self, den: "LaurentPoly") -> "LaurentPoly":
        """Return q with q * den == self, exactly.

        Iterated leading-term elimination under the lexicographic monomial
        order; the divisor's leading term is fixed once.  If self = q * den
        then for every variable the quotient's exponent range is pinned to
        (min(num) - min(den), max(num) - max(den)): the leading coefficients
        of num and den as polynomials in that single variable are nonzero
        Laurent polynomials over an integral domain, so degrees add.  Any
        candidate quotient term stepping outside that box, or any leading
        coefficient that den's leading coefficient does not divide, proves
        the division inexact.  Quotient terms appear in strictly decreasing
        lexicographic order inside a finite box, so the loop terminates.
        """
        if not isinstance(den, LaurentPoly):
            raise TypeError("divisor must be a LaurentPoly")
        _same_arity(self, den)
        if den.is_zero:
            raise ZeroDivisionError("Laurent division by zero")
        if self.is_zero:
            return LaurentPoly.zero(self.nvars)

        num_min, num_max = self.min_exponents(), self.max_exponents()
        den_min, den_max = den.min_exponents(), den.max_exponents()
        box_lo = tuple(a - b for a, b in zip(num_min, den_min))
        box_hi = tuple(a - b for a, b in zip(num_max, den_max))
        if any(lo > hi for lo, hi in zip(box_lo, box_hi)):
            raise InexactDivisionError("quotient exponent box is empty")

        den_lead = max(den._terms)
        den_lc = den._terms[den_lead]
        rem = dict(self._terms)
        quo: dict[tuple[int, ...], int] = {}
        while rem:
            r_lead = max(rem)
            r_lc = rem[r_lead]
            q_exp = tuple(a - b for a, b in zip(r_lead, den_lead))
            if any(e < lo or e > hi for e, lo, hi in zip(q_exp, box_lo, box_hi)):
                raise InexactDivisionError("quotient term outside exponent box")
            if r_lc % den_lc:
                raise InexactDivisionError("leading coefficient not divisible")
            q_c = r_lc // den_lc
            quo[q_exp] = q_c
            for e, c in den._terms.items():
                t = tuple(a + b for a, b in zip(q_exp, e))
                s = rem.get(t, 0) - q_c * c
                if s:
                    rem[t] = s
                else:
                    rem.pop(t, None)
        return LaurentPoly(self.nvars, quo)

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "LaurentPoly") -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (self.nvars, self._key) < (other.nvars, other._key)

    # -- display -----------------------------------------------------------

    def __str__(self) -> str:
        """Canonical display: terms in ascending lexicographic exponent order."""
        if self.is_zero:
            return "0"
        parts: list[str] = []
        for exps, coeff in self._key:
            mono = _monomial_str(exps)
            mag = abs(coeff)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if coeff > 0 else '-'} {body}")
        return " ".join(parts)

    def factored_str(self) -> str:
        """Display as ``numerator/monomial`` clearing all negative exponents."""
        if self.is_zero:
            return "0"
        mins = self.min_exponents()
        shift = tuple(max(0, -m) for m in mins)
        den = _monomial_str(tuple(-s for s in shift))
        if not den:
            return str(self)
        num = self * LaurentPoly.monomial(self.nvars, shift)
        num_str = str(num)
        if len(num) > 1:
            num_str = f"({num_str})"
        if len([s for s in shift if s]) > 1 or any(s > 1 for s in shift):
            den = f"({_monomial_str(shift)})"
        else:
            den = _monomial_str(shift)
        return f"{num_str}/{den}"

    def __repr__(self) -> str:
        return f"LaurentPoly({self.nvars}, {dict(self._key)!r})"

    # -- serialization -----------------------------------------------------

    def to_obj(self) -> dict:
        """JSON-safe form; coefficients as decimal strings (may exceed 2^53)."""
        return {
            "nvars": self.nvars,
            "terms": [[list(e), str(c)] for e, c in self._key],
            "display": str(self),
            "factored": self.factored_str(),
        }

    @classmethod
    def from_obj(cls, obj: Mapping) -> "LaurentPoly":
        terms = {tuple(e): int(c) for e, c in obj["terms"]}
        return cls(int(obj["nvars"]), terms)


def _monomial_str(exps: tuple[int, ...]) -> str:
    parts = []
    for i, e in enumerate(exps, start=1):
        if e == 0:
            continue
        parts.append(f"x{i}" if e == 1 else f"x{i}^{e}")
    return "*".join(parts)
