"""Exact Laurent polynomials in one variable ``A`` over the integers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

UNIT_TOL = 1e-12


class LaurentInt:
    """Sparse Laurent polynomial ``sum c_k A^k`` with Python-int coefficients.

    Instances are immutable and hashable.  Zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] | None = None):
        acc: dict[int, int] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for k, c in items:
                k, c = int(k), int(c)
                acc[k] = acc.get(k, 0) + c
        self._terms = {k: c for k, c in sorted(acc.items()) if c}
        self._hash = None

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> LaurentInt:
        return cls({k: c})

    @classmethod
    def const(cls, c: int) -> LaurentInt:
        return cls({0: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def min_exp(self) -> int:
        return next(iter(self._terms)) if self._terms else 0

    @property
    def max_exp(self) -> int:
        return next(reversed(self._terms)) if self._terms else 0

    def coeff(self, k: int) -> int:
        return self._terms.get(k, 0)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __neg__(self) -> LaurentInt:
        return LaurentInt({k: -c for k, c in self._terms.items()})

    def __add__(self, other) -> LaurentInt:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentInt(out)

    __radd__ = __add__

    def __sub__(self, other) -> LaurentInt:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> LaurentInt:
        return (-self) + other

    def __mul__(self, other) -> LaurentInt:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, int] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return LaurentInt(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> LaurentInt:
        if e < 0:
            if len(self._terms) != 1:
                raise ArithmeticError("only monomials are invertible in Z[A, A^-1]")
            (k, c), = self._terms.items()
            if abs(c) != 1:
                raise ArithmeticError("only unit monomials are invertible")
            return LaurentInt({k * e: c ** (-e)})
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c: int, k: int) -> LaurentInt:
        """Multiply by the monomial ``c * A^k``."""
        return LaurentInt({e + k: c * v for e, v in self._terms.items()})

    def exact_div(self, divisor: LaurentInt) -> LaurentInt:
        """Quotient by ``divisor``; raises ArithmeticError on a nonzero remainder.

        The divisor's leading coefficient must be +-1 so the quotient stays
        integral.
        """
        divisor = _coerce(divisor)
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self:
            return ZERO
        lead_k = divisor.max_exp
        lead_c = divisor._terms[lead_k]
        if abs(lead_c) != 1:
            raise ArithmeticError("divisor must have a unit leading coefficient")
        rem = dict(self._terms)
        quot: dict[int, int] = {}
        lowest_q = self.min_exp - divisor.min_exp
        while rem:
            q_k = max(rem) - lead_k
            if q_k < lowest_q:
                break
            q_c = rem[q_k + lead_k] * lead_c
            quot[q_k] = q_c
            for k, c in divisor._terms.items():
                e = k + q_k
                v = rem.get(e, 0) - q_c * c
                if v:
                    rem[e] = v
                else:
                    rem.pop(e, None)
        if rem:
            raise ArithmeticError(
                f"{self.to_text()} is not divisible by {divisor.to_text()}")
        return LaurentInt(quot)

    def eval_unit(self, A: complex) -> complex:
        """Numeric value at a unit-modulus complex ``A``."""
        A = complex(A)
        if abs(abs(A) - 1.0) > UNIT_TOL:
            raise ValueError(f"|A| = {abs(A)!r} is not 1")
        return self.eval(A)

    def eval(self, A: complex) -> complex:
        A = complex(A)
        return complex(sum(c * A ** k for k, c in self._terms.items()))

    def to_text(self, var: str = "A") -> str:
        return _format_terms(self._terms.items(), var, lambda k: str(k))

    def to_json(self) -> list[list[int]]:
        return [[k, c] for k, c in self._terms.items()]

    @classmethod
    def from_json(cls, data: Iterable[Iterable[int]]) -> LaurentInt:
        return cls((int(k), int(c)) for k, c in data)

    def __repr__(self) -> str:
        return f"LaurentInt({self.to_text()!r})"

    __str__ = to_text


def _coerce(x) -> LaurentInt:
    if isinstance(x, LaurentInt):
        return x
    if isinstance(x, int):
        return LaurentInt.const(x)
    return NotImplemented


def _format_terms(items, var, fmt_exp) -> str:
    parts = []
    for k, c in items:
        if k == 0:
            body = str(abs(c))
        else:
            mag = "" if abs(c) == 1 else str(abs(c))
            body = f"{mag}{var}" if k == 1 else f"{mag}{var}^{fmt_exp(k)}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts) if parts else "0"


ZERO = LaurentInt()
ONE = LaurentInt.const(1)
A = LaurentInt.monomial(1)
#: loop value d = -A^2 - A^-2
LOOP = LaurentInt({2: -1, -2: -1})
#: curl factor -A^3
CURL = LaurentInt.monomial(3, -1)


@dataclass(frozen=True)
class QuarterLaurent:
    """Laurent polynomial in ``t`` with exponents in (1/4)Z, e.g. a Jones polynomial."""

    terms: tuple[tuple[Fraction, int], ...]

    def coeff(self, e: Union[int, Fraction]) -> int:
        return dict(self.terms).get(Fraction(e), 0)

    def to_text(self) -> str:
        def fmt(e: Fraction) -> str:
            return str(e.numerator) if e.denominator == 1 else f"({e})"
        return _format_terms(self.terms, "t", fmt)

    def to_json(self) -> list[list]:
        return [[int(e) if e.denominator == 1 else str(e), c] for e, c in self.terms]

    def eval(self, A: complex) -> complex:
        """Value at ``t = A^-4``, taking the quarter root ``t^(1/4) = A^-1``."""
        s = 1 / complex(A)
        return complex(sum(c * s ** int(4 * e) for e, c in self.terms))

    def __str__(self) -> str:
        return self.to_text()


def substitute_quarter_power(poly: LaurentInt) -> QuarterLaurent:
    """Substitute ``A = t^(-1/4)``: ``A^k`` becomes ``t^(-k/4)``."""
    terms = sorted((Fraction(-k, 4), c) for k, c in poly.terms.items())
    return QuarterLaurent(tuple(terms))


def monomial_scale(poly: LaurentInt, c: int, k: int) -> LaurentInt:
    """``poly * c * A^k``."""
    return poly.scale(c, k)
