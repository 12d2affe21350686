"""Exact Laurent polynomials in one variable with integer coefficients."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from fractions import Fraction


class LaurentPolynomial:
    """An immutable Laurent polynomial stored as ``{exponent: coefficient}``.

    Zero coefficients are never stored, so equality is structural.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()) -> None:
        acc: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, coeff in items:
            if coeff:
                acc[exp] = acc.get(exp, 0) + coeff
        self._terms = {e: c for e, c in sorted(acc.items()) if c}
        self._hash: int | None = None

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> LaurentPolynomial:
        return cls({exponent: coefficient})

    @classmethod
    def constant(cls, value: int) -> LaurentPolynomial:
        return cls({0: value})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def min_degree(self) -> int:
        return min(self._terms) if self._terms else 0

    def max_degree(self) -> int:
        return max(self._terms) if self._terms else 0

    def __add__(self, other: LaurentPolynomial | int) -> LaurentPolynomial:
        other = _coerce(other)
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPolynomial(acc)

    __radd__ = __add__

    def __neg__(self) -> LaurentPolynomial:
        return LaurentPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: LaurentPolynomial | int) -> LaurentPolynomial:
        return self + (-_coerce(other))

    def __rsub__(self, other: LaurentPolynomial | int) -> LaurentPolynomial:
        return _coerce(other) - self

    def __mul__(self, other: LaurentPolynomial | int) -> LaurentPolynomial:
        other = _coerce(other)
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(acc)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> LaurentPolynomial:
        if power < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be inverted")
            ((e, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPolynomial({-e * -power: c ** -power})
        result = LaurentPolynomial.constant(1)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def exact_div(self, divisor: LaurentPolynomial) -> LaurentPolynomial:
        """Exact division; raises ``ValueError`` if a remainder is left."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self
        lead_e = divisor.max_degree()
        lead_c = divisor._terms[lead_e]
        lowest_shift = self.min_degree() - divisor.min_degree()
        rem = dict(self._terms)
        quot: dict[int, int] = {}
        while rem:
            top = max(rem)
            shift = top - lead_e
            if shift < lowest_shift or rem[top] % lead_c:
                raise ValueError("inexact division")
            q = rem[top] // lead_c
            quot[shift] = q
            for e, dc in divisor._terms.items():
                v = rem.get(e + shift, 0) - q * dc
                if v:
                    rem[e + shift] = v
                else:
                    rem.pop(e + shift, None)
        return LaurentPolynomial(quot)

    def substitute_power(self, factor: int) -> LaurentPolynomial:
        """Replace the variable ``x`` by ``x**factor``."""
        return LaurentPolynomial({e * factor: c for e, c in self._terms.items()})

    def in_t(self) -> dict[Fraction, int]:
        """Rewrite a polynomial in ``A`` as one in ``t = A**-4``.

        Links give half-integer powers of ``t``, hence the ``Fraction`` keys.
        """
        return {Fraction(-e, 4): c for e, c in sorted(self._terms.items(), reverse=True)}

    def to_t_string(self) -> str:
        terms = self.in_t()
        if not terms:
            return "0"
        parts = []
        for e, c in terms.items():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = "t" if e == 1 else f"t^({e})" if e.denominator != 1 else f"t^{e}"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append(f"{sign} {body}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def to_string(self, var: str = "A") -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = var if e == 1 else f"{var}^{e}"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append(f"{sign} {body}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.to_string()!r})"

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in self._terms.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> LaurentPolynomial:
        return cls({int(e): int(c) for e, c in data.items()})


def _coerce(value: LaurentPolynomial | int) -> LaurentPolynomial:
    if isinstance(value, LaurentPolynomial):
        return value
    if isinstance(value, int):
        return LaurentPolynomial.constant(value)
    raise TypeError(f"cannot combine LaurentPolynomial with {type(value).__name__}")


A = LaurentPolynomial.monomial(1)
LOOP_VALUE = -(A**2) - A ** -2
