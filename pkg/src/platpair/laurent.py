"""Exact sparse Laurent polynomial arithmetic in half-integer powers of q.

Exponents are stored as plain integers counting units of q^(1/2), so a key
``k`` stands for the monomial q^(k/2).  Coefficients are arbitrary-precision
Python integers and zero coefficients are never stored, which makes equality
exact coefficient-map equality.  Instances are immutable; every operation
returns a fresh value, so they are safe to share between threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterator, Mapping, Tuple


class NonDivisibleError(ArithmeticError):
    """Requested exact quotient does not exist in the Laurent ring."""


class LaurentPoly:
    """Sparse integer Laurent polynomial in q^(1/2)."""

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        data: Dict[int, int] = {}
        if coeffs:
            for exp, c in coeffs.items():
                if c:
                    data[int(exp)] = int(c)
        self._coeffs = data
        self._hash: int | None = None

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly({0: 1})

    @staticmethod
    def monomial(coeff: int, half_exponent: int) -> "LaurentPoly":
        """coeff * q^(half_exponent / 2)."""
        return LaurentPoly({half_exponent: coeff})

    @staticmethod
    def q_power(half_exponent: int) -> "LaurentPoly":
        return LaurentPoly({half_exponent: 1})

    # -- inspection -------------------------------------------------------

    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(sorted(self._coeffs.items()))

    def coefficient(self, half_exponent: int) -> int:
        return self._coeffs.get(half_exponent, 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_monomial(self) -> bool:
        return len(self._coeffs) == 1

    def min_half_exponent(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no exponents")
        return min(self._coeffs)

    def max_half_exponent(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no exponents")
        return max(self._coeffs)

    # -- ring operations --------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        data = dict(self._coeffs)
        for exp, c in other._coeffs.items():
            s = data.get(exp, 0) + c
            if s:
                data[exp] = s
            else:
                data.pop(exp, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._coeffs = data
        out._hash = None
        return out

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly.__new__(LaurentPoly)
        out._coeffs = {e: -c for e, c in self._coeffs.items()}
        out._hash = None
        return out

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        data: Dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                e = e1 + e2
                s = data.get(e, 0) + c1 * c2
                if s:
                    data[e] = s
                else:
                    data.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._coeffs = data
        out._hash = None
        return out

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are not defined for polynomials")
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, coeff: int, half_exponent: int = 0) -> "LaurentPoly":
        """Multiply by the monomial coeff * q^(half_exponent/2)."""
        if coeff == 0:
            return LaurentPoly.zero()
        out = LaurentPoly.__new__(LaurentPoly)
        out._coeffs = {e + half_exponent: c * coeff for e, c in self._coeffs.items()}
        out._hash = None
        return out

    def bar(self) -> "LaurentPoly":
        """The involution q^(1/2) -> q^(-1/2) (complex conjugation on |q|=1)."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._coeffs = {-e: c for e, c in self._coeffs.items()}
        out._hash = None
        return out

    # -- comparison -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._coeffs.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    # -- rendering ---------------------------------------------------------

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for exp, c in sorted(self._coeffs.items()):
            if exp == 0:
                parts.append(str(c))
            elif exp % 2 == 0:
                parts.append(f"{c}*q^{exp // 2}")
            else:
                parts.append(f"{c}*q^({exp}/2)")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self._coeffs!r})"

    def to_json(self) -> Dict[str, int]:
        """JSON object mapping stringified half-exponents to coefficients."""
        return {str(e): c for e, c in sorted(self._coeffs.items())}

    @staticmethod
    def from_json(obj: Mapping[str, int]) -> "LaurentPoly":
        return LaurentPoly({int(k): int(v) for k, v in obj.items()})


def quantum_integer(k: int) -> LaurentPoly:
    """[k] = q^((k-1)/2) + q^((k-3)/2) + ... + q^(-(k-1)/2), for k >= 1."""
    if k < 1:
        raise ValueError(f"quantum integer requires k >= 1, got {k}")
    return LaurentPoly({e: 1 for e in range(-(k - 1), k, 2)})


def divide_exact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact quotient c with b * c == a.

    Raises NonDivisibleError when b is zero or does not divide a; callers
    treat that as a correctness alarm rather than a recoverable condition.
    """
    if b.is_zero():
        raise NonDivisibleError("division by zero polynomial")
    if a.is_zero():
        return LaurentPoly.zero()

    # Shift both operands to ordinary polynomials with minimal exponent 0.
    sa, sb = a.min_half_exponent(), b.min_half_exponent()
    da = {e - sa: Fraction(c) for e, c in a._coeffs.items()}
    db = {e - sb: Fraction(c) for e, c in b._coeffs.items()}
    deg_b = max(db)
    lead_b = db[deg_b]

    quot: Dict[int, Fraction] = {}
    rem = dict(da)
    while rem:
        deg_r = max(rem)
        if deg_r < deg_b:
            raise NonDivisibleError("polynomials do not divide exactly")
        f = rem[deg_r] / lead_b
        e = deg_r - deg_b
        quot[e] = quot.get(e, Fraction(0)) + f
        for eb, cb in db.items():
            key = eb + e
            val = rem.get(key, Fraction(0)) - f * cb
            if val:
                rem[key] = val
            else:
                rem.pop(key, None)

    out: Dict[int, int] = {}
    for e, c in quot.items():
        if c.denominator != 1:
            raise NonDivisibleError("quotient is not integral")
        if c:
            out[e + sa - sb] = int(c)
    return LaurentPoly(out)
