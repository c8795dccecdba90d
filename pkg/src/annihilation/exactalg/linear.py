"""Affine linear forms ``c + sum_i k_i s_i`` with rational coefficients."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Tuple

from .poly import Poly, Scalar, format_rational


class LinearForm:
    """Immutable affine form over an ordered symbol tuple.

    Coefficients are stored densely, aligned with ``symbols``.  Two forms are
    equal iff their symbols and all coefficients agree.
    """

    __slots__ = ("symbols", "constant", "coeffs")

    def __init__(self, symbols: Iterable[str], constant: Scalar = 0, coeffs: Mapping[str, Scalar] | Iterable[Scalar] = ()):
        self.symbols: Tuple[str, ...] = tuple(symbols)
        self.constant = Fraction(constant)
        if isinstance(coeffs, Mapping):
            unknown = set(coeffs) - set(self.symbols)
            if unknown:
                raise ValueError(f"unknown symbols {sorted(unknown)}")
            self.coeffs = tuple(Fraction(coeffs.get(s, 0)) for s in self.symbols)
        else:
            vals = tuple(Fraction(c) for c in coeffs)
            if vals and len(vals) != len(self.symbols):
                raise ValueError("coefficient vector does not match symbols")
            self.coeffs = vals or (Fraction(0),) * len(self.symbols)

    @classmethod
    def from_poly(cls, p: Poly) -> "LinearForm":
        if p.total_degree() > 1:
            raise ValueError(f"{p} is not linear")
        n = len(p.symbols)
        coeffs = [Fraction(0)] * n
        constant = Fraction(0)
        for e, c in p.terms.items():
            if any(e):
                coeffs[e.index(1)] = c
            else:
                constant = c
        return cls(p.symbols, constant, coeffs)

    def to_poly(self) -> Poly:
        n = len(self.symbols)
        terms = {(0,) * n: self.constant}
        for k, c in enumerate(self.coeffs):
            terms[tuple(int(i == k) for i in range(n))] = c
        return Poly(self.symbols, terms)

    def coefficient(self, symbol: str) -> Fraction:
        return self.coeffs[self.symbols.index(symbol)]

    def is_constant(self) -> bool:
        return not any(self.coeffs)

    def is_zero(self) -> bool:
        return self.is_constant() and not self.constant

    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        total = self.constant
        for s, c in zip(self.symbols, self.coeffs):
            if c:
                total += c * Fraction(values[s])
        return total

    def primitive(self) -> Tuple[Fraction, "LinearForm"]:
        """``(content, form)`` with integer coefficients of gcd 1 and a positive leading symbol coefficient.

        A constant form yields ``(value, LinearForm(1))``.
        """
        if self.is_constant():
            return self.constant, LinearForm(self.symbols, 1)
        vals = (self.constant,) + self.coeffs
        l = 1
        for v in vals:
            l = l * v.denominator // math.gcd(l, v.denominator)
        g = 0
        for v in vals:
            g = math.gcd(g, (v * l).numerator)
        content = Fraction(g, l)
        lead = next(c for c in self.coeffs if c)
        if lead < 0:
            content = -content
        return content, self.scale(1 / content)

    def is_primitive(self) -> bool:
        c, _ = self.primitive()
        return c == 1

    def scale(self, k: Scalar) -> "LinearForm":
        return LinearForm(self.symbols, self.constant * k, [c * k for c in self.coeffs])

    def __add__(self, other):
        if isinstance(other, LinearForm):
            if other.symbols != self.symbols:
                raise ValueError("symbol mismatch")
            return LinearForm(self.symbols, self.constant + other.constant,
                              [x + y for x, y in zip(self.coeffs, other.coeffs)])
        if isinstance(other, (int, Fraction)):
            return LinearForm(self.symbols, self.constant + other, self.coeffs)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "LinearForm":
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __eq__(self, other) -> bool:
        if isinstance(other, LinearForm):
            return (self.symbols, self.constant, self.coeffs) == (other.symbols, other.constant, other.coeffs)
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self.constant)
        return hash((self.symbols, self.constant, self.coeffs))

    def sort_key(self) -> str:
        return str(self)

    def __str__(self) -> str:
        # Constant first, then symbols in declared order: "1+2a", "2a+b", "-1-2a".
        parts = []
        if self.constant:
            parts.append(format_rational(self.constant))
        for s, c in zip(self.symbols, self.coeffs):
            if not c:
                continue
            mag = abs(c)
            body = s if mag == 1 else f"{format_rational(mag)}{s}"
            parts.append(("-" if c < 0 else "") + body)
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self) -> str:
        return f"LinearForm({self})"
