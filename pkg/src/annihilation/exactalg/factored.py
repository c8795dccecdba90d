"""Rational functions whose denominators are products of linear forms.

Every denominator arising in the steady-state solve is a product of affine
forms, so a denominator is kept as a multiset of primitive
:class:`LinearForm` objects and never expanded.  Gauss's lemma makes the
representation canonical: a rational content, a primitive numerator with
positive lex-leading coefficient, and a multiset of primitive forms none of
which divides the numerator.
"""
from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Tuple

from .linear import LinearForm
from .poly import Poly, Scalar, format_rational


def _counter_key(items: Counter) -> Tuple:
    return tuple(sorted(((str(f), m) for f, m in items.items())))


class FactoredRational:
    __slots__ = ("symbols", "content", "numerator", "denominator")

    def __init__(self, symbols: Iterable[str], content: Scalar = 1, numerator: Optional[Poly] = None,
                 denominator: Optional[Mapping[LinearForm, int]] = None, *, normalize: bool = True):
        self.symbols = tuple(symbols)
        self.content = Fraction(content)
        self.numerator = numerator if numerator is not None else Poly.constant(self.symbols, 1)
        self.denominator: Counter = Counter(denominator or {})
        if normalize:
            self._normalize()

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_scalar(cls, symbols: Iterable[str], value) -> "FactoredRational":
        symbols = tuple(symbols)
        if isinstance(value, FactoredRational):
            return value
        if isinstance(value, Poly):
            return cls(symbols, 1, value)
        if isinstance(value, LinearForm):
            return cls(symbols, 1, value.to_poly())
        return cls(symbols, value)

    def _normalize(self) -> None:
        c, prim = self.numerator.primitive()
        if c == 0 or self.content == 0:
            self.content = Fraction(0)
            self.numerator = Poly.constant(self.symbols, 1)
            self.denominator = Counter()
            return
        self.content *= c
        self.numerator = prim
        den: Counter = Counter()
        for form, mult in self.denominator.items():
            if mult <= 0:
                continue
            fc, fp = form.primitive()
            if fc == 0:
                raise ZeroDivisionError("zero linear form in denominator")
            self.content /= fc ** mult
            if not fp.is_constant():
                den[fp] += mult
        self.denominator = den
        self._cancel()

    def _cancel(self) -> None:
        """Trial-divide the numerator by each denominator form until none divides."""
        changed = True
        while changed:
            changed = False
            for form in list(self.denominator):
                q = self.numerator.divide_linear(form.to_poly())
                if q is not None:
                    c, prim = q.primitive()
                    self.content *= c
                    self.numerator = prim
                    self.denominator[form] -= 1
                    if not self.denominator[form]:
                        del self.denominator[form]
                    changed = True

    # -- inspection ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.content == 0

    def denominator_content(self) -> int:
        return self.content.denominator

    def numerator_poly(self) -> Poly:
        """Integral numerator of the reduced form over the integers."""
        return self.numerator * self.content.numerator

    def denominator_poly(self) -> Poly:
        p = Poly.constant(self.symbols, self.content.denominator)
        for form, m in self.denominator.items():
            p = p * form.to_poly() ** m
        return p

    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        den = Fraction(1)
        for form, m in self.denominator.items():
            v = form.evaluate(values)
            if v == 0:
                raise ZeroDivisionError(f"denominator factor {form} vanishes at {dict(values)}")
            den *= v ** m
        return self.content * self.numerator.evaluate(values) / den

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> Optional["FactoredRational"]:
        if isinstance(other, FactoredRational):
            if other.symbols != self.symbols:
                raise ValueError("symbol mismatch")
            return other
        if isinstance(other, (int, Fraction, Poly, LinearForm)):
            return FactoredRational.from_scalar(self.symbols, other)
        return None

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return FactoredRational(self.symbols, 0)
        return FactoredRational(self.symbols, self.content * o.content, self.numerator * o.numerator,
                                self.denominator + o.denominator)

    __rmul__ = __mul__

    def divide_form(self, form: LinearForm) -> "FactoredRational":
        return FactoredRational(self.symbols, self.content, self.numerator, self.denominator + Counter({form: 1}))

    def __truediv__(self, other):
        if isinstance(other, LinearForm):
            return self.divide_form(other)
        if isinstance(other, (int, Fraction)):
            return FactoredRational(self.symbols, self.content / other, self.numerator, self.denominator)
        if isinstance(other, Poly) and other.total_degree() <= 1:
            return self.divide_form(LinearForm.from_poly(other))
        return NotImplemented

    def __neg__(self) -> "FactoredRational":
        return FactoredRational(self.symbols, -self.content, self.numerator, self.denominator, normalize=False)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        common = self.denominator | o.denominator
        n1 = self.numerator * _expand(common - self.denominator, self.symbols) * self.content
        n2 = o.numerator * _expand(common - o.denominator, self.symbols) * o.content
        return FactoredRational(self.symbols, 1, n1 + n2, common)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __eq__(self, other) -> bool:
        o = self._coerce(other) if not isinstance(other, FactoredRational) else other
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return self.is_zero() and o.is_zero()
        return (self.content == o.content and self.numerator == o.numerator
                and self.denominator == o.denominator)

    def __hash__(self) -> int:
        if self.is_zero():
            return hash(0)
        if not self.denominator and self.numerator.is_constant():
            return hash(self.content)
        return hash((self.content, self.numerator, _counter_key(self.denominator)))

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- output -------------------------------------------------------------
    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        num = self.numerator * self.content.numerator
        text = str(num)
        den_parts = []
        if self.content.denominator != 1:
            den_parts.append(str(self.content.denominator))
        for form, m in sorted(self.denominator.items(), key=lambda t: str(t[0])):
            den_parts.append(f"({form})" + (f"^{m}" if m > 1 else ""))
        if not den_parts:
            return text
        if len(num.terms) > 1:
            text = f"({text})"
        return f"{text}/" + ("*".join(den_parts) if len(den_parts) == 1 else "(" + "*".join(den_parts) + ")")

    def __repr__(self) -> str:
        return f"FactoredRational({self})"


def _expand(forms: Counter, symbols: Tuple[str, ...]) -> Poly:
    p = Poly.constant(symbols, 1)
    for form, m in forms.items():
        for _ in range(m):
            p = p * form.to_poly()
    return p


def reduce(f: FactoredRational) -> FactoredRational:
    """Rationally reduced form (construction already reduces; kept explicit for callers)."""
    return FactoredRational(f.symbols, f.content, f.numerator, f.denominator)


class FactorProduct:
    """A product ``content * prod form^mult`` kept factored.

    Used for partition functions and lcm's of denominators.  Forms are
    primitive and non-constant; all integers live in ``content``.
    """

    __slots__ = ("symbols", "content", "factors")

    def __init__(self, symbols: Iterable[str], content: Scalar = 1, factors: Optional[Mapping[LinearForm, int]] = None):
        self.symbols = tuple(symbols)
        self.content = Fraction(content)
        self.factors: Counter = Counter()
        for form, m in (factors or {}).items():
            if m <= 0:
                continue
            c, p = form.primitive()
            self.content *= c ** m
            if not p.is_constant():
                self.factors[p] += m

    @classmethod
    def of_forms(cls, symbols: Iterable[str], forms: Iterable[LinearForm]) -> "FactorProduct":
        return cls(symbols, 1, Counter(forms))

    def degree(self) -> int:
        return sum(self.factors.values())

    def __mul__(self, other: "FactorProduct") -> "FactorProduct":
        return FactorProduct(self.symbols, self.content * other.content, self.factors + other.factors)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FactorProduct):
            return NotImplemented
        return self.content == other.content and self.factors == other.factors

    def __hash__(self) -> int:
        return hash((self.content, _counter_key(self.factors)))

    def difference(self, other: "FactorProduct") -> Tuple[Counter, Counter]:
        """Factors only in self, factors only in other (multiset differences)."""
        return self.factors - other.factors, other.factors - self.factors

    def expand(self) -> Poly:
        return _expand(self.factors, self.symbols) * self.content

    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        v = self.content
        for form, m in self.factors.items():
            v *= form.evaluate(values) ** m
        return v

    def __str__(self) -> str:
        parts = []
        if self.content != 1 or not self.factors:
            parts.append(_format_content(self.content))
        for form, m in sorted(self.factors.items(), key=lambda t: str(t[0])):
            parts.append(f"({form})" + (f"^{m}" if m > 1 else ""))
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"FactorProduct({self})"


def _format_content(c: Fraction) -> str:
    """Integers render as prime powers (``8 -> 2^3``); other rationals plainly."""
    if c.denominator != 1 or c <= 1:
        return format_rational(c)
    n = c.numerator
    parts = []
    p = 2
    while p * p <= n:
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        if k:
            parts.append(f"{p}^{k}" if k > 1 else str(p))
        p += 1
    if n > 1:
        parts.append(str(n))
    return "*".join(parts)


def lcm_denominators(fs: Iterable[FactoredRational]) -> FactorProduct:
    """Least common multiple of reduced denominators: integer lcm of contents, multiset max of forms."""
    symbols: Optional[Tuple[str, ...]] = None
    content = 1
    forms: Counter = Counter()
    for f in fs:
        symbols = f.symbols
        if f.is_zero():
            continue
        d = f.denominator_content()
        content = content * d // math.gcd(content, d)
        forms |= f.denominator
    if symbols is None:
        raise ValueError("lcm of an empty list")
    return FactorProduct(symbols, content, forms)
