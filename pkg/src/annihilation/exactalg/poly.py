"""Sparse multivariate polynomials over the rationals.

A :class:`Poly` is a mapping ``exponent tuple -> Fraction`` over a declared,
ordered tuple of symbol names.  Zero coefficients are never stored.  Plain
``int``/``Fraction`` operands are coerced to constants, so matrices may mix
numeric and polynomial entries freely.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

Exp = Tuple[int, ...]
Scalar = Union[int, Fraction]

_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer string; decimals are rejected."""
    m = _RATIONAL.match(text)
    if not m:
        raise ValueError(f"not an exact rational literal: {text!r}{_first_bad(text)} (use p/q)")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def _first_bad(text: str) -> str:
    """Position of the first character that cannot belong to a ``p/q`` literal."""
    seen_slash = False
    for i, ch in enumerate(text):
        if ch.isdigit() or ch.isspace() or (ch in "+-" and not seen_slash):
            continue
        if ch == "/" and not seen_slash:
            seen_slash = True
            continue
        return f"; unexpected {ch!r} at position {i}"
    return "; incomplete literal" if text.strip() else "; empty literal"


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Poly:
    __slots__ = ("symbols", "terms", "_hash")

    def __init__(self, symbols: Iterable[str], terms: Optional[Mapping[Exp, Scalar]] = None):
        self.symbols: Tuple[str, ...] = tuple(symbols)
        n = len(self.symbols)
        clean: Dict[Exp, Fraction] = {}
        if terms:
            for exp, c in terms.items():
                if len(exp) != n:
                    raise ValueError(f"exponent {exp} does not match symbols {self.symbols}")
                if c:
                    clean[tuple(exp)] = Fraction(c)
        self.terms = clean
        self._hash: Optional[int] = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, symbols: Iterable[str], c: Scalar) -> "Poly":
        symbols = tuple(symbols)
        return cls(symbols, {(0,) * len(symbols): c})

    @classmethod
    def variable(cls, symbols: Iterable[str], name: str) -> "Poly":
        symbols = tuple(symbols)
        exp = tuple(int(s == name) for s in symbols)
        if sum(exp) != 1:
            raise ValueError(f"unknown symbol {name!r}")
        return cls(symbols, {exp: 1})

    @classmethod
    def _raw(cls, symbols: Tuple[str, ...], terms: Dict[Exp, Fraction]) -> "Poly":
        p = cls.__new__(cls)
        p.symbols = symbols
        p.terms = terms
        p._hash = None
        return p

    # -- inspection ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0,) * len(self.symbols), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, k: int) -> int:
        return max((e[k] for e in self.terms), default=-1)

    def leading(self) -> Tuple[Exp, Fraction]:
        """Lex-leading term (symbols compared in declaration order)."""
        exp = max(self.terms)
        return exp, self.terms[exp]

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> Optional["Poly"]:
        if isinstance(other, Poly):
            if other.symbols != self.symbols:
                raise ValueError(f"symbol mismatch: {self.symbols} vs {other.symbols}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(self.symbols, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Poly._raw(self.symbols, terms)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.symbols, {e: -c for e, c in self.terms.items()})

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

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly._raw(self.symbols, {})
            return Poly._raw(self.symbols, {e: c * other for e, c in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms: Dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Poly._raw(self.symbols, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of polynomial by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, Poly) and other.is_constant() and not other.is_zero():
            return self * (1 / other.constant_value())
        return NotImplemented

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.constant(self.symbols, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.symbols == other.symbols and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.symbols, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- evaluation -----------------------------------------------------------
    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        """Evaluate at a point given for every symbol that occurs."""
        vals = []
        for k, s in enumerate(self.symbols):
            if s in values:
                vals.append(Fraction(values[s]))
            elif self.degree_in(k) > 0:
                raise KeyError(f"no value for symbol {s!r}")
            else:
                vals.append(Fraction(0))
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t *= v ** k
            total += t
        return total

    def subs(self, values: Mapping[str, Union[Scalar, "Poly"]], symbols: Optional[Iterable[str]] = None) -> "Poly":
        """Substitute scalars or polynomials (over ``symbols``) for some symbols."""
        target = tuple(symbols) if symbols is not None else self.symbols
        result = Poly(target)
        for e, c in self.terms.items():
            term = Poly.constant(target, c)
            rest = [0] * len(target)
            for s, k in zip(self.symbols, e):
                if not k:
                    continue
                if s in values:
                    term = term * (_as_poly(values[s], target) ** k)
                else:
                    if s not in target:
                        raise ValueError(f"symbol {s!r} missing from target ring")
                    rest[target.index(s)] += k
            if any(rest):
                term = term * Poly(target, {tuple(rest): 1})
            result = result + term
        return result

    # -- content and division -------------------------------------------------
    def content(self) -> Fraction:
        """Positive rational c with ``self / c`` integral and primitive."""
        if not self.terms:
            return Fraction(0)
        nums = [c.numerator for c in self.terms.values()]
        dens = [c.denominator for c in self.terms.values()]
        g = 0
        for n in nums:
            g = math.gcd(g, n)
        l = 1
        for d in dens:
            l = l * d // math.gcd(l, d)
        return Fraction(g, l)

    def primitive(self) -> Tuple[Fraction, "Poly"]:
        """Split into ``(content, primitive)`` with a positive lex-leading coefficient."""
        if not self.terms:
            return Fraction(0), self
        c = self.content()
        if self.leading()[1] < 0:
            c = -c
        return c, self * (1 / c)

    def divide_linear(self, form: "Poly") -> Optional["Poly"]:
        """Exact quotient by a degree-one polynomial, or ``None`` if it does not divide."""
        if form.total_degree() != 1:
            raise ValueError("divisor must have total degree one")
        if not self.terms:
            return self
        # Eliminate along the first symbol occurring in the divisor.
        k = next(i for i in range(len(self.symbols)) if form.degree_in(i) == 1)
        unit = tuple(int(i == k) for i in range(len(self.symbols)))
        lead = form.terms[unit]
        rest = Poly._raw(self.symbols, {e: c for e, c in form.terms.items() if e != unit})
        slices = self._slices(k)
        top = max(slices)
        q_slices: Dict[int, Poly] = {}
        prev = Poly(self.symbols)
        for d in range(top, 0, -1):
            # p_d = lead * q_{d-1} + rest * q_d
            cur = slices.get(d, Poly(self.symbols)) - rest * prev
            prev = cur / lead
            if prev:
                q_slices[d - 1] = prev
        if slices.get(0, Poly(self.symbols)) != rest * prev:
            return None
        terms: Dict[Exp, Fraction] = {}
        for d, p in q_slices.items():
            for e, c in p.terms.items():
                e2 = list(e)
                e2[k] += d
                terms[tuple(e2)] = c
        return Poly._raw(self.symbols, terms)

    def _slices(self, k: int) -> Dict[int, "Poly"]:
        """Coefficients of powers of symbol ``k`` (each free of that symbol)."""
        out: Dict[int, Dict[Exp, Fraction]] = {}
        for e, c in self.terms.items():
            e2 = list(e)
            d = e2[k]
            e2[k] = 0
            out.setdefault(d, {})[tuple(e2)] = c
        return {d: Poly._raw(self.symbols, t) for d, t in out.items()}

    def divide_exact(self, other: "Poly") -> Optional["Poly"]:
        """Exact quotient by an arbitrary nonzero polynomial (lex division)."""
        o = self._coerce(other)
        if o is None or o.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if o.is_constant():
            return self / o.constant_value()
        le, lc = o.leading()
        rem = self
        quot: Dict[Exp, Fraction] = {}
        while rem.terms:
            e, c = rem.leading()
            if any(x < y for x, y in zip(e, le)):
                return None
            qe = tuple(x - y for x, y in zip(e, le))
            qc = c / lc
            quot[qe] = qc
            rem = rem - o * Poly._raw(self.symbols, {qe: qc})
        return Poly._raw(self.symbols, quot)

    # -- output -------------------------------------------------------------
    def sorted_terms(self):
        """Terms in canonical order: higher total degree first, then lex descending."""
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(s if k == 1 else f"{s}^{k}" for s, k in zip(self.symbols, e) if k)
            mag = abs(c)
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({self})"


def _as_poly(x, symbols: Tuple[str, ...]) -> Poly:
    if isinstance(x, Poly):
        if x.symbols != symbols:
            raise ValueError(f"symbol mismatch: {x.symbols} vs {symbols}")
        return x
    return Poly.constant(symbols, x)


def make_symbols(*names: str) -> Tuple[Poly, ...]:
    """Variables over the ring with exactly the given symbols, in order."""
    return tuple(Poly.variable(names, n) for n in names)


def evaluate_scalar(x, values: Mapping[str, Scalar]) -> Fraction:
    """Evaluate a Fraction, Poly, or any object with ``evaluate``."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    return x.evaluate(values)


def is_zero(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return x == 0
    return x.is_zero()
