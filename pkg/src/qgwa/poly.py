"""Sparse (Laurent) polynomials in one variable h over a FieldSpec."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from numbers import Rational
from typing import NamedTuple, Optional

from .errors import MixedFields, MixedRings, NegativeExponentInPolyRing, NotAUnit, ZeroPolynomial
from .field import FieldElement, FieldSpec, roots_in_field

__all__ = [
    "LaurentPoly",
    "Symmetry",
    "twist",
    "gap_gcd",
    "is_symmetric",
    "is_unit",
    "bezout_combination",
]


class LaurentPoly:
    """Immutable polynomial sum(c_i h^i) with FieldElement coefficients.

    ``laurent`` selects the ring: k[h] when False (exponents must be
    non-negative) and k[h, h^-1] when True.
    """

    __slots__ = ("field", "laurent", "terms", "_hash")

    def __init__(self, field: FieldSpec, terms=None, laurent: bool = False):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                c = field(c)
                if c:
                    e = int(e)
                    clean[e] = clean[e] + c if e in clean else c
                    if not clean[e]:
                        del clean[e]
        if not laurent and clean and min(clean) < 0:
            raise NegativeExponentInPolyRing(f"negative power of h in k[h]: h^{min(clean)}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "laurent", bool(laurent))
        object.__setattr__(self, "terms", tuple(sorted(clean.items())))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, field, c, laurent=False):
        return cls(field, {0: c}, laurent)

    @classmethod
    def monomial(cls, field, e, c=1, laurent=False):
        return cls(field, {e: c}, laurent)

    def _like(self, terms) -> "LaurentPoly":
        return LaurentPoly(self.field, terms, self.laurent)

    # -- inspection -------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def as_dict(self) -> dict[int, FieldElement]:
        return dict(self.terms)

    def coeff(self, e: int) -> FieldElement:
        for ei, c in self.terms:
            if ei == e:
                return c
        return self.field.zero

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.terms)

    @property
    def min_exp(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no support")
        return self.terms[0][0]

    @property
    def max_exp(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no support")
        return self.terms[-1][0]

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == 0)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.field == other.field and self.laurent == other.laurent and self.terms == other.terms
        if isinstance(other, (int, Rational, FieldElement)):
            if not other:
                return not self.terms
            return self.is_constant() and bool(self.terms) and self.terms[0][1] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.field, self.laurent, self.terms)))
        return self._hash

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "LaurentPoly"):
        if other.field != self.field:
            raise MixedFields(f"{self.field} vs {other.field}")
        if other.laurent != self.laurent:
            raise MixedRings("cannot combine k[h] and k[h^-1, h] polynomials")

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Rational, FieldElement)):
            return LaurentPoly.constant(self.field, other, self.laurent)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = dict(self.terms)
        for e, c in o.terms:
            d[e] = d[e] + c if e in d else c
        return self._like(d)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational, FieldElement)):
            c = self.field(other)
            return self._like({e: ci * c for e, ci in self.terms})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d: dict[int, FieldElement] = {}
        for e1, c1 in self.terms:
            for e2, c2 in o.terms:
                e = e1 + e2
                p = c1 * c2
                d[e] = d[e] + p if e in d else p
        return self._like(d)

    __rmul__ = __mul__

    def shift(self, m: int) -> "LaurentPoly":
        """h^m * self."""
        return self._like({e + m: c for e, c in self.terms})

    def inverse(self) -> "LaurentPoly":
        """Inverse of a unit of D."""
        if not is_unit(self):
            raise NotAUnit(f"{self} is not a unit of {'k[h^-1,h]' if self.laurent else 'k[h]'}")
        (e, c), = self.terms
        return self._like({-e: c.inverse()})

    def __pow__(self, k: int):
        k = int(k)
        if k < 0:
            return self.inverse() ** (-k)
        result = LaurentPoly.constant(self.field, 1, self.laurent)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def with_ring(self, laurent: bool) -> "LaurentPoly":
        return LaurentPoly(self.field, self.terms, laurent)

    # -- printing ---------------------------------------------------------
    def __repr__(self):
        return f"LaurentPoly({str(self)!r}, laurent={self.laurent})"

    def __str__(self):
        return format_terms([(c, _h_power(e)) for e, c in reversed(self.terms)])


def _h_power(e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return "h"
    return f"h^{e}"


def format_terms(terms) -> str:
    """Render [(coeff, monomial_string)] as a signed sum."""
    if not terms:
        return "0"
    pieces = []
    for c, mono in terms:
        if c.is_atomic_str():
            s = str(c)
            neg = s.startswith("-")
            s = s[1:] if neg else s
            if mono:
                body = mono if s == "1" else f"{s}*{mono}"
            else:
                body = s
        else:
            neg = False
            body = f"({c})*{mono}" if mono else f"({c})"
        pieces.append((neg, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


# ---------------------------------------------------------------------------
# predicates and substitutions

def twist(f: LaurentPoly, c, eps: int = 1) -> LaurentPoly:
    """f(c * h^eps)."""
    c = f.field(c)
    if not c:
        raise ZeroPolynomial("twist by zero scalar")
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    if eps == -1 and not f.laurent and not f.is_constant():
        raise NegativeExponentInPolyRing("h -> h^-1 is not defined on k[h]")
    if c.is_one():
        if eps == 1:
            return f
        return f._like({-e: ci for e, ci in f.terms})
    out = {}
    cp = {}
    for e, ci in f.terms:
        if e not in cp:
            cp[e] = c ** e
        out[eps * e] = ci * cp[e]
    return f._like(out)


def gap_gcd(a: LaurentPoly) -> int:
    """gcd of the pairwise differences of the support; 0 for a monomial."""
    if not a:
        raise ZeroPolynomial("gap gcd of the zero polynomial")
    m = a.min_exp
    return reduce(gcd, (e - m for e in a.support), 0)


def is_unit(a: LaurentPoly) -> bool:
    if not a:
        raise ZeroPolynomial("unit test on the zero polynomial")
    if a.laurent:
        return a.is_monomial()
    return a.is_constant()


def bezout_combination(ds: list[int]) -> tuple[int, list[int]]:
    """(g, u) with g = gcd(ds) = sum(u_i * d_i)."""
    g, coeffs = 0, []
    for d in ds:
        # extended Euclid between the running gcd and d
        old_r, r = g, d
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r:
            qt = old_r // r
            old_r, r = r, old_r - qt * r
            old_s, s = s, old_s - qt * s
            old_t, t = t, old_t - qt * t
        if old_r < 0:
            old_r, old_s, old_t = -old_r, -old_s, -old_t
        coeffs = [x * old_s for x in coeffs] + [old_t]
        g = old_r
    return g, coeffs


def solve_power_system(equations: list[tuple[int, FieldElement]], field: FieldSpec):
    """Reduce {beta^d_i = c_i} (d_i > 0) to a single beta^g = c.

    Returns (g, c); g == 0 means the system places no constraint on beta.
    Solutions of the system are exactly the g-th roots of c that also
    satisfy every original equation, so callers must still verify.
    """
    ds = [d for d, _ in equations if d]
    if not ds:
        return 0, field.one
    g, us = bezout_combination(ds)
    c = field.one
    for u, (d, ci) in zip(us, [(d, ci) for d, ci in equations if d]):
        if u:
            c = c * ci ** u
    return g, c


class Symmetry(NamedTuple):
    l: int
    gamma: FieldElement
    delta: FieldElement


def is_symmetric(f: LaurentPoly) -> Optional[Symmetry]:
    """A triple (l, gamma, delta) with delta f(h) = h^l f(gamma h^-1), or None."""
    if not f:
        raise ZeroPolynomial("symmetry of the zero polynomial")
    lo, hi = f.min_exp, f.max_exp
    l = lo + hi
    coeffs = f.as_dict()
    if {l - e for e in coeffs} != set(coeffs):
        return None
    field = f.field
    fM, fN = coeffs[lo], coeffs[hi]
    # gamma^(e - M) = f_M f_(l-e) / (f_N f_e)
    eqs = [(e - lo, fM * coeffs[l - e] / (fN * coeffs[e])) for e in coeffs if e != lo]
    g, c = solve_power_system(eqs, field)
    candidates = roots_in_field(c, g) if g else iter([field.one])
    fl = f.with_ring(True)
    for gamma in candidates:
        delta = fN * gamma ** hi / fM
        if (fl * delta) == twist(fl, gamma, -1).shift(l):
            return Symmetry(l, gamma, delta)
    return None
