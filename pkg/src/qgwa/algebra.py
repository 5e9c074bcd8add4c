"""Quantum generalized Weyl algebras A(D, q, a) in normal form.

Elements are stored by weight: the component of weight s >= 0 is y^s f(h)
and the component of weight s < 0 is f(h) x^(-s), with f in D.  Expanding
f gives the standard monomials y^i h^j x^k (ik = 0), keyed as (s, j).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Optional

from .errors import InvalidGenerator, MixedAlgebras, NotAUnit, ValidationError
from .field import FieldElement, FieldSpec, QQ, order_as_root_of_unity
from .poly import LaurentPoly, format_terms, is_unit, twist

__all__ = ["AlgebraSpec", "AlgebraElement", "weight_components", "units_mod_scalars_rank", "mul"]


@dataclass(frozen=True)
class AlgebraSpec:
    """The data (D, q, a) of A(D, q, a); ``laurent`` selects D = k[h^{+-1}]."""

    field: FieldSpec
    laurent: bool
    q: FieldElement
    a: LaurentPoly

    def __post_init__(self):
        if isinstance(self.q, str) or isinstance(self.a, str):
            from .parse import parse_poly

            if isinstance(self.q, str):
                object.__setattr__(self, "q", self.field(self.q))
            if isinstance(self.a, str):
                object.__setattr__(self, "a", parse_poly(self.a, self.field, self.laurent))
        object.__setattr__(self, "q", self.field(self.q))
        a = self.a
        if a.field != self.field:
            raise ValidationError(f"a has coefficients in {a.field}, expected {self.field}")
        if not a:
            raise ValidationError("a must be non-zero")
        if a.laurent != self.laurent:
            if not self.laurent:
                if a.min_exp < 0:
                    raise ValidationError("a has negative powers of h but D = k[h]")
            object.__setattr__(self, "a", a.with_ring(self.laurent))
        if not self.q:
            raise ValidationError("q must be non-zero")
        if self.q.is_one():
            raise ValidationError("q = 1 (commutative case) is not supported")

    @classmethod
    def make(cls, a, q, laurent: bool = False, field: FieldSpec = QQ) -> "AlgebraSpec":
        return cls(field, laurent, q, a)

    # -- derived data -----------------------------------------------------
    @property
    def unit_case(self) -> bool:
        return is_unit(self.a)

    @property
    def q_order(self) -> Optional[int]:
        return order_as_root_of_unity(self.q)

    @property
    def q_is_minus_one(self) -> bool:
        return self.q == -1

    def sigma(self, f: LaurentPoly, t: int = 1) -> LaurentPoly:
        """f(q^t h)."""
        if t == 0:
            return f
        return twist(f, _qpow(self, t), 1)

    def poly(self, f) -> LaurentPoly:
        if isinstance(f, LaurentPoly):
            if f.field != self.field:
                raise ValidationError("polynomial over the wrong field")
            return f if f.laurent == self.laurent else f.with_ring(self.laurent)
        return LaurentPoly.constant(self.field, f, self.laurent)

    # -- element constructors ---------------------------------------------
    def element(self, comps=None) -> "AlgebraElement":
        return AlgebraElement(self, comps or {})

    def from_terms(self, terms: dict) -> "AlgebraElement":
        """Build from {(s, j): coeff}."""
        by_s: dict[int, dict[int, FieldElement]] = {}
        for (s, j), c in terms.items():
            by_s.setdefault(s, {})[j] = c
        return AlgebraElement(self, {s: LaurentPoly(self.field, d, self.laurent) for s, d in by_s.items()})

    def monomial(self, s: int, j: int = 0, c=1) -> "AlgebraElement":
        return AlgebraElement(self, {s: LaurentPoly.monomial(self.field, j, c, self.laurent)})

    def scalar(self, c) -> "AlgebraElement":
        return self.monomial(0, 0, c)

    def from_poly(self, f, s: int = 0) -> "AlgebraElement":
        return AlgebraElement(self, {s: self.poly(f)})

    @property
    def zero(self):
        return AlgebraElement(self, {})

    @property
    def one(self):
        return self.scalar(1)

    @property
    def y(self):
        return self.monomial(1)

    @property
    def x(self):
        return self.monomial(-1)

    @property
    def h(self):
        return self.monomial(0, 1)

    @property
    def hinv(self):
        if not self.laurent:
            raise InvalidGenerator("h^-1 does not exist when D = k[h]")
        return self.monomial(0, -1)

    def generator(self, name: str) -> "AlgebraElement":
        if name == "y":
            return self.y
        if name == "x":
            return self.x
        if name == "h":
            return self.h
        if name in ("hinv", "H"):
            return self.hinv
        raise InvalidGenerator(f"unknown generator {name!r}")

    def h_power(self, j: int) -> "AlgebraElement":
        if j < 0 and not self.laurent:
            raise NotAUnit("h is not invertible when D = k[h]")
        return self.monomial(0, j)

    def y_power(self, k: int) -> "AlgebraElement":
        if k >= 0:
            return self.monomial(k)
        if not self.unit_case:
            raise NotAUnit("y is invertible only when a is a unit")
        # y^-1 = x a^-1
        return self.monomial(-1) * self.from_poly(self.a.inverse())

    def x_power(self, k: int) -> "AlgebraElement":
        if k >= 0:
            return self.monomial(-k)
        if not self.unit_case:
            raise NotAUnit("x is invertible only when a is a unit")
        # x^-1 = a^-1 y
        xinv = self.from_poly(self.a.inverse()) * self.monomial(1)
        return xinv ** (-k)

    def __str__(self):
        d = "laurent" if self.laurent else "poly"
        return f"field={self.field} algebra d={d} q={self.q} a={self.a}"


@lru_cache(maxsize=4096)
def _qpow(spec: AlgebraSpec, t: int) -> FieldElement:
    return spec.q ** t


@lru_cache(maxsize=4096)
def _sigma_a(spec: AlgebraSpec, t: int) -> LaurentPoly:
    return spec.sigma(spec.a, t)


@lru_cache(maxsize=4096)
def _xy_power(spec: AlgebraSpec, k: int) -> LaurentPoly:
    """x^k y^k = prod_{t=1..k} sigma^t(a)."""
    if k == 0:
        return spec.poly(1)
    return _xy_power(spec, k - 1) * _sigma_a(spec, k)


@lru_cache(maxsize=4096)
def _yx_power(spec: AlgebraSpec, k: int) -> LaurentPoly:
    """y^k x^k = prod_{t=0..k-1} sigma^-t(a)."""
    if k == 0:
        return spec.poly(1)
    return _yx_power(spec, k - 1) * _sigma_a(spec, -(k - 1))


def _component_product(spec: AlgebraSpec, s1: int, f: LaurentPoly, s2: int, g: LaurentPoly):
    """Product of homogeneous pieces; returns (weight, coefficient poly)."""
    sig = spec.sigma
    if s1 >= 0 and s2 >= 0:
        return s1 + s2, sig(f, s2) * g
    if s1 <= 0 and s2 <= 0:
        return s1 + s2, f * sig(g, -s1)
    if s1 > 0:
        i, k = s1, -s2
        F = f * g
        if i >= k:
            return i - k, sig(F, -k) * _yx_power(spec, k)
        return i - k, sig(F, -i) * _yx_power(spec, i)
    k, i = -s1, s2
    if k <= i:
        return i - k, sig(f * _xy_power(spec, k), i - k) * g
    return i - k, f * sig(_xy_power(spec, i) * g, k - i)


class AlgebraElement:
    """Immutable element of A(D, q, a) in standard-monomial normal form."""

    __slots__ = ("spec", "comps", "_hash")

    def __init__(self, spec: AlgebraSpec, comps: dict):
        clean = {}
        for s, f in comps.items():
            if f:
                clean[int(s)] = f
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "comps", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraElement is immutable")

    # -- inspection -------------------------------------------------------
    def __bool__(self):
        return bool(self.comps)

    @property
    def terms(self) -> dict[tuple[int, int], FieldElement]:
        return {(s, j): c for s in sorted(self.comps) for j, c in self.comps[s].terms}

    def sorted_terms(self) -> list[tuple[tuple[int, int], FieldElement]]:
        return sorted(self.terms.items(), reverse=True)

    def weights(self) -> list[int]:
        return sorted(self.comps)

    def component(self, s: int) -> LaurentPoly:
        return self.comps.get(s) or self.spec.poly(0)

    def is_homogeneous(self) -> bool:
        return len(self.comps) <= 1

    def is_scalar(self) -> bool:
        return not self.comps or (set(self.comps) == {0} and self.comps[0].is_constant())

    def scalar_value(self) -> FieldElement:
        if not self.is_scalar():
            raise ValueError(f"{self} is not a scalar")
        return self.comps[0].coeff(0) if self.comps else self.spec.field.zero

    def single_term(self):
        """((s, j), c) when the element is c times one standard monomial, else None."""
        t = self.terms
        if len(t) != 1:
            return None
        return next(iter(t.items()))

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.spec == other.spec and self.comps == other.comps
        if isinstance(other, (int, Rational, FieldElement)):
            return self == self.spec.scalar(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(tuple(sorted(self.comps.items()))))
        return self._hash

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, AlgebraElement):
            if other.spec != self.spec:
                raise MixedAlgebras("elements of different algebras")
            return other
        if isinstance(other, (int, Rational, FieldElement)):
            return self.spec.scalar(other)
        if isinstance(other, LaurentPoly):
            return self.spec.from_poly(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = dict(self.comps)
        for s, f in o.comps.items():
            d[s] = d[s] + f if s in d else f
        return AlgebraElement(self.spec, d)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.spec, {s: -f for s, f in self.comps.items()})

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
            c = self.spec.field(other)
            return AlgebraElement(self.spec, {s: f * c for s, f in self.comps.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return mul(self, o)

    def __rmul__(self, other):
        if isinstance(other, (int, Rational, FieldElement)):
            return self * other
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return mul(o, self)

    def __truediv__(self, other):
        if isinstance(other, (int, Rational, FieldElement)):
            return self * self.spec.field(other).inverse()
        return NotImplemented

    def is_unit(self) -> bool:
        st = self.single_term()
        if st is None:
            return False
        (s, j), _ = st
        return (s == 0 or self.spec.unit_case) and (j == 0 or self.spec.laurent)

    def inverse(self) -> "AlgebraElement":
        if not self.is_unit():
            raise NotAUnit(f"{self} is not a unit")
        (s, j), c = self.single_term()
        sp = self.spec
        if s >= 0:
            inv = sp.h_power(-j) * sp.y_power(-s)
        else:
            inv = sp.x_power(s) * sp.h_power(-j)
        return inv * c.inverse()

    def __pow__(self, k: int):
        k = int(k)
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.spec.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- printing / serialisation -----------------------------------------
    def __repr__(self):
        return f"AlgebraElement({str(self)!r})"

    def __str__(self):
        rendered = []
        for (s, j), c in self.sorted_terms():
            parts = []
            if s > 0:
                parts.append("y" if s == 1 else f"y^{s}")
            if j:
                parts.append("h" if j == 1 else f"h^{j}")
            if s < 0:
                parts.append("x" if s == -1 else f"x^{-s}")
            rendered.append((c, "*".join(parts)))
        return format_terms(rendered)

    def to_json(self) -> list[dict]:
        return [{"s": s, "j": j, "coeff": str(c)} for (s, j), c in sorted(self.terms.items())]


def mul(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """Normal-form product using closed forms for products of homogeneous pieces."""
    if u.spec != v.spec:
        raise MixedAlgebras("elements of different algebras")
    spec = u.spec
    out: dict[int, LaurentPoly] = {}
    for s1, f in u.comps.items():
        for s2, g in v.comps.items():
            s, p = _component_product(spec, s1, f, s2, g)
            out[s] = out[s] + p if s in out else p
    return AlgebraElement(spec, out)


def weight_components(u: AlgebraElement) -> dict[int, AlgebraElement]:
    return {s: AlgebraElement(u.spec, {s: f}) for s, f in sorted(u.comps.items())}


def units_mod_scalars_rank(spec: AlgebraSpec) -> int:
    """Rank of the free abelian group A^x / k^x."""
    if not spec.unit_case:
        return 0
    return 2 if spec.laurent else 1


def evaluate_poly(f: LaurentPoly, u: AlgebraElement, u_inv: Optional[AlgebraElement] = None) -> AlgebraElement:
    """f(u) computed in the algebra of u; negative powers need u_inv."""
    spec = u.spec
    out = spec.zero
    powers: dict[int, AlgebraElement] = {0: spec.one}
    for e, c in f.terms:
        if e not in powers:
            if e > 0:
                top = max(k for k in powers if k >= 0)
                p = powers[top]
                for k in range(top + 1, e + 1):
                    p = p * u
                    powers[k] = p
            else:
                if u_inv is None:
                    u_inv = u.inverse()
                bot = min(k for k in powers if k <= 0)
                p = powers[bot]
                for k in range(bot - 1, e - 1, -1):
                    p = p * u_inv
                    powers[k] = p
        out = out + powers[e] * c
    return out


def to_skew(u: AlgebraElement) -> dict[tuple[int, int], FieldElement]:
    """Coordinates of u in the basis h^a x^b (unit case only)."""
    spec = u.spec
    if not spec.unit_case:
        raise NotAUnit("the skew-Laurent form exists only when a is a unit")
    n = spec.a.min_exp
    out = {}
    for (s, j), c in u.terms.items():
        if s <= 0:
            out[(j, -s)] = out.get((j, -s), spec.field.zero) + c
        else:
            # y^s h^j is a scalar multiple of h^(j + s n) x^-s
            e = spec.h_power(j + s * n) * spec.x_power(-s)
            (_, c0), = e.terms.items()
            key = (j + s * n, -s)
            out[key] = out.get(key, spec.field.zero) + c / c0
    return {k: v for k, v in out.items() if v}


def from_skew(spec: AlgebraSpec, coords: dict) -> AlgebraElement:
    out = spec.zero
    for (a, b), c in coords.items():
        out = out + spec.h_power(a) * spec.x_power(b) * c
    return out


def iter_monomials(spec: AlgebraSpec, weights: Iterable[int], hdegs: Iterable[int]):
    hdegs = list(hdegs)
    for s in weights:
        for j in hdegs:
            if j < 0 and not spec.laurent:
                continue
            yield s, j
