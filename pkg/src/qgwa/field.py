"""Exact arithmetic in Q and in cyclotomic fields Q(zeta_n).

An element of Q(zeta_n) is stored as its coefficient vector in the power
basis 1, zeta, ..., zeta^(phi(n)-1), reduced modulo the n-th cyclotomic
polynomial.  Q itself is the case n = 1 (and n = 2, which is identified
with it since zeta_2 = -1 is rational).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import Iterator, Optional

import gmpy2

from .errors import DivisionByZero, MixedFields

__all__ = [
    "FieldSpec",
    "FieldElement",
    "QQ",
    "cyclotomic_poly",
    "order_as_root_of_unity",
    "root_in_field",
    "roots_in_field",
    "root_absence_certified",
    "rational_root",
]


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients (low degree first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    # x^n - 1 divided by every Phi_d with d | n, d < n
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        num = _exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _exact_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        assert c % lead == 0
        c //= lead
        out[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    assert not any(num[: len(den) - 1])
    return out


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Reduced coordinate vectors of zeta_n^j for 0 <= j < n."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    rows = []
    v = [1] + [0] * (deg - 1)
    for _ in range(n):
        rows.append(tuple(v))
        # multiply by x, then eliminate x^deg with the monic relation
        top = v[-1]
        v = [0] + v[:-1]
        if top:
            v = [vi - top * phi[i] for i, vi in enumerate(v)]
    return tuple(rows)


class FieldSpec:
    """Q (n = 1) or the cyclotomic field Q(zeta_n).

    Q(zeta_2) is Q itself and compares equal to it, but remembers that its
    ``zeta`` is -1.
    """

    __slots__ = ("n", "_zeta_order")

    def __init__(self, n: int = 1):
        n = int(n)
        if n < 1:
            raise ValueError("cyclotomic index must be a positive integer")
        object.__setattr__(self, "n", 1 if n == 2 else n)
        object.__setattr__(self, "_zeta_order", n)

    def __setattr__(self, name, value):
        raise AttributeError("FieldSpec is immutable")

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and other.n == self.n

    def __hash__(self):
        return hash(("FieldSpec", self.n))

    def __repr__(self):
        return f"FieldSpec({self.n})"

    def __str__(self):
        return "Q" if self.n == 1 else f"Q(zeta({self.n}))"

    @property
    def is_rational(self) -> bool:
        return self.n == 1

    @property
    def degree(self) -> int:
        return len(cyclotomic_poly(self.n)) - 1

    @property
    def roots_of_unity_order(self) -> int:
        """Order of the (cyclic) group of roots of unity in the field."""
        return self.n * 2 // gcd(self.n, 2)

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise MixedFields(f"{value.field} element used in {self}")
            return value
        if isinstance(value, (int, Rational)):
            return FieldElement(self, (Fraction(value),))
        if isinstance(value, str):
            from .parse import parse_scalar

            return parse_scalar(value, self)
        raise TypeError(f"cannot convert {value!r} into {self}")

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, ())

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, (Fraction(1),))

    def zeta(self, k: int = 1) -> "FieldElement":
        """zeta_n ** k."""
        if self._zeta_order == 2:
            return self.one if k % 2 == 0 else -self.one
        row = _power_table(self.n)[k % self.n]
        return FieldElement(self, row)

    def primitive_root_of_unity(self) -> "FieldElement":
        """A generator of the roots of unity of the field (order lcm(2, n))."""
        if self.n % 2 == 0:
            return self.zeta(1)
        # zeta_{2n} = -zeta_n^((n+1)/2) for odd n
        return -FieldElement(self, _power_table(self.n)[(self.n + 1) // 2 % self.n])

    def root_of_unity(self, m: int, k: int = 1) -> "FieldElement":
        """The root of unity exp(2 pi i k / m); m must divide lcm(2, n)."""
        order = self.roots_of_unity_order
        if order % m:
            raise ValueError(f"zeta({m}) is not an element of {self}")
        return self.primitive_root_of_unity() ** ((order // m) * k)

    def roots_of_unity(self) -> list["FieldElement"]:
        z = self.primitive_root_of_unity()
        out, p = [], self.one
        for _ in range(self.roots_of_unity_order):
            out.append(p)
            p = p * z
        return out

    def random_element(self, rng, lo: int = -3, hi: int = 3, nonzero: bool = False):
        while True:
            e = FieldElement(self, tuple(Fraction(rng.randint(lo, hi)) for _ in range(self.degree)))
            if e or not nonzero:
                return e


QQ = FieldSpec(1)


class FieldElement:
    """Immutable exact element of a FieldSpec."""

    __slots__ = ("field", "c")

    def __init__(self, field: FieldSpec, coeffs):
        cs = [Fraction(x) for x in coeffs]
        deg = field.degree
        if len(cs) > deg:
            # reduce modulo the cyclotomic polynomial
            table = _power_table(field.n)
            red = [Fraction(0)] * deg
            for j, cj in enumerate(cs):
                if cj:
                    for i, t in enumerate(table[j % field.n]):
                        if t:
                            red[i] += cj * t
            cs = red
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "c", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other) -> Optional["FieldElement"]:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise MixedFields(f"cannot combine {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Rational)):
            return FieldElement(self.field, (Fraction(other),))
        return None

    # -- predicates -------------------------------------------------------
    def __bool__(self):
        return bool(self.c)

    def is_rational(self) -> bool:
        return len(self.c) <= 1

    def is_one(self) -> bool:
        return self.c == (1,)

    @property
    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0] if self.c else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.c == other.c
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.rational == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.rational)
        return hash((self.field.n, self.c))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        return FieldElement(self.field, [x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-x for x in self.c])

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
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.c, o.c
        if not a or not b:
            return self.field.zero
        if len(a) == 1:
            return FieldElement(self.field, [a[0] * x for x in b])
        if len(b) == 1:
            return FieldElement(self.field, [b[0] * x for x in a])
        conv = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    conv[i + j] += x * y
        return FieldElement(self.field, conv)

    __rmul__ = __mul__

    def conjugate(self, k: int) -> "FieldElement":
        """Image under the Galois automorphism zeta -> zeta^k (gcd(k, n) = 1)."""
        n = self.field.n
        table = _power_table(n)
        deg = self.field.degree
        out = [Fraction(0)] * deg
        for i, ci in enumerate(self.c):
            if ci:
                for j, t in enumerate(table[(i * k) % n]):
                    if t:
                        out[j] += ci * t
        return FieldElement(self.field, out)

    def _cofactor(self) -> "FieldElement":
        # product of the non-trivial conjugates; self * cofactor is the norm
        n = self.field.n
        p = self.field.one
        for k in range(2, n):
            if gcd(k, n) == 1:
                p = p * self.conjugate(k)
        return p

    def norm(self) -> Fraction:
        """Field norm down to Q."""
        if self.field.degree == 1:
            return self.rational
        return (self * self._cofactor()).rational

    def inverse(self) -> "FieldElement":
        if not self:
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            return FieldElement(self.field, (1 / self.c[0],))
        cof = self._cofactor()
        nrm = (self * cof).rational
        return FieldElement(self.field, [x / nrm for x in cof.c])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        k = int(k)
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- printing ---------------------------------------------------------
    def __repr__(self):
        return f"FieldElement({self.field.n}, {str(self)!r})"

    def __str__(self):
        if not self.c:
            return "0"
        n = self.field.n
        parts = []
        for k in range(len(self.c) - 1, -1, -1):
            ck = self.c[k]
            if not ck:
                continue
            if k == 0:
                body = str(abs(ck))
            else:
                z = f"zeta({n})" if k == 1 else f"zeta({n})^{k}"
                body = z if abs(ck) == 1 else f"{abs(ck)}*{z}"
            parts.append(("-" if ck < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def is_atomic_str(self) -> bool:
        """True when str(self) needs no parentheses as a factor."""
        return sum(1 for x in self.c if x) <= 1


# ---------------------------------------------------------------------------
# roots of unity and g-th roots

def order_as_root_of_unity(e: FieldElement) -> Optional[int]:
    """Least m >= 1 with e**m == 1, or None if e has infinite order."""
    if not e:
        raise DivisionByZero("zero is not a root of unity")
    for d in _divisors(e.field.roots_of_unity_order):
        if (e ** d).is_one():
            return d
    return None


def rational_root(r: Fraction, g: int) -> Optional[Fraction]:
    """The real g-th root of r when it is rational (the positive one for even g)."""
    r = Fraction(r)
    if g < 1:
        raise ValueError("g must be positive")
    if r == 0:
        return Fraction(0)
    sign = 1
    if r < 0:
        if g % 2 == 0:
            return None
        sign, r = -1, -r
    num, ok_n = gmpy2.iroot(gmpy2.mpz(r.numerator), g)
    if not ok_n:
        return None
    den, ok_d = gmpy2.iroot(gmpy2.mpz(r.denominator), g)
    if not ok_d:
        return None
    return sign * Fraction(int(num), int(den))


def roots_in_field(c: FieldElement, g: int) -> Iterator[FieldElement]:
    """Yield g-th roots of c of the form (rational) * (root of unity).

    Candidates come out ordered by the exponent t of the field's primitive
    root of unity, with the rational factor taken positive.  Every yielded
    value is verified by re-powering.
    """
    if not c:
        raise DivisionByZero("roots of zero are not supported")
    if g < 1:
        raise ValueError("g must be positive")
    field = c.field
    if g == 1:
        yield c
        return
    m = field.roots_of_unity_order
    z = field.primitive_root_of_unity()
    powers = field.roots_of_unity()
    zinv = z.inverse()
    found: dict[int, FieldElement] = {}
    u = c
    for s in range(m):
        # u = c * z^-s
        if u.is_rational():
            c0 = u.rational
            for t in range(m):
                w = powers[(s - t * g) % m]
                if w.is_one():
                    r = rational_root(c0, g)
                elif w == -1:
                    r = rational_root(-c0, g)
                else:
                    continue
                if r is None:
                    continue
                tt = t if r > 0 else (t + m // 2) % m
                if tt not in found:
                    beta = powers[tt] * abs(r)
                    if beta ** g == c:
                        found[tt] = beta
        u = u * zinv
    for tt in sorted(found):
        yield found[tt]


def root_in_field(c: FieldElement, g: int) -> Optional[FieldElement]:
    """Some beta with beta**g == c, or None when the search regime finds none."""
    return next(roots_in_field(c, g), None)


def root_absence_certified(c: FieldElement, g: int) -> bool:
    """True when c provably has no g-th root in its field.

    Over Q the search is exhaustive.  In a cyclotomic field the norm gives a
    certificate: if beta**g == c then N(c) = N(beta)**g with N(beta) rational.
    """
    if root_in_field(c, g) is not None:
        return False
    if c.field.is_rational:
        return True
    return rational_root(c.norm(), g) is None
