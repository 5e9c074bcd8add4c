"""Derivations of A(D, q, a) given by their values on y, h and x."""

from __future__ import annotations

from typing import Optional

from .algebra import AlgebraElement, AlgebraSpec
from .errors import InconsistentImages, MixedAlgebras, ValidationError, ZeroElement
from .linalg import nullspace, rank

__all__ = [
    "Derivation",
    "RELATIONS",
    "derivation_from_images",
    "relation_residuals",
    "apply",
    "deg_d",
    "is_locally_finite_probe",
    "xi",
    "tau",
    "commutator",
    "derivation_space",
    "span_rank",
]

RELATIONS = ("hy = q yh", "xh = q hx", "yx = a(h)", "xy = a(qh)")


class Derivation:
    """The map u1 dy + u2 dh + u3 dx, extended to A by the Leibniz rule.

    Construction does not check the defining relations; use
    :func:`derivation_from_images` for a checked derivation.
    """

    __slots__ = ("spec", "img_y", "img_h", "img_x", "_cache")

    def __init__(self, spec: AlgebraSpec, img_y, img_h, img_x):
        imgs = []
        for u in (img_y, img_h, img_x):
            if not isinstance(u, AlgebraElement):
                u = spec.scalar(u)
            if u.spec != spec:
                raise MixedAlgebras("derivation images must lie in the same algebra")
            imgs.append(u)
        self.spec = spec
        self.img_y, self.img_h, self.img_x = imgs
        self._cache = {}

    @property
    def img_hinv(self) -> AlgebraElement:
        hinv = self.spec.hinv
        return -(hinv * self.img_h * hinv)

    def images(self):
        return self.img_y, self.img_h, self.img_x

    def __eq__(self, other):
        return isinstance(other, Derivation) and self.spec == other.spec and self.images() == other.images()

    def __hash__(self):
        return hash(self.images())

    def __repr__(self):
        return f"Derivation(y -> {self.img_y}, h -> {self.img_h}, x -> {self.img_x})"

    def __add__(self, other):
        return Derivation(self.spec, *(a + b for a, b in zip(self.images(), other.images())))

    def __sub__(self, other):
        return Derivation(self.spec, *(a - b for a, b in zip(self.images(), other.images())))

    def __mul__(self, c):
        return Derivation(self.spec, *(a * c for a in self.images()))

    __rmul__ = __mul__

    # powers of generators, memoised per derivation
    def _d_power(self, letter: str, k: int) -> AlgebraElement:
        key = (letter, k)
        if key in self._cache:
            return self._cache[key]
        sp = self.spec
        if k == 0:
            val = sp.zero
        elif letter == "h" and k < 0:
            gen, img = sp.hinv, self.img_hinv
            val = self._d_power(letter, k + 1) * gen + sp.h_power(k + 1) * img
        else:
            gen = {"y": sp.y, "h": sp.h, "x": sp.x}[letter]
            img = {"y": self.img_y, "h": self.img_h, "x": self.img_x}[letter]
            prev = {"y": sp.y_power, "h": sp.h_power, "x": sp.x_power}[letter](k - 1)
            val = self._d_power(letter, k - 1) * gen + prev * img
        self._cache[key] = val
        return val

    def on_monomial(self, s: int, j: int) -> AlgebraElement:
        sp = self.spec
        i, k = max(s, 0), max(-s, 0)
        yi, hj, xk = sp.y_power(i), sp.h_power(j), sp.x_power(k)
        out = sp.zero
        if i:
            out = out + self._d_power("y", i) * hj * xk
        if j:
            out = out + yi * self._d_power("h", j) * xk
        if k:
            out = out + yi * hj * self._d_power("x", k)
        return out

    def on_poly(self, f) -> AlgebraElement:
        """d(f(h)) for f in D."""
        out = self.spec.zero
        for e, c in f.terms:
            if e:
                out = out + self._d_power("h", e) * c
        return out

    def __call__(self, u: AlgebraElement) -> AlgebraElement:
        return apply(self, u)


def apply(d: Derivation, u: AlgebraElement) -> AlgebraElement:
    if u.spec != d.spec:
        raise MixedAlgebras("element and derivation live in different algebras")
    out = d.spec.zero
    for (s, j), c in u.terms.items():
        out = out + d.on_monomial(s, j) * c
    return out


def relation_residuals(d: Derivation) -> list[AlgebraElement]:
    """d applied to the four defining relations (all zero iff d is well defined)."""
    sp = d.spec
    y, h, x, q = sp.y, sp.h, sp.x, sp.q
    dy, dh, dx = d.images()
    return [
        dh * y + h * dy - (dy * h + y * dh) * q,
        dx * h + x * dh - (dh * x + h * dx) * q,
        dy * x + y * dx - d.on_poly(sp.a),
        dx * y + x * dy - d.on_poly(sp.sigma(sp.a)),
    ]


def derivation_from_images(spec: AlgebraSpec, img_y, img_h, img_x) -> Derivation:
    d = Derivation(spec, img_y, img_h, img_x)
    for name, r in zip(RELATIONS, relation_residuals(d)):
        if r:
            raise InconsistentImages(name, r)
    return d


def deg_d(d: Derivation, u: AlgebraElement, bound: int) -> Optional[int]:
    """max{r : d^r(u) != 0} if d^(bound+1)(u) == 0, else None."""
    if not u:
        raise ZeroElement("deg_d is undefined on 0")
    cur = u
    for r in range(bound + 1):
        nxt = apply(d, cur)
        if not nxt:
            return r
        cur = nxt
    return None


def _generators(spec: AlgebraSpec):
    gens = [spec.y, spec.h, spec.x]
    if spec.laurent:
        gens.append(spec.hinv)
    return gens


def _coords(elements: list[AlgebraElement]):
    keys = sorted({k for e in elements for k in e.terms})
    zero = elements[0].spec.field.zero if elements else None
    return [[e.terms.get(k, zero) for k in keys] for e in elements]


def span_rank(elements: list[AlgebraElement]) -> int:
    if not elements:
        return 0
    return rank(_coords(elements), elements[0].spec.field)


def is_locally_finite_probe(d: Derivation, bound: int) -> bool:
    """True iff every generator's iterates become dependent within ``bound`` steps.

    A True answer certifies that each generator (and hence every element)
    spans a finite-dimensional cyclic subspace.  False only means that no
    dependency was seen up to the bound.
    """
    for g in _generators(d.spec):
        its = [g]
        dim = 1
        stable = False
        for _ in range(bound):
            its.append(apply(d, its[-1]))
            new_dim = span_rank(its)
            if new_dim == dim:
                stable = True
                break
            dim = new_dim
        if not stable:
            return False
    return True


def xi(spec: AlgebraSpec) -> Derivation:
    """The Eulerian derivation y dy - x dx."""
    return derivation_from_images(spec, spec.y, spec.zero, -spec.x)


def tau(spec: AlgebraSpec) -> Derivation:
    """h dh + N x dx; only defined when a = c h^N."""
    if not spec.a.is_monomial():
        raise ValidationError("tau exists only when a is a monomial")
    n = spec.a.max_exp
    return derivation_from_images(spec, spec.zero, spec.h, spec.x * n)


def commutator(d1: Derivation, d2: Derivation) -> Derivation:
    """[d1, d2] as images on the generators."""
    imgs = [apply(d1, apply(d2, g)) - apply(d2, apply(d1, g)) for g in (d1.spec.y, d1.spec.h, d1.spec.x)]
    return Derivation(d1.spec, *imgs)


def _hdeg_range(spec: AlgebraSpec, bound: int) -> range:
    return range(-bound, bound + 1) if spec.laurent else range(0, bound + 1)


def _window(spec: AlgebraSpec) -> list[tuple[int, int]]:
    hs = [-1, 0, 1] if spec.laurent else [0, 1]
    return [(s, j) for s in (-1, 0, 1) for j in hs]


def derivation_space(
    spec: AlgebraSpec, weight: int, deg_bound: int, locally_finite: bool = False
) -> list[Derivation]:
    """Basis of the homogeneous derivations of the given weight.

    Unknown images: y -> A^(weight+1), h -> A^(weight), x -> A^(weight-1),
    each with h-exponents limited by ``deg_bound``.  The coefficients solve
    the linear system given by the four relation identities.

    With ``locally_finite`` the solution space is further cut down to the
    derivations that preserve the finite window spanned by the standard
    monomials of weight -1, 0, 1 with h-exponent in {0, 1} (or {-1, 0, 1}
    for Laurent D).  Such derivations are locally finite.
    """
    hs = list(_hdeg_range(spec, deg_bound))
    unknowns = [(slot, s, j) for slot, s in ((0, weight + 1), (1, weight), (2, weight - 1)) for j in hs]
    columns = []
    window = set(_window(spec))
    for slot, s, j in unknowns:
        imgs = [spec.zero, spec.zero, spec.zero]
        imgs[slot] = spec.monomial(s, j)
        d = Derivation(spec, *imgs)
        col = {}
        for ri, r in enumerate(relation_residuals(d)):
            for key, c in r.terms.items():
                col[(ri, key)] = c
        if locally_finite:
            for w in window:
                for key, c in d.on_monomial(*w).terms.items():
                    if key not in window:
                        col[("win", w, key)] = c
        columns.append(col)
    row_keys = sorted({k for col in columns for k in col}, key=repr)
    zero = spec.field.zero
    rows = [[col.get(k, zero) for col in columns] for k in row_keys]
    basis = []
    for vec in nullspace(rows, len(unknowns), spec.field):
        imgs = [spec.zero, spec.zero, spec.zero]
        for (slot, s, j), c in zip(unknowns, vec):
            if c:
                imgs[slot] = imgs[slot] + spec.monomial(s, j, c)
        basis.append(Derivation(spec, *imgs))
    return basis
