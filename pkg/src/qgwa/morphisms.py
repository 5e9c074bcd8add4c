"""Algebra morphisms A(D, q1, a1) -> A(D, q2, a2) given by generator images."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .algebra import AlgebraElement, AlgebraSpec, evaluate_poly, from_skew, to_skew
from .errors import (
    GammaNotInCg,
    MatrixNotInH,
    MixedAlgebras,
    NonInvertibleImageOfH,
    NotAUnit,
    NotComposable,
    NotRecognizedInvertible,
    QNotMinusOne,
    ValidationError,
)
from .poly import gap_gcd, is_symmetric

__all__ = [
    "MorphismSpec",
    "Verification",
    "verify_morphism",
    "apply_morphism",
    "identity",
    "eta",
    "omega",
    "omega_sym",
    "omega_minus1",
    "unit_case_automorphism",
    "unit_case_candidate",
    "unit_matrix",
    "in_H",
    "compose",
    "invert",
    "is_identity",
]

RELATIONS = ("hy = q yh", "xh = q hx", "yx = a(h)", "xy = a(qh)")


@dataclass(frozen=True)
class MorphismSpec:
    source: AlgebraSpec
    target: AlgebraSpec
    img_y: AlgebraElement
    img_h: AlgebraElement
    img_x: AlgebraElement
    label: str = dc_field(default="", compare=False)

    def __post_init__(self):
        for u in self.images():
            if u.spec != self.target:
                raise MixedAlgebras("generator images must lie in the target algebra")

    def images(self):
        return self.img_y, self.img_h, self.img_x

    def __call__(self, u: AlgebraElement) -> AlgebraElement:
        return apply_morphism(self, u)

    def __str__(self):
        name = f"{self.label}: " if self.label else ""
        return f"{name}y -> {self.img_y}, h -> {self.img_h}, x -> {self.img_x}"

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "y": str(self.img_y),
            "h": str(self.img_h),
            "x": str(self.img_x),
        }


class Verification:
    """Outcome of :func:`verify_morphism`; truthy when every relation holds."""

    def __init__(self, failures: list[str]):
        self.failures = failures

    def __bool__(self):
        return not self.failures

    @property
    def ok(self) -> bool:
        return not self.failures

    def __repr__(self):
        return "Verification(ok)" if self.ok else f"Verification(failed: {', '.join(self.failures)})"


def _h_inverse(m: MorphismSpec) -> Optional[AlgebraElement]:
    if not m.source.laurent:
        return None
    try:
        return m.img_h.inverse()
    except NotAUnit:
        raise NonInvertibleImageOfH(f"image of h ({m.img_h}) is not a unit of the target") from None


def verify_morphism(m: MorphismSpec) -> Verification:
    """Check that the images satisfy the four defining relations of the source."""
    src = m.source
    q = src.q
    y, h, x = m.images()
    hinv = _h_inverse(m)
    a_h = evaluate_poly(src.a, h, hinv)
    a_qh = evaluate_poly(src.sigma(src.a), h, hinv)
    residuals = [
        h * y - y * h * q,
        x * h - h * x * q,
        y * x - a_h,
        x * y - a_qh,
    ]
    return Verification([name for name, r in zip(RELATIONS, residuals) if r])


class _Applier:
    def __init__(self, m: MorphismSpec):
        self.m = m
        self.cache = {}

    def power(self, letter: str, k: int) -> AlgebraElement:
        key = (letter, k)
        if key not in self.cache:
            m = self.m
            if k == 0:
                val = m.target.one
            elif letter == "h" and k < 0:
                val = self.power("h", k + 1) * _h_inverse(m)
            else:
                img = {"y": m.img_y, "h": m.img_h, "x": m.img_x}[letter]
                val = self.power(letter, k - 1) * img
            self.cache[key] = val
        return self.cache[key]

    def __call__(self, u: AlgebraElement) -> AlgebraElement:
        if u.spec != self.m.source:
            raise MixedAlgebras("element is not in the source algebra")
        out = self.m.target.zero
        for (s, j), c in u.terms.items():
            out = out + self.power("y", max(s, 0)) * self.power("h", j) * self.power("x", max(-s, 0)) * c
        return out


def apply_morphism(m: MorphismSpec, u: AlgebraElement) -> AlgebraElement:
    return _Applier(m)(u)


def identity(spec: AlgebraSpec) -> MorphismSpec:
    return MorphismSpec(spec, spec, spec.y, spec.h, spec.x, "id")


def is_identity(m: MorphismSpec) -> bool:
    return m.source == m.target and m.images() == (m.source.y, m.source.h, m.source.x)


def _eta_exponent(spec: AlgebraSpec) -> int:
    # N = deg a for D = k[h]; i0 = min support for D = k[h^{+-1}]
    return spec.a.min_exp if spec.laurent else spec.a.max_exp


def in_cg(spec: AlgebraSpec, gamma) -> bool:
    gamma = spec.field(gamma)
    if not gamma:
        return False
    g = gap_gcd(spec.a)
    return g == 0 or (gamma ** g).is_one()


def eta(spec: AlgebraSpec, gamma, mu, shift: int = 0) -> MorphismSpec:
    """eta_{gamma,mu}: y -> mu y h^shift, h -> gamma h, x -> mu^-1 gamma^e h^-shift x.

    ``shift`` (Laurent D only) multiplies y by the unit h^shift; the
    matching inverse unit goes on x.
    """
    gamma, mu = spec.field(gamma), spec.field(mu)
    if not mu:
        raise ValidationError("mu must be non-zero")
    if not in_cg(spec, gamma):
        raise GammaNotInCg(f"gamma = {gamma} is not a {gap_gcd(spec.a)}-th root of unity")
    if shift and not spec.laurent:
        raise ValidationError("h-shifts need D = k[h^{+-1}]")
    e = _eta_exponent(spec)
    label = f"eta(gamma={gamma}, mu={mu}" + (f", shift={shift})" if shift else ")")
    return MorphismSpec(
        spec,
        spec,
        spec.y * spec.h_power(shift) * mu,
        spec.h * gamma,
        spec.h_power(-shift) * spec.x * (mu.inverse() * gamma ** e),
        label,
    )


def omega(spec: AlgebraSpec) -> MorphismSpec:
    """The involution y -> x, h -> -h, x -> y (q = -1)."""
    if not spec.q_is_minus_one:
        raise QNotMinusOne(f"Omega needs q = -1, got q = {spec.q}")
    return MorphismSpec(spec, spec, spec.x, -spec.h, spec.y, "Omega")


def omega_minus1(spec: AlgebraSpec) -> MorphismSpec:
    """y -> x, h -> q h, x -> y on a Laurent base with q = -1."""
    if not spec.q_is_minus_one:
        raise QNotMinusOne(f"Omega_-1 needs q = -1, got q = {spec.q}")
    if not spec.laurent:
        raise ValidationError("Omega_-1 is defined for D = k[h^{+-1}]")
    return MorphismSpec(spec, spec, spec.x, spec.h * spec.q, spec.y, "Omega_-1")


def omega_sym(spec: AlgebraSpec) -> Optional[MorphismSpec]:
    """The automorphism with h -> (scalar) h^-1 when a is symmetric, else None."""
    if not spec.laurent:
        raise ValidationError("Omega_sym is defined for D = k[h^{+-1}]")
    sym = is_symmetric(spec.a)
    if sym is None:
        return None
    l, gamma, delta = sym
    q = spec.q
    return MorphismSpec(
        spec,
        spec,
        spec.x,
        spec.hinv * (q.inverse() * gamma),
        spec.y * spec.h_power(-l) * (delta * q ** (-l)),
        "Omega_sym",
    )


# ---------------------------------------------------------------------------
# unit case

def in_H(spec: AlgebraSpec, M: Sequence[Sequence[int]]) -> bool:
    (m11, m12), (m21, m22) = M
    if spec.laurent:
        det = m11 * m22 - m12 * m21
        return det == 1 or (det == -1 and spec.q_is_minus_one)
    return m21 == 0 and m22 == 1 and (m11 == 1 or (m11 == -1 and spec.q_is_minus_one))


def unit_case_candidate(spec: AlgebraSpec, M, torus=(1, 1)) -> MorphismSpec:
    """Images prescribed by the matrix M, without checking M against H.

    D = k[h]:       M = (eps l; 0 1) gives h -> s h x^l, x -> t x^eps.
    D = k[h^{+-1}]: h -> s h^m11 x^m21, x -> t h^m12 x^m22.
    In both cases y -> a(img h) img(x)^-1, forced by yx = a.
    """
    if not spec.unit_case:
        raise ValidationError("unit-case automorphisms need a to be a unit")
    s, t = (spec.field(c) for c in torus)
    (m11, m12), (m21, m22) = M
    if spec.laurent:
        img_h = spec.h_power(m11) * spec.x_power(m21) * s
        img_x = spec.h_power(m12) * spec.x_power(m22) * t
    else:
        img_h = spec.h * spec.x_power(m12) * s
        img_x = spec.x_power(m11) * t
    hinv = img_h.inverse() if spec.laurent else None
    img_y = evaluate_poly(spec.a, img_h, hinv) * img_x.inverse()
    label = f"unit(M={[list(M[0]), list(M[1])]}, torus=({s}, {t}))"
    return MorphismSpec(spec, spec, img_y, img_h, img_x, label)


def unit_case_automorphism(spec: AlgebraSpec, M, torus=(1, 1)) -> MorphismSpec:
    if not in_H(spec, M):
        raise MatrixNotInH(f"{M} is not in H for this algebra")
    return unit_case_candidate(spec, M, torus)


def unit_matrix(m: MorphismSpec):
    """(M, torus) of a unit-case automorphism with monomial images, or None."""
    spec = m.source
    if not spec.unit_case or m.target != spec:
        return None
    try:
        sh, sx = to_skew(m.img_h), to_skew(m.img_x)
    except NotAUnit:
        return None
    if len(sh) != 1 or len(sx) != 1:
        return None
    ((ha, hb), s), = sh.items()
    ((xa, xb), t), = sx.items()
    if spec.laurent:
        return ((ha, xa), (hb, xb)), (s, t)
    if ha != 1 or xa != 0:
        return None
    return ((xb, hb), (0, 1)), (s, t)


# ---------------------------------------------------------------------------
# group structure

def compose(m2: MorphismSpec, m1: MorphismSpec) -> MorphismSpec:
    """m2 after m1."""
    if m1.target != m2.source:
        raise NotComposable("target of the first map is not the source of the second")
    ap = _Applier(m2)
    label = f"{m2.label} o {m1.label}" if m1.label and m2.label else ""
    return MorphismSpec(m1.source, m2.target, *(ap(u) for u in m1.images()), label)


def _scale_to_identity(m: MorphismSpec, inv_imgs: list[AlgebraElement]) -> Optional[list[AlgebraElement]]:
    # m(inv(g)) is linear in inv(g), so each provisional image can be
    # rescaled independently until m o inv fixes g.
    ap = _Applier(m)
    tgt = m.target
    out = []
    for g, img in zip((tgt.y, tgt.h, tgt.x), inv_imgs):
        back = ap(img)
        st = back.single_term()
        gt = g.single_term()
        if st is None or st[0] != gt[0]:
            return None
        out.append(img * (gt[1] / st[1]))
    return out


def invert(m: MorphismSpec) -> MorphismSpec:
    """Inverse of a morphism whose generator images are single monomials.

    Raises NotRecognizedInvertible when the images do not have a recognised
    shape or the candidate inverse fails verification.
    """
    src, tgt = m.source, m.target
    shapes = [u.single_term() for u in m.images()]
    if any(sh is None for sh in shapes):
        raise NotRecognizedInvertible("images are not monomials")
    inv_imgs = None
    if src.unit_case and tgt.unit_case and src == tgt:
        inv_imgs = _invert_unit_shapes(m)
    else:
        (sy, jy), _ = shapes[0]
        (sh_, jh), _ = shapes[1]
        (sx, jx), _ = shapes[2]
        if sh_ == 0 and jh in (1, -1):
            eps = jh
            # provisional inverse images in the source, coefficient 1
            h_img = src.h_power(eps)
            if (sy, sx) == (1, -1):
                y_img = src.monomial(1, -eps * jy)
                x_img = src.monomial(-1, -eps * jx)
            elif (sy, sx) == (-1, 1):
                y_img = src.monomial(-1, -eps * jx)
                x_img = src.monomial(1, -eps * jy)
            else:
                y_img = None
            if y_img is not None:
                if any(j < 0 for j in (-eps * jy, -eps * jx)) and not src.laurent:
                    raise NotRecognizedInvertible("inverse would need h^-1 in k[h]")
                inv_imgs = [y_img, h_img, x_img]
    if inv_imgs is None:
        raise NotRecognizedInvertible("generator images have no recognised shape")
    provisional = MorphismSpec(tgt, src, *inv_imgs)
    fixed = _scale_to_identity(m, list(provisional.images()))
    if fixed is None:
        raise NotRecognizedInvertible("composition with the candidate inverse is not diagonal")
    inv = MorphismSpec(tgt, src, *fixed, f"({m.label})^-1" if m.label else "")
    if not verify_morphism(inv) or not is_identity(compose(m, inv)) or not is_identity(compose(inv, m)):
        raise NotRecognizedInvertible("candidate inverse failed verification")
    return inv


def _invert_unit_shapes(m: MorphismSpec):
    spec = m.source
    try:
        sh, sx = to_skew(m.img_h), to_skew(m.img_x)
    except NotAUnit:
        return None
    if len(sh) != 1 or len(sx) != 1:
        return None
    (ha, hb), = sh
    (xa, xb), = sx
    # columns: skew exponents (h, x) of the images of h and x
    det = ha * xb - xa * hb
    if det not in (1, -1):
        return None
    # inverse integer matrix
    ia, ib, ja, jb = xb * det, -hb * det, -xa * det, ha * det
    # inverse sends h -> h^ia x^ib, x -> h^ja x^jb
    if not spec.laurent and (ia < 0 or ja < 0):
        return None
    img_h = from_skew(spec, {(ia, ib): 1})
    img_x = from_skew(spec, {(ja, jb): 1})
    hinv = img_h.inverse() if spec.laurent else None
    img_y = evaluate_poly(spec.a, img_h, hinv) * img_x.inverse()
    # y's image is forced once h and x are fixed; rescaling it alone is still
    # correct because y = a(h) x^-1 in the target as well.
    return [img_y, img_h, img_x]
