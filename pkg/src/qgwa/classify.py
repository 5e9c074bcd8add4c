"""Isomorphism testing, automorphism-group descriptors and the Lambda oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Iterable, Optional

from .algebra import AlgebraSpec, evaluate_poly
from .errors import MixedFields, MixedRings, NotRecognizedInvertible, QGWAError
from .field import FieldElement, root_absence_certified, roots_in_field
from .morphisms import (
    MorphismSpec,
    compose,
    eta,
    in_H,
    in_cg,
    invert,
    omega,
    omega_minus1,
    omega_sym,
    unit_case_automorphism,
    unit_case_candidate,
    unit_matrix,
    verify_morphism,
)
from .poly import LaurentPoly, gap_gcd, is_symmetric, solve_power_system, twist

__all__ = [
    "IsoWitness",
    "IsoResult",
    "decide_isomorphic",
    "AutDescriptor",
    "automorphism_group",
    "sample_automorphisms",
    "recognize",
    "lambda_indecomposables",
    "in_lambda",
    "CrossCheckReport",
    "cross_check_aut",
    "scalar_grid",
]


# ---------------------------------------------------------------------------
# isomorphisms

@dataclass(frozen=True)
class IsoWitness:
    """a2(h) = alpha * a1(beta h^eps), together with the isomorphism it induces."""

    eps: int
    beta: FieldElement
    alpha: LaurentPoly
    q_match: str  # "same" or "inverted"
    morphism: MorphismSpec

    def to_json(self) -> dict:
        return {
            "eps": self.eps,
            "beta": str(self.beta),
            "alpha": str(self.alpha),
            "q_match": self.q_match,
            "morphism": self.morphism.to_json(),
        }


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    witness: Optional[IsoWitness]
    search_complete: bool
    reason: str = ""

    def __bool__(self):
        return self.isomorphic

    def to_json(self) -> dict:
        out = {"isomorphic": self.isomorphic, "search_complete": self.search_complete, "reason": self.reason}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def _no(reason: str, complete: bool = True) -> IsoResult:
    return IsoResult(False, None, complete, reason)


def _q_match(A1: AlgebraSpec, A2: AlgebraSpec) -> Optional[str]:
    if A2.q == A1.q:
        return "same"
    if A2.q == A1.q.inverse():
        return "inverted"
    return None


def _iso_morphism(A1: AlgebraSpec, A2: AlgebraSpec, eps: int, beta, alpha: LaurentPoly) -> MorphismSpec:
    """The isomorphism A1 -> A2 attached to a2 = alpha a1(beta h^eps)."""
    q2 = A2.q
    if q2 ** eps == A1.q:
        img_h = A2.h_power(eps) * beta
        img_y = A2.y
        img_x = A2.from_poly(A2.sigma(alpha.inverse())) * A2.x
    else:
        img_h = A2.h_power(eps) * (beta * q2 ** eps)
        img_y = A2.x
        img_x = A2.y * A2.from_poly(A2.sigma(alpha).inverse())
    return MorphismSpec(A1, A2, img_y, img_h, img_x, "iso")


def _unit_iso(A1: AlgebraSpec, A2: AlgebraSpec, match: str) -> MorphismSpec:
    a1 = A1.a.with_ring(A2.laurent)
    if match == "same":
        c = a1 * A2.a.inverse()
        return MorphismSpec(A1, A2, A2.from_poly(c) * A2.y, A2.h, A2.x, "iso")
    c = a1 * A2.sigma(A2.a).inverse()
    return MorphismSpec(A1, A2, A2.from_poly(c) * A2.x, A2.h, A2.y, "iso")


def _check_witness(A1, A2, w: IsoWitness) -> bool:
    lhs = twist(A1.a, w.beta, w.eps) * w.alpha
    if lhs != A2.a or not verify_morphism(w.morphism):
        return False
    try:
        invert(w.morphism)
    except NotRecognizedInvertible:
        return False
    return True


def _solve_twist(A1: AlgebraSpec, A2: AlgebraSpec, eps: int):
    """Search (beta, alpha) with a2 = alpha a1(beta h^eps).

    Returns (list of (beta, alpha), complete).
    """
    a1, a2 = A1.a, A2.a
    field = A1.field
    s1 = a1.support
    s2 = set(a2.support)
    img = [eps * e for e in s1]
    m = min(s2) - min(img)
    if not A1.laurent and m:
        return [], True
    if {e + m for e in img} != s2:
        return [], True
    c1, c2 = a1.as_dict(), a2.as_dict()
    i0 = s1[0]
    # alpha_0 a1_i beta^i = a2_(eps i + m)
    r0 = c2[eps * i0 + m] / c1[i0]
    eqs = [(i - i0, c2[eps * i + m] / c1[i] / r0) for i in s1[1:]]
    g, c = solve_power_system(eqs, field)
    if g == 0:
        candidates = [field.one]
    else:
        candidates = list(roots_in_field(c, g))
    sols = []
    hm = LaurentPoly.monomial(field, m, 1, A1.laurent)
    for beta in candidates:
        alpha = hm * (r0 / beta ** i0)
        if twist(a1, beta, eps) * alpha == a2:
            sols.append((beta, alpha))
    complete = bool(candidates) or g == 0 or root_absence_certified(c, g)
    return sols, complete


def decide_isomorphic(A1: AlgebraSpec, A2: AlgebraSpec) -> IsoResult:
    """Decide A1 ~= A2 and return an explicit witness when they are."""
    if A1.field != A2.field:
        raise MixedFields("algebras over different fields")
    if A1.laurent != A2.laurent:
        raise MixedRings("algebras over different base rings")
    if A1.unit_case != A2.unit_case:
        return _no("exactly one of a1, a2 is a unit")
    match = _q_match(A1, A2)
    if match is None:
        return _no("q2 is neither q1 nor q1^-1")
    if A1.unit_case:
        m = _unit_iso(A1, A2, match)
        alpha = A2.a * A1.a.inverse()
        w = IsoWitness(1, A1.field.one, alpha, match, m)
        if not _check_witness(A1, A2, w):
            raise QGWAError("internal error: unit-case witness failed verification")
        return IsoResult(True, w, True, "both a1 and a2 are units")
    if A1.a.is_monomial() != A2.a.is_monomial():
        return _no("exactly one of a1, a2 is a monomial")
    complete = True
    for eps in ((1, -1) if A1.laurent else (1,)):
        sols, comp = _solve_twist(A1, A2, eps)
        complete = complete and comp
        for beta, alpha in sols:
            w = IsoWitness(eps, beta, alpha, match, _iso_morphism(A1, A2, eps, beta, alpha))
            if not _check_witness(A1, A2, w):
                raise QGWAError("internal error: witness failed verification")
            return IsoResult(True, w, True, "a2 = alpha a1(beta h^eps)")
    return _no("no alpha, beta, eps with a2 = alpha a1(beta h^eps)", complete)


# ---------------------------------------------------------------------------
# automorphism groups

@dataclass(frozen=True)
class AutDescriptor:
    spec: AlgebraSpec
    case: str  # "NonUnit", "UnitPoly" or "UnitLaurent"
    torus_rank: int
    structure: str
    g: Optional[int] = None
    cg_order: Optional[int] = None
    cg_in_field: Optional[int] = None
    exponent: Optional[int] = None
    has_omega: bool = False
    has_omega_sym: bool = False
    symmetry: Optional[tuple] = None
    laurent_shift: bool = False
    H: Optional[str] = None

    def to_json(self) -> dict:
        out = {
            "case": self.case,
            "torus_rank": self.torus_rank,
            "structure": self.structure,
        }
        if self.case == "NonUnit":
            out.update(
                g=self.g,
                cg_order=self.cg_order,
                cg_in_field=self.cg_in_field,
                exponent=self.exponent,
                has_omega=self.has_omega,
                has_omega_sym=self.has_omega_sym,
                laurent_shift=self.laurent_shift,
            )
            if self.symmetry is not None:
                l, gamma, delta = self.symmetry
                out["symmetry"] = {"l": l, "gamma": str(gamma), "delta": str(delta)}
        else:
            out["H"] = self.H
        return out


def automorphism_group(A: AlgebraSpec) -> AutDescriptor:
    if A.unit_case:
        minus = A.q_is_minus_one
        if A.laurent:
            H = "GL2(Z)" if minus else "SL2(Z)"
            return AutDescriptor(A, "UnitLaurent", 2, f"(k^*)^2 x| {H}", H=H)
        H = "{(e l; 0 1) : e = +-1, l in Z}" if minus else "{(1 l; 0 1) : l in Z}"
        grp = "Z x| Z/2" if minus else "Z"
        return AutDescriptor(A, "UnitPoly", 2, f"(k^*)^2 x| {grp}", H=H)
    g = gap_gcd(A.a)
    cg = "k^*" if g == 0 else f"C_{g}"
    cg_field = None if g == 0 else math.gcd(g, A.field.roots_of_unity_order)
    exponent = A.a.min_exp if A.laurent else A.a.max_exp
    has_omega = A.q_is_minus_one
    sym = is_symmetric(A.a) if A.laurent else None
    base = f"{cg} x k^*"
    if A.laurent:
        # unit shifts y -> y h^m, x -> h^-m x sit alongside G inside K
        base = f"({base}) x Z"
    if has_omega:
        base = f"({base}) x| Z/2"
    if sym is not None:
        base = f"({base}) x| Z/2"
    return AutDescriptor(
        A,
        "NonUnit",
        1,
        base,
        g=g,
        cg_order=g,
        cg_in_field=cg_field,
        exponent=exponent,
        has_omega=has_omega,
        has_omega_sym=sym is not None,
        symmetry=tuple(sym) if sym is not None else None,
        laurent_shift=A.laurent,
    )


def scalar_grid(field, size: int) -> list[FieldElement]:
    """A deterministic list of ``size`` non-zero scalars."""
    base = [1, -1, 2, -2, field.zeta(1) if not field.is_rational else field(1) / 2, 3, field(1) / 3, -3]
    k = 4
    while len(base) < size:
        base += [k, -k]
        k += 1
    return [field(c) for c in base[:size]]


def _cg_elements(A: AlgebraSpec, g: int) -> list[FieldElement]:
    roots = A.field.roots_of_unity()
    if g == 0:
        return roots + [A.field(2)]
    return [r for r in roots if (r ** g).is_one()]


def _omega_generator(A: AlgebraSpec):
    return omega_minus1(A) if A.laurent else omega(A)


def sample_automorphisms(
    A: AlgebraSpec,
    desc: Optional[AutDescriptor] = None,
    gammas: Optional[Iterable] = None,
    mus: Optional[Iterable] = None,
    matrices: Optional[Iterable] = None,
    tori: Optional[Iterable] = None,
) -> list[MorphismSpec]:
    """Concrete automorphisms realising the descriptor; each one is verified."""
    desc = desc or automorphism_group(A)
    out: list[MorphismSpec] = []
    if desc.case == "NonUnit":
        gs = [A.field(c) for c in gammas] if gammas is not None else _cg_elements(A, desc.g)
        ms = [A.field(c) for c in mus] if mus is not None else scalar_grid(A.field, 3)
        out += [eta(A, gm, mu) for gm in gs for mu in ms]
        if desc.laurent_shift:
            out.append(eta(A, 1, 1, shift=1))
        if desc.has_omega:
            out.append(_omega_generator(A))
        if desc.has_omega_sym:
            out.append(omega_sym(A))
    else:
        if matrices is None:
            if desc.case == "UnitLaurent":
                matrices = [((1, 0), (0, 1)), ((0, -1), (1, 0)), ((1, 1), (0, 1))]
                if A.q_is_minus_one:
                    matrices.append(((0, 1), (1, 0)))
            else:
                matrices = [((1, l), (0, 1)) for l in (-1, 0, 1)]
                if A.q_is_minus_one:
                    matrices.append(((-1, 1), (0, 1)))
        tori = list(tori) if tori is not None else [(1, 1), (2, 3)]
        out += [unit_case_automorphism(A, M, t) for M in matrices for t in tori]
    for m in out:
        if not verify_morphism(m):
            raise QGWAError(f"internal error: sample {m} failed verification")
    return out


def _recognize_k(A: AlgebraSpec, desc: AutDescriptor, m: MorphismSpec) -> Optional[str]:
    """Membership in K: h -> gamma h, y -> mu y h^s, x -> nu h^-s x."""
    th, ty, tx = (u.single_term() for u in (m.img_h, m.img_y, m.img_x))
    if th is None or ty is None or tx is None:
        return None
    (sh, jh), gamma = th
    (sy, jy), mu = ty
    if (sh, jh) != (0, 1) or sy != 1 or tx[0][0] != -1:
        return None
    if not in_cg(A, gamma):
        return None
    if jy and not desc.laurent_shift:
        return None
    cand = eta(A, gamma, mu, shift=jy)
    return cand.label if cand.images() == m.images() else None


def recognize(m: MorphismSpec, desc: Optional[AutDescriptor] = None) -> Optional[str]:
    """A word in the descriptor's generators equal to m, or None."""
    A = m.source
    if m.target != A:
        return None
    desc = desc or automorphism_group(A)
    if desc.case != "NonUnit":
        info = unit_matrix(m)
        if info is None:
            return None
        M, torus = info
        if not in_H(A, M):
            return None
        cand = unit_case_candidate(A, M, torus)
        return cand.label if cand.images() == m.images() else None
    hit = _recognize_k(A, desc, m)
    if hit:
        return hit
    # peel off the Z/2 factors
    extra = []
    if desc.has_omega:
        extra.append(_omega_generator(A))
    if desc.has_omega_sym:
        s = omega_sym(A)
        extra.append(s)
        if desc.has_omega:
            extra.append(compose(s, _omega_generator(A)))
    for w in extra:
        # m = k o w  <=>  m o w^-1 in K
        try:
            k = compose(m, invert(w))
        except QGWAError:
            continue
        hit = _recognize_k(A, desc, k)
        if hit:
            return f"{hit} o {w.label}"
    return None


# ---------------------------------------------------------------------------
# grid cross-check

@dataclass
class CrossCheckReport:
    candidates: int = 0
    verified: list = dc_field(default_factory=list)
    recognized: dict = dc_field(default_factory=dict)
    unrecognized: list = dc_field(default_factory=list)
    missing: list = dc_field(default_factory=list)
    eps_minus_verified: int = 0

    @property
    def ok(self) -> bool:
        return not self.unrecognized and not self.missing

    def to_json(self) -> dict:
        return {
            "candidates": self.candidates,
            "verified": len(self.verified),
            "unrecognized": [str(m) for m in self.unrecognized],
            "missing": self.missing,
            "eps_minus_verified": self.eps_minus_verified,
            "ok": self.ok,
        }


def _solve_nu(A: AlgebraSpec, img_y, img_h, x_shape):
    """nu with img_y * (nu x_shape) = a(img_h), or None."""
    lhs = img_y * x_shape
    hinv = img_h.inverse() if A.laurent else None
    rhs = evaluate_poly(A.a, img_h, hinv)
    if not lhs:
        return None
    (key, c), = list(lhs.terms.items())[:1]
    nu = rhs.terms.get(key)
    if nu is None:
        return None
    nu = nu / c
    return nu if lhs * nu == rhs else None


def _nonunit_candidates(A: AlgebraSpec, mus, shifts, gammas_by_eps):
    for eps, gammas in gammas_by_eps.items():
        for gamma in gammas:
            img_h = A.h_power(eps) * gamma
            for swap, mu, s, t in product((False, True), mus, shifts, shifts):
                if swap:
                    img_y = A.h_power(s) * A.x * mu
                    x_shape = A.y * A.h_power(t)
                else:
                    img_y = A.y * A.h_power(s) * mu
                    x_shape = A.h_power(t) * A.x
                nu = _solve_nu(A, img_y, img_h, x_shape)
                if nu is None or not nu:
                    yield None
                    continue
                yield eps, MorphismSpec(A, A, img_y, img_h, x_shape * nu)


def cross_check_aut(A: AlgebraSpec, grid_size: int = 6, shift_radius: int = 1) -> CrossCheckReport:
    """Verify every candidate automorphism shape over finite grids.

    Non-unit case: h -> gamma h^eps with y, x sent to y, x (or to x, y)
    times unit scalars and h-shifts; the x-scalar is solved from yx = a(h).
    Unit case: every 2x2 matrix with entries in [-1, 1] and a torus grid.
    Every verified candidate must be recognised inside the descriptor, and
    every descriptor element lying on the grid must show up as verified.
    """
    desc = automorphism_group(A)
    rep = CrossCheckReport()
    mus = scalar_grid(A.field, grid_size)
    if desc.case == "NonUnit":
        roots = A.field.roots_of_unity()
        gammas_by_eps = {1: roots}
        shifts = list(range(-shift_radius, shift_radius + 1)) if A.laurent else [0]
        if desc.symmetry is not None:
            # Omega_sym carries the shift h^-l on x
            l = desc.symmetry[0]
            shifts = sorted(set(shifts) | {l, -l})
        if A.laurent:
            # any verified eps = -1 map forces a symmetric a; the scalar then
            # lies in q^-1 gamma_sym C_g, so also try those
            extra = []
            if desc.symmetry is not None:
                extra = [A.q.inverse() * desc.symmetry[1] * r for r in roots]
            gammas_by_eps[-1] = list(dict.fromkeys(roots + extra))
        for item in _nonunit_candidates(A, mus, shifts, gammas_by_eps):
            rep.candidates += 1
            if item is None:
                continue
            eps, m = item
            if not verify_morphism(m):
                continue
            rep.verified.append(m)
            rep.eps_minus_verified += eps == -1
            label = recognize(m, desc)
            if label is None:
                rep.unrecognized.append(m)
            else:
                rep.recognized[m] = label
        found = {m.images() for m in rep.verified}
        expected = [eta(A, gm, mu) for gm in roots if in_cg(A, gm) for mu in mus]
        if desc.has_omega:
            expected.append(_omega_generator(A))
        if desc.has_omega_sym:
            expected.append(omega_sym(A))
        rep.missing = [str(m) for m in expected if m.images() not in found]
    else:
        tori = [(s, t) for s in mus[:3] for t in mus[:3]]
        for entries in product((-1, 0, 1), repeat=4):
            M = (entries[:2], entries[2:])
            if not A.laurent and M[1] != (0, 1):
                continue
            for torus in tori:
                rep.candidates += 1
                try:
                    m = unit_case_candidate(A, M, torus)
                    ok = bool(verify_morphism(m))
                    if ok:
                        invert(m)
                except QGWAError:
                    continue
                if not ok:
                    continue
                rep.verified.append(m)
                label = recognize(m, desc)
                if label is None:
                    rep.unrecognized.append(m)
                else:
                    rep.recognized[m] = label
            if in_H(A, M) and not any(unit_matrix(v)[0] == M for v in rep.verified):
                rep.missing.append(f"matrix {M}")
    return rep


# ---------------------------------------------------------------------------
# the monoid Lambda

def in_lambda(p, N: int) -> bool:
    """Membership in the monoid generated by (1,0), (0,1), (-1,N)."""
    u, v = p
    return v >= 0 and v >= -u * N


def lambda_indecomposables(N: int, radius: int) -> set[tuple[int, int]]:
    """Indecomposable elements of Lambda in the radius box that lie on a boundary ray."""
    if N < 1 or radius < N + 2:
        raise ValueError("need N >= 1 and radius >= N + 2")
    box = [(u, v) for u in range(-radius, radius + 1) for v in range(-radius, radius + 1)]
    pts = [p for p in box if p != (0, 0) and in_lambda(p, N)]
    # summands of a point of the box stay inside a slightly larger box
    big = 2 * radius + 1
    summands = [
        (u, v) for u in range(-big, big + 1) for v in range(0, big + 1) if (u, v) != (0, 0) and in_lambda((u, v), N)
    ]
    indec = []
    for p in pts:
        if not any(in_lambda((p[0] - u, p[1] - v), N) and (p[0] - u, p[1] - v) != (0, 0) for u, v in summands):
            indec.append(p)
    # boundary rays: the extreme polar angles among the points
    angles = {p: math.atan2(p[1], p[0]) for p in pts}
    lo = min(pts, key=lambda p: angles[p])
    hi = max(pts, key=lambda p: angles[p])

    def on_ray(p, r):
        return p[0] * r[1] - p[1] * r[0] == 0 and p[0] * r[0] + p[1] * r[1] > 0

    return {p for p in indec if on_ray(p, lo) or on_ray(p, hi)}
