"""Shared fixtures data and random generators for the test modules."""

from qgwa import AlgebraSpec, FieldSpec, LaurentPoly

Q, F3, F4 = FieldSpec(1), FieldSpec(3), FieldSpec(4)

# poly / Laurent crossed with q in {-1, zeta3, zeta4}
FIXTURES = [
    AlgebraSpec.make("h^2-1", -1, False, Q),
    AlgebraSpec.make("h^3+h", F3.zeta(1), False, F3),
    AlgebraSpec.make("h^2-1", F4.zeta(1), False, F4),
    AlgebraSpec.make("h^3+h", -1, True, Q),
    AlgebraSpec.make("h+2+hinv", F3.zeta(1), True, F3),
    AlgebraSpec.make("h+2+hinv", F4.zeta(1), True, F4),
]


def fixture_id(spec):
    return f"{'laurent' if spec.laurent else 'poly'}-q={spec.q}-a={spec.a}".replace(" ", "")


def random_word(rng, spec, max_len=6):
    letters = ["y", "h", "x"] + (["hinv"] if spec.laurent else [])
    return [rng.choice(letters) for _ in range(rng.randint(0, max_len))]


def random_monomial(rng, spec, wmax=3, jmax=3):
    lo = -jmax if spec.laurent else 0
    c = spec.field.random_element(rng, nonzero=True)
    return spec.monomial(rng.randint(-wmax, wmax), rng.randint(lo, jmax), c)


def random_element(rng, spec, nterms=3):
    out = spec.zero
    for _ in range(nterms):
        out = out + random_monomial(rng, spec)
    return out


def random_poly(rng, field, laurent, deg=4, lo=-3, hi=3, nonzero=True):
    while True:
        emin = -deg if laurent else 0
        terms = {e: rng.randint(lo, hi) for e in range(emin, deg + 1) if rng.random() < 0.5}
        f = LaurentPoly(field, {e: field(c) for e, c in terms.items() if c}, laurent)
        if f or not nonzero:
            return f


# acceptance criterion number -> (status, title, detail); filled by
# test_acceptance and printed by the terminal-summary hook in conftest
ACCEPTANCE_RESULTS: dict[int, tuple[str, str, str]] = {}
