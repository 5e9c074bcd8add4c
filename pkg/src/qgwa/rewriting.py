"""Naive word rewriting for A(D, q, a).

This is the slow reference path: words over the letters y, h, H (= h^-1)
and x are rewritten leftmost-redex-first until only words y^i h^j x^k with
ik = 0 remain.  It shares no code with the closed-form product in
``algebra`` and is used to cross-check it.
"""

from __future__ import annotations

from typing import Iterable, Union

from .algebra import AlgebraElement, AlgebraSpec
from .errors import InvalidGenerator
from .field import FieldElement

__all__ = ["from_word", "rewrite", "to_words", "word_product"]

Word = tuple[str, ...]
_LETTERS = {"y": "y", "x": "x", "h": "h", "H": "H", "hinv": "H"}


def _a_words(spec: AlgebraSpec, scale_by_q: bool) -> list[tuple[Word, FieldElement]]:
    out = []
    for e, c in spec.a.terms:
        if scale_by_q:
            c = c * spec.q ** e
        out.append((("h",) * e if e >= 0 else ("H",) * (-e), c))
    return out


def _find_redex(w: Word, spec: AlgebraSpec):
    """Return (start, end, [(replacement, coeff), ...]) for the leftmost redex."""
    q = spec.q
    n = len(w)
    for i in range(n - 1):
        pair = w[i] + w[i + 1]
        if pair in ("hH", "Hh"):
            return i, i + 2, [((), 1)]
        if pair == "hy":
            return i, i + 2, [(("y", "h"), q)]
        if pair == "Hy":
            return i, i + 2, [(("y", "H"), q.inverse())]
        if pair == "xh":
            return i, i + 2, [(("h", "x"), q)]
        if pair == "xH":
            return i, i + 2, [(("H", "x"), q.inverse())]
        if pair == "yx":
            return i, i + 2, _a_words(spec, False)
        if pair == "xy":
            return i, i + 2, _a_words(spec, True)
        if w[i] == "y" and w[i + 1] in "hH":
            # y B x with B a block of h^{+-1}: move y across B, then use yx = a(h)
            k = i + 1
            while k < n and w[k] in "hH":
                k += 1
            if k < n and w[k] == "x":
                block = w[i + 1 : k]
                net = block.count("h") - block.count("H")
                c = q ** (-net)
                return i, k + 1, [(block + aw, c * ac) for aw, ac in _a_words(spec, False)]
    return None


def _word_to_key(w: Word) -> tuple[int, int]:
    i = k = j = 0
    for letter in w:
        if letter == "y":
            i += 1
        elif letter == "x":
            k += 1
        elif letter == "h":
            j += 1
        else:
            j -= 1
    assert i == 0 or k == 0
    return i - k, j


def rewrite(spec: AlgebraSpec, combo: dict[Word, object]) -> AlgebraElement:
    """Normal form of a linear combination of words."""
    field = spec.field
    pending: dict[Word, FieldElement] = {}
    for w, c in combo.items():
        c = field(c)
        if c:
            pending[w] = pending.get(w, field.zero) + c
    done: dict[tuple[int, int], FieldElement] = {}
    while pending:
        w, c = pending.popitem()
        if not c:
            continue
        red = _find_redex(w, spec)
        if red is None:
            key = _word_to_key(w)
            done[key] = done.get(key, field.zero) + c
            continue
        start, end, repl = red
        for r, rc in repl:
            nw = w[:start] + r + w[end:]
            pending[nw] = pending.get(nw, field.zero) + c * rc
    return spec.from_terms({k: v for k, v in done.items() if v})


def from_word(spec: AlgebraSpec, word: Iterable[Union[str, int, FieldElement]]) -> AlgebraElement:
    """Normal form of a product of generators and scalars, e.g. ['x', 'y']."""
    letters: list[str] = []
    coeff = spec.field.one
    for tok in word:
        if isinstance(tok, str):
            if tok not in _LETTERS:
                raise InvalidGenerator(f"unknown generator {tok!r}")
            letter = _LETTERS[tok]
            if letter == "H" and not spec.laurent:
                raise InvalidGenerator("h^-1 does not exist when D = k[h]")
            letters.append(letter)
        else:
            coeff = coeff * spec.field(tok)
    return rewrite(spec, {tuple(letters): coeff})


def to_words(u: AlgebraElement) -> dict[Word, FieldElement]:
    """Express a normal-form element as a combination of words."""
    out = {}
    for (s, j), c in u.terms.items():
        w = ("y",) * max(s, 0) + (("h",) * j if j >= 0 else ("H",) * (-j)) + ("x",) * max(-s, 0)
        out[w] = c
    return out


def word_product(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """u * v computed by concatenating words and rewriting."""
    combo: dict[Word, FieldElement] = {}
    for w1, c1 in to_words(u).items():
        for w2, c2 in to_words(v).items():
            w = w1 + w2
            combo[w] = combo.get(w, u.spec.field.zero) + c1 * c2
    return rewrite(u.spec, combo)
