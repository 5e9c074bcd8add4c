"""Recursive-descent parser for scalars, polynomials, elements and specs.

Precedence, tightest first: ``^`` (integer exponent), unary minus, ``*`` and
``/``, then ``+`` and ``-``.  Products keep their left-to-right order, which
matters for algebra elements.  Division is only by non-zero scalars.
"""

from __future__ import annotations

import re
from typing import Callable, Optional

from .errors import NegativeExponentInPolyRing, NotAUnit, ParseError, QGWAError, ValidationError
from .field import FieldSpec, QQ

__all__ = ["parse_scalar", "parse_poly", "parse_element", "parse_spec", "parse_field"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class _Parser:
    def __init__(self, text: str, atom: Callable, field: FieldSpec):
        self.text = text
        self.atom_fn = atom
        self.field = field
        self.toks = []
        pos = 0
        while True:
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                break
            start = m.start(m.lastindex)
            kind = ("num", "name", "sym")[m.lastindex - 1]
            self.toks.append((kind, m.group(m.lastindex), start))
            pos = m.end()
        self.toks.append(("end", "", len(text.rstrip()) if text.strip() else len(text)))
        self.i = 0

    # -- token helpers ----------------------------------------------------
    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.text, tok[2])

    def expect(self, sym):
        tok = self.take()
        if tok[1] != sym or tok[0] not in ("sym", "name"):
            raise self.error(f"expected {sym!r}, found {tok[1] or 'end of input'!r}", tok)
        return tok

    def at(self, sym):
        kind, val, _ = self.peek()
        return kind == "sym" and val == sym

    # -- grammar ----------------------------------------------------------
    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        val = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return val

    def expr(self):
        val = self.term()
        while self.at("+") or self.at("-"):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.at("*") or self.at("/"):
            tok = self.take()
            rhs = self.unary()
            if tok[1] == "*":
                val = val * rhs
            else:
                c = _as_scalar(rhs, self.field)
                if c is None:
                    raise self.error("can only divide by a scalar", tok)
                if not c:
                    raise self.error("division by zero", tok)
                val = val * c.inverse()
        return val

    def unary(self):
        if self.at("-"):
            self.take()
            return -self.unary()
        if self.at("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        val = self.atom()
        if self.at("^"):
            tok = self.take()
            neg = False
            if self.at("-"):
                self.take()
                neg = True
            elif self.at("("):
                # allow h^(-2)
                self.take()
                neg = bool(self.at("-") and self.take())
                e = self.integer()
                self.expect(")")
                return self._pow(val, -e if neg else e, tok)
            e = self.integer()
            return self._pow(val, -e if neg else e, tok)
        return val

    def _pow(self, val, e, tok):
        try:
            return val ** e
        except (NegativeExponentInPolyRing, NotAUnit) as exc:
            # h^-1 in k[h], or a negative power of a non-unit
            raise ValidationError(str(exc)) from None
        except QGWAError as exc:
            raise self.error(str(exc), tok) from None

    def integer(self) -> int:
        tok = self.take()
        if tok[0] != "num":
            raise self.error("expected an integer exponent", tok)
        return int(tok[1])

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return self.atom_fn(("num", int(val)), tok, self)
        if kind == "sym" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "name":
            if val == "zeta":
                self.expect("(")
                m = self.integer()
                self.expect(")")
                return self.atom_fn(("zeta", m), tok, self)
            return self.atom_fn(("name", val), tok, self)
        raise self.error(f"unexpected {val or 'end of input'!r}", tok)


def _as_scalar(v, field):
    from .algebra import AlgebraElement
    from .field import FieldElement
    from .poly import LaurentPoly

    if isinstance(v, FieldElement):
        return v
    if isinstance(v, LaurentPoly):
        return v.coeff(0) if v.is_constant() else None
    if isinstance(v, AlgebraElement):
        return v.scalar_value() if v.is_scalar() else None
    return None


def _zeta(field: FieldSpec, m: int, tok, p: _Parser):
    if m < 1 or field.roots_of_unity_order % m:
        raise p.error(f"zeta({m}) is not in {field}", tok)
    return field.root_of_unity(m)


def _scalar_atom(field, extra=None):
    def atom(item, tok, p):
        kind, val = item
        if kind == "num":
            return field(val)
        if kind == "zeta":
            return _zeta(field, val, tok, p)
        if extra and val in extra:
            return extra[val]
        raise p.error(f"unknown symbol {val!r}", tok)

    return atom


def parse_scalar(text: str, field: FieldSpec = QQ):
    return _Parser(text, _scalar_atom(field), field).parse()


def parse_poly(text: str, field: FieldSpec = QQ, laurent: bool = False, q=None):
    """Parse a polynomial in h (and hinv / h^-k when ``laurent``)."""
    from .poly import LaurentPoly

    scal = _scalar_atom(field, {"q": q} if q is not None else None)

    def atom(item, tok, p):
        kind, val = item
        if kind == "name" and val == "h":
            return LaurentPoly.monomial(field, 1, 1, laurent)
        if kind == "name" and val == "hinv":
            if not laurent:
                raise ValidationError("h^-1 does not exist when D = k[h]")
            return LaurentPoly.monomial(field, -1, 1, laurent)
        return LaurentPoly.constant(field, scal(item, tok, p), laurent)

    try:
        return _Parser(text, atom, field).parse()
    except ParseError:
        raise
    except QGWAError as exc:
        raise ValidationError(str(exc)) from None


def parse_element(text: str, spec):
    """Parse an expression in y, h, x (hinv / h^-k for Laurent D) and q."""
    scal = _scalar_atom(spec.field, {"q": spec.q})

    def atom(item, tok, p):
        kind, val = item
        if kind == "name" and val in ("y", "x", "h", "hinv"):
            try:
                return spec.generator(val)
            except QGWAError as exc:
                raise p.error(str(exc), tok) from None
        return spec.scalar(scal(item, tok, p))

    return _Parser(text, atom, spec.field).parse()


_FIELD_RE = re.compile(r"\s*(?:Q|QQ)\s*(?:\(\s*zeta\s*\(\s*(\d+)\s*\)\s*\))?\s*$")


def parse_field(text: str) -> FieldSpec:
    m = _FIELD_RE.match(text)
    if not m:
        raise ParseError(f"bad field {text.strip()!r}; expected Q or Q(zeta(n))", text, 0)
    n = int(m.group(1) or 1)
    if n < 1:
        raise ValidationError("cyclotomic order must be positive")
    return FieldSpec(n)


_KEY_RE = re.compile(r"(?<![A-Za-z_0-9])(field|d|q|a)\s*=")


def parse_spec(text: str, default_field: Optional[FieldSpec] = None):
    """Parse ``field=... algebra d=poly|laurent q=... a=...``.

    The ``field=`` clause is optional and falls back to ``default_field``
    (or Q).  Keys may come in any order; ``algebra`` is an optional keyword.
    """
    from .algebra import AlgebraSpec

    keys = list(_KEY_RE.finditer(text))
    values: dict[str, tuple[str, int]] = {}
    # text before the first key may only be blank or the word "algebra"
    head = text[: keys[0].start()] if keys else text
    if head.strip() not in ("", "algebra"):
        raise ParseError(f"unexpected {head.strip()!r}", text, len(head) - len(head.lstrip()))
    for i, m in enumerate(keys):
        end = keys[i + 1].start() if i + 1 < len(keys) else len(text)
        chunk = text[m.end() : end]
        # strip a trailing "algebra" keyword belonging to the next clause
        chunk = re.sub(r"\balgebra\s*$", "", chunk.rstrip())
        if m.group(1) in values:
            raise ParseError(f"duplicate key {m.group(1)!r}", text, m.start())
        values[m.group(1)] = (chunk, m.end())
    for key in ("d", "q", "a"):
        if key not in values:
            raise ParseError(f"missing {key}=", text, len(text))

    def sub(key, fn):
        chunk, off = values[key]
        try:
            return fn(chunk)
        except ParseError as exc:
            raise ParseError(str(exc).rsplit(" (line", 1)[0], text, off + exc.pos) from None

    field = sub("field", parse_field) if "field" in values else (default_field or QQ)
    dflag = values["d"][0].strip()
    if dflag not in ("poly", "laurent"):
        raise ParseError(f"d must be poly or laurent, found {dflag!r}", text, values["d"][1])
    laurent = dflag == "laurent"
    q = sub("q", lambda s: parse_scalar(s, field))
    a = sub("a", lambda s: parse_poly(s, field, laurent, q))
    return AlgebraSpec(field, laurent, q, a)
