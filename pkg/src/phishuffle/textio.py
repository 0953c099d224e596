"""Text and machine-readable formats for scalars, polynomials and tensors.

Polynomial text::

    poly  := term (('+'|'-') term)*
    term  := [coeff '*'] word | coeff
    word  := y<k>('.'y<k>)* | 1

Composite coefficients (anything with a sign, ``+`` or ``/`` inside) are
parenthesized: ``y2 - (q/2)*y1.y1``.  Tensor terms are written
``coeff*[u|v]``.  The parser accepts a superset: any arithmetic expression
in ``q`` and words with ``+ - * / ^`` and parentheses.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, lcm

from .scalars import ONE, Q, Scalar
from .words import format_word, parse_word


class ParseError(ValueError):
    pass


# -- formatting ------------------------------------------------------------------

def _integer_parts(s: Scalar) -> tuple[list[int], list[int]]:
    """Integer coefficient lists (lowest degree first) with num/den == s."""
    dens = [c.denominator for c in s.num + s.den]
    m = lcm(*dens) if dens else 1
    num = [int(c * m) for c in s.num]
    den = [int(c * m) for c in s.den]
    g = 0
    for c in num + den:
        g = gcd(g, c)
    if g > 1:
        num = [c // g for c in num]
        den = [c // g for c in den]
    return num, den


def _int_poly_text(coeffs: list[int]) -> str:
    if not any(coeffs):
        return "0"
    parts = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = coeffs[d]
        if c == 0:
            continue
        mag = abs(c)
        if d == 0:
            body = str(mag)
        else:
            mono = "q" if d == 1 else f"q^{d}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("-" if c < 0 else "+") + body)
    return "".join(parts)


def _is_atomic(text: str) -> bool:
    return not any(ch in text[1:] for ch in "+-/") and not text.startswith("-")


def format_scalar(s: Scalar) -> str:
    """``q/2``, ``(q^2+1)/2``, ``1/(q-1)``, ``3*q^2``..."""
    if _leading_sign(s) < 0:
        return "-" + format_scalar(-s)
    num, den = _integer_parts(s)
    ntext = _int_poly_text(num)
    if len(den) == 1:
        d = den[0]
        if d == 1:
            return ntext
        if not _is_atomic(ntext):
            ntext = f"({ntext})"
        return f"{ntext}/{d}"
    dtext = _int_poly_text(den)
    if not _is_atomic(ntext):
        ntext = f"({ntext})"
    return f"{ntext}/({dtext})"


def _leading_sign(s: Scalar) -> int:
    return -1 if s.num and s.num[-1] < 0 else 1


def _coeff_prefix(c: Scalar, body: str) -> tuple[str, str]:
    sign = "-" if _leading_sign(c) < 0 else "+"
    mag = -c if sign == "-" else c
    text = format_scalar(mag)
    if not _is_atomic(text):
        text = f"({text})"
    if body == "1":
        return sign, text
    if text == "1":
        return sign, body
    return sign, f"{text}*{body}"


def _join(terms: list[tuple[str, str]]) -> str:
    if not terms:
        return "0"
    out = []
    for i, (sign, body) in enumerate(terms):
        if i == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def format_poly(P) -> str:
    return _join([_coeff_prefix(c, format_word(w)) for w, c in P.items()])


def format_tensor(T) -> str:
    terms = []
    for key, c in T.items():
        body = "[" + "|".join(format_word(w) for w in key) + "]"
        terms.append(_coeff_prefix(c, body))
    return _join(terms)


# -- machine format ------------------------------------------------------------------

def scalar_to_doc(s: Scalar) -> dict:
    num, den = _integer_parts(s)
    if den[-1] < 0:
        num, den = [-c for c in num], [-c for c in den]
    return {"num": _int_poly_text(num), "den": _int_poly_text(den)}


def poly_to_doc(P) -> dict:
    return {"terms": [{"word": [f"y{k}" for k in w], **scalar_to_doc(c)} for w, c in P.items()]}


def doc_to_poly(doc: dict):
    from .ncpoly import NCPoly

    terms = {}
    for t in doc["terms"]:
        w = tuple(parse_word(x)[0] for x in t["word"])
        terms[w] = parse_scalar(t["num"]) / parse_scalar(t["den"])
    return NCPoly(terms)


def tensor_to_doc(T) -> dict:
    return {"order": T.order,
            "terms": [{"words": [[f"y{k}" for k in w] for w in key], **scalar_to_doc(c)}
                      for key, c in T.items()]}


# -- parsing ------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<word>y\d+(?:\.y\d+)*)
  | (?P<num>\d+)
  | (?P<q>q)
  | (?P<op>[-+*/^()\[\]|])
""", re.VERBOSE)


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r} at {pos} in {text!r}")
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group()))
        pos = m.end()
    out.append(("end", ""))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, value: str | None = None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r} but found {tok[1] or 'end'!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        v = self.expr()
        if self.peek()[0] != "end":
            raise ParseError(f"trailing input {self.peek()[1]!r} in {self.text!r}")
        return v

    def expr(self):
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        v = self.term()
        v = -v if sign < 0 else v
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            v = _add(v, t) if op == "+" else _add(v, -t)
        return v

    def term(self):
        v = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            f = self.factor()
            v = _mul(v, f) if op == "*" else _div(v, f, self.text)
        return v

    def factor(self):
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return -self.factor()
        v = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be a nonnegative integer in {self.text!r}")
            v = _pow(v, int(val), self.text)
        return v

    def atom(self):
        from .ncpoly import NCPoly, TensorPoly

        kind, val = self.take()
        if kind == "num":
            return Scalar(int(val))
        if kind == "q":
            return Q
        if kind == "word":
            return NCPoly.monomial(parse_word(val))
        if kind == "op" and val == "(":
            v = self.expr()
            self.take(")")
            return v
        if kind == "op" and val == "[":
            legs = [self._leg()]
            while self.peek()[1] == "|":
                self.take()
                legs.append(self._leg())
            self.take("]")
            return TensorPoly({tuple(legs): ONE}, len(legs))
        raise ParseError(f"unexpected {val or 'end'!r} in {self.text!r}")

    def _leg(self):
        kind, val = self.take()
        if kind == "word":
            return parse_word(val)
        if kind == "num" and val == "1":
            return ()
        raise ParseError(f"bad tensor leg {val!r} in {self.text!r}")


def _kind(v) -> str:
    from .ncpoly import NCPoly, TensorPoly

    if isinstance(v, Scalar):
        return "s"
    if isinstance(v, NCPoly):
        return "p"
    if isinstance(v, TensorPoly):
        return "t"
    raise TypeError(type(v))


def _add(a, b):
    from .ncpoly import NCPoly

    ka, kb = _kind(a), _kind(b)
    if ka == "s" and kb == "s":
        return a + b
    if "t" in (ka, kb):
        if ka != kb:
            raise ParseError("cannot add a tensor and a polynomial")
        return a + b
    a = NCPoly.constant(a) if ka == "s" else a
    b = NCPoly.constant(b) if kb == "s" else b
    return a + b


def _mul(a, b):
    ka, kb = _kind(a), _kind(b)
    if ka == "s" or kb == "s":
        if ka == "s" and kb == "s":
            return a * b
        return b.scale(a) if ka == "s" else a.scale(b)
    if ka == "p" and kb == "p":
        return a * b
    raise ParseError("tensor products are not supported in text")


def _as_scalar_value(v, text: str) -> Scalar:
    if _kind(v) == "s":
        return v
    if _kind(v) == "p" and all(w == () for w in v.support()):
        return v.constant_term
    raise ParseError(f"expected a scalar in {text!r}")


def _div(a, b, text: str):
    d = _as_scalar_value(b, text)
    if not d:
        raise ParseError(f"division by zero in {text!r}")
    return a / d if _kind(a) != "t" else a.scale(ONE / d)


def _pow(v, n: int, text: str):
    if _kind(v) == "t":
        raise ParseError(f"cannot raise a tensor to a power in {text!r}")
    return v ** n


def parse_scalar(text: str) -> Scalar:
    """Parse an element of Q(q), e.g. ``'(q^2+1)/2'`` or ``'-3/4'``."""
    return _as_scalar_value(_Parser(text).parse(), text)


def parse_poly(text: str):
    """Parse polynomial text into an :class:`~phishuffle.ncpoly.NCPoly`."""
    from .ncpoly import NCPoly

    v = _Parser(text).parse()
    k = _kind(v)
    if k == "s":
        return NCPoly.constant(v)
    if k == "t":
        raise ParseError(f"expected a polynomial, got a tensor: {text!r}")
    return v


def parse_tensor(text: str):
    v = _Parser(text).parse()
    if _kind(v) != "t":
        raise ParseError(f"expected a tensor: {text!r}")
    return v


def parse_rational(text: str) -> Fraction:
    return parse_scalar(text).to_fraction()
