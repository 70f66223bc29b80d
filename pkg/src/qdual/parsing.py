"""Expression parser for algebra elements.

Grammar (whitespace-insensitive)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := base ['^' ['-'] DIGITS]
    base   := NAME | DIGITS | '(' expr ')'

``q`` is the reserved scalar indeterminate; every other name must be a
generator of the target presentation.  Division requires a purely scalar
divisor.  A negative exponent applies to a scalar or to a single product of
invertible generators.  :func:`render_element`'s default style emits text
this grammar accepts, so elements round-trip.
"""

from __future__ import annotations

import re

from .qfield import ONE, Q, scalar

__all__ = ["ParseError", "parse_element", "parse_raw_terms"]


class ParseError(ValueError):
    """Bad expression text; ``position`` is a 0-based character offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_NAME_RE = re.compile(r"[A-Za-z_]\w*")
_INT_RE = re.compile(r"\d+")
_PUNCT = "+-*/^()"


def _tokenize(text):
    toks = []
    pos, n = 0, len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in _PUNCT:
            toks.append((ch, ch, pos))
            pos += 1
            continue
        m = _NAME_RE.match(text, pos)
        if m is None:
            m = _INT_RE.match(text, pos)
            if m is None:
                raise ParseError(f"unexpected character {ch!r}", pos)
            toks.append(("int", m.group(), pos))
        else:
            toks.append(("name", m.group(), pos))
        pos = m.end()
    toks.append(("end", "", n))
    return toks


class _Parser:
    """Recursive descent over the token list.

    Productions return lists of (coefficient, word) pairs — the raw,
    unnormalized expansion of the expression, with words as letter tuples.
    """

    def __init__(self, text, resolver):
        self.toks = _tokenize(text)
        self.i = 0
        self.resolver = resolver
        self.invertible = {idx for idx, inv in resolver.values() if inv}

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expr(self):
        if self.peek()[0] == "-":
            self.take()
            terms = _negate(self.term())
        else:
            terms = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            terms = terms + (_negate(rhs) if op == "-" else rhs)
        return terms

    def term(self):
        terms = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.factor()
            if op == "*":
                terms = _cross(terms, rhs)
            else:
                s = _as_scalar(rhs)
                if s is None:
                    raise ParseError("divisor must be a scalar expression", pos)
                if s.is_zero:
                    raise ParseError("division by zero", pos)
                inv = s.inv()
                terms = [(c * inv, w) for c, w in terms]
        return terms

    def factor(self):
        base = self.base()
        if self.peek()[0] != "^":
            return base
        _, _, pos = self.take()
        sign = 1
        if self.peek()[0] == "-":
            self.take()
            sign = -1
        tok = self.take()
        if tok[0] != "int":
            raise ParseError("exponent must be an integer", tok[2])
        return self._power(base, sign * int(tok[1]), pos)

    def base(self):
        kind, val, pos = self.take()
        if kind == "int":
            return [(scalar(int(val)), ())]
        if kind == "name":
            if val == "q":
                return [(Q, ())]
            hit = self.resolver.get(val)
            if hit is None:
                raise ParseError(f"unknown generator {val!r}", pos)
            return [(ONE, ((hit[0], 1),))]
        if kind == "(":
            inner = self.expr()
            tok = self.take()
            if tok[0] != ")":
                raise ParseError("expected ')'", tok[2])
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected {val!r}", pos)

    def _power(self, terms, k, pos):
        if k >= 0:
            out = [(ONE, ())]
            for _ in range(k):
                out = _cross(out, terms)
            return out
        s = _as_scalar(terms)
        if s is not None:
            if s.is_zero:
                raise ParseError("cannot invert zero", pos)
            return [(s ** k, ())]
        if len(terms) != 1:
            raise ParseError("cannot invert a sum of monomials", pos)
        c, w = terms[0]
        if c.is_zero:
            raise ParseError("cannot invert zero", pos)
        for g, _ in w:
            if g not in self.invertible:
                raise ParseError(
                    "negative power of a non-invertible generator", pos
                )
        step = [(c.inv(), tuple((g, -s) for g, s in reversed(w)))]
        out = [(ONE, ())]
        for _ in range(-k):
            out = _cross(out, step)
        return out


def _negate(terms):
    return [(-c, w) for c, w in terms]


def _cross(a, b):
    return [(ca * cb, wa + wb) for ca, wa in a for cb, wb in b]


def _as_scalar(terms):
    total = None
    for c, w in terms:
        if w:
            return None
        total = c if total is None else total + c
    return total


def parse_raw_terms(text, resolver):
    """Parse to raw (coefficient, word) pairs without normalizing.

    ``resolver`` maps generator names to (index, invertible) pairs.  Used by
    the presentation-descriptor loader, where rule right-hand sides must stay
    unreduced.
    """
    parser = _Parser(text, resolver)
    terms = parser.expr()
    tok = parser.peek()
    if tok[0] != "end":
        raise ParseError(f"unexpected {tok[1]!r}", tok[2])
    return terms


def parse_element(text, pres):
    """Parse expression text to a normal-form element of ``pres``."""
    resolver = {
        g.name: (i, g.invertible) for i, g in enumerate(pres.generators)
    }
    terms = parse_raw_terms(text, resolver)
    out = pres.zero()
    for c, w in terms:
        out = out + pres.normal_form([(g, s) for g, s in w], c)
    return out
