"""Polynomial expressions and system files.

System file grammar::

    field: Q | F<p> | F<p>^<k>
    vars: x, y, z
    <one polynomial per line>

Expressions use ``+ - * ^ ( )``, integer literals and ``a/b`` rational
literals.  Multiplication must be written explicitly.  ``#`` starts a comment.
"""

import re

from . import errors
from .fields import field_from_spec
from .multipoly import PolyRing

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")
_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*$")


class _Tokens:
    __slots__ = ("items", "pos", "line", "end_col")

    def __init__(self, text, line):
        self.items = []
        self.line = line
        i = 0
        while i < len(text):
            m = _TOKEN_RE.match(text, i)
            if not m or m.end() == i:
                break
            if m.group(0).strip() == "":
                break
            col = m.start(m.lastindex) + 1
            if m.group(1):
                self.items.append(("num", m.group(1), col))
            elif m.group(2):
                self.items.append(("name", m.group(2), col))
            else:
                ch = m.group(3)
                if ch not in "+-*^()/":
                    raise errors.ParseError(f"unexpected character {ch!r}", line, col)
                self.items.append((ch, ch, col))
            i = m.end()
        self.end_col = len(text.rstrip()) + 1
        self.pos = 0

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else ("end", "", self.end_col)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return errors.ParseError(msg, self.line, tok[2])


def parse_polynomial(text, ring, line=None):
    """Parse one expression into a Poly of ``ring``."""
    toks = _Tokens(text, line)
    if toks.peek()[0] == "end":
        raise toks.error("empty expression")
    result = _expr(toks, ring)
    tok = toks.peek()
    if tok[0] != "end":
        if tok[0] in ("num", "name", "("):
            raise toks.error("implicit multiplication is not allowed; use '*'")
        raise toks.error(f"unexpected {tok[1]!r}")
    return result


def _expr(toks, ring):
    acc = _term(toks, ring)
    while toks.peek()[0] in ("+", "-"):
        op = toks.take()[0]
        rhs = _term(toks, ring)
        acc = acc + rhs if op == "+" else acc - rhs
    return acc


def _term(toks, ring):
    acc = _unary(toks, ring)
    while toks.peek()[0] == "*":
        toks.take()
        acc = acc * _unary(toks, ring)
    return acc


def _unary(toks, ring):
    kind = toks.peek()[0]
    if kind == "-":
        toks.take()
        return -_unary(toks, ring)
    if kind == "+":
        toks.take()
        return _unary(toks, ring)
    return _power(toks, ring)


def _power(toks, ring):
    base = _atom(toks, ring)
    if toks.peek()[0] == "^":
        toks.take()
        tok = toks.take()
        if tok[0] != "num":
            raise toks.error("exponent must be a non-negative integer literal", tok)
        base = base ** int(tok[1])
    return base


def _atom(toks, ring):
    tok = toks.take()
    kind = tok[0]
    if kind == "num":
        if toks.peek()[0] == "/":
            toks.take()
            den = toks.take()
            if den[0] != "num":
                raise toks.error("rational literal needs an integer denominator", den)
            if int(den[1]) == 0:
                raise toks.error("zero denominator", den)
            return ring.const(f"{tok[1]}/{den[1]}")
        return ring.const(int(tok[1]))
    if kind == "name":
        try:
            return ring.gen(tok[1])
        except errors.UnknownVariable:
            raise errors.UndeclaredVariable(f"undeclared variable {tok[1]!r}", toks.line, tok[2]) from None
    if kind == "(":
        inner = _expr(toks, ring)
        close = toks.take()
        if close[0] != ")":
            raise toks.error("expected ')'", close)
        return inner
    if kind == "end":
        raise toks.error("unexpected end of expression", tok)
    raise toks.error(f"unexpected {tok[1]!r}", tok)


def _strip_comment(line):
    i = line.find("#")
    return line if i < 0 else line[:i]


class SystemFile:
    """A parsed system: field, ordered variables and polynomials."""

    __slots__ = ("field", "ring", "polys", "field_spec")

    def __init__(self, field, ring, polys, field_spec=None):
        self.field = field
        self.ring = ring
        self.polys = list(polys)
        self.field_spec = field_spec or field.spec

    @property
    def variables(self):
        return list(self.ring.vars)

    def to_text(self):
        lines = [f"field: {self.field_spec}", "vars: " + ", ".join(self.ring.vars)]
        lines.extend(f.to_str() for f in self.polys)
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        return (isinstance(other, SystemFile) and self.ring == other.ring
                and self.polys == other.polys)

    def __repr__(self):
        return f"SystemFile({self.ring!r}, {len(self.polys)} polynomials)"


def parse_system(text, seed=0):
    """Parse a system file (see module docstring)."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw)
        if body.strip():
            rows.append((lineno, body))
    if not rows:
        raise errors.ParseError("empty input: expected 'field:' line", 1, 1)
    lineno, body = rows[0]
    head, sep, rest = body.partition(":")
    if not sep or head.strip() != "field":
        raise errors.ParseError("first line must be 'field: Q | F<p> | F<p>^<k>'", lineno, 1)
    spec = rest.strip()
    field = field_from_spec(spec, seed)
    if len(rows) < 2:
        raise errors.ParseError("missing 'vars:' line", lineno + 1, 1)
    lineno, body = rows[1]
    head, sep, rest = body.partition(":")
    if not sep or head.strip() != "vars":
        raise errors.ParseError("second line must be 'vars: x, y, ...'", lineno, 1)
    names = [v.strip() for v in rest.split(",")] if rest.strip() else []
    for v in names:
        if not _NAME_RE.match(v):
            raise errors.ParseError(f"bad variable name {v!r}", lineno, body.find(v) + 1 if v else 1)
    if len(set(names)) != len(names):
        raise errors.ParseError("repeated variable name", lineno, 1)
    ring = PolyRing(field, names)
    polys = [parse_polynomial(body, ring, line) for line, body in rows[2:]]
    return SystemFile(field, ring, polys, spec)
