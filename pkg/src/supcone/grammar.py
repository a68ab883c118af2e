"""Canonical text forms.

    fn    := "const" ext
           | "split" "(" fn "," fn ")"
           | "ramp" "(" bit ";" [ext ("," ext)*] ";" poly ")"
    poly  := "poly" "[" rational ("," rational)* "]"      coefficients low-to-high
    flat  := "flat" "d=" int "[" ext ("," ext)* "]"
    ext   := int | int "/" int | "+inf" | "-inf"

Whitespace is insignificant when parsing.  Printing always produces the
canonical spelling, so ``format(parse(s)) == s`` for canonical ``s``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .extreal import ExtReal
from .poly import Poly

__all__ = ["ParseError", "parse_fn", "parse_flat", "parse_value", "format_fn", "format_flat"]


class ParseError(ValueError):
    def __init__(self, message: str, position: int, expected=()):
        self.position = position
        self.expected = tuple(sorted(expected))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at position {position}{detail}")


_TOKEN = re.compile(
    r"\s*(?:(?P<word>const|split|ramp|poly|flat)"
    r"|(?P<inf>[+-]inf)"
    r"|(?P<num>[+-]?\d+(?:/[+-]?\d+)?)"
    r"|(?P<deq>d=)"
    r"|(?P<punct>[(),;\[\]]))"
)


_KIND_NAMES = {"num": "number", "inf": "+inf or -inf", "deq": "d="}


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                rest = text[pos:].lstrip()
                if rest:
                    # reported by the parser, which knows what it expected here
                    self.tokens.append(("bad", rest[0], len(text) - len(rest)))
                break
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("eof", "", len(self.text))

    def take(self, *expected: str):
        kind, value, pos = self.peek()
        if kind == "bad" or (value not in expected and kind not in expected):
            what = f"character {value!r}" if kind == "bad" else repr(value or "end of input")
            raise ParseError(f"unexpected {what}", pos, (_KIND_NAMES.get(e, e) for e in expected))
        self.i += 1
        return kind, value, pos

    def at(self, value: str) -> bool:
        return self.peek()[1] == value

    def done(self):
        kind, value, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"trailing input {value!r}", pos, ("end of input",))


def _ext(lex: _Lexer) -> ExtReal:
    kind, value, pos = lex.take("num", "inf")
    if kind == "inf":
        return ExtReal(value)
    return ExtReal(_rational(value, pos))


def _rational(text: str, pos: int) -> Fraction:
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ParseError("zero denominator", pos)
    return Fraction(int(num), int(den) if den else 1)


def _node(lex: _Lexer):
    from .func import Const, Ramp, Split

    _, word, pos = lex.take("const", "split", "ramp")
    if word == "const":
        return Const(_ext(lex))
    if word == "split":
        lex.take("(")
        lo = _node(lex)
        lex.take(",")
        hi = _node(lex)
        lex.take(")")
        return Split(lo, hi)
    lex.take("(")
    _, bit, bpos = lex.take("num")
    if bit not in ("0", "1"):
        raise ParseError("ramp direction must be 0 or 1", bpos)
    lex.take(";")
    prefix = []
    if not lex.at(";"):
        prefix.append(_ext(lex))
        while lex.at(","):
            lex.take(",")
            prefix.append(_ext(lex))
    lex.take(";")
    poly = _poly(lex)
    lex.take(")")
    return Ramp(int(bit), tuple(prefix), poly)


def _poly(lex: _Lexer) -> Poly:
    lex.take("poly")
    lex.take("[")
    coeffs = []
    _, v, pos = lex.take("num")
    coeffs.append(_rational(v, pos))
    while lex.at(","):
        lex.take(",")
        _, v, pos = lex.take("num")
        coeffs.append(_rational(v, pos))
    lex.take("]")
    return Poly(coeffs)


def parse_node(text: str):
    """Parse to a raw (possibly non-canonical, possibly partial) tree."""
    lex = _Lexer(text)
    node = _node(lex)
    lex.done()
    return node


def parse_fn(text: str):
    from .func import TreeFn

    try:
        return TreeFn(parse_node(text))
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc), 0) from exc


def parse_flat(text: str):
    from .iso import FlatFn

    lex = _Lexer(text)
    lex.take("flat")
    lex.take("deq")
    _, d, pos = lex.take("num")
    if not d.isdigit():
        raise ParseError("depth must be a non-negative integer", pos)
    lex.take("[")
    values = [_ext(lex)]
    while lex.at(","):
        lex.take(",")
        values.append(_ext(lex))
    _, _, end = lex.take("]")
    lex.done()
    if len(values) != 2 ** int(d):
        raise ParseError(f"flat d={d} needs {2 ** int(d)} values, got {len(values)}", end)
    return FlatFn(int(d), tuple(values))


def parse_value(text: str):
    """A function or a flat function, by leading keyword."""
    if text.lstrip().startswith("flat"):
        return parse_flat(text)
    return parse_fn(text)


def _format_node(node) -> str:
    from .func import Const, Ramp

    if isinstance(node, Const):
        return f"const {node.value}"
    if isinstance(node, Ramp):
        prefix = ", ".join(str(v) for v in node.prefix)
        return f"ramp({node.direction}; {prefix}; {node.poly})"
    return f"split({_format_node(node.lo)}, {_format_node(node.hi)})"


def format_fn(u) -> str:
    return _format_node(u.root)


def format_flat(u) -> str:
    return f"flat d={u.depth} [" + ", ".join(str(v) for v in u.values) + "]"
