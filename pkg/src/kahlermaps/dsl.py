"""A small expression language for rotation-invariant potentials.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := number | ident | "(" expr ")"
            | ident "(" expr ("," expr)* ")" | "-" factor

Identifiers are the variables ``x1 .. xn``, the radial shorthand
``r2 = x1 + ... + xn`` and the functions ``log``, ``exp``, ``sqrt`` (one
argument) and ``pow`` (two).  Error positions are byte offsets into the UTF-8
encoding of the source.

The evaluator is generic: it runs on floats, :class:`~kahlermaps.ad.Dual`,
:class:`~kahlermaps.ad.Jet2` and :class:`~kahlermaps.series.TruncatedSeries`.
"""

import re
from dataclasses import dataclass

from kahlermaps import ad
from kahlermaps.errors import ArityError, PotentialSyntaxError, UnknownIdentifier

FUNCTIONS = {"log": 1, "exp": 1, "sqrt": 1, "pow": 2}

_TOKEN = re.compile(
    rb"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/(),])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Num:
    value: float

    def __str__(self):
        return repr(self.value)


@dataclass(frozen=True)
class Var:
    # 0-based coordinate index; -1 stands for r2.
    index: int

    def __str__(self):
        return "r2" if self.index < 0 else f"x{self.index + 1}"


@dataclass(frozen=True)
class Neg:
    operand: object

    def __str__(self):
        return f"(-{self.operand})"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object

    def __str__(self):
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple

    def __str__(self):
        return f"{self.name}({', '.join(map(str, self.args))})"


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def tokenize(text):
    data = text.encode("utf-8")
    pos = 0
    toks = []
    while pos < len(data):
        m = _TOKEN.match(data, pos)
        if m is None:
            raise PotentialSyntaxError(f"unexpected character {data[pos:pos + 1]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group().decode("utf-8"), pos))
        pos = m.end()
    toks.append(_Tok("eof", "", len(data)))
    return toks


class _Parser:
    def __init__(self, text, dim):
        self.toks = tokenize(text)
        self.i = 0
        self.dim = dim

    @property
    def tok(self):
        return self.toks[self.i]

    def _advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def _expect(self, text):
        t = self.tok
        if t.text != text:
            raise PotentialSyntaxError(f"unexpected {t.text or 'end of input'!r}", t.pos, (repr(text),))
        return self._advance()

    def parse(self):
        node = self.expr()
        if self.tok.kind != "eof":
            raise PotentialSyntaxError(
                f"unexpected {self.tok.text!r}", self.tok.pos, ("operator", "end of input")
            )
        return node

    def expr(self):
        node = self.term()
        while self.tok.text in ("+", "-"):
            op = self._advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.tok.text in ("*", "/"):
            op = self._advance().text
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        t = self.tok
        if t.kind == "number":
            self._advance()
            return Num(float(t.text))
        if t.text == "-":
            self._advance()
            return Neg(self.factor())
        if t.text == "(":
            self._advance()
            node = self.expr()
            self._expect(")")
            return node
        if t.kind == "ident":
            self._advance()
            return self._identifier(t)
        raise PotentialSyntaxError(
            f"unexpected {t.text or 'end of input'!r}", t.pos, ("number", "identifier", "'('", "'-'")
        )

    def _identifier(self, t):
        name = t.text
        if name in FUNCTIONS:
            self._expect("(")
            args = [self.expr()]
            while self.tok.text == ",":
                self._advance()
                args.append(self.expr())
            self._expect(")")
            if len(args) != FUNCTIONS[name]:
                raise ArityError(
                    f"{name} takes {FUNCTIONS[name]} argument(s), got {len(args)}", t.pos
                )
            return Call(name, tuple(args))
        if name == "r2":
            return Var(-1)
        m = re.fullmatch(r"x([1-9][0-9]*)", name)
        if m and int(m.group(1)) <= self.dim:
            return Var(int(m.group(1)) - 1)
        raise UnknownIdentifier(f"unknown identifier {name!r}", t.pos)


def parse_expression(text, dim):
    """Parse ``text`` into an AST over the variables ``x1 .. x{dim}``."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    return _Parser(text, dim).parse()


def evaluate(node, xs):
    """Evaluate ``node`` with ``xs[k]`` bound to x_{k+1}.

    ``xs`` may hold floats or any jet/series type; constants stay floats
    and mix in through the operand types' arithmetic.
    """
    r2 = None

    def ev(n):
        nonlocal r2
        if isinstance(n, Num):
            return n.value
        if isinstance(n, Var):
            if n.index >= 0:
                return xs[n.index]
            if r2 is None:
                r2 = xs[0]
                for v in xs[1:]:
                    r2 = r2 + v
            return r2
        if isinstance(n, Neg):
            return -ev(n.operand)
        if isinstance(n, BinOp):
            a, b = ev(n.left), ev(n.right)
            if n.op == "+":
                return a + b
            if n.op == "-":
                return a - b
            if n.op == "*":
                return a * b
            return ad.divide(a, b)
        if isinstance(n, Call):
            args = [ev(a) for a in n.args]
            if n.name == "pow":
                return ad.power(*args)
            return getattr(ad, n.name)(args[0])
        raise TypeError(f"not an expression node: {n!r}")

    return ev(node)
