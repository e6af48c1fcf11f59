"""Terms, equations and quasi-equations over the signature {+, ., |, &, 0, 1}.

Concrete syntax (ASCII):

    +   truncated sum (oplus)
    .   truncated product (odot)
    |   join
    &   meet
    0 1 constants
    x y z       variables 0, 1, 2
    x0 x1 ...   variable by index

Precedence, loosest to tightest: ``|``, ``&``, ``+``, ``.``; all operators are
left associative.  An equation is ``lhs = rhs``; a quasi-equation lists its
premises separated by commas before ``=>``::

    x + z = y + z, x . z = y . z => x = y
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

OPS = ("+", ".", "|", "&")
OP_NAMES = {"+": "oplus", ".": "odot", "|": "join", "&": "meet"}
PRECEDENCE = {"|": 1, "&": 2, "+": 3, ".": 4}

_LETTERS = {"x": 0, "y": 1, "z": 2}


class TermSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("variable index must be nonnegative")

    def __str__(self):
        return f"x{self.index}"


@dataclass(frozen=True)
class Const:
    value: int

    def __post_init__(self):
        if self.value not in (0, 1):
            raise ValueError("constants are 0 and 1")

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Op:
    sym: str
    left: "Term"
    right: "Term"

    def __post_init__(self):
        if self.sym not in OPS:
            raise ValueError(f"unknown connective {self.sym!r}")

    def __str__(self):
        return f"({self.left} {self.sym} {self.right})"


Term = Union[Var, Const, Op]


def variables(t: Term) -> set[int]:
    if isinstance(t, Var):
        return {t.index}
    if isinstance(t, Const):
        return set()
    return variables(t.left) | variables(t.right)


def size(t: Term) -> int:
    """Number of operation nodes."""
    if isinstance(t, Op):
        return 1 + size(t.left) + size(t.right)
    return 0


def depth(t: Term) -> int:
    if isinstance(t, Op):
        return 1 + max(depth(t.left), depth(t.right))
    return 0


def postfix(t: Term) -> Iterator[Term]:
    if isinstance(t, Op):
        yield from postfix(t.left)
        yield from postfix(t.right)
    yield t


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term

    def variables(self) -> set[int]:
        return variables(self.lhs) | variables(self.rhs)

    def render(self, names: dict[int, str] | None = None) -> str:
        return f"{render(self.lhs, names, top=True)} = {render(self.rhs, names, top=True)}"

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class QuasiEquation:
    premises: tuple[Equation, ...]
    conclusion: Equation
    names: tuple[tuple[int, str], ...] = ()

    @property
    def arity(self) -> int:
        """Number of variables quantified: one more than the largest index."""
        idx = self.conclusion.variables()
        for p in self.premises:
            idx |= p.variables()
        return max(idx) + 1 if idx else 0

    def var_name(self, i: int) -> str:
        return dict(self.names).get(i, f"x{i}")

    @classmethod
    def of(cls, eq: Equation) -> "QuasiEquation":
        return cls((), eq)

    def __str__(self):
        names = dict(self.names)
        head = ", ".join(p.render(names) for p in self.premises)
        body = self.conclusion.render(names)
        return f"{head} => {body}" if head else body


def render(t: Term, names: dict[int, str] | None = None, top: bool = False) -> str:
    """Fully parenthesised text that parses back to ``t``."""
    if isinstance(t, Var):
        return (names or {}).get(t.index, f"x{t.index}")
    if isinstance(t, Const):
        return str(t.value)
    s = f"{render(t.left, names)} {t.sym} {render(t.right, names)}"
    return s if top else f"({s})"


_TOKEN = re.compile(r"\s*(?:(=>)|([a-z][0-9]*)|([01])|([+.|&()=,]))")


def _tokenize(src: str) -> list[str]:
    tokens = []
    pos = 0
    src = src.rstrip()
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise TermSyntaxError(f"unexpected character at {pos}: {src[pos:pos + 10]!r}")
        tokens.append(m.group(m.lastindex))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.pos = 0
        self.names: dict[int, str] = {}

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None:
            raise TermSyntaxError(f"unexpected end of input in {self.src!r}")
        if expected is not None and tok != expected:
            raise TermSyntaxError(f"expected {expected!r}, got {tok!r} in {self.src!r}")
        self.pos += 1
        return tok

    def at_end(self):
        return self.pos == len(self.tokens)

    def term(self, min_prec: int = 1) -> Term:
        left = self.atom()
        while True:
            tok = self.peek()
            if tok not in PRECEDENCE or PRECEDENCE[tok] < min_prec:
                return left
            self.take()
            right = self.term(PRECEDENCE[tok] + 1)
            left = Op(tok, left, right)

    def atom(self) -> Term:
        tok = self.take()
        if tok == "(":
            t = self.term()
            self.take(")")
            return t
        if tok in ("0", "1"):
            return Const(int(tok))
        if tok[0].isalpha():
            return self.variable(tok)
        raise TermSyntaxError(f"unexpected token {tok!r} in {self.src!r}")

    def variable(self, tok: str) -> Var:
        if tok in _LETTERS:
            index = _LETTERS[tok]
        elif tok[0] == "x" and len(tok) > 1:
            index = int(tok[1:])
        else:
            raise TermSyntaxError(f"unknown variable {tok!r}; use x, y, z or x<N>")
        seen = self.names.setdefault(index, tok)
        if seen != tok:
            raise TermSyntaxError(f"variables {seen!r} and {tok!r} both denote index {index}")
        return Var(index)

    def equation(self) -> Equation:
        lhs = self.term()
        self.take("=")
        return Equation(lhs, self.term())


def parse_term(src: str) -> Term:
    p = _Parser(src)
    t = p.term()
    if not p.at_end():
        raise TermSyntaxError(f"trailing input {p.peek()!r} in {src!r}")
    return t


def parse_equation(src: str) -> Equation:
    p = _Parser(src)
    eq = p.equation()
    if not p.at_end():
        raise TermSyntaxError(f"trailing input {p.peek()!r} in {src!r}")
    return eq


def parse_quasi(src: str) -> QuasiEquation:
    """Parse ``p1, p2, ... => c`` or a bare equation."""
    p = _Parser(src)
    eqs = [p.equation()]
    premises: tuple[Equation, ...] = ()
    while p.peek() == ",":
        p.take()
        eqs.append(p.equation())
    if p.peek() == "=>":
        p.take()
        premises = tuple(eqs)
        eqs = [p.equation()]
    elif len(eqs) > 1:
        raise TermSyntaxError(f"several equations without '=>' in {src!r}")
    if not p.at_end():
        raise TermSyntaxError(f"trailing input {p.peek()!r} in {src!r}")
    return QuasiEquation(premises, eqs[0], tuple(sorted(p.names.items())))
