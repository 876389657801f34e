"""Abstract syntax and concrete grammar for syntactically co-safe LTL.

Grammar (loosest binding first)::

    or      := and (('|' | '||') and)*
    and     := until (('&' | '&&') until)*
    until   := unary ('U' until)?          # right associative
    unary   := '!' unary | 'X' unary | 'F' unary | '(' or ')' | atom | 'true' | 'false'

Negation is only accepted directly on an atom (or a literal).  ``F f`` is
sugar for ``true U f``.  The same parser, in propositional mode, reads DFA
guard expressions, where negation is unrestricted and temporal operators are
rejected.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator


class Formula:
    __slots__ = ()

    def atoms(self) -> frozenset[str]:
        out: set[str] = set()
        stack = [self]
        while stack:
            f = stack.pop()
            if isinstance(f, (Prop, NotProp)):
                out.add(f.name)
            elif isinstance(f, (And, Or, Until)):
                stack.extend((f.left, f.right))
            elif isinstance(f, Next):
                stack.append(f.arg)
        return frozenset(out)

    def depth(self) -> int:
        if isinstance(self, (And, Or, Until)):
            return 1 + max(self.left.depth(), self.right.depth())
        if isinstance(self, Next):
            return 1 + self.arg.depth()
        return 0


@dataclass(frozen=True)
class TrueF(Formula):
    def __str__(self):
        return "true"


@dataclass(frozen=True)
class FalseF(Formula):
    def __str__(self):
        return "false"


TRUE = TrueF()
FALSE = FalseF()


@dataclass(frozen=True)
class Prop(Formula):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class NotProp(Formula):
    name: str

    def __str__(self):
        return f"!{self.name}"


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} & {self.right})"


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} | {self.right})"


@dataclass(frozen=True)
class Next(Formula):
    arg: Formula

    def __str__(self):
        return f"X {_wrap(self.arg)}"


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        if self.left == TRUE:
            return f"F {_wrap(self.right)}"
        return f"({self.left} U {self.right})"


def Eventually(arg: Formula) -> Until:
    return Until(TRUE, arg)


def _wrap(f: Formula) -> str:
    s = str(f)
    return s if isinstance(f, (Prop, NotProp, TrueF, FalseF)) or s.startswith("(") else f"({s})"


# --- parsing ------------------------------------------------------------------


class ScltlSyntaxError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        self.message = message
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


_TOKEN = re.compile(
    r"\s*(?:(?P<op>&&|\|\||[!&|()~])|(?P<word>[A-Za-z_][A-Za-z0-9_.]*)|(?P<bad>\S))"
)
_TEMPORAL = {"X", "F", "U"}
_UNSUPPORTED = {"G", "R", "W", "M"}
_ALIASES = {"&&": "&", "||": "|", "~": "!"}


def _tokenize(text: str) -> Iterator[tuple[str, str, int]]:
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        pos = m.end()
        if m.group("bad"):
            raise ScltlSyntaxError(f"unexpected character {m.group('bad')!r}", text, m.start("bad"))
        if m.group("op"):
            op = m.group("op")
            yield "op", _ALIASES.get(op, op), m.start("op")
        else:
            yield "word", m.group("word"), m.start("word")
    yield "end", "", len(text)


class _Parser:
    def __init__(self, text: str, propositional: bool):
        self.text = text
        self.propositional = propositional
        self.tokens = list(_tokenize(text))
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, message: str, pos: int | None = None):
        raise ScltlSyntaxError(message, self.text, self.tok[2] if pos is None else pos)

    def accept(self, value: str) -> bool:
        kind, val, _ = self.tok
        if kind != "end" and val == value:
            self.i += 1
            return True
        return False

    def parse(self) -> Formula:
        f = self.disjunction()
        if self.tok[0] != "end":
            self.error(f"unexpected token {self.tok[1]!r}")
        return f

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.accept("|"):
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.until()
        while self.accept("&"):
            f = And(f, self.until())
        return f

    def until(self) -> Formula:
        f = self.unary()
        pos = self.tok[2]
        if self.accept("U"):
            if self.propositional:
                self.error("temporal operator 'U' not allowed in a guard", pos)
            return Until(f, self.until())
        return f

    def unary(self) -> Formula:
        kind, val, pos = self.tok
        if kind == "op" and val == "!":
            self.i += 1
            arg = self.unary()
            if self.propositional:
                return negate(arg)
            if isinstance(arg, Prop):
                return NotProp(arg.name)
            if arg == TRUE:
                return FALSE
            if arg == FALSE:
                return TRUE
            self.error("not co-safe syntax: negation is only allowed on atomic propositions", pos)
        if kind == "word" and val in ("X", "F"):
            if self.propositional:
                self.error(f"temporal operator {val!r} not allowed in a guard", pos)
            self.i += 1
            arg = self.unary()
            return Next(arg) if val == "X" else Until(TRUE, arg)
        if kind == "op" and val == "(":
            self.i += 1
            f = self.disjunction()
            if not self.accept(")"):
                self.error("expected ')'")
            return f
        if kind == "word":
            if val in _UNSUPPORTED:
                self.error(f"operator {val!r} is not part of co-safe LTL", pos)
            if val == "U":
                self.error("'U' needs a left operand", pos)
            self.i += 1
            if val == "true":
                return TRUE
            if val == "false":
                return FALSE
            return Prop(val)
        if kind == "end":
            self.error("unexpected end of formula")
        self.error(f"unexpected token {val!r}")


def parse_scltl(text: str) -> Formula:
    """Parse an scLTL formula, e.g. ``"!plant U dirt"`` or ``"F (plant & F rock)"``."""
    return _Parser(text, propositional=False).parse()


def parse_guard(text: str) -> Formula:
    """Parse a propositional guard; the result is in negation normal form."""
    return _Parser(text, propositional=True).parse()


def negate(f: Formula) -> Formula:
    """Negation of a propositional formula, pushed down to the atoms."""
    if f == TRUE:
        return FALSE
    if f == FALSE:
        return TRUE
    if isinstance(f, Prop):
        return NotProp(f.name)
    if isinstance(f, NotProp):
        return Prop(f.name)
    if isinstance(f, And):
        return Or(negate(f.left), negate(f.right))
    if isinstance(f, Or):
        return And(negate(f.left), negate(f.right))
    raise ValueError(f"cannot negate temporal formula {f}")


def eval_propositional(f: Formula, symbol: frozenset[str] | set[str]) -> bool:
    if f == TRUE:
        return True
    if f == FALSE:
        return False
    if isinstance(f, Prop):
        return f.name in symbol
    if isinstance(f, NotProp):
        return f.name not in symbol
    if isinstance(f, And):
        return eval_propositional(f.left, symbol) and eval_propositional(f.right, symbol)
    if isinstance(f, Or):
        return eval_propositional(f.left, symbol) or eval_propositional(f.right, symbol)
    raise ValueError(f"not a propositional formula: {f}")
