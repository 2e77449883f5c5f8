"""A small arithmetic expression language for scenario files.

Functions f(theta) and coefficient formulas a(n) arrive as text; this module
parses them into immutable trees and evaluates them on floats or numpy
arrays (the quadrature feeds whole node batches through at once).

Grammar (see docs/grammar.ebnf):

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" unary)?          right associative
    atom   := NUMBER | IDENT | IDENT "(" expr ("," expr)* ")" | "(" expr ")"

so ``^`` binds tighter than unary minus: ``-theta^2`` is ``-(theta^2)`` and
``2^3^2`` is ``2^(3^2)`` = 512.  There is no implicit multiplication.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ArityError, DomainError, ExprSyntaxError, UnknownIdentifierError

Value = Union[float, np.ndarray]

_FUNCTIONS = {
    "sin": (1, np.sin),
    "cos": (1, np.cos),
    "exp": (1, np.exp),
    "ln": (1, np.log),
    "sqrt": (1, np.sqrt),
    "abs": (1, np.abs),
    "min": (2, np.minimum),
    "max": (2, np.maximum),
}

_CONSTANTS = {"pi": math.pi, "e": math.e}

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_Ͱ-Ͽ][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^(),]))"
)


@dataclass(frozen=True)
class Node:
    offset: int


@dataclass(frozen=True)
class Const(Node):
    value: float


@dataclass(frozen=True)
class Var(Node):
    name: str


@dataclass(frozen=True)
class Unary(Node):
    op: str
    arg: Node


@dataclass(frozen=True)
class Binary(Node):
    op: str
    left: Node
    right: Node


@dataclass(frozen=True)
class Call(Node):
    func: str
    args: tuple


class _Tokenizer:
    def __init__(self, src: str):
        self.src = src
        self.pos = 0
        self.tok: str | None = None
        self.kind = ""
        self.tok_offset = 0
        self.advance()

    def advance(self) -> None:
        m = _TOKEN_RE.match(self.src, self.pos)
        if m is None:
            rest = self.src[self.pos :].lstrip()
            if rest:
                bad_at = len(self.src) - len(self.src[self.pos :].lstrip())
                raise ExprSyntaxError(f"unexpected character {rest[0]!r}", bad_at)
            self.tok, self.kind, self.tok_offset = None, "end", len(self.src)
            return
        self.tok_offset = m.start(m.lastgroup)  # type: ignore[arg-type]
        self.tok = m.group(m.lastgroup)  # type: ignore[arg-type]
        self.kind = m.lastgroup or ""
        self.pos = m.end()


class _Parser:
    def __init__(self, src: str, free_var: str):
        if not src.strip():
            raise ExprSyntaxError("empty expression", 0)
        self.free_var = free_var
        self.t = _Tokenizer(src)

    def parse(self) -> Node:
        node = self.expr()
        if self.t.kind != "end":
            raise ExprSyntaxError(f"trailing input {self.t.tok!r}", self.t.tok_offset)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.t.tok in ("+", "-"):
            op, off = self.t.tok, self.t.tok_offset
            self.t.advance()
            node = Binary(off, op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.t.tok in ("*", "/"):
            op, off = self.t.tok, self.t.tok_offset
            self.t.advance()
            node = Binary(off, op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.t.tok == "-":
            off = self.t.tok_offset
            self.t.advance()
            return Unary(off, "-", self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.t.tok == "^":
            off = self.t.tok_offset
            self.t.advance()
            return Binary(off, "^", base, self.unary())
        return base

    def atom(self) -> Node:
        kind, tok, off = self.t.kind, self.t.tok, self.t.tok_offset
        if kind == "num":
            self.t.advance()
            return Const(off, float(tok))  # type: ignore[arg-type]
        if kind == "ident":
            name = "theta" if tok == "θ" else tok  # θ alias
            self.t.advance()
            if self.t.tok == "(":
                if name not in _FUNCTIONS:
                    raise UnknownIdentifierError(f"unknown function {name!r}", off)
                arity = _FUNCTIONS[name][0]
                self.t.advance()
                args = [self.expr()]
                while self.t.tok == ",":
                    self.t.advance()
                    args.append(self.expr())
                if self.t.tok != ")":
                    raise ExprSyntaxError("expected ')'", self.t.tok_offset)
                self.t.advance()
                if len(args) != arity:
                    raise ArityError(
                        f"{name} takes {arity} argument(s), got {len(args)}", off
                    )
                return Call(off, name, tuple(args))
            if name == self.free_var:
                return Var(off, name)
            if name in _CONSTANTS:
                return Const(off, _CONSTANTS[name])
            raise UnknownIdentifierError(f"unknown identifier {name!r}", off)
        if tok == "(":
            self.t.advance()
            node = self.expr()
            if self.t.tok != ")":
                raise ExprSyntaxError("expected ')'", self.t.tok_offset)
            self.t.advance()
            return node
        raise ExprSyntaxError(f"expected a value, got {tok!r}", off)


def _check_finite(v: Value, what: str, offset: int) -> Value:
    ok = np.isfinite(v) if np.isscalar(v) or isinstance(v, float) else np.all(np.isfinite(v))
    if not ok:
        raise DomainError(f"{what} produced a non-finite value (at offset {offset})")
    return v


def _eval(node: Node, x: Value) -> Value:
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Var):
        return x
    if isinstance(node, Unary):
        return -_eval(node.arg, x)
    if isinstance(node, Binary):
        a = _eval(node.left, x)
        b = _eval(node.right, x)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            if np.any(b == 0):
                raise DomainError(f"division by zero (at offset {node.offset})")
            return a / b
        # '^': reject negative base with non-integer exponent, 0^negative
        neg_base = np.any(np.asarray(a) < 0)
        if neg_base and np.any(np.asarray(b) != np.floor(b)):
            raise DomainError(
                f"negative base with non-integer exponent (at offset {node.offset})"
            )
        if np.any((np.asarray(a) == 0) & (np.asarray(b) < 0)):
            raise DomainError(f"zero raised to a negative power (at offset {node.offset})")
        return _check_finite(np.power(a, b), "power", node.offset)
    if isinstance(node, Call):
        args = [_eval(arg, x) for arg in node.args]
        if node.func == "ln" and np.any(np.asarray(args[0]) <= 0):
            raise DomainError(f"ln of a non-positive value (at offset {node.offset})")
        if node.func == "sqrt" and np.any(np.asarray(args[0]) < 0):
            raise DomainError(f"sqrt of a negative value (at offset {node.offset})")
        return _check_finite(_FUNCTIONS[node.func][1](*args), node.func, node.offset)
    raise TypeError(f"unknown node {node!r}")


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def _fmt(node: Node, parent_prec: int, right_of_pow: bool = False) -> str:
    if isinstance(node, Const):
        v = node.value
        if v == math.pi:
            return "pi"
        if v == math.e:
            return "e"
        return repr(v) if v != int(v) or abs(v) >= 1e16 else str(int(v))
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Unary):
        inner = _fmt(node.arg, _PREC["neg"])
        s = f"-{inner}"
        return f"({s})" if parent_prec > _PREC["neg"] else s
    if isinstance(node, Binary):
        p = _PREC[node.op]
        if node.op == "^":
            s = f"{_fmt(node.left, p + 1)}^{_fmt(node.right, p, right_of_pow=True)}"
        else:
            # left-assoc: right child needs one more level of binding
            s = f"{_fmt(node.left, p)} {node.op} {_fmt(node.right, p + 1)}"
        return f"({s})" if parent_prec > p or (right_of_pow and node.op != "^") else s
    if isinstance(node, Call):
        return f"{node.func}({', '.join(_fmt(a, 0) for a in node.args)})"
    raise TypeError(f"unknown node {node!r}")


class FunctionExpr:
    """A parsed single-variable expression; immutable and callable.

    Calling with a float returns a float; calling with a numpy array
    evaluates elementwise and returns an array of the same shape.
    """

    __slots__ = ("root", "free_var", "_source")

    def __init__(self, root: Node, free_var: str, source: str):
        object.__setattr__(self, "root", root)
        object.__setattr__(self, "free_var", free_var)
        object.__setattr__(self, "_source", source)

    def __setattr__(self, name, value):
        raise AttributeError("FunctionExpr is immutable")

    def __call__(self, x: Value) -> Value:
        out = _eval(self.root, x)
        if isinstance(x, np.ndarray):
            return np.broadcast_to(np.asarray(out, dtype=float), x.shape).copy()
        return float(out)

    def pretty(self) -> str:
        return _fmt(self.root, 0)

    def __repr__(self) -> str:
        return f"FunctionExpr({self.pretty()!r}, free_var={self.free_var!r})"


def parse(src: str, free_var: str = "theta") -> FunctionExpr:
    """Parse ``src`` into a FunctionExpr over the given free variable."""
    root = _Parser(src, free_var).parse()
    return FunctionExpr(root, free_var, src)


def evaluate(e: FunctionExpr, value: Value) -> Value:
    """Evaluate a parsed expression at ``value`` (float or array)."""
    return e(value)
