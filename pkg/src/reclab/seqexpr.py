"""Tiny arithmetic language for integer sequences indexed by k.

Grammar (EBNF):

    expr   = term { ("+" | "-") term } ;
    term   = unary { ("*" | "mod") unary } ;
    unary  = "-" unary | power ;
    power  = atom [ "^" unary ] ;
    atom   = INT | "k" | "(" expr ")" ;
    INT    = digit { digit } ;

"^" is exponentiation (right-associative via unary), "mod" the nonnegative
remainder.  Parsed once into an AST; evaluation never touches eval().
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Union

EBNF = """expr   = term { ("+" | "-") term } ;
term   = unary { ("*" | "mod") unary } ;
unary  = "-" unary | power ;
power  = atom [ "^" unary ] ;
atom   = INT | "k" | "(" expr ")" ;
INT    = digit { digit } ;"""


class SeqExprError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|(mod)|(k)|([+\-*^()]))")


def _tokenize(text: str) -> list[str]:
    text = text.rstrip()
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SeqExprError(f"bad character at position {pos}: {text[pos]!r}")
        tokens.append(m.group(m.lastindex))
        pos = m.end()
    return tokens


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Neg:
    operand: "Node"


Node = Union[Num, Var, BinOp, Neg]


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise SeqExprError("unexpected end of expression")
        self.pos += 1
        return tok

    def expect(self, tok: str):
        got = self.take()
        if got != tok:
            raise SeqExprError(f"expected {tok!r}, got {got!r}")

    def parse(self) -> Node:
        node = self.expr()
        if self.peek() is not None:
            raise SeqExprError(f"trailing input from token {self.peek()!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek() in ("*", "mod"):
            op = self.take()
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.peek() == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        node = self.atom()
        if self.peek() == "^":
            self.take()
            node = BinOp("^", node, self.unary())
        return node

    def atom(self) -> Node:
        tok = self.take()
        if tok == "(":
            node = self.expr()
            self.expect(")")
            return node
        if tok == "k":
            return Var()
        if tok.isdigit():
            return Num(int(tok))
        raise SeqExprError(f"unexpected token {tok!r}")


def parse_expr(text: str) -> Node:
    tokens = _tokenize(text)
    if not tokens:
        raise SeqExprError("empty expression")
    return _Parser(tokens).parse()


def eval_node(node: Node, k: int) -> int:
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return k
    if isinstance(node, Neg):
        return -eval_node(node.operand, k)
    left = eval_node(node.left, k)
    right = eval_node(node.right, k)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if node.op == "mod":
        if right == 0:
            raise SeqExprError("mod by zero")
        return left % right
    if node.op == "^":
        if right < 0:
            raise SeqExprError("negative exponent")
        # keep results to ~1M bits so a typo cannot eat all memory
        if abs(left) > 1 and right * max(1, abs(left).bit_length()) > 1_000_000:
            raise SeqExprError("exponent too large")
        return left**right
    raise SeqExprError(f"unknown operator {node.op!r}")


def compile_sequence(text: str) -> Callable[[int], int]:
    """Parse once; return k -> value."""
    node = parse_expr(text)
    return lambda k: eval_node(node, k)
