"""Tiny expression language for matrix entries in spec documents.

Grammar: integers, named variables, + - * / ^ and parentheses, with ^
restricted to nonnegative integer literal exponents.  Expressions are
evaluated directly into a caller-supplied environment of field elements,
so the same parser serves QQ(x), GF(p)(q)(x) towers, and plain rationals.
Errors carry line and column.
"""

from __future__ import annotations


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


def _tokenize(text: str):
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(("end", None, line, col))
    return tokens


class _Parser:
    def __init__(self, tokens, env, one):
        self.tokens = tokens
        self.pos = 0
        self.env = env
        self.one = one

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.advance()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2], tok[3])
        return tok

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"trailing input {tok[1]!r}", tok[2], tok[3])
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] in ("*", "/"):
            tok = self.advance()
            rhs = self.unary()
            if tok[0] == "*":
                value = value * rhs
            else:
                if not rhs:
                    raise ParseError("division by zero", tok[2], tok[3])
                value = value / rhs
        return value

    def unary(self):
        if self.peek()[0] == "-":
            self.advance()
            return -self.unary()
        if self.peek()[0] == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            tok = self.advance()
            exp = self.peek()
            if exp[0] != "int":
                raise ParseError("exponent must be a nonnegative integer literal",
                                 tok[2], tok[3])
            self.advance()
            return base ** exp[1]
        return base

    def atom(self):
        tok = self.advance()
        if tok[0] == "int":
            return self.one * tok[1]
        if tok[0] == "name":
            if tok[1] not in self.env:
                raise ParseError(f"unknown variable {tok[1]!r}", tok[2], tok[3])
            return self.env[tok[1]]
        if tok[0] == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected token {tok[1]!r}", tok[2], tok[3])


def parse_expression(text: str, env: dict, one):
    """Evaluate an entry expression.

    env maps variable names to field elements; ``one`` is the multiplicative
    identity used to lift integer literals.
    """
    return _Parser(_tokenize(text), env, one).parse()
