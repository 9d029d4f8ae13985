"""Recursive-descent parser for MiniLang.

Grammar (lowest to highest precedence for expressions)::

    program   := function*
    function  := 'fn' IDENT '(' [IDENT (',' IDENT)*] ')' block
    block     := '{' stmt* '}'
    stmt      := 'if' '(' expr ')' block ['else' (block | if-stmt)]
               | 'while' '(' expr ')' block
               | 'return' expr ';'
               | IDENT '=' expr ';'
               | expr ';'
    expr      := or ['?' expr ':' expr]
    or        := and ('||' and)*
    and       := equality ('&&' equality)*
    equality  := relation (('==' | '!=') relation)*
    relation  := additive (('<' | '<=' | '>' | '>=') additive)*
    additive  := term (('+' | '-') term)*
    term      := unary (('*' | '/' | '%') unary)*
    unary     := ('-' | '!') unary | primary
    primary   := INT | IDENT | IDENT '(' [expr (',' expr)*] ')' | '(' expr ')'

Besides syntax, ``parse`` rejects what a compiler would: duplicate function
names, calls to unknown functions or with the wrong arity, and reads of names
that are neither parameters nor assigned anywhere in the function.
"""

from __future__ import annotations

from ..lexing import IDENT, INT_LIT, KEYWORD, LexError, Token, TokenStream, lex
from .ast import (
    Assign, Binary, Block, Call, ExprStmt, FunctionDecl, If, Num, Program,
    Return, Ternary, Unary, Var, While, function_statements, own_exprs,
    walk_expr,
)


class MiniSyntaxError(SyntaxError):
    """Malformed MiniLang source; carries 1-based ``line`` and ``column``."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = self.lineno = line
        self.column = self.offset = column


def _position(source: str, offset: int) -> tuple[int, int]:
    line = source.count("\n", 0, offset) + 1
    column = offset - (source.rfind("\n", 0, offset) + 1) + 1
    return line, column


_BINARY_LEVELS = (
    ("||",),
    ("&&",),
    ("==", "!="),
    ("<", "<=", ">", ">="),
    ("+", "-"),
    ("*", "/", "%"),
)


class _Parser:
    def __init__(self, stream: TokenStream):
        self.stream = stream
        self.tokens = stream.tokens
        self.pos = 0

    # token helpers
    def _peek(self, ahead: int = 0) -> Token | None:
        i = self.pos + ahead
        return self.tokens[i] if i < len(self.tokens) else None

    def _error(self, message: str, token: Token | None = None):
        if token is None:
            token = self._peek()
        offset = token.start if token is not None else len(self.stream.source)
        where = f"near {token.text!r}" if token is not None else "at end of input"
        line, column = _position(self.stream.source, offset)
        raise MiniSyntaxError(f"{message} {where}", line, column)

    def _check(self, text: str) -> bool:
        tok = self._peek()
        return tok is not None and tok.text == text and tok.kind != INT_LIT

    def _expect(self, text: str) -> int:
        if not self._check(text):
            self._error(f"expected {text!r}")
        self.pos += 1
        return self.pos - 1

    def _ident(self) -> str:
        tok = self._peek()
        if tok is None or tok.kind != IDENT:
            self._error("expected identifier")
        self.pos += 1
        return tok.text

    # declarations
    def program(self) -> Program:
        functions = []
        while self._peek() is not None:
            functions.append(self.function())
        return Program(functions)

    def function(self) -> FunctionDecl:
        lo = self._expect("fn")
        name = self._ident()
        self._expect("(")
        params: list[str] = []
        if not self._check(")"):
            params.append(self._ident())
            while self._check(","):
                self.pos += 1
                params.append(self._ident())
        self._expect(")")
        body = self.block()
        return FunctionDecl(name, params, body, lo=lo, hi=self.pos)

    def block(self) -> Block:
        lo = self._expect("{")
        body = []
        while not self._check("}"):
            if self._peek() is None:
                self._error("unterminated block")
            body.append(self.statement())
        self.pos += 1
        return Block(body, lo=lo, hi=self.pos)

    # statements
    def statement(self):
        tok = self._peek()
        lo = self.pos
        if tok.kind == KEYWORD:
            if tok.text == "if":
                return self.if_statement()
            if tok.text == "while":
                self.pos += 1
                self._expect("(")
                cond = self.expression()
                self._expect(")")
                body = self.block()
                return While(cond, body, lo=lo, hi=self.pos)
            if tok.text == "return":
                self.pos += 1
                value = self.expression()
                self._expect(";")
                return Return(value, lo=lo, hi=self.pos)
            self._error("unexpected keyword")
        nxt = self._peek(1)
        if tok.kind == IDENT and nxt is not None and nxt.text == "=":
            self.pos += 2
            value = self.expression()
            self._expect(";")
            return Assign(tok.text, value, lo=lo, hi=self.pos)
        expr = self.expression()
        self._expect(";")
        return ExprStmt(expr, lo=lo, hi=self.pos)

    def if_statement(self) -> If:
        lo = self._expect("if")
        self._expect("(")
        cond = self.expression()
        self._expect(")")
        then = self.block()
        other = None
        else_index = -1
        if self._check("else"):
            else_index = self.pos
            self.pos += 1
            other = self.if_statement() if self._check("if") else self.block()
        return If(cond, then, other, else_index=else_index, lo=lo, hi=self.pos)

    # expressions
    def expression(self):
        lo = self.pos
        cond = self.binary(0)
        if self._check("?"):
            self.pos += 1
            then = self.expression()
            self._expect(":")
            other = self.expression()
            return Ternary(cond, then, other, lo=lo, hi=self.pos)
        return cond

    def binary(self, level: int):
        if level == len(_BINARY_LEVELS):
            return self.unary()
        lo = self.pos
        left = self.binary(level + 1)
        ops = _BINARY_LEVELS[level]
        while True:
            tok = self._peek()
            if tok is None or tok.kind != "OPERATOR" or tok.text not in ops:
                return left
            op_index = self.pos
            self.pos += 1
            right = self.binary(level + 1)
            left = Binary(tok.text, left, right, op_index=op_index, lo=lo, hi=self.pos)

    def unary(self):
        tok = self._peek()
        if tok is not None and tok.kind == "OPERATOR" and tok.text in ("-", "!"):
            lo = self.pos
            self.pos += 1
            operand = self.unary()
            return Unary(tok.text, operand, lo=lo, hi=self.pos)
        return self.primary()

    def primary(self):
        tok = self._peek()
        if tok is None:
            self._error("expected expression")
        lo = self.pos
        if tok.kind == INT_LIT:
            self.pos += 1
            return Num(int(tok.text), lo=lo, hi=self.pos)
        if tok.kind == IDENT:
            self.pos += 1
            if self._check("("):
                self.pos += 1
                args = []
                if not self._check(")"):
                    args.append(self.expression())
                    while self._check(","):
                        self.pos += 1
                        args.append(self.expression())
                self._expect(")")
                return Call(tok.text, args, lo=lo, hi=self.pos)
            return Var(tok.text, lo=lo, hi=self.pos)
        if tok.text == "(":
            self.pos += 1
            inner = self.expression()
            self._expect(")")
            return inner
        self._error("expected expression")


def _check_semantics(program: Program, stream: TokenStream) -> None:
    def fail(message: str, token_index: int):
        tok = stream.tokens[token_index]
        line, column = _position(stream.source, tok.start)
        raise MiniSyntaxError(message, line, column)

    arity = {}
    for fn in program.functions:
        if fn.name in arity:
            fail(f"duplicate function {fn.name!r}", fn.lo + 1)
        if len(set(fn.params)) != len(fn.params):
            fail(f"duplicate parameter in {fn.name!r}", fn.lo + 1)
        arity[fn.name] = len(fn.params)
    for fn in program.functions:
        stmts = function_statements(fn)
        known = set(fn.params) | {s.name for s in stmts if isinstance(s, Assign)}
        for stmt in stmts:
            for root in own_exprs(stmt):
                for e in walk_expr(root):
                    if isinstance(e, Var) and e.name not in known:
                        fail(f"undefined variable {e.name!r}", e.lo)
                    if isinstance(e, Call):
                        if e.name not in arity:
                            fail(f"unknown function {e.name!r}", e.lo)
                        if arity[e.name] != len(e.args):
                            fail(f"wrong number of arguments to {e.name!r}", e.lo)


def parse(source_text: str, source_id: str = "") -> Program:
    try:
        stream = lex(source_text, source_id)
    except LexError as exc:
        line, column = _position(source_text, exc.offset)
        raise MiniSyntaxError(str(exc), line, column) from exc
    program = _Parser(stream).program()
    _check_semantics(program, stream)
    program.source_text = source_text
    program.tokens = stream
    return program


def parses(source_text: str) -> bool:
    try:
        parse(source_text)
    except MiniSyntaxError:
        return False
    return True
