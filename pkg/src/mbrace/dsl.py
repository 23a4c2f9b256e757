"""Tokenizer, parser and printer for brace expressions.

Grammar (LL(1)):

    expr   := unary ("." unary)*
    unary  := "~" unary | "s" unary | atom        (a bare "s" is the suspension map)
    atom   := group+ | "[" expr "," expr "]" | "(" expr ")"
            | "ad" "(" expr ")" group | CALL "(" expr ")" | IDENT | "s"
    group  := "{" [expr ("," expr)*] "}" ["'"]
    CALL   := d | D | R | deg | delta
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

from . import exprs as E


@dataclass(frozen=True)
class Diagnostic:
    line: int
    col: int
    message: str

    def __str__(self):
        return f"{self.line}:{self.col}: {self.message}"


class ParseError(Exception):
    def __init__(self, diagnostics: List[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    start: int
    end: int
    line: int
    col: int


_PUNCT = {
    "{": "LBRACE", "}": "RBRACE", "'": "PRIME", ",": "COMMA", "[": "LBRACKET",
    "]": "RBRACKET", ".": "DOT", "~": "TILDE", "(": "LPAREN", ")": "RPAREN",
}
_IDENT = re.compile(r"[A-Za-z0-9_]+")
_OPEN = {"LBRACE": "RBRACE", "LBRACKET": "RBRACKET", "LPAREN": "RPAREN"}


def _position(text: str, offset: int) -> Tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def tokenize(text: str) -> List[Token]:
    """Split into tokens; whitespace is skipped, ``#`` starts a comment."""
    toks: List[Token] = []
    diags: List[Diagnostic] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        line, col = _position(text, i)
        if ch in _PUNCT:
            toks.append(Token(_PUNCT[ch], ch, i, i + 1, line, col))
            i += 1
            continue
        m = _IDENT.match(text, i)
        if m:
            word = m.group()
            kind = "SUSP" if word == "s" else "AD" if word == "ad" else "IDENT"
            toks.append(Token(kind, word, i, m.end(), line, col))
            i = m.end()
            continue
        diags.append(Diagnostic(line, col, f"unexpected character {ch!r}"))
        i += 1
    if diags:
        raise ParseError(diags)
    line, col = _position(text, n)
    toks.append(Token("EOF", "", n, n, line, col))
    return toks


def _balance(toks: List[Token]) -> List[Diagnostic]:
    diags = []
    stack: List[Token] = []
    closers = {v: k for k, v in _OPEN.items()}
    for t in toks:
        if t.kind in _OPEN:
            stack.append(t)
        elif t.kind in closers:
            if not stack or stack[-1].kind != closers[t.kind]:
                diags.append(Diagnostic(t.line, t.col, f"unbalanced {t.text!r}"))
            else:
                stack.pop()
    for t in stack:
        diags.append(Diagnostic(t.line, t.col, f"unclosed {t.text!r}"))
    return diags


_STARTS = ("IDENT", "LBRACE", "LBRACKET", "LPAREN", "TILDE", "SUSP", "AD")


class _Parser:
    def __init__(self, toks: List[Token]):
        self.toks = toks
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def fail(self, msg: str, tok: Optional[Token] = None):
        t = tok or self.tok
        raise ParseError([Diagnostic(t.line, t.col, msg)])

    def eat(self, kind: str) -> Token:
        t = self.tok
        if t.kind != kind:
            what = "end of input" if t.kind == "EOF" else repr(t.text)
            self.fail(f"expected {kind.lower()}, found {what}")
        self.pos += 1
        return t

    def expr(self):
        left = self.unary()
        while self.tok.kind == "DOT":
            self.pos += 1
            left = E.Dot(left, self.unary())
        return left

    def unary(self):
        t = self.tok
        if t.kind == "TILDE":
            self.pos += 1
            return E.Tilde(self.unary())
        if t.kind == "SUSP":
            self.pos += 1
            if self.tok.kind in _STARTS:
                return E.Susp(self.unary())
            return E.SuspMap()
        return self.atom()

    def atom(self):
        t = self.tok
        if t.kind == "LBRACE":
            groups = []
            while self.tok.kind == "LBRACE":
                groups.append(self.group())
            return E.Braces(tuple(groups))
        if t.kind == "LBRACKET":
            self.pos += 1
            left = self.expr()
            self.eat("COMMA")
            right = self.expr()
            self.eat("RBRACKET")
            return E.Bracket(left, right)
        if t.kind == "LPAREN":
            self.pos += 1
            inner = self.expr()
            self.eat("RPAREN")
            return inner
        if t.kind == "AD":
            if self.peek().kind != "LPAREN":
                self.pos += 1
                return E.Name("ad")
            self.pos += 1
            self.eat("LPAREN")
            target = self.expr()
            self.eat("RPAREN")
            if self.tok.kind != "LBRACE":
                self.fail("ad(x) must be followed by a brace group")
            return E.Ad(target, self.group())
        if t.kind == "IDENT":
            self.pos += 1
            if t.text in E.CALLS and self.tok.kind == "LPAREN":
                self.pos += 1
                arg = self.expr()
                self.eat("RPAREN")
                return E.Call(t.text, arg)
            return E.Name(t.text)
        if t.kind == "EOF":
            self.fail("unexpected end of input")
        self.fail(f"unexpected {t.text!r}")

    def group(self) -> E.Group:
        self.eat("LBRACE")
        entries = []
        if self.tok.kind != "RBRACE":
            while True:
                if self.tok.kind in ("COMMA", "RBRACE"):
                    self.fail("empty entry")
                entries.append(self.expr())
                if self.tok.kind == "COMMA":
                    self.pos += 1
                    continue
                break
        self.eat("RBRACE")
        primed = False
        if self.tok.kind == "PRIME":
            self.pos += 1
            primed = True
        return E.Group(tuple(entries), primed)


def parse(text: str):
    """Parse a single expression; raises :class:`ParseError` with positions."""
    toks = tokenize(text)
    diags = _balance(toks)
    if diags:
        raise ParseError(diags)
    if toks[0].kind == "EOF":
        raise ParseError([Diagnostic(toks[0].line, toks[0].col, "empty expression")])
    p = _Parser(toks)
    out = p.expr()
    if p.tok.kind != "EOF":
        p.fail(f"unexpected {p.tok.text!r} after expression")
    return out


def parse_program(text: str) -> List[Tuple[int, object]]:
    """One expression per non-blank line; returns (line number, expression) pairs.

    Every malformed line contributes diagnostics; all of them are raised together.
    """
    out = []
    diags: List[Diagnostic] = []
    for no, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        try:
            out.append((no, parse(body)))
        except ParseError as err:
            diags.extend(Diagnostic(no, d.col, d.message) for d in err.diagnostics)
    if diags:
        raise ParseError(diags)
    return out


def check(text: str) -> List[Diagnostic]:
    """Diagnostics for a text, empty when it parses."""
    try:
        parse_program(text)
    except ParseError as err:
        return err.diagnostics
    return []


# --- printing -------------------------------------------------------------------

def to_text(expr) -> str:
    """Canonical text; ``parse(to_text(e)) == e``."""
    if isinstance(expr, E.Name):
        return expr.ident
    if isinstance(expr, E.Braces):
        return "".join(_group(g) for g in expr.groups)
    if isinstance(expr, E.Bracket):
        return f"[{to_text(expr.left)}, {to_text(expr.right)}]"
    if isinstance(expr, E.Dot):
        right = to_text(expr.right)
        if isinstance(expr.right, E.Dot):
            right = f"({right})"
        return f"{to_text(expr.left)} . {right}"
    if isinstance(expr, E.Tilde):
        return "~" + _operand(expr.operand)
    if isinstance(expr, E.Susp):
        return "s " + _operand(expr.operand)
    if isinstance(expr, E.SuspMap):
        return "s"
    if isinstance(expr, E.Ad):
        return f"ad({to_text(expr.target)}){_group(expr.group)}"
    if isinstance(expr, E.Call):
        return f"{expr.func}({to_text(expr.arg)})"
    raise TypeError(f"not an expression: {expr!r}")


def _operand(e) -> str:
    text = to_text(e)
    return f"({text})" if isinstance(e, E.Dot) else text


def _group(g: E.Group) -> str:
    return "{" + ", ".join(to_text(e) for e in g.entries) + "}" + ("'" if g.primed else "")
