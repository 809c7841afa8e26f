"""Tokenizer for the generator script dialect (an ECMAScript subset).

Produces a flat token list; template literals come out as one structured
token holding cooked string parts plus the raw source of each interpolated
expression (the parser re-parses those). Regex literals are not part of the
dialect: '/' always lexes as division, so a regex literal fails at parse
time rather than executing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ESSyntaxError

KEYWORDS = {
    "var", "let", "const", "function", "return", "if", "else", "for", "while",
    "do", "break", "continue", "new", "delete", "typeof", "instanceof", "in",
    "this", "null", "true", "false", "throw", "try", "catch", "finally",
    "switch", "case", "default", "void", "class", "extends", "super",
    "yield", "async", "await", "static", "get", "set",
}

# Longest-match-first punctuator table.
PUNCTUATORS = [
    ">>>=",
    "...", "===", "!==", "**=", "<<=", ">>=", ">>>", "&&=", "||=", "??=",
    "=>", "==", "!=", "<=", ">=", "&&", "||", "??", "?.", "++", "--",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>", "**",
    "{", "}", "(", ")", "[", "]", ";", ",", "<", ">", "+", "-", "*", "/",
    "%", "&", "|", "^", "!", "~", "?", ":", "=", ".",
]

_ESCAPES = {
    "n": "\n", "t": "\t", "r": "\r", "b": "\b", "f": "\f", "v": "\v", "0": "\0",
}


@dataclass(frozen=True)
class Token:
    kind: str  # 'num' | 'str' | 'template' | 'ident' | 'kw' | 'punct' | 'eof'
    value: object
    line: int
    col: int
    nl_before: bool = False


@dataclass(frozen=True)
class TemplateParts:
    """Cooked literal chunks interleaved with raw expression sources."""

    quasis: tuple[str, ...]
    expr_sources: tuple[str, ...] = field(default=())
    expr_lines: tuple[int, ...] = field(default=())


class Lexer:
    def __init__(self, source: str):
        self.src = source
        self.pos = 0
        self.line = 1
        self.col = 1
        self.nl_pending = False

    def error(self, message: str) -> ESSyntaxError:
        return ESSyntaxError(message, self.line, self.col)

    def _advance(self, n: int = 1) -> None:
        for _ in range(n):
            if self.pos < len(self.src) and self.src[self.pos] == "\n":
                self.line += 1
                self.col = 1
                self.nl_pending = True
            else:
                self.col += 1
            self.pos += 1

    def _peek(self, offset: int = 0) -> str:
        i = self.pos + offset
        return self.src[i] if i < len(self.src) else ""

    def _skip_trivia(self) -> None:
        while self.pos < len(self.src):
            ch = self.src[self.pos]
            if ch in " \t\r\n\f\v ﻿":
                self._advance()
            elif ch == "/" and self._peek(1) == "/":
                while self.pos < len(self.src) and self.src[self.pos] != "\n":
                    self._advance()
            elif ch == "/" and self._peek(1) == "*":
                self._advance(2)
                while self.pos < len(self.src):
                    if self.src[self.pos] == "*" and self._peek(1) == "/":
                        self._advance(2)
                        break
                    self._advance()
                else:
                    raise self.error("unterminated block comment")
            else:
                return

    def tokens(self) -> list[Token]:
        out: list[Token] = []
        while True:
            tok = self._next_token()
            out.append(tok)
            if tok.kind == "eof":
                return out

    def _make(self, kind: str, value: object, line: int, col: int) -> Token:
        tok = Token(kind, value, line, col, self.nl_pending)
        self.nl_pending = False
        return tok

    def _next_token(self) -> Token:
        self._skip_trivia()
        if self.pos >= len(self.src):
            return self._make("eof", None, self.line, self.col)
        line, col = self.line, self.col
        ch = self.src[self.pos]

        if ch.isdigit() or (ch == "." and self._peek(1).isdigit()):
            return self._make("num", self._read_number(), line, col)
        if ch.isalpha() or ch in "_$":
            name = self._read_ident()
            kind = "kw" if name in KEYWORDS else "ident"
            return self._make(kind, name, line, col)
        if ch in "'\"":
            return self._make("str", self._read_string(ch), line, col)
        if ch == "`":
            return self._make("template", self._read_template(), line, col)
        for punct in PUNCTUATORS:
            if self.src.startswith(punct, self.pos):
                # '?.' followed by a digit is a ternary, e.g. x ? .5 : 1
                if punct == "?." and self._peek(2).isdigit():
                    continue
                self._advance(len(punct))
                return self._make("punct", punct, line, col)
        raise self.error(f"unexpected character {ch!r}")

    def _read_ident(self) -> str:
        start = self.pos
        while self.pos < len(self.src) and (self.src[self.pos].isalnum() or self.src[self.pos] in "_$"):
            self._advance()
        return self.src[start : self.pos]

    def _read_number(self) -> float:
        start = self.pos
        src = self.src
        if src[self.pos] == "0" and self._peek(1) in "xXbBoO":
            base = {"x": 16, "b": 2, "o": 8}[self._peek(1).lower()]
            self._advance(2)
            digit_start = self.pos
            while self.pos < len(src) and (src[self.pos].isalnum() or src[self.pos] == "_"):
                self._advance()
            text = src[digit_start : self.pos].replace("_", "")
            try:
                return float(int(text, base))
            except ValueError:
                raise self.error(f"invalid number literal {src[start:self.pos]!r}") from None
        while self.pos < len(src) and (src[self.pos].isdigit() or src[self.pos] == "_"):
            self._advance()
        if self._peek() == ".":
            self._advance()
            while self.pos < len(src) and (src[self.pos].isdigit() or src[self.pos] == "_"):
                self._advance()
        if self._peek() in "eE":
            mark = self.pos
            self._advance()
            if self._peek() in "+-":
                self._advance()
            if not self._peek().isdigit():
                self.pos = mark  # 'e' belonged to something else; unlikely but safe
            else:
                while self.pos < len(src) and src[self.pos].isdigit():
                    self._advance()
        text = src[start : self.pos].replace("_", "")
        try:
            return float(text)
        except ValueError:
            raise self.error(f"invalid number literal {text!r}") from None

    def _read_escape(self, quote: str) -> str:
        # caller consumed the backslash
        ch = self._peek()
        if ch == "":
            raise self.error("unterminated string literal")
        if ch in _ESCAPES:
            self._advance()
            return _ESCAPES[ch]
        if ch == "x":
            self._advance()
            hex_digits = self.src[self.pos : self.pos + 2]
            if len(hex_digits) < 2:
                raise self.error("bad \\x escape")
            self._advance(2)
            return chr(int(hex_digits, 16))
        if ch == "u":
            self._advance()
            if self._peek() == "{":
                self._advance()
                start = self.pos
                while self._peek() not in ("}", ""):
                    self._advance()
                if self._peek() != "}":
                    raise self.error("bad \\u{} escape")
                code = int(self.src[start : self.pos], 16)
                self._advance()
                return chr(code)
            hex_digits = self.src[self.pos : self.pos + 4]
            if len(hex_digits) < 4:
                raise self.error("bad \\u escape")
            self._advance(4)
            return chr(int(hex_digits, 16))
        if ch == "\n":
            self._advance()
            return ""
        self._advance()
        return ch

    def _read_string(self, quote: str) -> str:
        self._advance()  # opening quote
        parts: list[str] = []
        while True:
            ch = self._peek()
            if ch == "":
                raise self.error("unterminated string literal")
            if ch == quote:
                self._advance()
                return "".join(parts)
            if ch == "\n":
                raise self.error("unterminated string literal")
            if ch == "\\":
                self._advance()
                parts.append(self._read_escape(quote))
            else:
                parts.append(ch)
                self._advance()

    def _read_template(self) -> TemplateParts:
        self._advance()  # opening backtick
        quasis: list[str] = []
        exprs: list[str] = []
        expr_lines: list[int] = []
        current: list[str] = []
        while True:
            ch = self._peek()
            if ch == "":
                raise self.error("unterminated template literal")
            if ch == "`":
                self._advance()
                quasis.append("".join(current))
                return TemplateParts(tuple(quasis), tuple(exprs), tuple(expr_lines))
            if ch == "\\":
                self._advance()
                current.append(self._read_escape("`"))
                continue
            if ch == "$" and self._peek(1) == "{":
                quasis.append("".join(current))
                current = []
                self._advance(2)
                expr_lines.append(self.line)
                exprs.append(self._read_template_expr())
                continue
            current.append(ch)
            self._advance()

    def _read_template_expr(self) -> str:
        """Raw source of a ${...} interpolation, tracking nested braces,
        strings, and templates."""
        start = self.pos
        depth = 1
        while True:
            ch = self._peek()
            if ch == "":
                raise self.error("unterminated template expression")
            if ch in "'\"":
                self._read_string(ch)
                continue
            if ch == "`":
                self._read_template()
                continue
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    text = self.src[start : self.pos]
                    self._advance()
                    return text
            self._advance()


def tokenize(source: str) -> list[Token]:
    return Lexer(source).tokens()
