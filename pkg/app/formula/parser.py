"""
Recursive descent parser for `.gxw` specification files.

Precedence from high to low: prefix `!`/`X`, `&`, `|`, `W`, `->`/`<->`
(right associative). `G` is a prefix operator whose scope extends as far to
the right as possible. Macros (`let name = expr;`) are expanded on use.
"""
import logging
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from errors import ParseError
from formula.models import (
    FALSE, TRUE, Formula, Op, VarTag, globally, iff, implies, next_, not_, var, weak_until,
)

logger = logging.getLogger(__name__)

TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<comment>//[^\n]*)
  | (?P<number>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op><->|->|[!&|();,:=\[\]])
""", re.VERBOSE)

KEYWORDS = {'input', 'output', 'let', 'assume', 'true', 'false', 'X', 'G', 'W'}
UNSUPPORTED = {'U', 'F', 'R'}


@dataclass
class Token:
    kind: str
    text: str
    line: int
    column: int


@dataclass
class ParsedFile:
    inputs: List[str] = field(default_factory=list)
    outputs: List[str] = field(default_factory=list)
    assumptions: List[Formula] = field(default_factory=list)
    formulas: List[Tuple[Optional[str], Formula]] = field(default_factory=list)


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        match = TOKEN_RE.match(text, pos)
        if not match:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = match.lastgroup
        if kind == 'newline':
            line, line_start = line + 1, match.end()
        elif kind not in ('ws', 'comment'):
            value = match.group()
            if kind == 'ident' and value in KEYWORDS:
                kind = 'keyword'
            tokens.append(Token(kind, value, line, pos - line_start + 1))
        pos = match.end()
    tokens.append(Token('eof', '', line, pos - line_start + 1))
    return tokens


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.tags: Dict[str, VarTag] = {}
        self.macros: Dict[str, Formula] = {}
        self.result = ParsedFile()

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.current
        return ParseError(message, token.line, token.column)

    def accept(self, text: str) -> bool:
        if self.current.text == text and self.current.kind in ('op', 'keyword'):
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        token = self.current
        if not self.accept(text):
            raise self.error(f"expected {text!r}, found {token.text or 'end of file'!r}")
        return token

    def identifier(self) -> Token:
        token = self.current
        if token.kind != 'ident':
            raise self.error(f"expected identifier, found {token.text or 'end of file'!r}")
        self.pos += 1
        return token

    def parse_file(self) -> ParsedFile:
        while self.current.kind != 'eof':
            self.item()
        return self.result

    def item(self):
        token = self.current
        if token.text in ('input', 'output'):
            self.pos += 1
            tag = VarTag.INPUT if token.text == 'input' else VarTag.OUTPUT
            names = [self.identifier()]
            while self.accept(','):
                names.append(self.identifier())
            self.expect(';')
            for name in names:
                self.declare(name, tag)
        elif token.text == 'let':
            self.pos += 1
            name = self.identifier()
            self.expect('=')
            body = self.expr()
            self.expect(';')
            if name.text in self.tags or name.text in self.macros:
                raise self.error(f"{name.text!r} already defined", name)
            self.macros[name.text] = body
        elif token.text == 'assume':
            self.pos += 1
            self.result.assumptions.append(self.expr())
            self.expect(';')
        else:
            label = None
            if token.kind == 'ident' and self.tokens[self.pos + 1].text == ':':
                label = token.text
                self.pos += 2
            formula = self.expr()
            self.expect(';')
            self.result.formulas.append((label, formula))

    def declare(self, token: Token, tag: VarTag):
        if token.text in self.tags or token.text in self.macros:
            raise self.error(f"{token.text!r} declared twice", token)
        if token.text in UNSUPPORTED:
            raise self.error(f"{token.text!r} is a reserved operator name", token)
        self.tags[token.text] = tag
        target = self.result.inputs if tag is VarTag.INPUT else self.result.outputs
        target.append(token.text)

    def expr(self) -> Formula:
        if self.current.text == 'G':
            self.pos += 1
            return globally(self.expr())
        left = self.until()
        if self.accept('->'):
            return implies(left, self.expr())
        if self.accept('<->'):
            return iff(left, self.expr())
        return left

    def until(self) -> Formula:
        left = self.disjunction()
        while self.accept('W'):
            left = weak_until(left, self.disjunction())
        if self.current.kind == 'ident' and self.current.text in UNSUPPORTED:
            raise self.error(f"unsupported operator {self.current.text!r}: only G, X and W are available")
        return left

    def disjunction(self) -> Formula:
        parts = [self.conjunction()]
        while self.accept('|'):
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else Formula(Op.OR, tuple(parts))

    def conjunction(self) -> Formula:
        parts = [self.unary()]
        while self.accept('&'):
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else Formula(Op.AND, tuple(parts))

    def unary(self) -> Formula:
        token = self.current
        if self.accept('!'):
            return not_(self.unary())
        if self.accept('X'):
            count = 1
            if self.accept('['):
                number = self.current
                if number.kind != 'number':
                    raise self.error("expected a repetition count after 'X['")
                self.pos += 1
                self.expect(']')
                count = int(number.text)
            return next_(self.unary(), count)
        if token.text == 'G':
            self.pos += 1
            return globally(self.expr())
        return self.primary()

    def primary(self) -> Formula:
        token = self.current
        if self.accept('('):
            inner = self.expr()
            self.expect(')')
            return inner
        if self.accept('true'):
            return TRUE
        if self.accept('false'):
            return FALSE
        if token.kind == 'ident':
            if token.text in UNSUPPORTED:
                raise self.error(f"unsupported operator {token.text!r}: only G, X and W are available")
            self.pos += 1
            if token.text in self.macros:
                return self.macros[token.text]
            if token.text not in self.tags:
                raise self.error(f"undeclared variable {token.text!r}", token)
            return var(token.text, self.tags[token.text])
        raise self.error(f"unexpected {token.text or 'end of file'!r}")


def parse_text(text: str) -> ParsedFile:
    """Parse spec text into declarations, assumptions and labelled formulas."""
    parsed = Parser(text).parse_file()
    logger.debug("parsed %d inputs, %d outputs, %d formulas",
                 len(parsed.inputs), len(parsed.outputs), len(parsed.formulas))
    return parsed


def parse_formula(text: str, inputs=(), outputs=()) -> Formula:
    """Parse a single expression against the given declarations."""
    parser = Parser(text)
    for name in inputs:
        parser.tags[name] = VarTag.INPUT
    for name in outputs:
        parser.tags[name] = VarTag.OUTPUT
    formula = parser.expr()
    if parser.current.kind != 'eof':
        raise parser.error(f"unexpected {parser.current.text!r}")
    return formula
