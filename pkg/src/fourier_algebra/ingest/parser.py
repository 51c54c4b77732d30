"""Text syntax for cyclotomic values and matrix documents.

Grammar (E(n) is ζ_n):

    expr  := ["+"|"-"] term (("+"|"-") term)*
    term  := coeff ("*" root)? | root
    root  := "E(" uint ")" ("^" int)?
    coeff := int ("/" uint)?

Matrix documents hold one row per line with comma-separated entries. Blank
lines and "#" comments are ignored; a first line "form: P" names the form.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from fourier_algebra.constants import Forms
from fourier_algebra.exceptions import ParseError, UnknownForm
from fourier_algebra.math.cyclo import Cyclotomic, E, csum

_TOKEN = re.compile(r"(?P<int>\d+)|(?P<root>E)|(?P<op>[-+*/^()])")
_HEADER = re.compile(r"^\s*form\s*:\s*(?P<form>\S+)\s*$")


@dataclass(frozen=True)
class _Token:
    kind: str  # int | root | op | end
    text: str
    column: int


def _tokenize(text: str, line: int, offset: int) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, offset + pos)
        kind = match.lastgroup
        assert kind is not None
        tokens.append(_Token(kind, match.group(), offset + pos))
        pos = match.end()
    tokens.append(_Token("end", "", offset + len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, line: int = 1, offset: int = 1):
        self.line = line
        self.tokens = _tokenize(text, line, offset)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def error(self, expected: str) -> ParseError:
        tok = self.peek()
        found = repr(tok.text) if tok.kind != "end" else "end of input"
        return ParseError(f"expected {expected}, found {found}", self.line, tok.column)

    def accept(self, kind: str, text: Optional[str] = None) -> Optional[_Token]:
        tok = self.peek()
        if tok.kind == kind and (text is None or tok.text == text):
            self.pos += 1
            return tok
        return None

    def expect(self, kind: str, text: Optional[str], expected: str) -> _Token:
        tok = self.accept(kind, text)
        if tok is None:
            raise self.error(expected)
        return tok

    def uint(self, expected: str = "unsigned integer") -> int:
        return int(self.expect("int", None, expected).text)

    def root(self) -> Cyclotomic:
        self.expect("root", None, "'E'")
        self.expect("op", "(", "'('")
        tok = self.peek()
        n = self.uint("root order")
        if n == 0:
            raise ParseError("root order must be positive", self.line, tok.column)
        self.expect("op", ")", "')'")
        k = 1
        if self.accept("op", "^"):
            sign = -1 if self.accept("op", "-") else 1
            k = sign * self.uint("exponent")
        return E(n, k)

    def term(self) -> Cyclotomic:
        if self.peek().kind == "root":
            return self.root()
        if self.peek().kind != "int":
            raise self.error("coefficient or E(n)")
        numerator = self.uint()
        denominator = 1
        if self.accept("op", "/"):
            tok = self.peek()
            denominator = self.uint("denominator")
            if denominator == 0:
                raise ParseError("zero denominator", self.line, tok.column)
        coeff = Fraction(numerator, denominator)
        if self.accept("op", "*"):
            return self.root() * coeff
        return Cyclotomic.from_rational(coeff)

    def expr(self) -> Cyclotomic:
        terms = []
        if self.accept("op", "-"):
            terms.append(-self.term())
        else:
            self.accept("op", "+")
            terms.append(self.term())
        while True:
            if self.accept("op", "+"):
                terms.append(self.term())
            elif self.accept("op", "-"):
                terms.append(-self.term())
            else:
                break
        if self.peek().kind != "end":
            raise self.error("'+', '-' or end of entry")
        return csum(terms)


def parse_cyclotomic(text: str, line: int = 1, offset: int = 1) -> Cyclotomic:
    return _Parser(text, line, offset).expr()


def format_cyclotomic(value: Cyclotomic) -> str:
    return str(value)


# =============================================================================
# Matrix documents
# =============================================================================


@dataclass(frozen=True)
class MatrixDocument:
    form: str
    rows: tuple[tuple[Cyclotomic, ...], ...]
    source: Optional[str] = field(default=None, compare=False)

    @property
    def rank(self) -> int:
        return len(self.rows)


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def parse_matrix(
    text: str, form: Optional[str] = None, source: Optional[str] = None
) -> MatrixDocument:
    """Parse a matrix document. A "form:" header overrides the given form."""
    rows: list[tuple[Cyclotomic, ...]] = []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        header = _HEADER.match(line)
        if header:
            if header_seen or rows:
                raise ParseError("form header must precede all rows", lineno, 1)
            form = header.group("form")
            header_seen = True
            continue
        entries = []
        offset = 1
        for cell in line.split(","):
            if not cell.strip():
                raise ParseError("empty entry", lineno, offset)
            entries.append(parse_cyclotomic(cell, lineno, offset))
            offset += len(cell) + 1
        rows.append(tuple(entries))

    if form is None:
        raise UnknownForm("no form given: pass --form or add a 'form:' header")
    if form not in Forms.ALL:
        raise UnknownForm(f"unknown form {form!r}; expected one of {', '.join(Forms.ALL)}")
    if not rows:
        raise ParseError("document has no rows", 1, 1)
    return MatrixDocument(form, tuple(rows), source)


def format_matrix(doc: MatrixDocument) -> str:
    lines = [f"form: {doc.form}"]
    lines += [", ".join(format_cyclotomic(x) for x in row) for row in doc.rows]
    return "\n".join(lines) + "\n"
