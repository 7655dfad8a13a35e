"""Input languages: the bracketed word format and DIMACS cnf.

Word format::

    [a1 ~a3] [~a1 a2 ~a3] $

``[`` and ``]`` delimit a clause, ``aK`` / ``~aK`` are literals and ``$``
marks the end of the word. Whitespace is ignored. The bare word ``$`` is the
empty formula.
"""

from __future__ import annotations

import enum
import re
import warnings
from dataclasses import dataclass, field

from .errors import ParseError
from .formula import Clause, CnfFormula, Literal


class TokenKind(enum.Enum):
    OPEN = "["
    CLOSE = "]"
    END = "$"
    LITERAL = "L"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    literal: Literal | None = None
    pos: int | None = field(default=None, compare=False)

    def __str__(self):
        return str(self.literal) if self.kind is TokenKind.LITERAL else self.kind.value

    @classmethod
    def lit(cls, var: int, negated: bool = False, pos: int | None = None) -> "Token":
        return cls(TokenKind.LITERAL, Literal(var, negated), pos)


OPEN = Token(TokenKind.OPEN)
CLOSE = Token(TokenKind.CLOSE)
END = Token(TokenKind.END)

_LITERAL_RE = re.compile(r"(~?)a(\d*)")


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    depth = 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch == "[":
            tokens.append(Token(TokenKind.OPEN, pos=i))
            depth += 1
            i += 1
        elif ch == "]":
            tokens.append(Token(TokenKind.CLOSE, pos=i))
            depth -= 1
            i += 1
        elif ch == "$":
            tokens.append(Token(TokenKind.END, pos=i))
            i += 1
        elif ch in "~a":
            match = _LITERAL_RE.match(text, i)
            if match is None:
                raise ParseError("malformed literal: '~' must be followed by 'a<index>'", i)
            digits = match.group(2)
            if not digits or int(digits) == 0:
                raise ParseError(f"malformed literal {match.group(0)!r}: needs a positive index", i)
            if depth <= 0:
                raise ParseError(f"literal {match.group(0)!r} outside a clause", i)
            tokens.append(Token.lit(int(digits), bool(match.group(1)), pos=i))
            i = match.end()
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    return tokens


def parse_word(tokens: list[Token], n: int | None = None) -> CnfFormula:
    """Check ``tokens`` against the word grammar and build the formula.

    ``n`` overrides the variable count (it may exceed the largest index used).
    """
    if not tokens:
        raise ParseError("empty input: a word must end with '$'", 0)
    clauses: list[Clause] = []
    current: list[Literal] | None = None
    for idx, tok in enumerate(tokens):
        where = tok.pos if tok.pos is not None else f"token {idx}"
        if tok.kind is TokenKind.OPEN:
            if current is not None:
                raise ParseError("nested '['", where)
            current = []
        elif tok.kind is TokenKind.CLOSE:
            if current is None:
                raise ParseError("']' without matching '['", where)
            clauses.append(Clause(tuple(current)))
            current = None
        elif tok.kind is TokenKind.LITERAL:
            if current is None:
                raise ParseError(f"literal {tok.literal} outside a clause", where)
            current.append(tok.literal)
        else:
            if current is not None:
                raise ParseError("'$' inside an open clause", where)
            if idx != len(tokens) - 1:
                nxt = tokens[idx + 1]
                raise ParseError("tokens after '$'", nxt.pos if nxt.pos is not None else f"token {idx + 1}")
            return CnfFormula(tuple(clauses)) if n is None else CnfFormula(tuple(clauses), n)
    raise ParseError("missing end marker '$'", tokens[-1].pos)


def formula_tokens(f: CnfFormula) -> list[Token]:
    out: list[Token] = []
    for c in f.clauses:
        out.append(OPEN)
        out.extend(Token(TokenKind.LITERAL, lit) for lit in c)
        out.append(CLOSE)
    out.append(END)
    return out


def encode_word(f: CnfFormula) -> str:
    parts = ["[" + " ".join(str(lit) for lit in c) + "]" for c in f.clauses]
    parts.append("$")
    return " ".join(parts)


def read_word(text: str, n: int | None = None) -> CnfFormula:
    return parse_word(tokenize(text), n)


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS cnf. A clause-count mismatch only warns."""
    n = declared_m = None
    clauses: list[Clause] = []
    current: list[Literal] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            # SATLIB files end with a "%" sentinel line
            break
        if line.startswith("p"):
            if n is not None:
                raise ParseError("duplicate 'p cnf' header", lineno)
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise ParseError(f"bad header {line!r}, expected 'p cnf <vars> <clauses>'", lineno)
            try:
                n, declared_m = int(fields[2]), int(fields[3])
            except ValueError:
                raise ParseError(f"bad header {line!r}", lineno) from None
            if n < 0 or declared_m < 0:
                raise ParseError("negative counts in header", lineno)
            continue
        if n is None:
            raise ParseError("clause data before 'p cnf' header", lineno)
        for word in line.split():
            try:
                value = int(word)
            except ValueError:
                raise ParseError(f"not an integer: {word!r}", lineno) from None
            if value == 0:
                clauses.append(Clause(tuple(current)))
                current = []
            elif abs(value) > n:
                raise ParseError(f"literal {value} exceeds declared n={n}", lineno)
            else:
                current.append(Literal.from_int(value))
    if n is None:
        raise ParseError("missing 'p cnf' header")
    if current:
        raise ParseError("final clause is not terminated by 0")
    if len(clauses) != declared_m:
        warnings.warn(f"header declares {declared_m} clauses, found {len(clauses)}", stacklevel=2)
    return CnfFormula(tuple(clauses), n)


def emit_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.n} {f.m}"]
    for c in f.clauses:
        lines.append(" ".join([str(lit.to_int()) for lit in c] + ["0"]))
    return "\n".join(lines) + "\n"


_DIMACS_HEADER = re.compile(r"^\s*p\s+cnf\b", re.MULTILINE)


def detect_format(text: str) -> str:
    return "dimacs" if _DIMACS_HEADER.search(text) else "word"


def read_formula(text: str, fmt: str = "auto", n: int | None = None) -> CnfFormula:
    """Parse ``text`` as ``word``, ``dimacs`` or ``auto``-detected format."""
    if fmt == "auto":
        fmt = detect_format(text)
    if fmt == "word":
        return read_word(text, n)
    if fmt == "dimacs":
        f = parse_dimacs(text)
        if n is not None:
            f = CnfFormula(f.clauses, n)
        return f
    raise ValueError(f"unknown format {fmt!r}")
