#!/usr/bin/env python3
"""
Reader and writer for .qvr quiver-with-relations files

    field Q                       # or: field F 5 / field F5
    vertices 1 2 3 4
    arrows
      a1: 1 -> 2
      a2: 2 -> 3
      d1: 2 -> 3
      b1: 3 -> 4
    relations
      d1*a1 - a2*a1               # one per line or separated by ';'
    options
      degree_cap = 32

Products are written RIGHT TO LEFT: b*a means "a, then b". Coefficients are
integers or fractions (3/7) and relations may be given as lhs = rhs.
Every failure is a ParseError carrying line, column and the source line.
"""
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from src.algebra.engine import FDAlgebra, build_algebra
from src.algebra.field import Field, Scalar
from src.algebra.relations import Relation, make_relation
from src.quiver.quiver import Path, Quiver
from src.utils.errors import AlgebraError, QuiverError, ScanError, SemanticError, SyntaxError_, UniserialLabError


KEYWORDS = ('field', 'vertices', 'arrows', 'relations', 'options')
OPTIONS = ('degree_cap', 'enumeration_cap', 'w_search_cap', 'alternating_rounds', 'census_dim_cap', 'census_budget')

TOKEN_SPEC = [
    ('COMMENT', r'#[^\n]*'),
    ('NEWLINE', r'\n'),
    ('SKIP', r'[ \t\r]+'),
    ('ARROW', r'->'),
    ('NAME', r"[A-Za-z0-9_']+"),
    ('OP', r'[:*+\-;=/]'),
    ('MISMATCH', r'.'),
]
TOKEN_RE = re.compile('|'.join(f'(?P<{name}>{pattern})' for name, pattern in TOKEN_SPEC))
NUMBER_RE = re.compile(r'\d+')


@dataclass
class Token:
    kind: str
    text: str
    line: int
    column: int


@dataclass
class SourceSpec:
    """A parsed .qvr file"""
    text: str
    quiver: Quiver
    field: Field
    relations: List[Relation] = field(default_factory=list)
    options: Dict[str, int] = field(default_factory=dict)
    name: Optional[str] = None

    def build(self, degree_cap: Optional[int] = None) -> FDAlgebra:
        cap = degree_cap if degree_cap is not None else self.options.get('degree_cap', 32)
        return build_algebra(self.quiver, self.relations, self.field, degree_cap=cap, name=self.name)


def tokenize(text: str) -> List[Token]:
    """
    Raises:
        ScanError: a character outside the alphabet
    """
    tokens = []
    line, line_start = 1, 0
    lines = text.split('\n')
    for match in TOKEN_RE.finditer(text):
        kind = match.lastgroup
        column = match.start() - line_start + 1
        if kind == 'NEWLINE':
            tokens.append(Token(kind, '\n', line, column))
            line += 1
            line_start = match.end()
        elif kind in ('SKIP', 'COMMENT'):
            continue
        elif kind == 'MISMATCH':
            raise ScanError(f"unexpected character {match.group()!r}", line, column, lines[line - 1])
        else:
            tokens.append(Token(kind, match.group(), line, column))
    tokens.append(Token('EOF', '', line, len(lines[-1]) + 1))
    return tokens


class _Parser:
    """Recursive descent over the token list"""

    def __init__(self, text: str):
        self.text = text
        self.lines = text.split('\n')
        self.tokens = tokenize(text)
        self.pos = 0

    # Token helpers

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != 'EOF':
            self.pos += 1
        return token

    def skip_newlines(self) -> None:
        while self.current.kind == 'NEWLINE' or (self.current.kind == 'OP' and self.current.text == ';'):
            self.advance()

    def source_line(self, token: Token) -> str:
        return self.lines[token.line - 1] if 0 < token.line <= len(self.lines) else ''

    def syntax_error(self, message: str, token: Optional[Token] = None) -> SyntaxError_:
        token = token or self.current
        found = 'end of input' if token.kind == 'EOF' else repr(token.text)
        return SyntaxError_(f"{message}, found {found}", token.line, token.column, self.source_line(token))

    def semantic_error(self, message: str, token: Token) -> SemanticError:
        return SemanticError(message, token.line, token.column, self.source_line(token))

    def is_keyword(self, word: str) -> bool:
        return self.current.kind == 'NAME' and self.current.text == word

    def at_section_end(self) -> bool:
        token = self.current
        return token.kind == 'EOF' or (token.kind == 'NAME' and token.text in KEYWORDS)

    def expect_keyword(self, word: str) -> Token:
        self.skip_newlines()
        if not self.is_keyword(word):
            raise self.syntax_error(f"expected '{word}'")
        return self.advance()

    def expect_op(self, text: str) -> Token:
        token = self.current
        if (token.kind == 'OP' and token.text == text) or (text == '->' and token.kind == 'ARROW'):
            return self.advance()
        raise self.syntax_error(f"expected '{text}'")

    def expect_name(self, what: str) -> Token:
        token = self.current
        if token.kind != 'NAME' or token.text in KEYWORDS:
            raise self.syntax_error(f"expected {what}")
        return self.advance()

    # Sections

    def parse(self) -> SourceSpec:
        field_ = self.parse_field()
        vertices = self.parse_vertices()
        quiver = self.parse_arrows(vertices)
        relations: List[Relation] = []
        options: Dict[str, int] = {}
        self.skip_newlines()
        if self.is_keyword('relations'):
            relations = self.parse_relations(quiver, field_)
        self.skip_newlines()
        if self.is_keyword('options'):
            options = self.parse_options()
        self.skip_newlines()
        if self.current.kind != 'EOF':
            raise self.syntax_error("expected 'relations', 'options' or end of input")
        return SourceSpec(self.text, quiver, field_, relations, options)

    def parse_field(self) -> Field:
        self.expect_keyword('field')
        token = self.expect_name("'Q' or 'F p'")
        text = token.text
        if text == 'Q':
            return Field.rationals()
        if text == 'F' and self.current.kind == 'NAME' and NUMBER_RE.fullmatch(self.current.text):
            text += self.advance().text
        match = re.fullmatch(r'F(\d+)', text)
        if not match:
            raise self.semantic_error(f"unknown field {token.text!r}; use Q or F p", token)
        try:
            return Field.prime(int(match.group(1)))
        except AlgebraError as exc:
            raise self.semantic_error(str(exc), token) from None

    def parse_vertices(self) -> List[Tuple[str, Token]]:
        self.expect_keyword('vertices')
        out = []
        seen = set()
        self.skip_newlines()
        while not self.at_section_end():
            token = self.expect_name('a vertex id')
            if token.text in seen:
                raise self.semantic_error(f"vertex {token.text} declared twice", token)
            seen.add(token.text)
            out.append((token.text, token))
            self.skip_newlines()
        if not out:
            raise self.syntax_error('expected at least one vertex')
        return out

    def parse_arrows(self, vertices: List[Tuple[str, Token]]) -> Quiver:
        known = {v for v, _ in vertices}
        triples = []
        seen = set()
        self.skip_newlines()
        if not self.is_keyword('arrows'):
            return Quiver([v for v, _ in vertices], [])
        self.advance()
        self.skip_newlines()
        while not self.at_section_end():
            name = self.expect_name('an arrow id')
            self.expect_op(':')
            source = self.expect_name('a source vertex')
            self.expect_op('->')
            target = self.expect_name('a target vertex')
            if name.text in seen:
                raise self.semantic_error(f"arrow {name.text} declared twice", name)
            if name.text in known:
                raise self.semantic_error(f"arrow id {name.text} clashes with a vertex id", name)
            for token in (source, target):
                if token.text not in known:
                    raise self.semantic_error(f"unknown vertex {token.text}", token)
            seen.add(name.text)
            triples.append((name.text, source.text, target.text))
            self.skip_newlines()
        try:
            return Quiver([v for v, _ in vertices], triples)
        except QuiverError as exc:
            raise self.semantic_error(str(exc), vertices[0][1]) from None

    def parse_relations(self, quiver: Quiver, field_: Field) -> List[Relation]:
        self.advance()
        relations = []
        self.skip_newlines()
        while not self.at_section_end():
            start = self.current
            terms = self.parse_lincomb(quiver, field_)
            if self.current.kind == 'OP' and self.current.text == '=':
                self.advance()
                terms += [(-c, p) for c, p in self.parse_lincomb(quiver, field_)]
            if not (self.current.kind in ('NEWLINE', 'EOF') or (self.current.kind == 'OP' and self.current.text == ';')
                    or self.at_section_end()):
                raise self.syntax_error("expected '+', '-', '=', ';' or a new line")
            try:
                relations.append(make_relation(field_, terms))
            except AlgebraError as exc:
                raise self.semantic_error(str(exc), start) from None
            self.skip_newlines()
        return relations

    def parse_lincomb(self, quiver: Quiver, field_: Field) -> List[Tuple[Scalar, Path]]:
        terms = []
        sign = field_.one
        if self.current.kind == 'OP' and self.current.text in '+-':
            sign = field_.one if self.advance().text == '+' else -field_.one
        while True:
            coeff, path = self.parse_term(quiver, field_)
            terms.append((sign * coeff, path))
            if self.current.kind == 'OP' and self.current.text in ('+', '-'):
                sign = field_.one if self.advance().text == '+' else -field_.one
                continue
            return terms

    def parse_term(self, quiver: Quiver, field_: Field) -> Tuple[Scalar, Path]:
        coeff = field_.one
        token = self.current
        if token.kind == 'NAME' and NUMBER_RE.fullmatch(token.text) and token.text not in quiver.arrows:
            coeff = self.parse_coefficient(field_)
            self.expect_op('*')
        start = self.current
        names = [self.expect_name('an arrow id')]
        while self.current.kind == 'OP' and self.current.text == '*':
            self.advance()
            names.append(self.expect_name('an arrow id'))
        for name in names:
            if name.text not in quiver.arrows:
                raise self.semantic_error(f"unknown arrow {name.text}", name)
        try:
            return coeff, quiver.path(*[n.text for n in names])
        except QuiverError as exc:
            raise self.semantic_error(f"path {'*'.join(n.text for n in names)} is not composable: {exc}",
                                      start) from None

    def parse_coefficient(self, field_: Field) -> Scalar:
        numerator = self.advance()
        denominator = None
        if self.current.kind == 'OP' and self.current.text == '/':
            self.advance()
            denominator = self.current
            if denominator.kind != 'NAME' or not NUMBER_RE.fullmatch(denominator.text):
                raise self.syntax_error('expected a denominator')
            self.advance()
        try:
            if denominator is None:
                return field_(int(numerator.text))
            return field_.fraction(int(numerator.text), int(denominator.text))
        except (AlgebraError, ZeroDivisionError) as exc:
            raise self.semantic_error(f"bad coefficient: {exc}", numerator) from None

    def parse_options(self) -> Dict[str, int]:
        self.advance()
        options = {}
        self.skip_newlines()
        while not self.at_section_end():
            name = self.expect_name('an option name')
            if name.text not in OPTIONS:
                raise self.semantic_error(f"unknown option {name.text}; known: {', '.join(OPTIONS)}", name)
            self.expect_op('=')
            value = self.current
            if value.kind != 'NAME' or not NUMBER_RE.fullmatch(value.text):
                raise self.syntax_error('expected an integer')
            self.advance()
            options[name.text] = int(value.text)
            self.skip_newlines()
        return options


def parse(text: str, name: Optional[str] = None) -> SourceSpec:
    """
    Parse .qvr source text

    Raises:
        ParseError: ScanError, SyntaxError_ or SemanticError, with position
    """
    try:
        spec = _Parser(text).parse()
    except (ScanError, SyntaxError_, SemanticError):
        raise
    except UniserialLabError as exc:
        raise SemanticError(str(exc)) from None
    spec.name = name
    return spec


def parse_file(path: str) -> SourceSpec:
    from pathlib import Path as FilePath

    file = FilePath(path)
    return parse(file.read_text(encoding='utf-8'), name=file.stem)


def emit(spec: SourceSpec) -> str:
    """Canonical source text; parse(emit(spec)) gives the same quiver, relations and options"""
    field_ = spec.field
    lines = [f"field {'Q' if field_.characteristic == 0 else f'F {field_.characteristic}'}"]
    lines.append('vertices ' + ' '.join(spec.quiver.vertices))
    if spec.quiver.arrows:
        lines.append('arrows')
        for a in spec.quiver.arrows.values():
            lines.append(f"  {a.id}: {a.source} -> {a.target}")
    if spec.relations:
        lines.append('relations')
        for r in spec.relations:
            lines.append(f"  {r};")
    if spec.options:
        lines.append('options')
        for key in sorted(spec.options):
            lines.append(f"  {key} = {spec.options[key]}")
    return '\n'.join(lines) + '\n'
