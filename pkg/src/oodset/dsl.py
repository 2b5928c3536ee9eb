"""Lexer, recursive-descent parser and canonical printer for ``.ood`` files.

Grammar::

    model    := "model" IDENT "{" module* "}"
    module   := "module" IDENT "{" (package | relation)* "}"
    package  := "package" IDENT "{" class* "}"
    class    := "class" IDENT ( ";" | "{" member* "}" )
    member   := "data" IDENT ("," IDENT)* ";"
              | "func" IDENT "(" [IDENT ("," IDENT)*] ")" ";"
              | "objects" IDENT ("," IDENT)* ";"
    relation := "relation" QNAME KIND QNAME ";"
    KIND     := "inherits" | "associates" | "aggregates" | "uses"
    QNAME    := IDENT "." IDENT "." IDENT | IDENT

The parser does not stop at the first error: after reporting it skips ahead to
the next ``;`` or ``}`` and carries on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .diagnostics import Diagnostic, DiagnosticError, SourceSpan
from .model import (
    ClassDecl, DesignModel, FunctionDecl, ModuleDecl, PackageDecl, RelKind, RelationshipDecl,
)

KEYWORDS = frozenset({
    "model", "module", "package", "class", "data", "func", "objects", "relation",
    "inherits", "associates", "aggregates", "uses",
})
PUNCTUATION = frozenset("{}();,.:")
KINDS = tuple(k.value for k in RelKind)


@dataclass(frozen=True)
class Token:
    kind: str  # "kw", "ident", "punct" or "eof"
    value: str
    span: SourceSpan

    def is_(self, value: str) -> bool:
        return self.kind in ("kw", "punct") and self.value == value


def _is_ident_start(ch: str) -> bool:
    return ch == "_" or (ch.isascii() and ch.isalpha())


def _is_ident_char(ch: str) -> bool:
    return ch == "_" or (ch.isascii() and ch.isalnum())


def lex(text: str) -> tuple[list[Token], list[Diagnostic]]:
    """Tokenize ``text``, returning tokens (ending with ``eof``) and lexical errors."""
    tokens: list[Token] = []
    errors: list[Diagnostic] = []
    i, line, col, n = 0, 1, 1, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
        elif ch in " \t\r\f\v":
            i, col = i + 1, col + 1
        elif text.startswith("//", i):
            while i < n and text[i] != "\n":
                i += 1
                col += 1
        elif _is_ident_start(ch):
            j = i + 1
            while j < n and _is_ident_char(text[j]):
                j += 1
            word = text[i:j]
            tokens.append(Token("kw" if word in KEYWORDS else "ident", word,
                                SourceSpan(line, col, j - i)))
            col += j - i
            i = j
        elif ch in PUNCTUATION:
            tokens.append(Token("punct", ch, SourceSpan(line, col, 1)))
            i, col = i + 1, col + 1
        else:
            errors.append(Diagnostic("E001", f"unknown character {ch!r}", SourceSpan(line, col, 1)))
            i, col = i + 1, col + 1
    tokens.append(Token("eof", "", SourceSpan(line, col, 0)))
    return tokens, errors


def tokenize(text: str) -> list[Token]:
    """Tokens without the trailing ``eof`` marker; raises on any unknown character."""
    tokens, errors = lex(text)
    if errors:
        raise DiagnosticError(errors)
    return tokens[:-1]


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.errors: list[Diagnostic] = []

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def error(self, code: str, message: str, span: Optional[SourceSpan] = None):
        self.errors.append(Diagnostic(code, message, span or self.tok.span))

    def unexpected(self, wanted: str):
        t = self.tok
        if t.kind == "eof":
            self.error("E003", f"unexpected end of input, expected {wanted}")
        else:
            self.error("E002", f"unexpected {t.value!r}, expected {wanted}")

    def expect(self, value: str) -> bool:
        if self.tok.is_(value):
            self.advance()
            return True
        self.unexpected(repr(value))
        return False

    def ident(self) -> Optional[Token]:
        if self.tok.kind == "ident":
            return self.advance()
        self.unexpected("identifier")
        return None

    def sync(self):
        """Skip to just past the next ``;`` or up to (not past) the next ``}``."""
        while self.tok.kind != "eof":
            if self.tok.is_("}"):
                return
            if self.advance().is_(";"):
                return

    def close_block(self, opener: Token):
        if self.tok.is_("}"):
            self.advance()
        else:
            self.error("E003", f"unclosed '{{' opened at {opener.span}", opener.span)

    def block(self, handlers: dict):
        """Parse ``{ item* }`` dispatching on the leading keyword of each item."""
        if not self.tok.is_("{"):
            self.unexpected("'{'")
            self.sync()
            return
        opener = self.advance()
        while not self.tok.is_("}") and self.tok.kind != "eof":
            handler = handlers.get(self.tok.value) if self.tok.kind == "kw" else None
            if handler is None:
                self.unexpected(" or ".join(repr(k) for k in handlers) or "'}'")
                self.sync()
            else:
                handler()
        self.close_block(opener)

    # grammar rules --------------------------------------------------------

    def model(self) -> Optional[DesignModel]:
        if not self.tok.is_("model"):
            self.unexpected("'model'")
            return None
        self.advance()
        name = self.ident()
        model = DesignModel(name.value if name else "?")
        self.block({"module": lambda: model.modules.append(self.module())})
        if self.tok.kind != "eof":
            self.error("E002", f"unexpected {self.tok.value!r} after end of model")
        return model

    def module(self) -> ModuleDecl:
        self.advance()
        name = self.ident()
        mod = ModuleDecl(name.value if name else "?", location=_span(name))
        self.block({
            "package": lambda: mod.packages.append(self.package()),
            "relation": lambda: self.relation(mod),
        })
        return mod

    def package(self) -> PackageDecl:
        self.advance()
        name = self.ident()
        pkg = PackageDecl(name.value if name else "?", location=_span(name))
        self.block({"class": lambda: pkg.classes.append(self.class_())})
        return pkg

    def class_(self) -> ClassDecl:
        self.advance()
        name = self.ident()
        cls = ClassDecl(name.value if name else "?", location=_span(name))
        if name is None:
            self.sync()
        elif self.tok.is_(";"):
            self.advance()
        else:
            self.block({
                "data": lambda: cls.data_members.extend(self.name_list("data")),
                "objects": lambda: cls.objects.extend(self.name_list("objects")),
                "func": lambda: self.func(cls),
            })
        return cls

    def name_list(self, what: str) -> list[str]:
        self.advance()
        names = []
        while True:
            t = self.ident()
            if t is None:
                self.sync()
                return names
            names.append(t.value)
            if self.tok.is_(","):
                self.advance()
                continue
            if not self.expect(";"):
                self.sync()
            return names

    def func(self, cls: ClassDecl):
        self.advance()
        name = self.ident()
        if name is None or not self.expect("("):
            self.sync()
            return
        used = []
        if self.tok.kind == "ident":
            used.append(self.advance().value)
            while self.tok.is_(","):
                self.advance()
                t = self.ident()
                if t is None:
                    self.sync()
                    return
                used.append(t.value)
        if not (self.expect(")") and self.expect(";")):
            self.sync()
            return
        cls.function_members.append(FunctionDecl(name.value, used, location=name.span))

    def qname(self) -> Optional[str]:
        first = self.ident()
        if first is None:
            return None
        parts = [first.value]
        last = first
        while self.tok.is_("."):
            self.advance()
            t = self.ident()
            if t is None:
                return None
            parts.append(t.value)
            last = t
        if len(parts) not in (1, 3):
            span = SourceSpan(first.span.line, first.span.column,
                              _width(first.span, last.span))
            self.error("E004", f"malformed qualified name {'.'.join(parts)!r}", span)
            return None
        return ".".join(parts)

    def relation(self, mod: ModuleDecl):
        start = self.advance()
        source = self.qname()
        if source is None:
            self.sync()
            return
        if self.tok.kind != "kw" or self.tok.value not in KINDS:
            self.unexpected("relationship kind (" + ", ".join(KINDS) + ")")
            self.sync()
            return
        kind = self.advance().value
        target = self.qname()
        if target is None:
            self.sync()
            return
        end = self.tok
        if not self.expect(";"):
            self.sync()
            return
        span = SourceSpan(start.span.line, start.span.column, _width(start.span, end.span))
        mod.relationships.append(RelationshipDecl(RelKind(kind), source, target, span))


def _span(tok: Optional[Token]) -> SourceSpan:
    return tok.span if tok else SourceSpan(1, 1, 0)


def _width(a: SourceSpan, b: SourceSpan) -> int:
    if a.line != b.line:
        return a.length
    return b.column + b.length - a.column


def parse(text: str, source: Optional[str] = None) -> DesignModel:
    """Parse ``.ood`` text into an unresolved :class:`DesignModel`.

    Raises :class:`DiagnosticError` carrying every lexical and syntax error.
    """
    tokens, errors = lex(text)
    parser = _Parser(tokens)
    model = parser.model()
    errors += parser.errors
    if errors or model is None:
        raise DiagnosticError(errors)
    model.source = source
    return model


def serialize(model: DesignModel) -> str:
    """Canonical text: 2-space indent, one declaration per line, LF endings."""
    out = [f"model {model.name} {{"]
    for m in model.modules:
        out.append(f"  module {m.name} {{")
        for p in m.packages:
            out.append(f"    package {p.name} {{")
            for c in p.classes:
                out.extend(_class_lines(c, "      "))
            out.append("    }")
        for r in m.relationships:
            out.append(f"    relation {r.source} {r.kind.value} {r.target};")
        out.append("  }")
    out.append("}")
    return "\n".join(out) + "\n"


def _class_lines(c: ClassDecl, indent: str) -> list[str]:
    if not (c.data_members or c.function_members or c.objects):
        return [f"{indent}class {c.name};"]
    inner = indent + "  "
    lines = [f"{indent}class {c.name} {{"]
    if c.data_members:
        lines.append(f"{inner}data {', '.join(c.data_members)};")
    for f in c.function_members:
        lines.append(f"{inner}func {f.name}({', '.join(f.uses_data)});")
    if c.objects:
        lines.append(f"{inner}objects {', '.join(c.objects)};")
    lines.append(f"{indent}}}")
    return lines
