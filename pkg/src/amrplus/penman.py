"""Reading and writing plain AMR and AMR+ in PENMAN-style notation.

An AMR+ document is a bracketed tree whose slashes carry a context index,
followed by a block of scoping constraints::

    (e /1/ smile-01 :ARG0 (x /2/ woman)) {2:~1}

A plain AMR uses single slashes and has no constraint block::

    (e / smile-01 :polarity - :ARG0 (x / woman))
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from .constraints import (
    Cond,
    ConstraintSet,
    Eq,
    Neg,
    Presup,
    ShCond,
    ShNeg,
)
from .errors import ParseError, AmrPlusError


@dataclass(frozen=True)
class VarRef:
    """A re-entrant reference to a variable bound elsewhere in the AMR."""

    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Constant:
    """A constant role target. ``value`` is the literal source text,
    so strings keep their quotes: ``Constant('"Mary"')``."""

    value: str

    def __str__(self):
        return self.value

    @property
    def is_string(self):
        return self.value.startswith('"')


@dataclass(frozen=True)
class AmrPlusNode:
    variable: str
    index: Optional[int]
    concept: str
    roles: tuple = ()

    def __str__(self):
        return format_node(self)


RoleTarget = Union[AmrPlusNode, VarRef, Constant]


@dataclass(frozen=True)
class AmrPlusDocument:
    root: AmrPlusNode
    constraints: ConstraintSet = ConstraintSet()
    id: Optional[str] = field(default=None, compare=False)

    def __str__(self):
        return format_document(self)

    @property
    def is_plain(self):
        return all(n.index is None for n in iter_nodes(self.root))


# --- lexing -----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>\#[^\n]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<imp>=>)
  | (?P<punct>[()/{},:~=<])
  | (?P<symbol>[^\s()/{}:,"~<=\#]+)
    """,
    re.VERBOSE,
)
_INT_RE = re.compile(r"[0-9]+\Z")
_NUMBER_RE = re.compile(r"[-+]?(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][-+]?[0-9]+)?\Z")
_VAR_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class _Token:
    kind: str  # one of the punctuation strings, '=>', 'INT', 'STRING', 'SYMBOL', 'EOF'
    text: str
    line: int
    column: int


def _tokenize(text: str, line_offset: int = 0) -> list[_Token]:
    tokens = []
    pos = 0
    line = 1
    line_start = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(
                f"unexpected character {text[pos]!r}",
                line + line_offset,
                pos - line_start + 1,
                code="LEX",
            )
        kind = m.lastgroup
        value = m.group()
        col = pos - line_start + 1
        if kind == "string":
            tokens.append(_Token("STRING", value, line + line_offset, col))
        elif kind in ("imp", "punct"):
            tokens.append(_Token(value, value, line + line_offset, col))
        elif kind == "symbol":
            k = "INT" if _INT_RE.match(value) else "SYMBOL"
            tokens.append(_Token(k, value, line + line_offset, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rindex("\n") + 1
        pos = m.end()
    tokens.append(_Token("EOF", "", line + line_offset, pos - line_start + 1))
    return tokens


# --- parsing ----------------------------------------------------------------


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0
        self.bound: dict[str, _Token] = {}
        self.refs: list[_Token] = []

    @property
    def tok(self) -> _Token:
        return self.tokens[self.pos]

    def peek(self, ahead=1) -> _Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def error(self, message, tok=None, code="SYNTAX"):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.column, code=code)

    def expect(self, kind) -> _Token:
        tok = self.tok
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise self.error(f"expected {kind!r}, found {found!r}")
        self.pos += 1
        return tok

    def document(self) -> AmrPlusDocument:
        root = self.amr()
        constraints = ConstraintSet()
        if self.tok.kind == "{":
            constraints = self.constraint_block()
        if self.tok.kind != "EOF":
            raise self.error(f"unexpected {self.tok.text!r} after document")
        for ref in self.refs:
            if ref.text not in self.bound:
                raise self.error(f"unbound variable {ref.text!r}", ref, code="UNBOUND_VAR")
        return AmrPlusDocument(root, constraints)

    def amr(self) -> AmrPlusNode:
        self.expect("(")
        var_tok = self.tok
        if var_tok.kind != "SYMBOL" or not _VAR_RE.match(var_tok.text):
            raise self.error(f"expected variable, found {var_tok.text!r}")
        self.pos += 1
        if var_tok.text in self.bound:
            raise self.error(
                f"variable {var_tok.text!r} bound twice", var_tok, code="DUPLICATE_VAR"
            )
        self.bound[var_tok.text] = var_tok
        self.expect("/")
        index = None
        if self.tok.kind == "INT" and self.peek().kind == "/":
            index = self.index()
            self.expect("/")
        concept = self.tok
        if concept.kind not in ("SYMBOL", "INT"):
            raise self.error(f"expected concept, found {concept.text!r}")
        self.pos += 1
        roles = []
        while self.tok.kind == ":":
            self.pos += 1
            rel = self.tok
            if rel.kind not in ("SYMBOL", "INT"):
                raise self.error(f"expected relation name, found {rel.text!r}")
            self.pos += 1
            roles.append((rel.text, self.role_target()))
        self.expect(")")
        return AmrPlusNode(var_tok.text, index, concept.text, tuple(roles))

    def role_target(self) -> RoleTarget:
        tok = self.tok
        if tok.kind == "(":
            return self.amr()
        if tok.kind == "STRING":
            self.pos += 1
            return Constant(tok.text)
        if tok.kind == "INT" or (tok.kind == "SYMBOL" and _NUMBER_RE.match(tok.text)):
            self.pos += 1
            return Constant(tok.text)
        if tok.kind == "SYMBOL" and tok.text in ("-", "+"):
            self.pos += 1
            return Constant(tok.text)
        if tok.kind == "SYMBOL" and _VAR_RE.match(tok.text):
            self.pos += 1
            self.refs.append(tok)
            return VarRef(tok.text)
        raise self.error(f"expected role target, found {tok.text or 'end of input'!r}")

    def index(self) -> int:
        tok = self.expect("INT")
        value = int(tok.text)
        if value < 1:
            raise self.error("context index must be >= 1", tok, code="BAD_CONSTRAINT")
        return value

    def constraint_block(self) -> ConstraintSet:
        self.expect("{")
        items = []
        if self.tok.kind != "}":
            items.append(self.constraint())
            while self.tok.kind == ",":
                self.pos += 1
                items.append(self.constraint())
        self.expect("}")
        return ConstraintSet.of(items)

    def constraint(self):
        start = self.tok
        try:
            if self.tok.kind == "~":
                self.pos += 1
                return ShNeg(self.index())
            a = self.index()
            op = self.tok.kind
            if op == "=":
                self.pos += 1
                return Eq(a, self.index())
            if op == "<":
                self.pos += 1
                return Presup(a, self.index())
            if op == "=>":
                self.pos += 1
                return ShCond(a, self.index())
            if op == ":":
                self.pos += 1
                if self.tok.kind == "~":
                    self.pos += 1
                    return Neg(a, self.index())
                b = self.index()
                self.expect("=>")
                return Cond(a, b, self.index())
            raise self.error(f"expected constraint operator, found {self.tok.text!r}")
        except ParseError as e:
            if e.code == "SYNTAX":
                e.code = "BAD_CONSTRAINT"
                e.args = (f"malformed constraint starting at {start.text!r}: {e.args[0]}",)
            raise


def parse(text: str, line_offset: int = 0) -> AmrPlusDocument:
    """Parse a single plain-AMR or AMR+ document."""
    return _Parser(_tokenize(text, line_offset)).document()


_ID_RE = re.compile(r"^\s*#\s*::id\s+(\S+)", re.MULTILINE)


def parse_many(text: str) -> list[AmrPlusDocument]:
    """Parse a file of documents separated by blank lines.

    A ``# ::id NAME`` comment inside a block names that document; otherwise
    documents are numbered from 1 in file order.
    """
    docs = []
    for block, offset in _blocks(text):
        m = _ID_RE.search(block)
        doc = parse(block, offset)
        doc_id = m.group(1) if m else str(len(docs) + 1)
        docs.append(AmrPlusDocument(doc.root, doc.constraints, doc_id))
    return docs


def _blocks(text):
    lines = text.splitlines()
    start = None
    for i, line in enumerate(lines + [""]):
        if line.strip():
            if start is None:
                start = i
        elif start is not None:
            block = "\n".join(lines[start:i])
            if any(l.strip() and not l.lstrip().startswith("#") for l in lines[start:i]):
                yield block, start
            start = None


# --- printing ---------------------------------------------------------------


def format_node(node: AmrPlusNode) -> str:
    slash = "/" if node.index is None else f"/{node.index}/"
    parts = [f"({node.variable} {slash} {node.concept}"]
    for rel, target in node.roles:
        parts.append(f":{rel} {format_target(target)}")
    return " ".join(parts) + ")"


def format_target(target: RoleTarget) -> str:
    if isinstance(target, AmrPlusNode):
        return format_node(target)
    return str(target)


def format_document(doc: AmrPlusDocument) -> str:
    """Canonical one-line text; ``parse(format_document(d)) == d``."""
    text = format_node(doc.root)
    if doc.is_plain and not len(doc.constraints):
        return text
    return f"{text} {doc.constraints}"


# --- traversal --------------------------------------------------------------


def iter_nodes(node: AmrPlusNode) -> Iterator[AmrPlusNode]:
    """Depth-first, source-order traversal over bound nodes."""
    yield node
    for _, target in node.roles:
        if isinstance(target, AmrPlusNode):
            yield from iter_nodes(target)


def main_variable(target):
    """The main variable of a sub-AMR: a variable name, or the Constant itself."""
    if isinstance(target, AmrPlusNode):
        return target.variable
    if isinstance(target, VarRef):
        return target.name
    if isinstance(target, Constant):
        return target
    raise TypeError(f"not an AMR or role target: {target!r}")


def subamrs(doc: AmrPlusDocument) -> list[tuple[int, AmrPlusNode]]:
    pairs = []
    for node in iter_nodes(doc.root):
        if node.index is None:
            raise AmrPlusError(
                f"node {node.variable!r} has no context index", code="MISSING_INDEX"
            )
        pairs.append((node.index, node))
    return pairs


def node_indices(doc: AmrPlusDocument) -> set[int]:
    return {n.index for n in iter_nodes(doc.root) if n.index is not None}


def variables(doc: AmrPlusDocument) -> list[str]:
    return [n.variable for n in iter_nodes(doc.root)]


def map_nodes(node: AmrPlusNode, fn) -> AmrPlusNode:
    """Rebuild a tree bottom-up, applying ``fn`` to each node after its
    children have been rebuilt."""
    roles = tuple(
        (rel, map_nodes(t, fn) if isinstance(t, AmrPlusNode) else t)
        for rel, t in node.roles
    )
    return fn(AmrPlusNode(node.variable, node.index, node.concept, roles))
