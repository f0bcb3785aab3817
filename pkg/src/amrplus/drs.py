"""Translation of validated AMR+ documents into DRSs.

Each indexed node becomes a small box holding its variable, a one-place
predicate for its concept, and one two-place relation per role.  Boxes
sharing a context are merged, and the merged boxes are then nested
according to the context structure (negation, implication) with
presupposed contexts kept aside or accommodated.
"""

from __future__ import annotations

import fnmatch
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Union

from .contexts import AnteOf, ContextStructure, NegIn, PresupOf
from .errors import ClauseError
from .penman import AmrPlusDocument, AmrPlusNode, Constant, iter_nodes, main_variable

Term = Union[str, Constant]

ACCOMMODATION_MODES = ("none", "global", "local")


# --- boxes ------------------------------------------------------------------


def _term(t) -> str:
    return str(t)


@dataclass(frozen=True)
class Pred:
    name: str
    arg: Term

    def __str__(self):
        return f"{self.name}({_term(self.arg)})"


@dataclass(frozen=True)
class Rel:
    name: str
    arg1: Term
    arg2: Term

    def __str__(self):
        return f"{self.name}({_term(self.arg1)},{_term(self.arg2)})"


@dataclass(frozen=True)
class Not:
    drs: Drs

    def __str__(self):
        return f"NOT {self.drs}"


@dataclass(frozen=True)
class Imp:
    ante: Drs
    cons: Drs

    def __str__(self):
        return f"{self.ante} => {self.cons}"


Condition = Union[Pred, Rel, Not, Imp]


@dataclass(frozen=True)
class Drs:
    referents: tuple = ()
    conditions: tuple = ()

    def __str__(self):
        refs = " ".join(self.referents)
        conds = ", ".join(str(c) for c in self.conditions)
        return f"[{refs} | {conds}]" if refs else f"[ | {conds}]"

    @property
    def is_empty(self):
        return not self.referents and not self.conditions


EMPTY = Drs()


@dataclass(frozen=True)
class DrsOutput:
    main: Drs
    presuppositions: tuple = ()

    def __str__(self):
        if not self.presuppositions:
            return str(self.main)
        return " ".join(f"PRESUP {p}" for p in self.presuppositions) + f" {self.main}"


def merge(*boxes: Drs) -> Drs:
    """Union of referents and conditions, first occurrence order kept."""
    refs = dict.fromkeys(r for b in boxes for r in b.referents)
    conds = dict.fromkeys(c for b in boxes for c in b.conditions)
    return Drs(tuple(refs), tuple(conds))


def subboxes(drs: Drs):
    """Yield ``drs`` and every box nested in it, in pre-order."""
    yield drs
    for c in drs.conditions:
        if isinstance(c, Not):
            yield from subboxes(c.drs)
        elif isinstance(c, Imp):
            yield from subboxes(c.ante)
            yield from subboxes(c.cons)


# --- lexical mapping --------------------------------------------------------

_SENSE_RE = re.compile(r"^(.+)-(\d+)$")
_SYNSET_RE = re.compile(r"^.+\.[a-z]\.\d+$")


@dataclass
class LexMap:
    """Concept and role renaming applied during translation.

    ``concept_rules`` is a list of (pattern, target); ``role_rules`` a list of
    (concept pattern, relation, target). Patterns are shell-style and the first
    match wins. Unmatched concepts get the default rewrite (``w-NN`` becomes
    ``w.v.NN``, a bare ``w`` becomes ``w.n.01``, synsets pass through);
    unmatched relations pass through unchanged.
    """

    concept_rules: list = field(default_factory=list)
    role_rules: list = field(default_factory=list)
    default_rewrite: bool = True

    def concept(self, concept: str) -> str:
        for pattern, target in self.concept_rules:
            if fnmatch.fnmatchcase(concept, pattern):
                return target
        if not self.default_rewrite or _SYNSET_RE.match(concept):
            return concept
        m = _SENSE_RE.match(concept)
        if m:
            return f"{m.group(1)}.v.{m.group(2)}"
        return f"{concept}.n.01"

    def role(self, concept: str, relation: str) -> str:
        mapped = self.concept(concept)
        for pattern, rel, target in self.role_rules:
            if rel == relation and (
                fnmatch.fnmatchcase(concept, pattern) or fnmatch.fnmatchcase(mapped, pattern)
            ):
                return target
        return relation

    @classmethod
    def parse(cls, text: str) -> LexMap:
        lex = cls()
        for lineno, line in enumerate(text.splitlines(), 1):
            fields = line.split("#", 1)[0].split()
            if not fields:
                continue
            if fields[0] == "concept" and len(fields) == 3:
                lex.concept_rules.append((fields[1], fields[2]))
            elif fields[0] == "role" and len(fields) == 4:
                lex.role_rules.append(tuple(fields[1:]))
            else:
                raise ValueError(f"lexmap line {lineno}: cannot parse {line.strip()!r}")
        return lex

    @classmethod
    def load(cls, path) -> LexMap:
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    @classmethod
    def default(cls) -> LexMap:
        text = resources.files("amrplus").joinpath("data/default.lexmap").read_text("utf-8")
        return cls.parse(text)


# --- translation ------------------------------------------------------------


def node_to_drs(node: AmrPlusNode, lex: LexMap) -> Drs:
    x = node.variable
    conds = [Pred(lex.concept(node.concept), x)]
    for rel, target in node.roles:
        conds.append(Rel(lex.role(node.concept, rel), x, main_variable(target)))
    return Drs((x,), tuple(conds))


def merged_boxes(doc: AmrPlusDocument, structure: ContextStructure, lex: LexMap) -> dict[int, Drs]:
    """One box per context: node boxes merged per context, empty for inferred ones."""
    boxes = {i: EMPTY for i in structure.placement}
    for node in iter_nodes(doc.root):
        i = structure.rep(node.index)
        boxes[i] = merge(boxes[i], node_to_drs(node, lex))
    return boxes


class _Folder:
    def __init__(self, boxes, structure, local):
        self.boxes = boxes
        self.structure = structure
        self.local = local
        self.cache = {}
        self.kids = {i: [] for i in structure.placement}
        for i, p in structure.placement.items():
            if p.host is not None:
                self.kids[p.host].append(i)

    def fold(self, i: int) -> Drs:
        if i not in self.cache:
            self.cache[i] = self._fold(i)
        return self.cache[i]

    def _fold(self, i):
        placement = self.structure.placement
        box = self.boxes[i]
        extra = []
        for k in sorted(self.kids[i]):
            p = placement[k]
            if isinstance(p, NegIn):
                extra.append(Not(self.fold(k)))
            elif isinstance(p, AnteOf):
                extra.append(Imp(self.fold(k), self.fold(p.cons)))
            elif isinstance(p, PresupOf) and self.local:
                box = merge(self.fold(k), box)
        return merge(box, Drs((), tuple(extra)))


def context_drss(
    doc: AmrPlusDocument, structure: ContextStructure, lex: LexMap, accommodate: str = "none"
) -> dict[int, Drs]:
    """The fully nested box for every context index."""
    folder = _Folder(merged_boxes(doc, structure, lex), structure, accommodate == "local")
    return {i: folder.fold(i) for i in structure.placement}


def translate(
    doc: AmrPlusDocument,
    structure: ContextStructure,
    lex: LexMap | None = None,
    accommodate: str = "none",
) -> DrsOutput:
    """Translate a validated document.

    ``accommodate`` controls presupposed contexts: ``none`` lists them
    separately, ``global`` merges them into the main box, ``local`` merges
    each into its anchor context.
    """
    if accommodate not in ACCOMMODATION_MODES:
        raise ValueError(f"unknown accommodation mode {accommodate!r}")
    lex = lex if lex is not None else LexMap.default()
    taus = context_drss(doc, structure, lex, accommodate)
    main = taus[structure.root]
    if accommodate == "local":
        return DrsOutput(main)
    presups = tuple(
        taus[i] for i, p in structure.placement.items() if isinstance(p, PresupOf)
    )
    if accommodate == "global":
        return DrsOutput(merge(*presups, main))
    return DrsOutput(main, presups)


def accommodate_globally(out: DrsOutput) -> Drs:
    return merge(*out.presuppositions, out.main)


# --- box rendering ----------------------------------------------------------


def _box_lines(drs: Drs) -> list[str]:
    head = " ".join(drs.referents)
    body = []
    for c in drs.conditions:
        body.extend(_condition_lines(c))
    width = max([len(head)] + [len(l) for l in body])
    rule = "+" + "-" * (width + 2) + "+"
    lines = [rule, f"| {head.ljust(width)} |", rule]
    lines += [f"| {l.ljust(width)} |" for l in body]
    lines.append(rule)
    return lines


def _condition_lines(c) -> list[str]:
    if isinstance(c, Not):
        inner = _box_lines(c.drs)
        mid = len(inner) // 2
        return [("NOT " if k == mid else "    ") + l for k, l in enumerate(inner)]
    if isinstance(c, Imp):
        left, right = _box_lines(c.ante), _box_lines(c.cons)
        height = max(len(left), len(right))
        lw, rw = len(left[0]), len(right[0])
        left += [" " * lw] * (height - len(left))
        right += [" " * rw] * (height - len(right))
        mid = height // 2
        return [
            left[k] + (" => " if k == mid else "    ") + right[k] for k in range(height)
        ]
    return [str(c)]


def render_box(out: DrsOutput) -> str:
    lines = []
    if out.presuppositions:
        lines.append("PRESUP:")
        for p in out.presuppositions:
            lines += _box_lines(p)
        lines.append("")
    lines += _box_lines(out.main)
    return "\n".join(lines)


# --- clause format ----------------------------------------------------------

_KEYWORDS = ("REF", "NOT", "IMP", "PRS", "EMPTY")


def render_clauses(out: DrsOutput) -> str:
    """Flat clause notation, one clause per line.

    Boxes are named ``b0``, ``b1``, ... in pre-order starting from the main
    box, then the presupposed boxes. A box with no content at all is declared
    with ``<box> EMPTY`` so that references to it stay resolvable.
    """
    order: list[Drs] = []

    def name(drs):
        # pre-order naming, keyed by position rather than value
        order.append(drs)
        for c in drs.conditions:
            if isinstance(c, Not):
                name(c.drs)
            elif isinstance(c, Imp):
                name(c.ante)
                name(c.cons)

    name(out.main)
    presup_names = []
    for p in out.presuppositions:
        presup_names.append(f"b{len(order)}")
        name(p)

    names = [f"b{k}" for k in range(len(order))]
    lines = []

    def emit(pos):
        drs = order[pos]
        b = names[pos]
        start = len(lines)
        for r in drs.referents:
            lines.append(f"{b} REF {r}")
        child = pos + 1
        for c in drs.conditions:
            if isinstance(c, Pred):
                lines.append(f"{b} {c.name} {_term(c.arg)}")
            elif isinstance(c, Rel):
                lines.append(f"{b} {c.name} {_term(c.arg1)} {_term(c.arg2)}")
            elif isinstance(c, Not):
                lines.append(f"{b} NOT {names[child]}")
                child += _size(c.drs)
            else:
                ante = child
                cons = child + _size(c.ante)
                lines.append(f"{b} IMP {names[ante]} {names[cons]}")
                child = cons + _size(c.cons)
        if pos == 0:
            lines.extend(f"{b} PRS {p}" for p in presup_names)
        if len(lines) == start and pos != 0:
            lines.append(f"{b} EMPTY")

    for pos in range(len(order)):
        emit(pos)
    return "\n".join(lines) + ("\n" if lines else "")


def _size(drs: Drs) -> int:
    return sum(1 for _ in subboxes(drs))


_CLAUSE_TOKEN = re.compile(r'"(?:[^"\\]|\\.)*"|\S+')
_CONST_RE = re.compile(r'^(?:".*"|[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?|[-+])$')


def _read_term(tok: str) -> Term:
    return Constant(tok) if _CONST_RE.match(tok) else tok


def read_clauses(text: str) -> DrsOutput:
    """Rebuild a DrsOutput from clause notation (inverse of render_clauses)."""
    boxes: dict[str, list] = {}
    refs: dict[str, list] = {}
    presups: dict[str, list] = {}
    referenced: list[tuple[str, int]] = []

    for lineno, line in enumerate(text.splitlines(), 1):
        toks = _CLAUSE_TOKEN.findall(line)
        if not toks or toks[0].startswith("#"):
            continue
        if len(toks) < 2:
            raise ClauseError(f"line {lineno}: clause needs a box and an operator", "ARITY")
        b, op, args = toks[0], toks[1], toks[2:]
        boxes.setdefault(b, [])
        refs.setdefault(b, [])
        presups.setdefault(b, [])
        expected = {"REF": 1, "NOT": 1, "IMP": 2, "PRS": 1, "EMPTY": 0}.get(op)
        if expected is not None and len(args) != expected:
            raise ClauseError(f"line {lineno}: {op} takes {expected} argument(s)", "ARITY")
        if op == "REF":
            refs[b].append(args[0])
        elif op == "NOT":
            boxes[b].append(("NOT", args[0]))
            referenced.append((args[0], lineno))
        elif op == "IMP":
            boxes[b].append(("IMP", args[0], args[1]))
            referenced += [(args[0], lineno), (args[1], lineno)]
        elif op == "PRS":
            presups[b].append(args[0])
            referenced.append((args[0], lineno))
        elif op == "EMPTY":
            pass
        elif len(args) == 1:
            boxes[b].append(Pred(op, _read_term(args[0])))
        elif len(args) == 2:
            boxes[b].append(Rel(op, _read_term(args[0]), _read_term(args[1])))
        else:
            raise ClauseError(f"line {lineno}: {op} has arity {len(args)}", "ARITY")

    for name, lineno in referenced:
        if name not in boxes:
            raise ClauseError(f"line {lineno}: reference to undefined box {name}", "DANGLING")
    if not boxes:
        return DrsOutput(EMPTY)
    inner = {name for name, _ in referenced}
    roots = [b for b in boxes if b not in inner]
    if len(roots) != 1:
        raise ClauseError(f"expected exactly one top box, found {roots}", "ROOT")

    def build(b, active=()):
        if b in active:
            raise ClauseError(f"box {b} contains itself", "CYCLE")
        active = active + (b,)
        conds = []
        for c in boxes[b]:
            if isinstance(c, tuple) and c[0] == "NOT":
                conds.append(Not(build(c[1], active)))
            elif isinstance(c, tuple):
                conds.append(Imp(build(c[1], active), build(c[2], active)))
            else:
                conds.append(c)
        return Drs(tuple(dict.fromkeys(refs[b])), tuple(conds))

    root = roots[0]
    return DrsOutput(build(root), tuple(build(p) for p in presups[root]))
