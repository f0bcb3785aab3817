"""Mechanical conversion of plain AMR into AMR+.

``auto_index`` puts every node into context 1.  ``rewrite_polarity`` and
``rewrite_universal`` then turn ``:polarity -`` and ``:mod (v / every)``
into scoping constraints.  Both produce only the default reading, so every
rewritten node is reported in a review notice for a human annotator.
"""

from __future__ import annotations

from dataclasses import dataclass

from .constraints import Cond, ConstraintSet, Eq, Neg, Presup, ShCond, ShNeg
from .contexts import eliminate_equalities, expand_shorthand, fresh_indices
from .errors import AmrPlusError
from .penman import (
    AmrPlusDocument,
    AmrPlusNode,
    Constant,
    iter_nodes,
    map_nodes,
    node_indices,
)

UNIVERSAL_MODIFIERS = ("every",)
UNIVERSAL_PRONOUNS = {"everyone": "person"}


@dataclass(frozen=True)
class Notice:
    variable: str
    reason: str

    def format(self, doc_id) -> str:
        return f"REVIEW {doc_id} {self.variable} {self.reason}"


def auto_index(doc: AmrPlusDocument) -> AmrPlusDocument:
    if not doc.is_plain:
        raise AmrPlusError("document is already indexed", "ALREADY_INDEXED")

    def index(node):
        return AmrPlusNode(node.variable, 1, node.concept, node.roles)

    return AmrPlusDocument(map_nodes(doc.root, index), ConstraintSet(), doc.id)


class _Editor:
    """Mutable view of a document: per-variable indices, removed roles and
    a working constraint list."""

    def __init__(self, doc: AmrPlusDocument):
        if any(n.index is None for n in iter_nodes(doc.root)):
            raise AmrPlusError("document must be indexed first", "MISSING_INDEX")
        cs = doc.constraints
        renaming = {}
        if any(isinstance(c, (Eq, ShNeg, ShCond)) for c in cs):
            cs, renaming = eliminate_equalities(expand_shorthand(cs, node_indices(doc)))
        self.doc = doc
        self.index = {n.variable: renaming.get(n.index, n.index) for n in iter_nodes(doc.root)}
        self.parent: dict[str, str | None] = {doc.root.variable: None}
        self.nodes = {}
        for n in iter_nodes(doc.root):
            self.nodes[n.variable] = n
            for _, t in n.roles:
                if isinstance(t, AmrPlusNode):
                    self.parent[t.variable] = n.variable
        self.constraints = list(cs)
        self.fresh = fresh_indices(set(self.index.values()) | cs.indices())
        self.dropped: set[tuple[str, int]] = set()
        self.concepts: dict[str, str] = {}

    def is_top(self, var) -> bool:
        """True if the node heads its context (no parent in the same context)."""
        p = self.parent[var]
        return p is None or self.index[p] != self.index[var]

    def reindex_region(self, var, new):
        old = self.index[var]
        stack = [self.nodes[var]]
        while stack:
            n = stack.pop()
            if self.index[n.variable] != old:
                continue
            self.index[n.variable] = new
            stack += [t for _, t in n.roles if isinstance(t, AmrPlusNode)]

    def reroute(self, old, new):
        """Make whatever constraint situates context ``old`` situate ``new``."""
        out = []
        for c in self.constraints:
            if isinstance(c, Neg) and c.scope == old:
                c = Neg(c.host, new)
            elif isinstance(c, Cond) and c.ante == old:
                c = Cond(c.host, new, c.cons)
            elif isinstance(c, Cond) and c.cons == old:
                c = Cond(c.host, c.ante, new)
            elif isinstance(c, Presup) and c.p == old:
                c = Presup(new, c.anchor)
            out.append(c)
        self.constraints = out

    def result(self) -> AmrPlusDocument:
        def rebuild(node):
            roles = tuple(
                r for k, r in enumerate(node.roles) if (node.variable, k) not in self.dropped
            )
            concept = self.concepts.get(node.variable, node.concept)
            return AmrPlusNode(node.variable, self.index[node.variable], concept, roles)

        cs = ConstraintSet.of(self.constraints)
        return AmrPlusDocument(map_nodes(self.doc.root, rebuild), cs, self.doc.id)


def rewrite_polarity(doc: AmrPlusDocument) -> tuple[AmrPlusDocument, list[Notice]]:
    """Replace ``:polarity -`` roles by negated contexts.

    A node heading its context gets a fresh host wrapped around that context
    (``h:~i``); a node embedded in its parent's context has its region moved
    to a fresh context negated inside the parent's (``i:~n``).
    """
    ed = _Editor(doc)
    notices = []
    for node in iter_nodes(doc.root):
        negate = False
        for k, (rel, target) in enumerate(node.roles):
            if rel != "polarity":
                continue
            if not isinstance(target, Constant) or target.value not in ("-", "+"):
                raise AmrPlusError(
                    f"unexpected polarity value {target} on {node.variable}", "BAD_POLARITY"
                )
            ed.dropped.add((node.variable, k))
            negate = negate or target.value == "-"
        if not negate:
            continue
        i = ed.index[node.variable]
        if ed.is_top(node.variable):
            h = next(ed.fresh)
            ed.reroute(i, h)
            ed.constraints.append(Neg(h, i))
        else:
            n = next(ed.fresh)
            ed.reindex_region(node.variable, n)
            ed.constraints.append(Neg(i, n))
        notices.append(Notice(node.variable, "negation-scope"))
    return ed.result(), notices


def _is_universal(node: AmrPlusNode):
    """Return the positions of ``:mod every`` roles, or None if not universal."""
    mods = [
        k for k, (rel, t) in enumerate(node.roles)
        if rel == "mod" and isinstance(t, AmrPlusNode) and t.concept in UNIVERSAL_MODIFIERS
    ]
    if mods or node.concept in UNIVERSAL_PRONOUNS:
        return mods
    return None


def rewrite_universal(doc: AmrPlusDocument) -> tuple[AmrPlusDocument, list[Notice]]:
    """Turn universally quantified nodes into conditional contexts.

    The quantified node's region moves to a fresh antecedent context ``a``
    and a fresh host ``h`` gets ``h:a=>c``.  Later universals wrap around the
    earlier ones, so ``every dog scared every cat`` yields ``{4:2=>1,5:3=>4}``.
    """
    ed = _Editor(doc)
    universals = []
    for node in iter_nodes(doc.root):
        mods = _is_universal(node)
        if mods is None:
            continue
        ed.dropped.update((node.variable, k) for k in mods)
        if node.concept in UNIVERSAL_PRONOUNS:
            ed.concepts[node.variable] = UNIVERSAL_PRONOUNS[node.concept]
        universals.append(node.variable)

    antecedents = [next(ed.fresh) for _ in universals]
    wrapped: dict[int, int] = {}  # consequent -> host, for conditionals added here
    notices = []
    for var, a in zip(universals, antecedents):
        r = ed.index[var]
        c = r
        while c in wrapped:
            c = wrapped[c]
        h = next(ed.fresh)
        ed.reroute(c, h)
        ed.constraints.append(Cond(h, a, c))
        wrapped[c] = h
        ed.reindex_region(var, a)
        notices.append(Notice(var, "universal-scope"))
    return ed.result(), notices


def upgrade(doc: AmrPlusDocument) -> tuple[AmrPlusDocument, list[Notice]]:
    """Index a plain AMR (if needed) and apply both rewrites."""
    if doc.is_plain:
        doc = auto_index(doc)
    doc, neg = rewrite_polarity(doc)
    doc, univ = rewrite_universal(doc)
    return doc, neg + univ
