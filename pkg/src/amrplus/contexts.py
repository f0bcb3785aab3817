"""Normalisation and validation of scoping constraints.

The pipeline is ``expand_shorthand`` -> ``eliminate_equalities`` ->
``build_structure``; ``validate`` runs all three on a document and checks
that every node context ends up somewhere in the resulting tree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .constraints import Cond, ConstraintSet, Eq, Neg, Presup, ShCond, ShNeg
from .errors import ScopeError
from .penman import AmrPlusDocument, map_nodes, node_indices, subamrs

__all__ = [
    "Root",
    "NegIn",
    "AnteOf",
    "ConsOf",
    "PresupOf",
    "ContextStructure",
    "expand_shorthand",
    "eliminate_equalities",
    "conditional_as_negation",
    "build_structure",
    "validate",
    "normalize",
    "fresh_indices",
]


@dataclass(frozen=True)
class Root:
    host = None


@dataclass(frozen=True)
class NegIn:
    host: int


@dataclass(frozen=True)
class AnteOf:
    host: int
    cons: int


@dataclass(frozen=True)
class ConsOf:
    host: int
    ante: int


@dataclass(frozen=True)
class PresupOf:
    anchor: int

    @property
    def host(self):
        return self.anchor


Placement = Root | NegIn | AnteOf | ConsOf | PresupOf


@dataclass(frozen=True)
class ContextStructure:
    root: int
    placement: Mapping[int, Placement]
    merged: Mapping[int, int] = field(default_factory=dict)
    constraints: ConstraintSet = ConstraintSet()
    discharged: tuple = ()

    @property
    def indices(self):
        return sorted(self.placement)

    def rep(self, index: int) -> int:
        """Representative context of an index after equality elimination."""
        return self.merged.get(index, index)

    def host(self, index: int):
        return self.placement[index].host

    def children(self, index: int) -> list[int]:
        return sorted(i for i, p in self.placement.items() if p.host == index)

    def path_to_root(self, index: int) -> list[int]:
        path = [index]
        while (h := self.placement[path[-1]].host) is not None:
            path.append(h)
        return path


def fresh_indices(used: Iterable[int]):
    """Yield positive integers not in ``used``, smallest first."""
    used = set(used)
    i = 1
    while True:
        if i not in used:
            yield i
        i += 1


def expand_shorthand(cs: ConstraintSet, used: Iterable[int]) -> ConstraintSet:
    fresh = fresh_indices(set(used) | cs.indices())
    out = []
    for c in cs:
        if isinstance(c, ShNeg):
            out.append(Neg(next(fresh), c.scope))
        elif isinstance(c, ShCond):
            out.append(Cond(next(fresh), c.ante, c.cons))
        else:
            out.append(c)
    return ConstraintSet.of(out)


def eliminate_equalities(cs: ConstraintSet) -> tuple[ConstraintSet, dict[int, int]]:
    """Collapse equal contexts onto the smallest index of each class.

    Returns the rewritten constraints and the mapping of every non-
    representative index to its representative.
    """
    parent: dict[int, int] = {}

    def find(i):
        root = i
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(i, i) != root:
            parent[i], i = root, parent[i]
        return root

    for c in cs:
        if isinstance(c, Eq):
            ra, rb = find(c.a), find(c.b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    mapping = {i: find(i) for i in list(parent) if find(i) != i}
    out = []
    for c in cs:
        if isinstance(c, Eq):
            continue
        c = c.rename(mapping)
        if isinstance(c, Presup) and c.p == c.anchor:
            continue
        if len(set(c.indices())) != len(c.indices()):
            raise ScopeError(f"constraint {c} scopes a context over itself", "CYCLIC_SCOPE")
        out.append(c)
    return ConstraintSet.of(out), mapping


def conditional_as_negation(cs: ConstraintSet) -> ConstraintSet:
    """Rewrite every ``i:j=>k`` as ``i:~j, j:~k``."""
    out = []
    for c in cs:
        if isinstance(c, Cond):
            out += [Neg(c.host, c.ante), Neg(c.ante, c.cons)]
        else:
            out.append(c)
    return ConstraintSet.of(out)


def build_structure(
    cs: ConstraintSet, used: Iterable[int], merged: Mapping[int, int] | None = None
) -> ContextStructure:
    placement: dict[int, Placement] = {}

    def place(index, where, c):
        if index in placement:
            raise ScopeError(f"context {index} placed twice (by {c})", "DOUBLE_PLACEMENT")
        placement[index] = where

    for c in cs:
        if isinstance(c, Eq):
            raise ScopeError(f"residual equality {c}", "RESIDUAL_EQ")
        if isinstance(c, (ShNeg, ShCond)):
            raise ValueError(f"shorthand constraint {c} must be expanded first")
        if isinstance(c, Neg):
            place(c.scope, NegIn(c.host), c)
        elif isinstance(c, Cond):
            place(c.ante, AnteOf(c.host, c.cons), c)
            place(c.cons, ConsOf(c.host, c.ante), c)

    discharged = []
    structural = set(placement)
    for c in cs:
        if isinstance(c, Presup):
            if c.p in structural:
                discharged.append(c)
            else:
                place(c.p, PresupOf(c.anchor), c)

    indices = set(used) | cs.indices()
    for start in sorted(placement):
        seen = {start}
        i = placement[start].host
        while i is not None and i in placement:
            if i in seen:
                raise ScopeError(f"context {start} (transitively) scopes over itself", "CYCLIC_SCOPE")
            seen.add(i)
            i = placement[i].host

    roots = sorted(indices - set(placement))
    if not roots:
        raise ScopeError("no root context", "NO_ROOT")
    if len(roots) > 1:
        raise ScopeError(f"several root contexts: {roots}", "MULTI_ROOT")
    placement[roots[0]] = Root()
    return ContextStructure(
        roots[0], dict(sorted(placement.items())), dict(merged or {}), cs, tuple(discharged)
    )


def validate(doc: AmrPlusDocument) -> ContextStructure:
    """Check a document's context structure and return it.

    Raises ScopeError (or AmrPlusError with code MISSING_INDEX for unindexed
    nodes) when the constraints do not describe a single rooted tree of
    contexts covering every node.
    """
    subamrs(doc)
    used = node_indices(doc)
    cs = expand_shorthand(doc.constraints, used)
    cs, mapping = eliminate_equalities(cs)
    contexts = {mapping.get(i, i) for i in used}
    if not len(cs):
        return build_structure(cs, contexts, mapping)
    structure = build_structure(cs, cs.indices(), mapping)
    missing = sorted(contexts - set(structure.placement))
    if missing:
        raise ScopeError(
            f"node context(s) {missing} not situated by any constraint", "UNPLACED"
        )
    return structure


def normalize(doc: AmrPlusDocument) -> tuple[AmrPlusDocument, ContextStructure]:
    """Validate, then return the document with shorthand expanded, equalities
    eliminated and node indices rewritten to their representatives."""
    structure = validate(doc)

    def remap(node):
        return type(node)(node.variable, structure.rep(node.index), node.concept, node.roles)

    root = map_nodes(doc.root, remap)
    return AmrPlusDocument(root, structure.constraints, doc.id), structure
