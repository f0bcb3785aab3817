"""JSON-ready dictionaries mirroring the domain types (see docs/json.md)."""

from __future__ import annotations

from . import drs as D
from . import logic as L
from .constraints import Cond, Eq, Neg, Presup, ShCond, ShNeg
from .contexts import AnteOf, ConsOf, ContextStructure, NegIn, PresupOf, Root
from .penman import AmrPlusDocument, AmrPlusNode, Constant, VarRef
from .triples import Ctx, MatchResult, Triple, Var


def term(t):
    if isinstance(t, Constant):
        return {"const": t.value}
    if isinstance(t, Var):
        return {"var": t.name}
    if isinstance(t, Ctx):
        return {"index": t.index}
    return t


def node(n: AmrPlusNode) -> dict:
    roles = []
    for rel, t in n.roles:
        if isinstance(t, AmrPlusNode):
            roles.append({"rel": rel, "node": node(t)})
        elif isinstance(t, VarRef):
            roles.append({"rel": rel, "ref": t.name})
        else:
            roles.append({"rel": rel, "const": t.value})
    return {"var": n.variable, "index": n.index, "concept": n.concept, "roles": roles}


_CONSTRAINT_KINDS = {Eq: "eq", Presup: "presup", Neg: "neg", Cond: "cond", ShNeg: "shneg", ShCond: "shcond"}


def constraint(c) -> dict:
    out = {"type": _CONSTRAINT_KINDS[type(c)]}
    out.update(vars(c))
    return out


def document(doc: AmrPlusDocument) -> dict:
    return {
        "id": doc.id,
        "root": node(doc.root),
        "constraints": [constraint(c) for c in doc.constraints],
    }


_PLACEMENT_KINDS = {Root: "root", NegIn: "neg_in", AnteOf: "ante_of", ConsOf: "cons_of", PresupOf: "presup_of"}


def structure(s: ContextStructure) -> dict:
    return {
        "root": s.root,
        "placement": {
            str(i): {"type": _PLACEMENT_KINDS[type(p)], **vars(p)} for i, p in s.placement.items()
        },
        "merged": {str(k): v for k, v in s.merged.items()},
        "constraints": [constraint(c) for c in s.constraints],
        "discharged": [constraint(c) for c in s.discharged],
    }


def drs(box: D.Drs) -> dict:
    conds = []
    for c in box.conditions:
        if isinstance(c, D.Pred):
            conds.append({"type": "pred", "name": c.name, "args": [term(c.arg)]})
        elif isinstance(c, D.Rel):
            conds.append({"type": "rel", "name": c.name, "args": [term(c.arg1), term(c.arg2)]})
        elif isinstance(c, D.Not):
            conds.append({"type": "not", "drs": drs(c.drs)})
        else:
            conds.append({"type": "imp", "ante": drs(c.ante), "cons": drs(c.cons)})
    return {"referents": list(box.referents), "conditions": conds}


def drs_output(out: D.DrsOutput) -> dict:
    return {"presuppositions": [drs(p) for p in out.presuppositions], "main": drs(out.main)}


def triple(t: Triple) -> dict:
    return {"source": term(t.source), "edge": t.edge, "target": term(t.target)}


def match_result(r: MatchResult) -> dict:
    return {
        "mapping": {str(k): str(v) for k, v in r.mapping.items()},
        "matched": r.matched,
        "precision": r.precision,
        "recall": r.recall,
        "f1": r.f1,
    }


def model(m: L.Model) -> dict:
    return {
        "domain": list(m.domain),
        "unary": {p: sorted(ext) for p, ext in sorted(m.unary.items())},
        "binary": {p: sorted(list(pair) for pair in ext) for p, ext in sorted(m.binary.items())},
        "constants": dict(sorted(m.constants.items())),
    }


def verdict(v) -> dict:
    if isinstance(v, L.Refuted):
        return {"verdict": "refuted", "countermodel": model(v.countermodel)}
    return {"verdict": "no_countermodel", "up_to": v.size}
