"""First-order semantics for translated AMR+.

DRSs are mapped to first-order formulas in the standard way, formulas are
evaluated in finite models, and entailment is checked by searching for a
countermodel over every domain size up to a bound.  The search is exhaustive
for each size, so a refutation is definitive while "no countermodel up to n"
is exactly that and nothing more.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Union

from . import drs as D
from .drs import read_clauses  # noqa: F401  (clause reader is part of this module's surface)
from .errors import LogicError
from .penman import Constant

Term = Union[str, Constant]


# --- formulas ---------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple

    def __str__(self):
        return f"{self.pred}({','.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class And:
    items: tuple

    def __str__(self):
        return "(" + " & ".join(str(i) for i in self.items) + ")"


@dataclass(frozen=True)
class Exists:
    vars: tuple
    body: object

    def __str__(self):
        return f"exists {' '.join(self.vars)}.{self.body}"


@dataclass(frozen=True)
class Forall:
    vars: tuple
    body: object

    def __str__(self):
        return f"all {' '.join(self.vars)}.{self.body}"


@dataclass(frozen=True)
class Not:
    body: object

    def __str__(self):
        return f"-{self.body}"


@dataclass(frozen=True)
class Implies:
    ante: object
    cons: object

    def __str__(self):
        return f"({self.ante} -> {self.cons})"


@dataclass(frozen=True)
class Truth:
    value: bool

    def __str__(self):
        return "T" if self.value else "F"


Formula = Union[Atom, And, Exists, Forall, Not, Implies, Truth]


def conj(items) -> Formula:
    items = tuple(items)
    if not items:
        return Truth(True)
    return items[0] if len(items) == 1 else And(items)


def exists(vars, body) -> Formula:
    return Exists(tuple(vars), body) if vars else body


def forall(vars, body) -> Formula:
    return Forall(tuple(vars), body) if vars else body


def free_variables(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        return {a for a in f.args if isinstance(a, str)}
    if isinstance(f, And):
        return set().union(*(free_variables(i) for i in f.items))
    if isinstance(f, (Exists, Forall)):
        return free_variables(f.body) - set(f.vars)
    if isinstance(f, Not):
        return free_variables(f.body)
    if isinstance(f, Implies):
        return free_variables(f.ante) | free_variables(f.cons)
    return set()


# --- DRS to FOL -------------------------------------------------------------


def _box(drs: D.Drs) -> Formula:
    return exists(drs.referents, conj(_condition(c) for c in drs.conditions))


def _condition(c) -> Formula:
    if isinstance(c, D.Pred):
        return Atom(c.name, (c.arg,))
    if isinstance(c, D.Rel):
        return Atom(c.name, (c.arg1, c.arg2))
    if isinstance(c, D.Not):
        return Not(_box(c.drs))
    if isinstance(c, D.Imp):
        body = conj(_condition(d) for d in c.ante.conditions)
        return forall(c.ante.referents, Implies(body, _box(c.cons)))
    raise TypeError(f"unknown DRS condition {c!r}")


def drs_to_fol(out: D.DrsOutput, accommodation: str = "global") -> Formula:
    """Translate a DRS (with its presuppositions) into a closed formula.

    ``global`` merges presupposed boxes into the main box first; ``none``
    conjoins them as separate formulas. Local accommodation happens during
    translation (``drs.translate(..., accommodate="local")``), after which
    there are no presuppositions left to handle here.
    """
    if accommodation == "global":
        f = _box(D.accommodate_globally(out))
    elif accommodation in ("none", "local"):
        f = conj([_box(p) for p in out.presuppositions] + [_box(out.main)])
    else:
        raise ValueError(f"unknown accommodation mode {accommodation!r}")
    free = free_variables(f)
    if free:
        raise LogicError(f"free variable(s) {sorted(free)} after accommodation", "FREE_VARIABLE")
    return f


# --- models and evaluation --------------------------------------------------


@dataclass(frozen=True)
class Model:
    domain: tuple
    unary: dict = field(default_factory=dict)
    binary: dict = field(default_factory=dict)
    constants: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.domain:
            raise ValueError("model domain must be non-empty")
        dom = set(self.domain)
        for ext in self.unary.values():
            if not set(ext) <= dom:
                raise ValueError("unary extension outside the domain")
        for ext in self.binary.values():
            if not {x for pair in ext for x in pair} <= dom:
                raise ValueError("binary extension outside the domain")
        if not set(self.constants.values()) <= dom:
            raise ValueError("constant denotation outside the domain")

    def dump(self) -> str:
        lines = ["domain " + " ".join(map(str, self.domain))]
        for c, d in sorted(self.constants.items()):
            lines.append(f"const {c} {d}")
        for p in sorted(self.unary):
            lines.append(f"{p} " + " ".join(str(x) for x in sorted(self.unary[p])))
        for p in sorted(self.binary):
            lines.append(f"{p} " + " ".join(f"({x},{y})" for x, y in sorted(self.binary[p])))
        return "\n".join(lines)


def _denote(t, m: Model, g: dict):
    if isinstance(t, Constant):
        if t.value not in m.constants:
            raise LogicError(f"constant {t} not interpreted by the model", "UNINTERPRETED")
        return m.constants[t.value]
    if t not in g:
        raise LogicError(f"variable {t} is not assigned", "FREE_VARIABLE")
    return g[t]


def evaluate(f: Formula, m: Model, assignment: dict | None = None) -> bool:
    """Tarskian truth of ``f`` in ``m``. Predicates the model does not
    mention have empty extensions."""
    g = assignment or {}
    if isinstance(f, Atom):
        args = tuple(_denote(a, m, g) for a in f.args)
        if len(args) == 1:
            return args[0] in m.unary.get(f.pred, ())
        if len(args) == 2:
            return args in m.binary.get(f.pred, ())
        raise LogicError(f"predicate {f.pred} has arity {len(args)}", "ARITY")
    if isinstance(f, And):
        return all(evaluate(i, m, g) for i in f.items)
    if isinstance(f, Not):
        return not evaluate(f.body, m, g)
    if isinstance(f, Implies):
        return not evaluate(f.ante, m, g) or evaluate(f.cons, m, g)
    if isinstance(f, Exists):
        return any(
            evaluate(f.body, m, {**g, **dict(zip(f.vars, vals))})
            for vals in product(m.domain, repeat=len(f.vars))
        )
    if isinstance(f, Forall):
        return all(
            evaluate(f.body, m, {**g, **dict(zip(f.vars, vals))})
            for vals in product(m.domain, repeat=len(f.vars))
        )
    if isinstance(f, Truth):
        return f.value
    raise TypeError(f"not a formula: {f!r}")


# --- entailment -------------------------------------------------------------


@dataclass(frozen=True)
class Refuted:
    countermodel: Model

    def __str__(self):
        return "REFUTED\n" + self.countermodel.dump()


@dataclass(frozen=True)
class NoCountermodelUpTo:
    size: int

    def __str__(self):
        return f"ENTAILED-UP-TO {self.size}"


def vocabulary(*formulas) -> tuple[dict, list]:
    """Predicates with their arities, and constants, in first-occurrence order."""
    preds: dict[str, int] = {}
    consts: dict[str, None] = {}

    def walk(f):
        if isinstance(f, Atom):
            if preds.setdefault(f.pred, len(f.args)) != len(f.args):
                raise LogicError(f"predicate {f.pred} used with two arities", "ARITY")
            if len(f.args) > 2:
                raise LogicError(f"predicate {f.pred} has arity {len(f.args)}", "ARITY")
            for a in f.args:
                if isinstance(a, Constant):
                    consts[a.value] = None
        elif isinstance(f, And):
            for i in f.items:
                walk(i)
        elif isinstance(f, (Exists, Forall, Not)):
            walk(f.body)
        elif isinstance(f, Implies):
            walk(f.ante)
            walk(f.cons)

    for f in formulas:
        walk(f)
    return preds, list(consts)


def _ground(f, n, g, consts, atoms):
    """Ground ``f`` over elements 0..n-1 into nested tuples:
    ('atom', id) / ('not', x) / ('and', xs) / ('or', xs) / ('const', bool)."""
    if isinstance(f, Atom):
        args = tuple(consts[a.value] if isinstance(a, Constant) else g[a] for a in f.args)
        key = (f.pred, args)
        if key not in atoms:
            atoms[key] = len(atoms)
        return ("atom", atoms[key])
    if isinstance(f, Truth):
        return ("const", f.value)
    if isinstance(f, Not):
        return _negate(_ground(f.body, n, g, consts, atoms))
    if isinstance(f, Implies):
        return _junction(
            "or", [_negate(_ground(f.ante, n, g, consts, atoms)), _ground(f.cons, n, g, consts, atoms)]
        )
    if isinstance(f, And):
        return _junction("and", [_ground(i, n, g, consts, atoms) for i in f.items])
    kind = "or" if isinstance(f, Exists) else "and"
    parts = [
        _ground(f.body, n, {**g, **dict(zip(f.vars, vals))}, consts, atoms)
        for vals in product(range(n), repeat=len(f.vars))
    ]
    return _junction(kind, parts)


def _negate(x):
    if x[0] == "const":
        return ("const", not x[1])
    if x[0] == "not":
        return x[1]
    return ("not", x)


def _junction(kind, parts):
    absorbing = kind == "or"  # True absorbs a disjunction, False a conjunction
    kept = []
    for p in parts:
        if p[0] == "const":
            if p[1] == absorbing:
                return p
            continue
        if p[0] == kind:
            kept.extend(p[1])
        else:
            kept.append(p)
    if not kept:
        return ("const", not absorbing)
    return kept[0] if len(kept) == 1 else (kind, tuple(kept))


def _eval3(x, vals):
    """Kleene evaluation under a partial assignment.

    Returns (value, atom) where value is True/False/None and, when undecided,
    atom is an unassigned atom from the leftmost undecided branch.
    """
    tag = x[0]
    if tag == "atom":
        v = vals[x[1]]
        return v, (x[1] if v is None else None)
    if tag == "not":
        v, w = _eval3(x[1], vals)
        return (None if v is None else not v), w
    if tag == "const":
        return x[1], None
    decisive = tag == "or"
    witness = None
    for child in x[1]:
        v, w = _eval3(child, vals)
        if v is decisive:
            return decisive, None
        if v is None and witness is None:
            witness = w
    if witness is None:
        return not decisive, None
    return None, witness


def _satisfy(formula, n_atoms):
    vals = [None] * n_atoms

    def search():
        v, atom = _eval3(formula, vals)
        if v is True:
            return True
        if v is False:
            return False
        for choice in (False, True):
            vals[atom] = choice
            if search():
                return True
        vals[atom] = None
        return False

    return [bool(v) for v in vals] if search() else None


def _constant_assignments(k, n):
    """Constant-to-element maps up to relabelling of the domain: each constant
    either reuses an element already named or takes the next fresh one."""

    def extend(prefix, used):
        if len(prefix) == k:
            yield tuple(prefix)
            return
        for e in range(min(used + 1, n)):
            yield from extend(prefix + [e], max(used, e + 1))

    yield from extend([], 0)


def find_model(formula: Formula, size: int) -> Model | None:
    """A model of ``formula`` with exactly ``size`` elements, or None."""
    preds, consts = vocabulary(formula)
    for assignment in _constant_assignments(len(consts), size):
        cmap = dict(zip(consts, assignment))
        atoms: dict = {}
        grounded = _ground(formula, size, {}, cmap, atoms)
        values = _satisfy(grounded, len(atoms))
        if values is None:
            continue
        names = tuple(f"d{i + 1}" for i in range(size))
        unary = {p: set() for p, a in preds.items() if a == 1}
        binary = {p: set() for p, a in preds.items() if a == 2}
        for (pred, args), idx in atoms.items():
            if values[idx]:
                named = tuple(names[i] for i in args)
                if len(named) == 1:
                    unary[pred].add(named[0])
                else:
                    binary[pred].add(named)
        return Model(
            names,
            {p: frozenset(s) for p, s in unary.items()},
            {p: frozenset(s) for p, s in binary.items()},
            {c: names[e] for c, e in cmap.items()},
        )
    return None


def interpretation_bits(premise, conclusion, size) -> int:
    preds, _ = vocabulary(premise, conclusion)
    return sum(size ** arity for arity in preds.values())


def check_entailment(
    premise: Formula, conclusion: Formula, max_domain: int = 3, max_bits: int = 40
) -> Refuted | NoCountermodelUpTo:
    """Look for a model of ``premise`` that falsifies ``conclusion`` on every
    domain size from 1 to ``max_domain``; the first one found is returned."""
    if max_domain < 1:
        raise ValueError("max_domain must be at least 1")
    bits = interpretation_bits(premise, conclusion, max_domain)
    if bits > max_bits:
        raise LogicError(
            f"vocabulary needs {bits} interpretation bits at size {max_domain} "
            f"(limit {max_bits})",
            "VOCABULARY_TOO_LARGE",
        )
    target = conj([premise, Not(conclusion)])
    for size in range(1, max_domain + 1):
        model = find_model(target, size)
        if model is not None:
            return Refuted(model)
    return NoCountermodelUpTo(max_domain)
