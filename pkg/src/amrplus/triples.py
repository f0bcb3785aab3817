"""Triple export and Smatch-style scoring for AMR+.

Besides the usual instance and role triples, every node contributes a
membership triple ``<var IN index>`` and every scoping constraint one or two
structural triples::

    h:~s      ->  <h NOT s>
    h:a=>c    ->  <h IF a>, <a THEN c>
    p<a       ->  <p PRESUP a>
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Iterable

from .constraints import Cond, Eq, Neg, Presup
from .contexts import ContextStructure
from .errors import ScopeError
from .penman import AmrPlusDocument, Constant, iter_nodes, main_variable

STRUCTURAL_EDGES = ("IN", "NOT", "IF", "THEN", "PRESUP")
EXACT_LIMIT = 12


@dataclass(frozen=True, order=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True, order=True)
class Ctx:
    index: int

    def __str__(self):
        return f"c{self.index}"


@dataclass(frozen=True)
class Triple:
    source: object
    edge: str
    target: object

    def __str__(self):
        return f"{self.source} {self.edge} {self.target}"


def _term(target):
    v = main_variable(target)
    return str(v) if isinstance(v, Constant) else Var(v)


def export_triples(doc: AmrPlusDocument, structure: ContextStructure) -> list[Triple]:
    """Instance, role, membership and structural triples of a validated document.

    Node indices are read through ``structure.merged`` and structural triples
    come from the normalised constraints held by ``structure``.
    """
    out = []
    for node in iter_nodes(doc.root):
        x = Var(node.variable)
        out.append(Triple(x, "instance", node.concept))
        for rel, target in node.roles:
            out.append(Triple(x, rel, _term(target)))
        out.append(Triple(x, "IN", Ctx(structure.rep(node.index))))
    for c in structure.constraints:
        if isinstance(c, Eq):
            raise ScopeError(f"residual equality {c} in triple export", "RESIDUAL_EQ")
        if isinstance(c, Neg):
            out.append(Triple(Ctx(c.host), "NOT", Ctx(c.scope)))
        elif isinstance(c, Cond):
            out.append(Triple(Ctx(c.host), "IF", Ctx(c.ante)))
            out.append(Triple(Ctx(c.ante), "THEN", Ctx(c.cons)))
        elif isinstance(c, Presup):
            out.append(Triple(Ctx(c.p), "PRESUP", Ctx(c.anchor)))
    return list(dict.fromkeys(out))


def format_triples(triples: Iterable[Triple]) -> str:
    return "".join(f"{t}\n" for t in triples)


_TOKEN_RE = re.compile(r'"(?:[^"\\]|\\.)*"|\S+')
_CTX_RE = re.compile(r"c(\d+)\Z")


def read_triples(text: str) -> list[Triple]:
    """Parse a triple file. Sources of ``instance`` triples are variables,
    other ``cN`` tokens are context indices, anything else is a literal."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = _TOKEN_RE.findall(line)
        if not toks or toks[0].startswith("#"):
            continue
        if len(toks) != 3:
            raise ValueError(f"line {lineno}: expected 3 fields, got {len(toks)}")
        rows.append(toks)
    variables = {s for s, e, _ in rows if e == "instance"}

    def term(tok):
        if tok in variables:
            return Var(tok)
        m = _CTX_RE.match(tok)
        return Ctx(int(m.group(1))) if m else tok

    return [Triple(term(s), e, term(t)) for s, e, t in rows]


# --- scoring ----------------------------------------------------------------


@dataclass
class MatchResult:
    mapping: dict
    matched: int
    precision: float
    recall: float
    f1: float = field(init=False)

    def __post_init__(self):
        p, r = self.precision, self.recall
        self.f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0

    def __str__(self):
        return f"P={self.precision:.4f} R={self.recall:.4f} F1={self.f1:.4f}"


def _symbols(triples) -> tuple[list, list]:
    found = {x for t in triples for x in (t.source, t.target) if isinstance(x, (Var, Ctx))}
    return sorted(x for x in found if isinstance(x, Var)), sorted(
        x for x in found if isinstance(x, Ctx)
    )


class _Problem:
    """Shared bookkeeping for both matchers."""

    def __init__(self, a, b):
        self.a = list(dict.fromkeys(a))
        self.b = set(b)
        self.a_vars, self.a_ctxs = _symbols(self.a)
        self.b_vars, self.b_ctxs = _symbols(self.b)

    def candidates(self, sym):
        return self.b_vars if isinstance(sym, Var) else self.b_ctxs

    def count(self, m: dict) -> int:
        return _count(self.a, self.b, m)

    def result(self, m: dict, matched: int) -> MatchResult:
        p = matched / len(self.a) if self.a else 0.0
        r = matched / len(self.b) if self.b else 0.0
        return MatchResult(dict(m), matched, p, r)


def _count(triples, b: set, m: dict) -> int:
    n = 0
    for t in triples:
        s = m.get(t.source) if isinstance(t.source, (Var, Ctx)) else t.source
        o = m.get(t.target) if isinstance(t.target, (Var, Ctx)) else t.target
        if s is not None and o is not None and Triple(s, t.edge, o) in b:
            n += 1
    return n


def _random_mapping(problem: _Problem, rng: random.Random) -> dict:
    m = {}
    for mine, theirs in ((problem.a_vars, problem.b_vars), (problem.a_ctxs, problem.b_ctxs)):
        # shuffle both sides so that, when the sides differ in size, which
        # symbols stay unmapped is random too
        mine, pool = list(mine), list(theirs)
        rng.shuffle(mine)
        rng.shuffle(pool)
        m.update(zip(mine, pool))
    return m


def _concept_mapping(problem: _Problem) -> dict:
    """Initial mapping pairing variables with equal concepts, contexts in order."""
    concept_a = {t.source: t.target for t in problem.a if t.edge == "instance"}
    concept_b = {t.source: t.target for t in problem.b if t.edge == "instance"}
    m, used = {}, set()
    for v in problem.a_vars:
        for w in problem.b_vars:
            if w not in used and concept_a.get(v) == concept_b.get(w, object()):
                m[v] = w
                used.add(w)
                break
    free = [w for w in problem.b_vars if w not in used]
    for v in problem.a_vars:
        if v not in m and free:
            m[v] = free.pop(0)
    m.update(zip(problem.a_ctxs, problem.b_ctxs))
    return m


def _climb(problem: _Problem, m: dict) -> tuple[dict, int]:
    score = problem.count(m)
    while True:
        best_gain, best = 0, None
        inverse = {v: k for k, v in m.items()}
        for s in problem.a_vars + problem.a_ctxs:
            for t in problem.candidates(s):
                if m.get(s) == t:
                    continue
                trial = dict(m)
                other = inverse.get(t)
                if other is not None:
                    if s in m:
                        trial[other] = m[s]
                    else:
                        del trial[other]
                trial[s] = t
                gain = problem.count(trial) - score
                if gain > best_gain:
                    best_gain, best = gain, trial
        if best is None:
            return m, score
        m, score = best, score + best_gain


def smatch_score(a: Iterable[Triple], b: Iterable[Triple], restarts: int = 4, seed: int = 0) -> MatchResult:
    """Hill-climbing search for the mapping of ``a``'s symbols onto ``b``'s
    that maximises matched triples. The first restart starts from a concept-
    based mapping, the others from random ones; restart ``r`` draws from a
    generator seeded with ``(seed, r)``. Ties keep the earliest restart."""
    problem = _Problem(a, b)
    best_m, best_n = {}, -1
    for r in range(max(1, restarts)):
        if r == 0:
            start = _concept_mapping(problem)
        else:
            start = _random_mapping(problem, random.Random(f"{seed}:{r}"))
        m, n = _climb(problem, start)
        if n > best_n:
            best_m, best_n = m, n
    return problem.result(best_m, best_n)


def smatch_exact(a: Iterable[Triple], b: Iterable[Triple], limit: int = EXACT_LIMIT) -> MatchResult:
    """Optimal matching by exhaustive search over injective mappings.

    Only usable on small inputs: each side may have at most ``limit``
    variables plus indices.
    """
    problem = _Problem(a, b)
    order = problem.a_vars + problem.a_ctxs
    n_b = len(problem.b_vars) + len(problem.b_ctxs)
    if len(order) > limit or n_b > limit:
        raise ValueError(f"exact matching limited to {limit} symbols per side")

    position = {s: k for k, s in enumerate(order)}
    base = 0
    by_step = [[] for _ in order]
    for t in problem.a:
        steps = [position[x] for x in (t.source, t.target) if x in position]
        if steps:
            by_step[max(steps)].append(t)
        elif t in problem.b:
            base += 1
    remaining = [0] * (len(order) + 1)
    for k in range(len(order) - 1, -1, -1):
        remaining[k] = remaining[k + 1] + len(by_step[k])

    slack = {
        Var: max(0, len(problem.a_vars) - len(problem.b_vars)),
        Ctx: max(0, len(problem.a_ctxs) - len(problem.b_ctxs)),
    }
    best = {"n": -1, "m": {}}
    m: dict = {}
    used: set = set()

    def gain(k):
        return _count(by_step[k], problem.b, m)

    def search(k, score):
        if score + remaining[k] <= best["n"]:
            return
        if k == len(order):
            best["n"], best["m"] = score, dict(m)
            return
        s = order[k]
        for t in problem.candidates(s):
            if t in used:
                continue
            m[s] = t
            used.add(t)
            search(k + 1, score + gain(k))
            used.discard(t)
            del m[s]
        if slack[type(s)] > 0:
            slack[type(s)] -= 1
            search(k + 1, score)
            slack[type(s)] += 1

    search(0, base)
    return problem.result(best["m"], best["n"])
