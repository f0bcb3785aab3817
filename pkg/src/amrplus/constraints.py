"""Scoping constraints over context indices.

Textual forms (ASCII)::

    a=b        Eq        contexts a and b are the same context
    p<a        Presup    p is presupposed with respect to a
    h:~s       Neg       h contains the negation of s
    h:a=>c     Cond      h contains the implication a => c
    ~s         ShNeg     shorthand, host inferred
    a=>c       ShCond    shorthand, host inferred
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping


@dataclass(frozen=True)
class Eq:
    a: int
    b: int

    def __str__(self):
        return f"{self.a}={self.b}"

    def indices(self):
        return (self.a, self.b)

    def rename(self, m: Mapping[int, int]) -> Eq:
        return Eq(m.get(self.a, self.a), m.get(self.b, self.b))


@dataclass(frozen=True)
class Presup:
    p: int
    anchor: int

    def __str__(self):
        return f"{self.p}<{self.anchor}"

    def indices(self):
        return (self.p, self.anchor)

    def rename(self, m):
        return Presup(m.get(self.p, self.p), m.get(self.anchor, self.anchor))


@dataclass(frozen=True)
class Neg:
    host: int
    scope: int

    def __str__(self):
        return f"{self.host}:~{self.scope}"

    def indices(self):
        return (self.host, self.scope)

    def rename(self, m):
        return Neg(m.get(self.host, self.host), m.get(self.scope, self.scope))


@dataclass(frozen=True)
class Cond:
    host: int
    ante: int
    cons: int

    def __str__(self):
        return f"{self.host}:{self.ante}=>{self.cons}"

    def indices(self):
        return (self.host, self.ante, self.cons)

    def rename(self, m):
        return Cond(
            m.get(self.host, self.host),
            m.get(self.ante, self.ante),
            m.get(self.cons, self.cons),
        )


@dataclass(frozen=True)
class ShNeg:
    scope: int

    def __str__(self):
        return f"~{self.scope}"

    def indices(self):
        return (self.scope,)

    def rename(self, m):
        return ShNeg(m.get(self.scope, self.scope))


@dataclass(frozen=True)
class ShCond:
    ante: int
    cons: int

    def __str__(self):
        return f"{self.ante}=>{self.cons}"

    def indices(self):
        return (self.ante, self.cons)

    def rename(self, m):
        return ShCond(m.get(self.ante, self.ante), m.get(self.cons, self.cons))


Constraint = Eq | Presup | Neg | Cond | ShNeg | ShCond


@dataclass(frozen=True)
class ConstraintSet:
    """An immutable, duplicate-free set of constraints.

    Items are kept in canonical (lexicographic, by printed form) order, so two
    sets with the same members compare equal and print identically.
    """

    items: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(sorted(set(self.items), key=str)))

    @classmethod
    def of(cls, constraints: Iterable[Constraint] = ()) -> ConstraintSet:
        return cls(tuple(constraints))

    def __iter__(self) -> Iterator[Constraint]:
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    def __contains__(self, c):
        return c in self.items

    def __str__(self):
        return "{" + ",".join(str(c) for c in self.items) + "}"

    def indices(self) -> set[int]:
        return {i for c in self.items for i in c.indices()}

    def rename(self, mapping: Mapping[int, int]) -> ConstraintSet:
        return ConstraintSet.of(c.rename(mapping) for c in self.items)
