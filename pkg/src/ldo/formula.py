"""Symbolic CNF formulas and plain truth-table evaluation.

Assignment numbering: assignment ``j`` gives variable ``a_k`` the value of
bit ``k - 1`` of ``j`` (bit 0 least significant). For n = 3, assignment 6
(binary 110) makes a3 and a2 true and a1 false.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


@dataclass(frozen=True)
class Literal:
    var: int
    negated: bool = False

    def __post_init__(self):
        if not isinstance(self.var, int) or self.var < 1:
            raise ValueError(f"variable index must be a positive integer, got {self.var!r}")

    def __invert__(self) -> "Literal":
        return Literal(self.var, not self.negated)

    def __str__(self):
        return f"~a{self.var}" if self.negated else f"a{self.var}"

    @classmethod
    def from_int(cls, value: int) -> "Literal":
        """DIMACS-style signed integer to literal."""
        if value == 0:
            raise ValueError("0 is not a literal")
        return cls(abs(value), value < 0)

    def to_int(self) -> int:
        return -self.var if self.negated else self.var


@dataclass(frozen=True)
class Clause:
    # order is kept: it fixes the disk push order and therefore the cost trace
    literals: tuple[Literal, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "literals", tuple(self.literals))

    def __len__(self):
        return len(self.literals)

    def __iter__(self):
        return iter(self.literals)

    def __str__(self):
        return "(" + " + ".join(str(l) for l in self.literals) + ")"

    @classmethod
    def of(cls, *values: int) -> "Clause":
        return cls(tuple(Literal.from_int(v) for v in values))

    def max_var(self) -> int:
        return max((l.var for l in self.literals), default=0)


@dataclass(frozen=True)
class CnfFormula:
    clauses: tuple[Clause, ...] = ()
    n: int = field(default=-1)

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(self.clauses))
        top = max((c.max_var() for c in self.clauses), default=0)
        if self.n == -1:
            object.__setattr__(self, "n", top)
        elif self.n < top:
            raise ValueError(f"formula references a{top} but declares only n={self.n}")

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def num_literals(self) -> int:
        return sum(len(c) for c in self.clauses)

    def variables(self) -> list[int]:
        """Distinct variable indices in order of first appearance."""
        seen: dict[int, None] = {}
        for c in self.clauses:
            for lit in c:
                seen.setdefault(lit.var, None)
        return list(seen)

    def __str__(self):
        if not self.clauses:
            return "T"
        return " x ".join(str(c) for c in self.clauses)

    @classmethod
    def from_ints(cls, clauses: Iterable[Sequence[int]], n: int | None = None) -> "CnfFormula":
        cs = tuple(Clause.of(*c) for c in clauses)
        return cls(cs) if n is None else cls(cs, n)


def decode_assignment(j: int, n: int) -> dict[int, bool]:
    """Map assignment number ``j`` to ``{k: value of a_k}`` for k = 1..n."""
    if n < 0 or not 0 <= j < (1 << n):
        raise ValueError(f"assignment index {j} out of range for n={n}")
    return {k: bool((j >> (k - 1)) & 1) for k in range(1, n + 1)}


def encode_assignment(asg: Mapping[int, bool]) -> int:
    """Inverse of :func:`decode_assignment`."""
    j = 0
    for k, value in asg.items():
        if value:
            j |= 1 << (k - 1)
    return j


def _lookup(asg: Mapping[int, bool], var: int) -> bool:
    try:
        return asg[var]
    except KeyError:
        raise KeyError(f"assignment does not map a{var}") from None


def eval_literal(lit: Literal, asg: Mapping[int, bool]) -> bool:
    return _lookup(asg, lit.var) != lit.negated


def eval_clause(c: Clause, asg: Mapping[int, bool]) -> bool:
    # empty disjunction is false
    return any(eval_literal(lit, asg) for lit in c.literals)


def eval_cnf(f: CnfFormula, asg: Mapping[int, bool]) -> bool:
    # empty conjunction is true
    return all(eval_clause(c, asg) for c in f.clauses)


def random_cnf(rng: random.Random, n: int, m: int, width: int | tuple[int, int] = 3,
               declared_n: int | None = None) -> CnfFormula:
    """Random CNF with ``m`` clauses over variables 1..n.

    ``width`` is either a fixed clause length or an inclusive ``(lo, hi)``
    range. Duplicate and complementary literals are allowed on purpose.
    """
    lo, hi = (width, width) if isinstance(width, int) else width
    clauses = []
    for _ in range(m):
        k = rng.randint(lo, hi)
        clauses.append(Clause(tuple(Literal(rng.randint(1, n), rng.random() < 0.5)
                                    for _ in range(k)) if n else ()))
    return CnfFormula(tuple(clauses), n if declared_n is None else declared_n)
