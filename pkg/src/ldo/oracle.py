"""Brute-force satisfiability by trying every assignment.

Deliberately mask-free: it loops over assignment numbers and evaluates the
symbolic formula, so it shares no evaluation path with the mask algebra or
the disk machines it is used to check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityError
from .formula import CnfFormula, decode_assignment, eval_cnf

DEFAULT_ORACLE_CAP = 20


@dataclass(frozen=True)
class OracleResult:
    sat: bool
    models: frozenset[int]

    @property
    def verdict(self) -> str:
        return "SAT" if self.sat else "UNSAT"


def brute_force(f: CnfFormula, n: int | None = None, cap: int = DEFAULT_ORACLE_CAP) -> OracleResult:
    n = f.n if n is None else n
    if n > cap:
        raise CapacityError(f"oracle refuses n={n} > cap={cap} ({1 << n} assignments)")
    models = frozenset(j for j in range(1 << n) if eval_cnf(f, decode_assignment(j, n)))
    return OracleResult(bool(models), models)
