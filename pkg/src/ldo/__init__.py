"""Simulator of a logical disk operator that decides CNF satisfiability by
stacking transparency disks, plus its self-assembling variant."""

from .errors import (CapacityError, LdoError, MachineHalted, ParseError,
                     SupplyExhausted, UnknownVariable)
from .formula import (Clause, CnfFormula, Literal, decode_assignment, eval_clause,
                      eval_cnf, random_cnf)
from .machine import CostLedger, LogicalDiskOperator, RunResult, TraceEvent, run_ldo
from .masks import TruthMask, cnf_mask_demorgan, cnf_mask_direct, models_of_mask
from .oracle import brute_force
from .saldo import SelfAssemblingLDO, decode_model_saldo, precision_report, run_saldo
from .words import emit_dimacs, encode_word, parse_dimacs, parse_word, read_formula, tokenize

__all__ = [
    "CapacityError", "Clause", "CnfFormula", "CostLedger", "LdoError", "Literal",
    "LogicalDiskOperator", "MachineHalted", "ParseError", "RunResult", "SelfAssemblingLDO",
    "SupplyExhausted", "TraceEvent", "TruthMask", "UnknownVariable", "brute_force",
    "cnf_mask_demorgan", "cnf_mask_direct", "decode_assignment", "decode_model_saldo",
    "emit_dimacs", "encode_word", "eval_clause", "eval_cnf", "models_of_mask",
    "parse_dimacs", "parse_word", "precision_report", "random_cnf", "read_formula",
    "run_ldo", "run_saldo", "tokenize",
]
