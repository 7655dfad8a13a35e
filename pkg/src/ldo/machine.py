"""The logical disk operator (LDO): a fixed-n disk machine for CNF words.

The machine reads a word token by token with inner state (mu, nu, s):
mu counts disks on the clause stack WA1, nu counts negated-clause disks on
WA2, s is the photocell signal. Rule tags in the trace:

    7a  literal: stack the (possibly flipped) variable disk on WA1
    7b  '[' with s = 0: stop, output 0
    7c  '[' with s = 1: proceed
    7d  ']': commands i-v (expose blank, move to WA2, clear WA1,
        photocell test, set s)
    7e  '$' with s = 0: stop, output 0
    7f  '$' with s = 1: stop, output 1

Every run keeps two cost counters: ``machine_steps`` (one per token and one
per command) and ``field_ops`` (one per field touched by a physical act).
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, replace
from typing import Sequence, Union

from .disks import Disk, WorkingArea, flip_disk, make_variable_disk
from .errors import MachineHalted, SupplyExhausted, UnknownVariable
from .formula import CnfFormula, Literal
from .masks import DEFAULT_N_MAX, check_n
from .words import Token, TokenKind, formula_tokens, parse_word, tokenize

RULES = frozenset({"7a", "7b", "7c", "7d", "7e", "7f",
                   "i", "ii", "iii", "iv", "v", "g0", "g1", "g2", "g3"})
PHOTOCELL_MODES = ("scan", "analog")
PROTECTION_MODES = ("fix", "inert", "none")

Word = Union[str, Sequence[Token], CnfFormula]


@dataclass
class CostLedger:
    machine_steps: int = 0
    field_ops: int = 0
    blanks_consumed: int = 0
    assembly_blanks: int = 0
    disks_in_sa: int = 0
    resolution: int = 1
    variables: int = 0
    g_cycles: int = 0
    copies_minted: int = 0
    scrap_disks: int = 0

    @property
    def min_field_angle(self) -> float:
        return 2 * math.pi / self.resolution

    @property
    def clause_blanks(self) -> int:
        return self.blanks_consumed - self.assembly_blanks

    def as_dict(self) -> dict:
        d = asdict(self)
        d["min_field_angle"] = self.min_field_angle
        return d


@dataclass(frozen=True)
class MachineState:
    mu: int
    nu: int
    s: int
    halted: bool = False
    output: int | None = None


@dataclass(frozen=True)
class TraceEvent:
    step: int
    token: str
    rule: str
    before: MachineState
    after: MachineState
    field_ops: int
    actions: tuple[tuple[str, int], ...] = ()

    def to_line(self) -> str:
        a = self.after
        line = (f"step={self.step} token={self.token} rule={self.rule} "
                f"mu={a.mu} nu={a.nu} s={a.s} field_ops+={self.field_ops}")
        if a.halted:
            line += f" out={a.output}"
        if self.actions:
            line += " actions=" + ",".join(f"{tag}:{ops}" for tag, ops in self.actions)
        return line

    def to_dict(self) -> dict:
        return {
            "step": self.step,
            "token": self.token,
            "rule": self.rule,
            "before": asdict(self.before),
            "after": asdict(self.after),
            "field_ops": self.field_ops,
            "actions": [{"rule": tag, "field_ops": ops} for tag, ops in self.actions],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass
class RunResult:
    output: int
    ledger: CostLedger
    trace: list[TraceEvent]
    consumed: int
    unconsumed: int
    formula: CnfFormula
    halt_rule: str

    @property
    def sat(self) -> bool:
        return self.output == 1

    @property
    def verdict(self) -> str:
        return "SAT" if self.sat else "UNSAT"


def photocell(area: WorkingArea) -> int:
    """1 if light gets through the stack anywhere, else 0."""
    return 1 if area.transparent else 0


def as_tokens(word: Word, n: int | None = None) -> tuple[list[Token], CnfFormula]:
    """Validate ``word`` and return its tokens together with the parsed formula."""
    if isinstance(word, CnfFormula):
        return formula_tokens(word), word
    tokens = tokenize(word) if isinstance(word, str) else list(word)
    return tokens, parse_word(tokens, n)


class LogicalDiskOperator:
    """Fixed-resolution disk machine for formulas over a1..an.

    photocell: ``scan`` charges t field ops per test, ``analog`` charges 1.
    protection: how WA2 disks escape further blackening. ``fix`` fixes each
        negated-clause disk before it moves (default), ``inert`` lights WA2 with
        a source that does not trigger the photochemistry, ``none`` does
        neither and gives wrong answers; it exists to show why one is needed.
    return_to_storage: command iii puts WA1 disks back into SA. When off,
        WA1 disks are discarded and later literals mint fresh copies.
    blank_supply: number of blanks in BSS, ``None`` for unlimited.
    """

    copies_per_variable = 1

    def __init__(self, n: int, *, photocell: str = "scan", protection: str = "fix",
                 return_to_storage: bool = True, blank_supply: int | None = None,
                 n_max: int = DEFAULT_N_MAX):
        if photocell not in PHOTOCELL_MODES:
            raise ValueError(f"photocell mode must be one of {PHOTOCELL_MODES}")
        if protection not in PROTECTION_MODES:
            raise ValueError(f"protection must be one of {PROTECTION_MODES}")
        check_n(n, n_max)
        self.n_max = n_max
        self.photocell_mode = photocell
        self.protection = protection
        self.return_to_storage = return_to_storage
        self.blank_supply = blank_supply
        self.t = 1 << n

        self.wa1 = WorkingArea("WA1", self.t)
        self.wa2 = WorkingArea("WA2", self.t)
        self._wa1_origin: list[tuple[object, bool]] = []  # (SA key, flipped) per WA1 disk
        self.masters: dict[object, Disk] = {}
        self.sa: dict[object, list[Disk]] = {}
        self._stock_storage(n)

        self.mu = 0
        self.nu = 0
        self.s = 1
        self.halted = False
        self.output: int | None = None
        self.ledger = CostLedger(resolution=self.t, variables=n)
        self.trace: list[TraceEvent] = []
        self._actions: list[tuple[str, int]] = []
        self._token_ops = 0
        self._sync_ledger()

    def _stock_storage(self, n: int) -> None:
        for k in range(1, n + 1):
            disk = make_variable_disk(k, self.t)
            self.masters[k] = disk
            self.sa[k] = [disk] * self.copies_per_variable

    # -- bookkeeping -----------------------------------------------------

    @property
    def state(self) -> MachineState:
        return MachineState(self.mu, self.nu, self.s, self.halted, self.output)

    def _charge(self, ops: int) -> None:
        self.ledger.field_ops += ops
        self._token_ops += ops

    def _command(self, tag: str, ops_before: int) -> None:
        self.ledger.machine_steps += 1
        self._actions.append((tag, self.ledger.field_ops - ops_before))

    def _sync_ledger(self) -> None:
        self.ledger.disks_in_sa = sum(len(v) for v in self.sa.values())
        self.ledger.resolution = self.t

    def _draw_blank(self) -> Disk:
        if self.blank_supply is not None:
            if self.blank_supply <= 0:
                raise SupplyExhausted("blank supply BSS is empty")
            self.blank_supply -= 1
        self.ledger.blanks_consumed += 1
        return Disk.blank(self.t)

    def _sa_key(self, var: int):
        if var not in self.sa:
            raise UnknownVariable(f"no disk for a{var} in storage (machine has n={self.t.bit_length() - 1})")
        return var

    def _take(self, key) -> Disk:
        shelf = self.sa[key]
        if shelf:
            return shelf.pop()
        self.ledger.copies_minted += 1
        return self.masters[key]

    def _check_live(self) -> None:
        if self.halted:
            raise MachineHalted("machine has stopped; no further input is read")

    # -- physical commands -------------------------------------------------

    def push_literal(self, lit: Literal) -> None:
        """Take the variable's disk from SA, flip it if negated, stack it on WA1."""
        self._check_live()
        key = self._sa_key(lit.var)
        disk = self._take(key)
        if lit.negated:
            disk = flip_disk(disk)
        self.wa1.push(disk)
        self._wa1_origin.append((key, lit.negated))
        self.mu += 1
        self._charge(self.t)
        self.ledger.machine_steps += 1

    def expose_clause_negative(self) -> Disk:
        """Command i: put a blank on WA1 and light the stack from below.

        The blank blackens where light passes, giving the negated clause.
        It is left on top of WA1 for command ii.
        """
        self._check_live()
        ops0 = self.ledger.field_ops
        self.wa1.push(self._draw_blank())
        exposed = self.wa1.illuminate_top()
        self._charge(self.t)
        self._command("i", ops0)
        return exposed

    def finish_clause(self) -> None:
        """Commands i-v, triggered by ']'."""
        self._check_live()
        self.expose_clause_negative()

        ops0 = self.ledger.field_ops
        neg = self.wa1.pop()
        if self.protection == "fix":
            neg = replace(neg, fixed=True)
        self.wa2.push(neg)
        self.nu += 1
        self._charge(self.t)
        self._command("ii", ops0)

        ops0 = self.ledger.field_ops
        for disk, (key, flipped) in zip(self.wa1.clear(), self._wa1_origin):
            if self.return_to_storage:
                self.sa[key].append(flip_disk(disk) if flipped else disk)
        self._wa1_origin.clear()
        self.mu = 0
        self._command("iii", ops0)

        ops0 = self.ledger.field_ops
        if self.protection != "inert" and self.wa2.stack:
            # the WA2 source is photoactive here; only fixed disks are safe
            self.wa2.illuminate_top()
        signal = photocell(self.wa2)
        self._charge(self.t if self.photocell_mode == "scan" else 1)
        self._command("iv", ops0)

        ops0 = self.ledger.field_ops
        self.s = signal
        self._command("v", ops0)

    # -- transition system -------------------------------------------------

    def step(self, token: Token) -> TraceEvent:
        self._check_live()
        before = self.state
        self._actions = []
        self._token_ops = 0
        kind = token.kind
        if kind is TokenKind.LITERAL:
            self.push_literal(token.literal)
            rule = "7a"
        else:
            self.ledger.machine_steps += 1
            if kind is TokenKind.OPEN:
                if self.s == 1:
                    rule = "7c"
                else:
                    rule = "7b"
                    self.halted, self.output = True, 0
            elif kind is TokenKind.CLOSE:
                self.finish_clause()
                rule = "7d"
            else:
                rule = "7f" if self.s == 1 else "7e"
                self.halted, self.output = True, self.s
        self._sync_ledger()
        event = TraceEvent(len(self.trace) + 1, str(token), rule, before, self.state,
                           self._token_ops, tuple(self._actions))
        self.trace.append(event)
        return event

    def run(self, word: Word) -> RunResult:
        tokens, formula = as_tokens(word)
        consumed = 0
        for tok in tokens:
            if self.halted:
                break
            self.step(tok)
            consumed += 1
        return RunResult(
            output=self.output,
            ledger=self.ledger,
            trace=self.trace,
            consumed=consumed,
            unconsumed=len(tokens) - consumed,
            formula=formula,
            halt_rule=self.trace[-1].rule,
        )

    def models(self) -> set[int]:
        """Fields where light passes WA2, once the machine stopped with output 1."""
        if not (self.halted and self.output == 1):
            return set()
        bits = self.wa2.transparent
        return {j for j in range(self.t) if (bits >> j) & 1}

    def enumerate_models(self, word: Word) -> set[int]:
        """Run ``word`` and read one photocell per field above WA2."""
        self.run(word)
        return self.models()


LDO = LogicalDiskOperator


def run_ldo(f: CnfFormula, n: int | None = None, **options) -> tuple[RunResult, set[int]]:
    machine = LogicalDiskOperator(f.n if n is None else n, **options)
    result = machine.run(f)
    return result, machine.models()
