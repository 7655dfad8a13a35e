"""Self-assembling disk machine (SALDO).

The machine starts with two copies of a single two-field disk and grows a
new finest variable disk every time the input names a variable it has not
seen. Each growth runs the four-step assembly cycle in the assembly area AA:

    g0  copy the finest disk onto a blank: its photonegative stays on top
    g1  double the resolution, rotate the top disk ccw by half a coarse
        field, expose a second blank
    g2  rotate that blank ccw by a whole coarse field, expose it again,
        remove and fix it: this is the new finest variable
    g3  return AA to storage and repeat g0 on the new disk for a second copy

Variables are numbered by first appearance. With N disks created, the
disk created i-th is true at assignment j iff bit N - i of j is set, so the
newest variable alternates with period 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .disks import Disk, WorkingArea, double_disk, rotate_ccw
from .errors import CapacityError
from .formula import CnfFormula
from .machine import CostLedger, LogicalDiskOperator, RunResult
from .masks import DEFAULT_N_MAX

DEFAULT_ANGLE_THRESHOLD = 1e-6


@dataclass
class VariableRegistry:
    """External variable index -> creation ordinal (1-based, gap free)."""

    ordinals: dict[int, int] = field(default_factory=dict)

    def __contains__(self, name: int) -> bool:
        return name in self.ordinals

    def __getitem__(self, name: int) -> int:
        return self.ordinals[name]

    def __len__(self):
        return len(self.ordinals)

    @property
    def n_created(self) -> int:
        return len(self.ordinals)

    @property
    def names(self) -> list[int]:
        return list(self.ordinals)

    @property
    def resolution(self) -> int:
        return 1 << max(1, self.n_created)

    def register(self, name: int) -> int:
        if name in self.ordinals:
            raise ValueError(f"a{name} already registered")
        self.ordinals[name] = len(self.ordinals) + 1
        return self.ordinals[name]


def decode_model_saldo(registry: VariableRegistry, j: int) -> dict[int, bool]:
    """Values of the registered variables at assignment (field) ``j``."""
    n = registry.n_created
    if not 0 <= j < registry.resolution:
        raise ValueError(f"assignment index {j} out of range for t={registry.resolution}")
    return {name: bool((j >> (n - i)) & 1) for name, i in registry.ordinals.items()}


class SelfAssemblingLDO(LogicalDiskOperator):
    """LDO(1) plus the assembly cycle, run on demand for each new variable."""

    copies_per_variable = 2

    def __init__(self, *, n_max: int = DEFAULT_N_MAX, record_assembly: bool = False, **options):
        super().__init__(1, n_max=n_max, **options)
        self.registry = VariableRegistry()
        self.aa = WorkingArea("AA", self.t)
        self.ledger.variables = 0
        # (g-step, AA stack bottom to top) at the end of each g-step
        self.assembly_log: list[tuple[str, tuple[str, ...]]] | None = [] if record_assembly else None

    def _log_aa(self, tag: str) -> None:
        if self.assembly_log is not None:
            self.assembly_log.append((tag, tuple(str(d) for d in self.aa.stack)))

    def _sa_key(self, var: int) -> int:
        self.ensure_variable(var)
        return self.registry[var]

    def ensure_variable(self, name: int) -> None:
        if name in self.registry:
            return
        if self.registry.n_created:
            self.g_cycle()
        # the first name binds to the disk the machine ships with
        self.registry.register(name)
        self.ledger.variables = self.registry.n_created

    def double_resolution(self) -> None:
        """Re-express every resident disk at twice the resolution."""
        if self.t >= 1 << self.n_max:
            raise CapacityError(f"assembly past n_max={self.n_max} (t={self.t})")
        count = sum(len(v) for v in self.sa.values()) + len(self.wa1) + len(self.wa2) + len(self.aa)
        for area in (self.wa1, self.wa2, self.aa):
            area.double_resolution()
        self.sa = {k: [double_disk(d) for d in shelf] for k, shelf in self.sa.items()}
        self.masters = {k: double_disk(d) for k, d in self.masters.items()}
        self.t *= 2
        self.ledger.resolution = self.t
        self._charge(count * self.t)

    def _assembly_blank(self) -> Disk:
        self.ledger.assembly_blanks += 1
        return self._draw_blank()

    def g_cycle(self) -> Disk:
        """Assemble the next finest variable disk; returns the fixed disk."""
        self._check_live()
        finest = max(self.sa)
        new_key = finest + 1
        aa = self.aa

        ops0 = self.ledger.field_ops
        aa.push(self._take(finest))
        self._charge(self.t)
        aa.push(self._assembly_blank())
        aa.illuminate_top()
        self._charge(self.t)
        self._log_aa("g0")
        self._command("g0", ops0)

        ops0 = self.ledger.field_ops
        self.double_resolution()
        aa.push(rotate_ccw(aa.pop(), 1))
        self._charge(self.t)
        aa.push(self._assembly_blank())
        aa.illuminate_top()
        self._charge(self.t)
        self._log_aa("g1")
        self._command("g1", ops0)

        ops0 = self.ledger.field_ops
        aa.push(rotate_ccw(aa.pop(), 2))
        self._charge(self.t)
        aa.illuminate_top()
        self._charge(self.t)
        self._log_aa("g2")
        new = replace(aa.pop(), fixed=True, label=new_key)
        self._command("g2", ops0)

        ops0 = self.ledger.field_ops
        old, g0_negative = aa.clear()
        self.sa[finest].append(old)
        self.ledger.scrap_disks += 1  # the g0 photonegative has no further use
        aa.push(new)
        aa.push(self._assembly_blank())
        aa.illuminate_top()
        self._charge(2 * self.t)
        copy = replace(aa.pop(), fixed=True, label=new_key)
        # the photonegative of an alternating pattern is that pattern turned
        # by one field; store the copy in positive orientation
        aa.push(copy)
        self._log_aa("g3")
        aa.pop()
        copy = rotate_ccw(copy, 1)
        self._charge(self.t)
        aa.clear()
        self.masters[new_key] = new
        self.sa[new_key] = [new, copy]
        self._command("g3", ops0)

        self.ledger.g_cycles += 1
        self._sync_ledger()
        return new

    def inventory_ok(self) -> bool:
        """Every created variable has two copies at rest in SA (when WA1 is empty)."""
        keys = range(1, max(1, self.registry.n_created) + 1)
        return all(len(self.sa.get(k, ())) >= 2 for k in keys)

    def decoded_models(self) -> list[dict[int, bool]]:
        return [decode_model_saldo(self.registry, j) for j in sorted(self.models())]


SALDO = SelfAssemblingLDO


def expand_models(decoded: list[dict[int, bool]], n: int) -> set[int]:
    """Lift partial models over registered names to assignment indices over a1..an.

    Variables missing from a partial model are free.
    """
    out: set[int] = set()
    for partial in decoded:
        free = [k for k in range(1, n + 1) if k not in partial]
        base = 0
        for k, value in partial.items():
            if value:
                base |= 1 << (k - 1)
        for combo in range(1 << len(free)):
            j = base
            for i, k in enumerate(free):
                if (combo >> i) & 1:
                    j |= 1 << (k - 1)
            out.add(j)
    return out


def run_saldo(f: CnfFormula, **options) -> tuple[RunResult, SelfAssemblingLDO]:
    machine = SelfAssemblingLDO(**options)
    return machine.run(f), machine


@dataclass(frozen=True)
class PrecisionReport:
    min_field_angle: float
    fields_per_disk: int
    disks_created: int
    blanks_consumed: int
    assembly_blanks: int
    clause_blanks: int
    disks_in_sa: int
    machine_steps: int
    field_ops: int
    threshold: float
    warning: str | None

    def as_dict(self) -> dict:
        return {
            "min_field_angle": self.min_field_angle,
            "fields_per_disk": self.fields_per_disk,
            "disks_created": self.disks_created,
            "blanks_consumed": self.blanks_consumed,
            "assembly_blanks": self.assembly_blanks,
            "clause_blanks": self.clause_blanks,
            "disks_in_sa": self.disks_in_sa,
            "machine_steps": self.machine_steps,
            "field_ops": self.field_ops,
            "angle_threshold": self.threshold,
            "warning": self.warning,
        }

    def to_kv(self) -> str:
        lines = []
        for key, value in self.as_dict().items():
            if value is None:
                continue
            lines.append(f"{key}={value}")
        return "\n".join(lines)

    def to_text(self) -> str:
        lines = [
            f"fields per disk       {self.fields_per_disk}",
            f"min field angle       {self.min_field_angle:.6g} rad",
            f"variable disks        {self.disks_created}",
            f"disks in storage      {self.disks_in_sa}",
            f"blanks consumed       {self.blanks_consumed} "
            f"(assembly {self.assembly_blanks}, clauses {self.clause_blanks})",
            f"machine steps         {self.machine_steps}",
            f"field operations      {self.field_ops}",
        ]
        if self.warning:
            lines.append(f"WARNING: {self.warning}")
        return "\n".join(lines)


def precision_report(ledger: CostLedger, threshold: float = DEFAULT_ANGLE_THRESHOLD) -> PrecisionReport:
    angle = ledger.min_field_angle
    warning = None
    if angle < threshold:
        warning = (f"finest field spans {angle:.3g} rad, below {threshold:g} rad; "
                   "fields this small cannot be resolved or aligned by real components")
    return PrecisionReport(
        min_field_angle=angle,
        fields_per_disk=ledger.resolution,
        disks_created=ledger.variables,
        blanks_consumed=ledger.blanks_consumed,
        assembly_blanks=ledger.assembly_blanks,
        clause_blanks=ledger.clause_blanks,
        disks_in_sa=ledger.disks_in_sa,
        machine_steps=ledger.machine_steps,
        field_ops=ledger.field_ops,
        threshold=threshold,
        warning=warning,
    )
