import math
import random

import pytest

from ldo.disks import Disk
from ldo.errors import CapacityError
from ldo.formula import CnfFormula, random_cnf
from ldo.machine import CostLedger, run_ldo
from ldo.masks import var_mask_direct
from ldo.oracle import brute_force
from ldo.saldo import (SelfAssemblingLDO, VariableRegistry, decode_model_saldo, expand_models,
                       precision_report, run_saldo)
from ldo.words import read_word


def shelf(machine, key):
    return [str(d) for d in machine.sa[key]]


def test_g_cycle_hand_trace_from_ldo1():
    # Hand trace at one variable, fields numbered clockwise, ccw = index-decreasing:
    #   g0: a1 = 10 in AA, blank exposed where a1 is clear -> 01 on top
    #   g1: double to 4 fields: a1 -> 1100, top 0011 rotated by one field -> black {3, 0} = 1001;
    #       light passes at field 1 only -> new blank = 0010
    #   g2: rotate that blank by two fields -> black {3}; re-expose at field 1 -> 1010
    #   g3: expose a blank on the new 1010 -> photonegative 0101
    m = SelfAssemblingLDO(record_assembly=True)
    m.ensure_variable(1)
    new = m.g_cycle()
    assert m.assembly_log == [
        ("g0", ("10", "01")),
        ("g1", ("1100", "1001", "0010")),
        ("g2", ("1100", "1001", "1010")),
        ("g3", ("1010", "0101")),
    ]
    assert str(new) == "1010" and new.fixed
    assert new.blackness == var_mask_direct(1, 2).bits
    assert m.t == 4 and len(m.aa) == 0
    assert m.ledger.assembly_blanks == 3


def test_two_cycles():
    m = SelfAssemblingLDO()
    m.ensure_variable(1)
    m.g_cycle()
    assert str(m.g_cycle()) == "10101010"
    assert m.t == 8


def test_registry_patterns_after_two_cycles():
    m = SelfAssemblingLDO()
    r = m.run("[a7 ~a3][a5]$")
    assert m.registry.ordinals == {7: 1, 3: 2, 5: 3}
    assert shelf(m, 1) == ["11110000"] * 2
    assert shelf(m, 2) == ["11001100"] * 2
    assert shelf(m, 3) == ["10101010"] * 2
    f = read_word("[a7 ~a3][a5]$")
    assert expand_models(m.decoded_models(), f.n) == set(brute_force(f).models)
    assert r.sat


def test_ensure_variable():
    m = SelfAssemblingLDO()
    m.ensure_variable(7)
    assert m.t == 2 and m.ledger.g_cycles == 0 and m.ledger.machine_steps == 0
    m.ensure_variable(2)
    assert m.t == 4 and m.ledger.g_cycles == 1
    steps, ops = m.ledger.machine_steps, m.ledger.field_ops
    m.ensure_variable(7)
    m.ensure_variable(2)
    assert (m.ledger.machine_steps, m.ledger.field_ops) == (steps, ops)


def test_decode_model_saldo():
    reg = VariableRegistry()
    reg.register(10)  # x
    reg.register(20)  # y
    x, y = Disk.from_string("1100"), Disk.from_string("1010")
    assert decode_model_saldo(reg, 1) == {10: bool(x.blackness >> 1 & 1), 20: bool(y.blackness >> 1 & 1)}
    assert decode_model_saldo(reg, 1) == {10: False, 20: True}
    assert decode_model_saldo(reg, 0) == {10: False, 20: False}
    with pytest.raises(ValueError):
        decode_model_saldo(reg, 4)
    single = VariableRegistry()
    single.register(3)
    assert decode_model_saldo(single, 1) == {3: True}


def test_rotation_direction_matters():
    # turning the other way gives the photonegative of the new variable
    from ldo.disks import rotate_ccw, WorkingArea
    aa = WorkingArea("AA", 4)
    aa.push(Disk.from_string("1100"))
    aa.push(rotate_ccw(Disk.from_string("0011"), -1))
    aa.push(Disk.blank(4))
    aa.illuminate_top()
    aa.push(rotate_ccw(aa.pop(), -2))
    assert str(aa.illuminate_top()) == "0101"


def test_precision_report_three_vars_two_clauses():
    r, m = run_saldo(read_word("[a1 a2][~a3]$"))
    cycles = sum(1 for e in r.trace for tag, _ in e.actions if tag == "g0")
    exposures = sum(1 for e in r.trace if e.rule == "7d")
    assert (cycles, exposures) == (2, 2)
    rep = precision_report(r.ledger)
    assert rep.blanks_consumed == 3 * cycles + exposures == 8
    assert rep.assembly_blanks == 6 and rep.clause_blanks == 2
    assert rep.disks_created == 3 and rep.fields_per_disk == 8
    assert rep.warning is None


def test_precision_report_fresh_machine():
    rep = precision_report(SelfAssemblingLDO().ledger)
    assert rep.min_field_angle == math.pi
    assert rep.disks_created == 0


def test_precision_report_warning_at_24():
    rep = precision_report(CostLedger(resolution=1 << 24))
    assert rep.min_field_angle == pytest.approx(3.745e-7, rel=1e-3)
    assert rep.warning is not None
    assert "warning=" in rep.to_kv() and "WARNING" in rep.to_text()
    assert precision_report(CostLedger(resolution=1 << 22)).warning is None


def test_capacity():
    m = SelfAssemblingLDO(n_max=3)
    m.run("[a1 a2 a3]$")
    with pytest.raises(CapacityError):
        SelfAssemblingLDO(n_max=3).run("[a1 a2 a3 a4]$")


def test_empty_formula_and_clause():
    r, m = run_saldo(CnfFormula((), 2))
    assert r.sat and m.t == 2 and expand_models(m.decoded_models(), 2) == {0, 1, 2, 3}
    r, m = run_saldo(read_word("[]$"))
    assert not r.sat


def test_end_to_end_random_against_ldo_and_oracle():
    rng = random.Random(5)
    for _ in range(250):
        n = rng.randint(1, 8)
        f = random_cnf(rng, n, rng.randint(0, 20), (0, 4))
        oracle = brute_force(f)
        ldo_r, ldo_models = run_ldo(f)
        r, m = run_saldo(f)
        assert r.sat == ldo_r.sat == oracle.sat
        if r.unconsumed == 0:
            assert expand_models(m.decoded_models(), f.n) == ldo_models == set(oracle.models)
        assert m.ledger.g_cycles == max(0, m.registry.n_created - 1)
        assert m.ledger.assembly_blanks == 3 * m.ledger.g_cycles
        tokens = r.consumed + r.unconsumed
        assert r.ledger.machine_steps <= 8 * tokens + 8


@pytest.mark.parametrize("n", range(1, 9))
def test_registered_disks_keep_their_meaning(n):
    m = SelfAssemblingLDO()
    for name in range(1, n + 1):
        m.ensure_variable(name)
        created = m.registry.n_created
        assert m.t == 1 << max(1, created)
        newest = m.sa[created][0]
        assert newest.blackness == var_mask_direct(1, max(1, created)).bits
        for other, ordinal in m.registry.ordinals.items():
            for disk in m.sa[ordinal]:
                for j in range(m.t):
                    assert bool(disk.blackness >> j & 1) == decode_model_saldo(m.registry, j)[other]
    assert m.inventory_ok()
    assert m.ledger.disks_in_sa == 2 * n
    assert m.ledger.scrap_disks == n - 1


def test_mid_clause_assembly_keeps_stacks_consistent():
    # new variables appear while WA1 and WA2 both hold disks
    f = read_word("[a1 ~a2][a2 a3 ~a1][~a3 a4]$")
    r, m = run_saldo(f)
    assert expand_models(m.decoded_models(), 4) == set(brute_force(f).models)
