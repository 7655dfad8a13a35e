import random

import pytest

from ldo.errors import CapacityError
from ldo.formula import CnfFormula, random_cnf
from ldo.masks import cnf_mask_direct, models_of_mask
from ldo.oracle import brute_force


def test_example():
    res = brute_force(CnfFormula.from_ints([[1, -3]]))
    assert res.sat and res.models == {0, 1, 2, 3, 5, 7}


def test_empty_clause():
    res = brute_force(CnfFormula.from_ints([[]]))
    assert res.verdict == "UNSAT" and res.models == frozenset()


def test_random_3cnf_matches_masks():
    rng = random.Random(3)
    for _ in range(30):
        f = random_cnf(rng, 8, rng.randint(1, 40), 3)
        assert brute_force(f).models == models_of_mask(cnf_mask_direct(f))


def test_cap():
    with pytest.raises(CapacityError):
        brute_force(CnfFormula.from_ints([[1]], n=21))
    assert brute_force(CnfFormula.from_ints([[1]], n=3), cap=3).sat
