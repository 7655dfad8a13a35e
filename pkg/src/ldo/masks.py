"""Truth masks: the 2^n-bit string representation of a boolean function.

Bit ``j`` of a mask is the value of the function under assignment ``j``.
Masks are printed most-significant bit first, so for n = 3 the variable
a1 reads ``10101010`` and assignment 0 is the rightmost character.

Masks are backed by plain Python ints; width is carried alongside.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapacityError
from .formula import Clause, CnfFormula, Literal

DEFAULT_N_MAX = 24


def check_n(n: int, n_max: int = DEFAULT_N_MAX) -> None:
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if n > n_max:
        raise CapacityError(f"n={n} exceeds n_max={n_max} (mask width 2^{n} bits)")


@dataclass(frozen=True)
class TruthMask:
    n: int
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> (1 << self.n):
            raise ValueError(f"bits do not fit in width {1 << self.n}")

    @property
    def width(self) -> int:
        return 1 << self.n

    @property
    def full(self) -> int:
        return (1 << self.width) - 1

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.width:
            raise IndexError(j)
        return (self.bits >> j) & 1

    def __str__(self):
        return format(self.bits, f"0{self.width}b")

    def __or__(self, other):
        return or_mask(self, other)

    def __and__(self, other):
        return and_mask(self, other)

    def __invert__(self):
        return not_mask(self)

    @classmethod
    def from_string(cls, text: str) -> "TruthMask":
        """Parse an MSB-first 0/1 string whose length is a power of two."""
        text = text.strip()
        width = len(text)
        if width == 0 or width & (width - 1) or set(text) - {"0", "1"}:
            raise ValueError(f"not a mask string: {text!r}")
        return cls(width.bit_length() - 1, int(text, 2))

    @classmethod
    def zeros(cls, n: int) -> "TruthMask":
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> "TruthMask":
        return cls(n, (1 << (1 << n)) - 1)


def _same_width(q: TruthMask, r: TruthMask) -> None:
    if q.n != r.n:
        raise ValueError(f"mask width mismatch: {q.width} vs {r.width}")


def var_mask_eq3(k: int, n: int, n_max: int = DEFAULT_N_MAX) -> TruthMask:
    """Variable mask from the closed-form Kronecker-delta double sum.

    bit r = sum over s in [2^(k-1), 2^k - 1] and l in [0, 2^(n-k) - 1] of
    delta(r, s + 2^k * l). The delta is evaluated as an explicit equality
    matrix, which is quadratic in the width; use :func:`var_mask_direct`
    for anything but cross-checking.
    """
    if not 1 <= k <= n:
        raise ValueError(f"variable index k={k} out of range 1..{n}")
    check_n(n, n_max)
    t = 1 << n
    s = np.arange(1 << (k - 1), 1 << k, dtype=np.int64)
    l = np.arange(0, 1 << (n - k), dtype=np.int64)
    targets = (s[:, None] + (1 << k) * l[None, :]).ravel()
    counts = np.empty(t, dtype=np.int64)
    chunk = max(1, (1 << 22) // max(1, targets.size))
    for start in range(0, t, chunk):
        r = np.arange(start, min(t, start + chunk), dtype=np.int64)
        counts[start:start + r.size] = (r[:, None] == targets[None, :]).sum(axis=1)
    if counts.max(initial=0) > 1:
        raise AssertionError("double sum produced a digit above 1")
    bits = int.from_bytes(np.packbits(counts.astype(np.uint8), bitorder="little").tobytes(), "little")
    return TruthMask(n, bits)


@lru_cache(maxsize=8)
def _variable_masks(n: int) -> tuple[int, ...]:
    # a1 over one variable is "10"; going n -> n+1 doubles every string and
    # appends the new top variable 1..10..0
    masks: tuple[int, ...] = ()
    t = 1
    for _ in range(n):
        masks = tuple(m | (m << t) for m in masks) + (((1 << t) - 1) << t,)
        t <<= 1
    return masks


def var_mask_direct(k: int, n: int, n_max: int = DEFAULT_N_MAX) -> TruthMask:
    """Variable mask built by the doubling recursion."""
    if not 1 <= k <= n:
        raise ValueError(f"variable index k={k} out of range 1..{n}")
    check_n(n, n_max)
    return TruthMask(n, _variable_masks(n)[k - 1])


def or_mask(q: TruthMask, r: TruthMask) -> TruthMask:
    # digitwise q + r - q*r
    _same_width(q, r)
    return TruthMask(q.n, q.bits | r.bits)


def and_mask(q: TruthMask, r: TruthMask) -> TruthMask:
    _same_width(q, r)
    return TruthMask(q.n, q.bits & r.bits)


def not_mask(q: TruthMask) -> TruthMask:
    return TruthMask(q.n, q.full ^ q.bits)


def reverse_mask(q: TruthMask) -> TruthMask:
    """Read the string backwards: output bit j = input bit t-1-j.

    Equals negation for variable masks only.
    """
    return TruthMask(q.n, int(str(q)[::-1], 2))


def literal_mask(lit: Literal, n: int, n_max: int = DEFAULT_N_MAX) -> TruthMask:
    m = var_mask_direct(lit.var, n, n_max)
    return not_mask(m) if lit.negated else m


def clause_mask(c: Clause, n: int, n_max: int = DEFAULT_N_MAX) -> TruthMask:
    acc = TruthMask.zeros(n)
    for lit in c:
        acc = or_mask(acc, literal_mask(lit, n, n_max))
    return acc


def cnf_mask_direct(f: CnfFormula, n: int | None = None,
                    n_max: int = DEFAULT_N_MAX) -> TruthMask:
    """AND over clauses of OR over literal masks."""
    n = f.n if n is None else n
    check_n(n, n_max)
    acc = TruthMask.ones(n)
    for c in f.clauses:
        acc = and_mask(acc, clause_mask(c, n, n_max))
    return acc


def cnf_mask_demorgan(f: CnfFormula, n: int | None = None,
                      n_max: int = DEFAULT_N_MAX) -> TruthMask:
    """Same function as :func:`cnf_mask_direct`, using only OR and NOT.

    Accumulates ~C = ~C_1 + ... + ~C_m and negates once at the end.
    """
    n = f.n if n is None else n
    check_n(n, n_max)
    neg = TruthMask.zeros(n)
    for c in f.clauses:
        neg = or_mask(neg, not_mask(clause_mask(c, n, n_max)))
    return not_mask(neg)


def models_of_mask(m: TruthMask) -> set[int]:
    text = str(m)
    t = len(text)
    return {t - 1 - i for i, ch in enumerate(text) if ch == "1"}
