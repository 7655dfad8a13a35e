"""Transparency disks and the stacks they are placed on.

A disk with resolution ``t`` has ``t`` angular fields numbered clockwise from
12 o'clock. ``blackness`` bit j is set when field j is black. A black field
means the represented formula is true at assignment j, so light passes a
stack at field j exactly when the OR of the stacked formulas is false there.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Hashable

from .masks import var_mask_direct

_DOUBLE = str.maketrans({"0": "00", "1": "11"})


def _check_resolution(t: int) -> None:
    if t < 1 or t & (t - 1):
        raise ValueError(f"resolution must be a power of two, got {t}")


@dataclass(frozen=True)
class Disk:
    resolution: int
    blackness: int
    fixed: bool = False
    label: Hashable = None

    def __post_init__(self):
        _check_resolution(self.resolution)
        if self.blackness < 0 or self.blackness >> self.resolution:
            raise ValueError("blackness does not fit the resolution")

    @property
    def full(self) -> int:
        return (1 << self.resolution) - 1

    def __str__(self):
        return format(self.blackness, f"0{self.resolution}b")

    def black_fields(self) -> set[int]:
        return {j for j in range(self.resolution) if (self.blackness >> j) & 1}

    @classmethod
    def blank(cls, resolution: int) -> "Disk":
        return cls(resolution, 0)

    @classmethod
    def from_string(cls, text: str, **kw) -> "Disk":
        return cls(len(text), int(text, 2), **kw)


def make_variable_disk(k: int, resolution: int, label: Hashable = None) -> Disk:
    """Fixed disk for a_k whose pattern is the variable's mask at n = log2 t."""
    _check_resolution(resolution)
    n = resolution.bit_length() - 1
    bits = var_mask_direct(k, n, n_max=max(n, 1)).bits
    return Disk(resolution, bits, fixed=True, label=k if label is None else label)


def flip_disk(d: Disk) -> Disk:
    """Turn the disk over about the axis between fields t/2-1 and t/2.

    Field j lands on field t-1-j. That is negation for a variable disk and
    plain reversal for anything else.
    """
    return replace(d, blackness=int(str(d)[::-1], 2))


def rotate_ccw(d: Disk, fields: int) -> Disk:
    """Rotate counterclockwise by ``fields`` field widths.

    Fields are numbered clockwise, so content at field j moves to j - fields.
    """
    t = d.resolution
    k = fields % t
    if k == 0:
        return d
    x = d.blackness
    return replace(d, blackness=((x >> k) | (x << (t - k))) & d.full)


def double_disk(d: Disk) -> Disk:
    """Same pattern at twice the resolution: field j becomes 2j and 2j+1."""
    return replace(d, resolution=2 * d.resolution, blackness=int(str(d).translate(_DOUBLE), 2))


class WorkingArea:
    """A stack of disks, bottom first, with the OR of their blackness cached."""

    def __init__(self, name: str, resolution: int):
        _check_resolution(resolution)
        self.name = name
        self.resolution = resolution
        self.stack: list[Disk] = []
        self.composite = 0

    def __len__(self):
        return len(self.stack)

    def __repr__(self):
        return f"WorkingArea({self.name!r}, t={self.resolution}, disks={len(self.stack)})"

    @property
    def full(self) -> int:
        return (1 << self.resolution) - 1

    @property
    def transparent(self) -> int:
        """Fields where light passes the whole stack."""
        return self.full & ~self.composite

    def push(self, d: Disk) -> None:
        if d.resolution != self.resolution:
            raise ValueError(f"{self.name}: disk resolution {d.resolution} != area resolution {self.resolution}")
        self.stack.append(d)
        self.composite |= d.blackness

    def pop(self) -> Disk:
        d = self.stack.pop()
        self.composite = self._fold()
        return d

    def clear(self) -> list[Disk]:
        out, self.stack, self.composite = self.stack, [], 0
        return out

    def illuminate_top(self) -> Disk:
        """Shine the photoactive source from below.

        The top disk, unless fixed, blackens wherever light reaches it
        through the disks beneath.
        """
        top = self.stack[-1]
        if top.fixed:
            return top
        below = 0
        for d in self.stack[:-1]:
            below |= d.blackness
        exposed = replace(top, blackness=top.blackness | (self.full & ~below))
        self.stack[-1] = exposed
        self.composite |= exposed.blackness
        return exposed

    def double_resolution(self) -> None:
        self.resolution *= 2
        self.stack = [double_disk(d) for d in self.stack]
        self.composite = self._fold()

    def _fold(self) -> int:
        acc = 0
        for d in self.stack:
            acc |= d.blackness
        return acc
