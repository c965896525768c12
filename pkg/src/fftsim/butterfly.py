"""Radix-2 butterfly unit and its twiddle-factor ROM."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigurationError
from .numeric import FxComplex, NumericKernel, NumericMode, Sample


def is_power_of_two(n) -> bool:
    return isinstance(n, int) and not isinstance(n, bool) and n >= 1 and n & (n - 1) == 0


def log2_exact(n: int) -> int:
    if not is_power_of_two(n):
        raise ConfigurationError(f"size must be a power of two, got {n!r}")
    return n.bit_length() - 1


@dataclass(frozen=True)
class TwiddleRom:
    """``entries[k]`` holds the quantized ``exp(-2j*pi*k/n)`` for ``k < n/2``."""

    n: int
    entries: tuple
    mode: NumericMode

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, k) -> Sample:
        return self.entries[k]


def twiddle_rom_build(n: int, mode: NumericMode | None = None) -> TwiddleRom:
    """Precompute the twiddle ROM for an ``n``-point transform.

    ROM contents are constants, so quantizing 1+0j down to the largest
    representable value does not touch any runtime overflow flag.
    """
    if mode is None:
        mode = NumericMode.fixed()
    if log2_exact(n) < 1:
        raise ConfigurationError(f"twiddle ROM needs n >= 2, got {n}")
    entries = []
    for k in range(n // 2):
        angle = 2.0 * math.pi * k / n
        re, im = math.cos(angle), -math.sin(angle)
        if mode.is_fixed:
            fmt = mode.fmt
            entries.append(FxComplex(fmt.to_raw(re)[0], fmt.to_raw(im)[0], fmt))
        else:
            entries.append(complex(re, im))
    return TwiddleRom(n, tuple(entries), mode)


class ButterflyUnit:
    """One physical butterfly lane.

    ``execute`` models a single clock cycle: ``t = w*b``, then
    ``a + t`` and ``a - t``, optionally halved before leaving the unit.
    ``a`` is the "odd" input and ``b`` the "even" input; which
    register feeds which is decided entirely by the routing network.
    """

    def __init__(self, kernel: NumericKernel, scaling: bool = False, lane: int = 0):
        self.kernel = kernel
        self.scaling = scaling
        self.lane = lane
        self.executions = 0

    def execute(self, a_odd: Sample, b_even: Sample, w: Sample) -> tuple[Sample, Sample]:
        self.executions += 1
        return butterfly_exec(self.kernel, a_odd, b_even, w, self.scaling)


def butterfly_exec(kernel: NumericKernel, a_odd: Sample, b_even: Sample, w: Sample,
                   scaling: bool = False) -> tuple[Sample, Sample]:
    t = kernel.mul(w, b_even)
    if scaling:
        return kernel.add_sub_halved(a_odd, t)
    return kernel.add(a_odd, t), kernel.sub(a_odd, t)
