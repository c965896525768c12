"""One 1D FFT block: N/2 reused butterfly lanes, control unit, routing
network and register array.

A frame is loaded in bit-reversed order, then each call to
:meth:`Fft1dProcessor.step_cycle` is one clock edge that runs every lane on
the current stage and writes the results back in place.  After ``log2(n)``
cycles the register array holds the transform in natural order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .butterfly import ButterflyUnit, TwiddleRom, log2_exact, twiddle_rom_build
from .errors import ConfigurationError, InputError, ProtocolError
from .numeric import NumericKernel, NumericMode, Sample


class ControlState(NamedTuple):
    """Control-unit outputs during one cycle."""

    stage: int
    isl: int
    osl: int
    done: int


IDLE = ControlState(0, 0, 0, 0)


class Butterfly(NamedTuple):
    index_a: int
    index_b: int
    twiddle_index: int


@dataclass(frozen=True)
class StageSchedule:
    stage: int
    pairs: tuple


def routing_network(stage: int, n: int) -> StageSchedule:
    """Decimation-in-time operand routing for one stage.

    At stage ``s`` each butterfly joins registers ``a`` and ``a + 2**s``
    where ``a mod 2**(s+1) < 2**s``; the twiddle index is
    ``(a mod 2**s) * n / 2**(s+1)``.
    """
    stages = log2_exact(n)
    if not 0 <= stage < stages:
        raise ConfigurationError(f"stage {stage} out of range for n={n} ({stages} stages)")
    half = 1 << stage
    span = half << 1
    stride = n // span
    pairs = tuple(
        Butterfly(base + j, base + j + half, j * stride)
        for base in range(0, n, span)
        for j in range(half)
    )
    return StageSchedule(stage, pairs)


def bit_reverse(i: int, bits: int) -> int:
    r = 0
    for _ in range(bits):
        r = (r << 1) | (i & 1)
        i >>= 1
    return r


def bit_reversed_order(n: int) -> list[int]:
    bits = log2_exact(n)
    return [bit_reverse(i, bits) for i in range(n)]


class Fft1dProcessor:
    """Cycle-stepped model of a single 1D FFT block.

    Parameters
    ----------
    n : int
        Transform length, a power of two >= 2.
    mode : NumericMode, optional
        Fixed Q1.15 by default.
    scaling : bool, optional
        Halve butterfly outputs each stage.  Defaults to on in fixed mode and
        off in exact-float mode.
    kernel : NumericKernel, optional
        Share an arithmetic unit (and its overflow flag) with other blocks.
    rom : TwiddleRom, optional
        Share a prebuilt ROM.
    """

    def __init__(self, n: int, mode: NumericMode | None = None, scaling: bool | None = None,
                 kernel: NumericKernel | None = None, rom: TwiddleRom | None = None):
        self.stages = log2_exact(n)
        if self.stages < 1:
            raise ConfigurationError(f"a 1D block needs n >= 2, got {n}")
        self.n = n
        if kernel is None:
            kernel = NumericKernel(mode)
        elif mode is not None and kernel.mode != mode:
            raise ConfigurationError("kernel mode and requested mode disagree")
        self.kernel = kernel
        self.mode = kernel.mode
        self.scaling = self.mode.is_fixed if scaling is None else bool(scaling)
        if rom is None:
            rom = twiddle_rom_build(n, self.mode)
        elif rom.n != n or rom.mode != self.mode:
            raise ConfigurationError("twiddle ROM does not match this block")
        self.rom = rom
        self.lanes = [ButterflyUnit(kernel, self.scaling, lane) for lane in range(n // 2)]
        self._schedules = [routing_network(s, n) for s in range(self.stages)]
        self._bitrev = bit_reversed_order(n)
        self.registers: list[Sample] = [kernel.zero()] * n
        self.stage = 0
        self.loaded = False
        self.state = IDLE
        self.output: list[Sample] | None = None

    @property
    def busy(self) -> bool:
        return self.loaded

    def load_frame(self, samples: Iterable) -> None:
        """Latch a new frame into the register array in bit-reversed order."""
        samples = list(samples)
        if len(samples) != self.n:
            raise InputError(f"frame length {len(samples)} != n={self.n}")
        if self.loaded:
            raise ProtocolError(f"load_frame while mid-frame (stage {self.stage})")
        q = [self.kernel.quantize(x) for x in samples]
        self.registers = [q[j] for j in self._bitrev]
        self.stage = 0
        self.loaded = True
        self.output = None

    def step_cycle(self) -> ControlState:
        """Advance one clock edge; returns the control outputs for that cycle."""
        if not self.loaded:
            raise ProtocolError("step_cycle with no frame loaded")
        s = self.stage
        last = s == self.stages - 1
        state = ControlState(s, int(s != 0), int(last), int(last))
        regs = self.registers
        rom = self.rom.entries
        # all lanes read the same snapshot, then write back together
        results = [lane.execute(regs[p.index_a], regs[p.index_b], rom[p.twiddle_index])
                   for lane, p in zip(self.lanes, self._schedules[s].pairs)]
        nxt = list(regs)
        for p, (odd, even) in zip(self._schedules[s].pairs, results):
            nxt[p.index_a] = odd
            nxt[p.index_b] = even
        self.registers = nxt
        self.state = state
        if last:
            self.output = list(nxt)
            self.loaded = False
            self.stage = 0
        else:
            self.stage = s + 1
        return state

    def idle_cycle(self) -> ControlState:
        """A clock edge with no frame in flight."""
        if self.loaded:
            raise ProtocolError("idle_cycle while a frame is in flight")
        self.state = IDLE
        return IDLE

    def run_frame(self, samples: Iterable) -> tuple[list[Sample], list[ControlState]]:
        self.load_frame(samples)
        trace = [self.step_cycle() for _ in range(self.stages)]
        return self.output, trace
