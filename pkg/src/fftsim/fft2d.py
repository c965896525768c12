"""Two 1D blocks joined by ping-pong RAM banks under a ``sel`` controller.

Block 1 transforms rows and writes each finished row into the bank chosen
by ``sel``; block 2 reads columns from the other bank, so the transpose
between the two passes is done purely by addressing.  The controller
inverts ``sel`` once both the write side and the read side of the current
frame period are complete.
"""

from __future__ import annotations

import csv
import io
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .butterfly import is_power_of_two, twiddle_rom_build
from .errors import InputError, ProtocolError
from .fft1d import ControlState, Fft1dProcessor
from .numeric import NumericKernel, NumericMode, Sample

TRACE_HEADER = ("cycle", "blk1_sb", "blk1_isl", "blk1_osl", "blk1_done",
                "blk2_sb", "blk2_isl", "blk2_osl", "blk2_done", "sel")


@dataclass
class Frame2d:
    """Square, power-of-two sized complex frame in row-major order."""

    data: np.ndarray
    n: int = field(init=False)

    def __post_init__(self):
        data = np.asarray(self.data, dtype=complex)
        if data.ndim != 2:
            raise InputError(f"frame must be 2D, got shape {data.shape}")
        rows, cols = data.shape
        if rows != cols:
            raise InputError(f"frame must be square, got {rows}x{cols}")
        if not is_power_of_two(rows) or rows < 2:
            raise InputError(f"frame side must be a power of two >= 2, got {rows}")
        self.data = data
        self.n = rows


class PingPongStore:
    """RAM1/RAM2 pair with the RAM controller's ``sel`` line.

    Writes go to ``banks[sel]``; reads come from ``banks[1 - sel]``.  A bank
    only becomes readable once a full frame has been written to it and
    ``sel`` has flipped.
    """

    def __init__(self, n: int, kernel: NumericKernel | None = None):
        self.n = n
        fill = kernel.zero() if kernel is not None else 0j
        self.banks = [[[fill] * n for _ in range(n)] for _ in range(2)]
        self.tags = [None, None]
        self.sel = 0
        self.write_count = 0
        self.read_count = 0
        self.read_ready = False
        self.toggles = 0
        self.last_write_bank = None
        self.last_read_bank = None

    @property
    def sel_bar(self) -> int:
        return 1 - self.sel

    @property
    def write_full(self) -> bool:
        return self.write_count == self.n

    @property
    def read_tag(self):
        return self.tags[self.sel_bar] if self.read_ready else None

    def write_row(self, row_index: int, row: Sequence[Sample], tag=None) -> None:
        if self.write_count >= self.n:
            raise ProtocolError(f"write to full bank {self.sel} (RAM controller bug)")
        if not 0 <= row_index < self.n:
            raise ProtocolError(f"row index {row_index} out of range for n={self.n}")
        if len(row) != self.n:
            raise ProtocolError(f"row length {len(row)} != n={self.n}")
        self.banks[self.sel][row_index] = list(row)
        self.tags[self.sel] = tag
        self.write_count += 1
        self.last_write_bank = self.sel

    def read_column(self, col_index: int) -> list[Sample]:
        if not self.read_ready:
            raise ProtocolError(f"read from bank {self.sel_bar} before it holds a complete frame")
        if not 0 <= col_index < self.n:
            raise ProtocolError(f"column index {col_index} out of range for n={self.n}")
        if self.read_count >= self.n:
            raise ProtocolError(f"bank {self.sel_bar} already fully read this period")
        bank = self.banks[self.sel_bar]
        self.read_count += 1
        self.last_read_bank = self.sel_bar
        return [bank[r][col_index] for r in range(self.n)]

    def tick(self) -> bool:
        """End-of-cycle controller update; returns True when ``sel`` flips.

        The read side counts as complete when all ``n`` columns were read or
        when the read bank never received a frame (pipeline fill).
        """
        read_done = self.read_count == self.n or not self.read_ready
        flipped = self.write_count == self.n and read_done
        if flipped:
            self.sel = self.sel_bar
            self.write_count = 0
            self.read_count = 0
            self.read_ready = True
            self.toggles += 1
        self.last_write_bank = None
        self.last_read_bank = None
        return flipped


class SystemTraceRow(NamedTuple):
    cycle: int
    block1: ControlState
    block2: ControlState
    sel: int
    write_bank: int  # -1 when no write this cycle
    read_bank: int  # -1 when no read this cycle

    def csv_fields(self) -> tuple:
        return (self.cycle, *self.block1, *self.block2, self.sel)


@dataclass
class StreamResult:
    spectra: list
    trace: list
    cycles: int
    overflow: bool
    saturations: int
    frame_period: int
    latency: int

    @property
    def spectrum(self) -> Frame2d:
        return self.spectra[0]


class Fft2dSystem:
    """The complete 2D processor: block 1, ping-pong store, block 2."""

    def __init__(self, n: int, mode: NumericMode | None = None, scaling: bool | None = None):
        self.kernel = NumericKernel(mode)
        self.mode = self.kernel.mode
        rom = twiddle_rom_build(n, self.mode)
        self.block1 = Fft1dProcessor(n, kernel=self.kernel, scaling=scaling, rom=rom)
        self.block2 = Fft1dProcessor(n, kernel=self.kernel, scaling=scaling, rom=rom)
        self.n = n
        self.scaling = self.block1.scaling
        self.store = PingPongStore(n, self.kernel)

    @property
    def frame_period(self) -> int:
        return self.n * self.block1.stages

    def run_stream(self, images: Iterable) -> StreamResult:
        frames = [img if isinstance(img, Frame2d) else Frame2d(img) for img in images]
        for f in frames:
            if f.n != self.n:
                raise InputError(f"frame of size {f.n} in a stream of size {self.n}")
        n, kernel, store = self.n, self.kernel, self.store
        b1, b2 = self.block1, self.block2
        rows = deque((fi, r) for fi in range(len(frames)) for r in range(n))
        spectra = [np.zeros((n, n), dtype=complex) for _ in frames]
        remaining = len(frames) * n  # columns still to produce
        row_in_flight = col_in_flight = None
        trace = []
        cycle = 0
        while remaining:
            # block 1: pull the next row once the previous one has retired
            if not b1.busy and rows and not store.write_full:
                row_in_flight = rows.popleft()
                fi, r = row_in_flight
                b1.load_frame(frames[fi].data[r])
            s1 = b1.step_cycle() if b1.busy else b1.idle_cycle()
            if s1.done:
                store.write_row(row_in_flight[1], b1.output, tag=row_in_flight[0])
            # block 2: columns come from the bank not selected for writing
            if not b2.busy and store.read_ready and store.read_count < n:
                c = store.read_count
                col_in_flight = (store.read_tag, c)
                b2.load_frame(store.read_column(c))
            s2 = b2.step_cycle() if b2.busy else b2.idle_cycle()
            if s2.done:
                fi, c = col_in_flight
                spectra[fi][:, c] = [kernel.to_complex(x) for x in b2.output]
                remaining -= 1
            wb = -1 if store.last_write_bank is None else store.last_write_bank
            rb = -1 if store.last_read_bank is None else store.last_read_bank
            # DONE is sampled first, then the controller ticks
            trace.append(SystemTraceRow(cycle, s1, s2, store.sel, wb, rb))
            store.tick()
            cycle += 1
        return StreamResult(
            spectra=[Frame2d(s) for s in spectra],
            trace=trace,
            cycles=cycle,
            overflow=kernel.overflow,
            saturations=kernel.saturations,
            frame_period=self.frame_period,
            latency=2 * self.frame_period,
        )


def run_2d(image, mode: NumericMode | None = None, scaling: bool | None = None) -> StreamResult:
    """Transform one frame; the spectrum is ``result.spectrum``."""
    frame = image if isinstance(image, Frame2d) else Frame2d(image)
    return Fft2dSystem(frame.n, mode, scaling).run_stream([frame])


def run_stream(images: Sequence, mode: NumericMode | None = None,
               scaling: bool | None = None) -> StreamResult:
    frames = [img if isinstance(img, Frame2d) else Frame2d(img) for img in images]
    if not frames:
        raise InputError("empty stream")
    sizes = {f.n for f in frames}
    if len(sizes) != 1:
        raise InputError(f"mixed frame sizes in stream: {sorted(sizes)}")
    return Fft2dSystem(frames[0].n, mode, scaling).run_stream(frames)


def trace_to_csv(trace: Iterable[SystemTraceRow], fp=None) -> str | None:
    """Write the per-cycle trace; returns the text when ``fp`` is None."""
    own = fp is None
    out = io.StringIO() if own else fp
    w = csv.writer(out, lineterminator="\n")
    w.writerow(TRACE_HEADER)
    for row in trace:
        w.writerow(row.csv_fields())
    return out.getvalue() if own else None


def read_trace_csv(fp) -> list[dict]:
    return [{k: int(v) for k, v in row.items()} for row in csv.DictReader(fp)]
