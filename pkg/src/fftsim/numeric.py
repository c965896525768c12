"""Quantized complex arithmetic used by every simulated datapath.

Two numeric modes are supported.  In fixed mode samples are
:class:`FxComplex` values holding raw two's complement integers; all
arithmetic rounds half-to-even and saturates.  In exact-float mode samples are
plain Python ``complex`` values and no quantization happens anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Number
from typing import Union

from .errors import ConfigurationError, InputError

ROUND_HALF_EVEN = "round_half_even"
SATURATE = "saturate"


@dataclass(frozen=True)
class FxFormat:
    """Signed fixed-point word: ``total_bits`` wide, ``frac_bits`` fractional."""

    total_bits: int = 16
    frac_bits: int = 15
    rounding: str = ROUND_HALF_EVEN
    overflow: str = SATURATE

    def __post_init__(self):
        if not 2 <= self.total_bits <= 32:
            raise ConfigurationError(
                f"total_bits must lie in [2, 32], got {self.total_bits}")
        if not 0 <= self.frac_bits <= self.total_bits - 1:
            raise ConfigurationError(
                f"frac_bits must lie in [0, {self.total_bits - 1}], got {self.frac_bits}")
        if self.rounding != ROUND_HALF_EVEN:
            raise ConfigurationError(f"unsupported rounding mode {self.rounding!r}")
        if self.overflow != SATURATE:
            raise ConfigurationError(f"unsupported overflow mode {self.overflow!r}")

    @property
    def min_raw(self) -> int:
        return -(1 << (self.total_bits - 1))

    @property
    def max_raw(self) -> int:
        return (1 << (self.total_bits - 1)) - 1

    @property
    def lsb(self) -> float:
        return 2.0 ** -self.frac_bits

    @property
    def min_value(self) -> float:
        return self.min_raw * self.lsb

    @property
    def max_value(self) -> float:
        return self.max_raw * self.lsb

    def saturate(self, raw: int) -> tuple[int, bool]:
        if raw > self.max_raw:
            return self.max_raw, True
        if raw < self.min_raw:
            return self.min_raw, True
        return raw, False

    def to_raw(self, value: float) -> tuple[int, bool]:
        """Quantize one real channel; returns ``(raw, saturated)``."""
        value = float(value)
        if math.isnan(value):
            raise InputError("cannot quantize NaN")
        if math.isinf(value):
            return (self.max_raw if value > 0 else self.min_raw), True
        # scaling by a power of two is exact, so round() sees the true value
        return self.saturate(round(math.ldexp(value, self.frac_bits)))

    def from_raw(self, raw: int) -> float:
        return math.ldexp(raw, -self.frac_bits)

    def __str__(self):
        return f"Q{self.total_bits - self.frac_bits}.{self.frac_bits}"


Q15 = FxFormat(16, 15)


@dataclass(frozen=True)
class FxComplex:
    """A complex sample stored as two raw integers in units of one LSB."""

    re_raw: int
    im_raw: int
    fmt: FxFormat

    def __post_init__(self):
        lo, hi = self.fmt.min_raw, self.fmt.max_raw
        if not (lo <= self.re_raw <= hi and lo <= self.im_raw <= hi):
            raise ConfigurationError(
                f"raw pair ({self.re_raw}, {self.im_raw}) does not fit {self.fmt}")

    def to_complex(self) -> complex:
        return complex(self.fmt.from_raw(self.re_raw), self.fmt.from_raw(self.im_raw))

    def __complex__(self):
        return self.to_complex()


Sample = Union[FxComplex, complex]


@dataclass(frozen=True)
class NumericMode:
    """Either fixed-point in ``fmt`` or exact floating point (``fmt is None``)."""

    fmt: FxFormat | None = None

    @classmethod
    def fixed(cls, fmt: FxFormat = Q15) -> "NumericMode":
        return cls(fmt)

    @classmethod
    def exact_float(cls) -> "NumericMode":
        return cls(None)

    @property
    def is_fixed(self) -> bool:
        return self.fmt is not None

    def __str__(self):
        return f"fixed({self.fmt})" if self.is_fixed else "exact_float"


def _round_shift(value: int, shift: int) -> int:
    # arithmetic right shift with round-half-even on the discarded bits
    if shift == 0:
        return value
    q, r = divmod(value, 1 << shift)
    half = 1 << (shift - 1)
    if r > half or (r == half and q & 1):
        q += 1
    return q


class NumericKernel:
    """Arithmetic unit for one simulator instance.

    The only mutable state is the sticky ``overflow`` flag (and the
    ``saturations`` counter behind it), set whenever a result had to be
    clipped to the representable range.
    """

    def __init__(self, mode: NumericMode | None = None):
        self.mode = mode if mode is not None else NumericMode.fixed()
        self.overflow = False
        self.saturations = 0

    @property
    def fmt(self) -> FxFormat | None:
        return self.mode.fmt

    def reset_overflow(self):
        self.overflow = False
        self.saturations = 0

    def _sat(self, raw: int) -> int:
        raw, clipped = self.fmt.saturate(raw)
        if clipped:
            self.overflow = True
            self.saturations += 1
        return raw

    def _check(self, *operands):
        fmt = self.fmt
        for op in operands:
            if fmt is None:
                if isinstance(op, FxComplex):
                    raise ConfigurationError("fixed-point operand in exact_float kernel")
            elif not isinstance(op, FxComplex) or op.fmt != fmt:
                got = op.fmt if isinstance(op, FxComplex) else type(op).__name__
                raise ConfigurationError(f"operand format {got} does not match kernel format {fmt}")

    def quantize_real(self, value: float) -> int:
        """Single-channel quantization; saturation sets the overflow flag."""
        raw, clipped = self.fmt.to_raw(value)
        if clipped:
            self.overflow = True
            self.saturations += 1
        return raw

    def quantize(self, value: Number) -> Sample:
        """Bring an arbitrary number into the kernel's sample domain."""
        if isinstance(value, FxComplex):
            self._check(value)
            return value
        value = complex(value)
        if self.fmt is None:
            return value
        return FxComplex(self.quantize_real(value.real), self.quantize_real(value.imag), self.fmt)

    def to_complex(self, sample: Sample) -> complex:
        return sample.to_complex() if isinstance(sample, FxComplex) else complex(sample)

    def zero(self) -> Sample:
        return complex(0) if self.fmt is None else FxComplex(0, 0, self.fmt)

    def add(self, a: Sample, b: Sample) -> Sample:
        self._check(a, b)
        if self.fmt is None:
            return a + b
        return FxComplex(self._sat(a.re_raw + b.re_raw), self._sat(a.im_raw + b.im_raw), self.fmt)

    def sub(self, a: Sample, b: Sample) -> Sample:
        self._check(a, b)
        if self.fmt is None:
            return a - b
        return FxComplex(self._sat(a.re_raw - b.re_raw), self._sat(a.im_raw - b.im_raw), self.fmt)

    def mul(self, a: Sample, b: Sample) -> Sample:
        """Complex product in double width, then one rounding and saturation."""
        self._check(a, b)
        if self.fmt is None:
            return a * b
        f = self.fmt.frac_bits
        re = a.re_raw * b.re_raw - a.im_raw * b.im_raw
        im = a.re_raw * b.im_raw + a.im_raw * b.re_raw
        return FxComplex(self._sat(_round_shift(re, f)), self._sat(_round_shift(im, f)), self.fmt)

    def add_sub_halved(self, a: Sample, b: Sample) -> tuple[Sample, Sample]:
        """``((a + b) / 2, (a - b) / 2)`` from the full-width sum, rounded once."""
        self._check(a, b)
        if self.fmt is None:
            return (a + b) * 0.5, (a - b) * 0.5
        s = FxComplex(self._sat(_round_shift(a.re_raw + b.re_raw, 1)),
                      self._sat(_round_shift(a.im_raw + b.im_raw, 1)), self.fmt)
        d = FxComplex(self._sat(_round_shift(a.re_raw - b.re_raw, 1)),
                      self._sat(_round_shift(a.im_raw - b.im_raw, 1)), self.fmt)
        return s, d
