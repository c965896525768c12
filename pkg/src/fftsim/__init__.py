"""Cycle-level simulator of an area-efficient radix-2 2D FFT processor."""

from .butterfly import ButterflyUnit, TwiddleRom, butterfly_exec, twiddle_rom_build
from .errors import ConfigurationError, FFTSimError, InputError, ProtocolError
from .estimator import FFT1DTransformer, FFT2DTransformer
from .fft1d import ControlState, Fft1dProcessor, StageSchedule, routing_network
from .fft2d import Fft2dSystem, Frame2d, PingPongStore, run_2d, run_stream, trace_to_csv
from .numeric import Q15, FxComplex, FxFormat, NumericKernel, NumericMode
from .oracle import ErrorMetrics, compare, dft2d_oracle, dft2d_rowcol_oracle, dft_oracle
from .resources import ResourceReport, reduction_factor, resources, sweep_report

__version__ = "0.1.0"
