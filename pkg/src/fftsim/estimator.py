"""scikit-learn compatible front ends for the simulated processors.

``fit`` only records the transform size and builds nothing expensive; the
cycle-level simulation runs inside ``transform``.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .errors import InputError
from .fft1d import Fft1dProcessor
from .fft2d import Fft2dSystem
from .numeric import FxFormat, NumericMode
from .validation import check_frames, check_vectors


def _mode(mode: str, total_bits: int, frac_bits: int) -> NumericMode:
    if mode == "fixed":
        return NumericMode.fixed(FxFormat(total_bits, frac_bits))
    if mode == "float":
        return NumericMode.exact_float()
    raise InputError(f"mode must be 'fixed' or 'float', got {mode!r}")


class _SimTransformer(TransformerMixin, BaseEstimator):
    def __init__(self, mode="fixed", total_bits=16, frac_bits=15, scaling=None):
        self.mode = mode
        self.total_bits = total_bits
        self.frac_bits = frac_bits
        self.scaling = scaling

    def _numeric_mode(self):
        return _mode(self.mode, self.total_bits, self.frac_bits)


class FFT1DTransformer(_SimTransformer):
    """Run each row of ``X`` through a simulated 1D FFT block.

    Attributes
    ----------
    n_ : int
        Transform length seen during ``fit``.
    overflow_ : bool
        Sticky saturation flag after the last ``transform``.
    cycles_ : int
        Clock cycles spent in the last ``transform``.
    """

    def fit(self, X, y=None):
        X = check_vectors(X)
        self.numeric_mode_ = self._numeric_mode()
        self.n_ = X.shape[1]
        self.n_features_in_ = self.n_
        return self

    def transform(self, X):
        check_is_fitted(self, "n_")
        X = check_vectors(X)
        if X.shape[1] != self.n_:
            raise InputError(f"fitted for n={self.n_}, got vectors of length {X.shape[1]}")
        proc = Fft1dProcessor(self.n_, self.numeric_mode_, self.scaling)
        out = np.empty_like(X)
        cycles = 0
        for i, row in enumerate(X):
            y, trace = proc.run_frame(row)
            out[i] = [proc.kernel.to_complex(v) for v in y]
            cycles += len(trace)
        self.overflow_ = proc.kernel.overflow
        self.cycles_ = cycles
        return out


class FFT2DTransformer(_SimTransformer):
    """Stream square frames through the simulated 2D processor.

    ``X`` is one ``(n, n)`` frame or a ``(k, n, n)`` batch; ``transform``
    always returns a ``(k, n, n)`` array of spectra.  The per-cycle trace of
    the last run is kept in ``trace_``.
    """

    def fit(self, X, y=None):
        X = check_frames(X)
        self.numeric_mode_ = self._numeric_mode()
        self.n_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "n_")
        X = check_frames(X)
        if X.shape[1] != self.n_:
            raise InputError(f"fitted for n={self.n_}, got {X.shape[1]}x{X.shape[2]} frames")
        result = Fft2dSystem(self.n_, self.numeric_mode_, self.scaling).run_stream(list(X))
        self.trace_ = result.trace
        self.cycles_ = result.cycles
        self.overflow_ = result.overflow
        return np.stack([s.data for s in result.spectra])
