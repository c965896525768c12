"""Brute-force DFT references and error metrics.

Nothing here shares code with the simulator: twiddles come from direct
``cos``/``sin`` calls on an exactly reduced angle and sums are accumulated
with ``math.fsum``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError


def _roots(n: int) -> list[tuple[float, float]]:
    # index m -> (cos, -sin) of 2*pi*m/n; callers reduce m mod n in integers
    return [(math.cos(2.0 * math.pi * m / n), -math.sin(2.0 * math.pi * m / n)) for m in range(n)]


def dft_oracle(x) -> np.ndarray:
    """Direct O(N^2) evaluation of ``Y[k] = sum_n x[n] W_N^(n k)``."""
    x = [complex(v) for v in np.ravel(np.asarray(x, dtype=complex))]
    n = len(x)
    if n == 0:
        raise InputError("dft_oracle needs at least one sample")
    w = _roots(n)
    out = np.empty(n, dtype=complex)
    for k in range(n):
        re_terms, im_terms = [], []
        for i, v in enumerate(x):
            c, s = w[(i * k) % n]
            re_terms += (v.real * c, -v.imag * s)
            im_terms += (v.real * s, v.imag * c)
        out[k] = complex(math.fsum(re_terms), math.fsum(im_terms))
    return out


def _square(image) -> np.ndarray:
    data = getattr(image, "data", image)
    data = np.asarray(data, dtype=complex)
    if data.ndim != 2 or data.shape[0] != data.shape[1]:
        raise InputError(f"2D oracle needs a square frame, got shape {data.shape}")
    return data


def dft2d_oracle(image) -> np.ndarray:
    """Direct O(N^4) double sum ``F(u,v) = sum_x sum_y F(x,y) W^(u x) W^(v y)``.

    Rows are indexed by ``x`` and columns by ``y``.
    """
    data = _square(image)
    n = data.shape[0]
    w = _roots(n)
    pts = [(x, y, complex(data[x, y])) for x in range(n) for y in range(n)]
    out = np.empty((n, n), dtype=complex)
    for u in range(n):
        for v in range(n):
            re_terms, im_terms = [], []
            for x, y, f in pts:
                c, s = w[(u * x + v * y) % n]
                re_terms += (f.real * c, -f.imag * s)
                im_terms += (f.real * s, f.imag * c)
            out[u, v] = complex(math.fsum(re_terms), math.fsum(im_terms))
    return out


def dft2d_rowcol_oracle(image) -> np.ndarray:
    """Same transform as :func:`dft2d_oracle` via 1D oracles over rows then columns."""
    data = _square(image)
    tmp = np.array([dft_oracle(row) for row in data])
    return np.array([dft_oracle(col) for col in tmp.T]).T


def idft_oracle(y) -> np.ndarray:
    """Inverse via conjugate, forward DFT, conjugate, divide by N."""
    y = np.asarray(y, dtype=complex)
    return np.conj(dft_oracle(np.conj(y))) / len(y)


@dataclass(frozen=True)
class ErrorMetrics:
    max_abs: float
    rms: float
    snr_db: float
    relative: float
    bit_exact: bool

    def __str__(self):
        snr = "inf (bit-exact)" if self.bit_exact else f"{self.snr_db:.2f} dB"
        return (f"max_abs={self.max_abs:.3e} rms={self.rms:.3e} "
                f"relative={self.relative:.3e} snr={snr}")


def compare(sim, oracle, scale: float = 1.0) -> ErrorMetrics:
    """Error of ``sim`` against ``scale * oracle``.

    ``relative`` is the worst-case error over the peak reference magnitude.
    """
    sim = np.asarray(getattr(sim, "data", sim), dtype=complex)
    ref = scale * np.asarray(getattr(oracle, "data", oracle), dtype=complex)
    if sim.shape != ref.shape:
        raise InputError(f"shape mismatch: simulator {sim.shape} vs oracle {ref.shape}")
    err = np.abs(sim - ref)
    max_abs = float(err.max()) if err.size else 0.0
    err_power = float(np.mean(err ** 2)) if err.size else 0.0
    sig_power = float(np.mean(np.abs(ref) ** 2)) if ref.size else 0.0
    peak = float(np.abs(ref).max()) if ref.size else 0.0
    bit_exact = max_abs == 0.0
    if bit_exact:
        snr = math.inf
    elif sig_power == 0.0:
        snr = 0.0
    else:
        snr = max(0.0, 10.0 * math.log10(sig_power / err_power))
    if peak > 0:
        relative = max_abs / peak
    else:
        relative = 0.0 if bit_exact else math.inf
    return ErrorMetrics(max_abs, math.sqrt(err_power), snr, relative, bit_exact)
