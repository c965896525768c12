"""Frame ingestion (PGM P2/P5, complex CSV) and spectrum emission."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InputError
from .fft2d import Frame2d
from .numeric import FxFormat

PGM = "pgm"
CSV_COMPLEX = "csv_complex"
UNIT_RANGE = "unit_range"
RAW = "raw"
REAL_IMAG_CSV = "real_imag_csv"
MAGNITUDE_CSV = "magnitude_csv"


@dataclass(frozen=True)
class InputSpec:
    path: Path
    format: str = PGM
    normalize: str = UNIT_RANGE

    def __post_init__(self):
        object.__setattr__(self, "path", Path(self.path))
        if self.format not in (PGM, CSV_COMPLEX):
            raise InputError(f"unknown input format {self.format!r}")
        if self.normalize not in (UNIT_RANGE, RAW):
            raise InputError(f"unknown normalization {self.normalize!r}")


def _pgm_header(buf: bytes) -> tuple[str, list[int], int]:
    """Parse magic, width, height, maxval; returns the offset after maxval."""
    tokens = []
    pos = 0
    token_re = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")
    while len(tokens) < 4:
        m = token_re.match(buf, pos)
        if m is None:
            raise InputError("truncated PGM header")
        tokens.append(m.group(1))
        pos = m.end()
    magic = tokens[0].decode("ascii", "replace")
    if magic not in ("P2", "P5"):
        raise InputError(f"not a PGM file (magic {magic!r})")
    try:
        nums = [int(t) for t in tokens[1:]]
    except ValueError:
        raise InputError(f"malformed PGM header values {tokens[1:]!r}") from None
    return magic, nums, pos


def read_pgm(path) -> tuple[np.ndarray, int]:
    """Return ``(pixels, maxval)`` with pixels shaped ``(height, width)``."""
    buf = Path(path).read_bytes()
    magic, (width, height, maxval), pos = _pgm_header(buf)
    if width <= 0 or height <= 0:
        raise InputError(f"PGM has empty dimensions {width}x{height}")
    if not 0 < maxval < 65536:
        raise InputError(f"PGM maxval {maxval} outside 1..65535")
    count = width * height
    if magic == "P5":
        data = buf[pos + 1:]  # exactly one whitespace byte follows maxval
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        if len(data) < count * dtype.itemsize:
            raise InputError(f"PGM raster truncated: expected {count} pixels")
        pixels = np.frombuffer(data, dtype=dtype, count=count).astype(np.int64)
    else:
        body = re.sub(rb"#[^\n]*", b"", buf[pos:]).split()
        if len(body) < count:
            raise InputError(f"PGM raster truncated: expected {count} pixels, got {len(body)}")
        try:
            pixels = np.array([int(t) for t in body[:count]], dtype=np.int64)
        except ValueError as exc:
            raise InputError(f"non-integer PGM pixel: {exc}") from None
    pixels = pixels.reshape(height, width)
    bad = np.argwhere((pixels > maxval) | (pixels < 0))
    if len(bad):
        r, c = bad[0]
        raise InputError(f"pixel at row {r}, column {c} is {pixels[r, c]} > maxval {maxval}")
    return pixels, maxval


def write_pgm(path, pixels, maxval: int = 255, binary: bool = True) -> None:
    pixels = np.asarray(pixels, dtype=np.int64)
    h, w = pixels.shape
    head = f"{'P5' if binary else 'P2'}\n{w} {h}\n{maxval}\n".encode("ascii")
    with open(path, "wb") as fp:
        fp.write(head)
        if binary:
            dtype = ">u2" if maxval > 255 else "u1"
            fp.write(pixels.astype(dtype).tobytes())
        else:
            for row in pixels:
                fp.write((" ".join(str(int(p)) for p in row) + "\n").encode("ascii"))


def _read_complex_csv(path) -> tuple[int, list[complex]]:
    text = Path(path).read_text(encoding="utf-8")
    lines = [(i, ln) for i, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if not lines:
        raise InputError(f"{path}: empty CSV")
    first, header = lines[0]
    try:
        n = int(header.strip())
    except ValueError:
        raise InputError(f"{path}: line {first}: expected size header, got {header!r}") from None
    values = []
    for lineno, ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != 2:
            raise InputError(f"{path}: line {lineno}: expected 're,im', got {ln!r}")
        try:
            values.append(complex(float(parts[0]), float(parts[1])))
        except ValueError:
            raise InputError(f"{path}: line {lineno}: non-numeric value {ln!r}") from None
    return n, values


def _check_range(data: np.ndarray, fmt: FxFormat | None, path) -> None:
    if fmt is None:
        return
    for plane, name in ((data.real, "real"), (data.imag, "imag")):
        bad = np.argwhere((plane > fmt.max_value) | (plane < fmt.min_value))
        if len(bad):
            idx = tuple(int(i) for i in bad[0])
            where = f"row {idx[0]}, column {idx[1]}" if len(idx) == 2 else f"index {idx[0]}"
            raise InputError(f"{path}: {name} value {plane[idx]} at {where} "
                             f"outside {fmt} range [{fmt.min_value}, {fmt.max_value}]")


def load_frame(spec: InputSpec, fmt: FxFormat | None = None) -> Frame2d:
    """Load a square frame; with ``fmt`` given, out-of-range samples are an error."""
    if not spec.path.exists():
        raise InputError(f"{spec.path}: no such file")
    if spec.format == PGM:
        pixels, maxval = read_pgm(spec.path)
        h, w = pixels.shape
        if h != w:
            raise InputError(f"{spec.path}: non-square image {w}x{h}")
        data = pixels / maxval - 0.5 if spec.normalize == UNIT_RANGE else pixels.astype(float)
        data = data.astype(complex)
    else:
        n, values = _read_complex_csv(spec.path)
        if len(values) != n * n:
            raise InputError(f"{spec.path}: header says n={n} but found {len(values)} samples, "
                             f"expected {n * n}")
        data = np.array(values, dtype=complex).reshape(n, n)
    n = data.shape[0]
    if n < 2 or n & (n - 1):
        raise InputError(f"{spec.path}: side {n} is not a power of two >= 2")
    _check_range(data, fmt, spec.path)
    return Frame2d(data)


def load_vector(path, fmt: FxFormat | None = None) -> np.ndarray:
    """Load a 1D complex CSV: size header, then ``re,im`` per line."""
    path = Path(path)
    if not path.exists():
        raise InputError(f"{path}: no such file")
    n, values = _read_complex_csv(path)
    if len(values) != n:
        raise InputError(f"{path}: header says n={n} but found {len(values)} samples")
    data = np.array(values, dtype=complex)
    _check_range(data, fmt, path)
    return data


def store_vector(data, path) -> None:
    data = np.ravel(np.asarray(data, dtype=complex))
    lines = [str(len(data))] + [f"{float(v.real)!r},{float(v.imag)!r}" for v in data]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def store_spectrum(frame, path, layout: str = REAL_IMAG_CSV) -> None:
    """Write a frame row-major.

    ``real_imag_csv`` matches the complex CSV loader (size header, then one
    ``re,im`` line per sample) at full float precision.  ``magnitude_csv``
    is a header-less n-by-n grid of magnitudes with 9 significant digits.
    """
    data = np.asarray(getattr(frame, "data", frame), dtype=complex)
    if layout == REAL_IMAG_CSV:
        n = data.shape[0]
        lines = [str(n)] + [f"{float(v.real)!r},{float(v.imag)!r}" for v in data.ravel()]
    elif layout == MAGNITUDE_CSV:
        lines = [",".join(f"{abs(v):.9g}" for v in row) for row in data]
    else:
        raise InputError(f"unknown spectrum layout {layout!r}")
    try:
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write spectrum to {path}: {exc.strerror}") from exc
