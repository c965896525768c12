"""Command-line front end: ``fftsim {fft2d,fft1d,trace,verify,resources}``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import traceback
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import frame_io
from .butterfly import is_power_of_two
from .errors import ConfigurationError, FFTSimError, InputError
from .fft1d import Fft1dProcessor
from .fft2d import Frame2d, run_2d, run_stream, trace_to_csv
from .numeric import FxFormat, NumericMode
from .oracle import compare, dft2d_oracle, dft_oracle
from .resources import reduction_factor, resources, sweep_report, sweep_to_csv

SEED_ENV = "FFTSIM_SEED"


def _numeric_mode(args) -> NumericMode:
    if args.mode == "float":
        return NumericMode.exact_float()
    return NumericMode.fixed(FxFormat(args.width, args.frac))


def _scaling(args) -> bool | None:
    return False if args.no_scaling else None


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ConfigurationError(f"{SEED_ENV}={env!r} is not an integer") from None
    return 0


def _check_n(n) -> int:
    if n is None:
        raise ConfigurationError("--n is required when no --input is given")
    if not is_power_of_two(n) or n < 2:
        raise ConfigurationError(f"--n must be a power of two >= 2, got {n}")
    return n


def random_frames(n: int, count: int, seed: int) -> list[np.ndarray]:
    """Complex frames with both channels uniform in [-0.5, 0.5)."""
    rng = np.random.default_rng(seed)
    return [rng.uniform(-0.5, 0.5, (n, n)) + 1j * rng.uniform(-0.5, 0.5, (n, n))
            for _ in range(count)]


def _generated(shape, signal: str, seed: int) -> np.ndarray:
    if signal == "impulse":
        data = np.zeros(shape, dtype=complex)
        data[(0,) * len(shape)] = 1.0
        return data
    if signal == "constant":
        return np.full(shape, 0.25, dtype=complex)
    rng = np.random.default_rng(seed)
    return rng.uniform(-0.5, 0.5, shape) + 1j * rng.uniform(-0.5, 0.5, shape)


def _input_format(args) -> str:
    return frame_io.PGM if args.format == "pgm" else frame_io.CSV_COMPLEX


def _load_2d(args, mode: NumericMode) -> Frame2d:
    if args.input is not None:
        spec = frame_io.InputSpec(args.input, _input_format(args))
        frame = frame_io.load_frame(spec, mode.fmt)
        if args.n is not None and args.n != frame.n:
            raise ConfigurationError(f"--n {args.n} disagrees with input frame size {frame.n}")
        return frame
    n = _check_n(args.n)
    return Frame2d(_generated((n, n), args.signal, _seed(args)))


def cmd_fft2d(args) -> int:
    mode = _numeric_mode(args)
    frame = _load_2d(args, mode)
    res = run_2d(frame, mode, _scaling(args))
    layout = frame_io.MAGNITUDE_CSV if args.layout == "magnitude" else frame_io.REAL_IMAG_CSV
    if args.output:
        frame_io.store_spectrum(res.spectrum, args.output, layout)
    if args.trace_out:
        with open(args.trace_out, "w", encoding="utf-8", newline="") as fp:
            trace_to_csv(res.trace, fp)
    print(f"n={frame.n} mode={mode} cycles={res.cycles} frame_latency={res.latency} "
          f"overflow={int(res.overflow)} saturations={res.saturations}")
    return 0


def cmd_fft1d(args) -> int:
    mode = _numeric_mode(args)
    if args.input is not None:
        x = frame_io.load_vector(args.input, mode.fmt)
        if args.n is not None and args.n != len(x):
            raise ConfigurationError(f"--n {args.n} disagrees with input length {len(x)}")
        n = _check_n(len(x))
    else:
        n = _check_n(args.n)
        x = _generated((n,), args.signal, _seed(args))
    proc = Fft1dProcessor(n, mode, _scaling(args))
    y, trace = proc.run_frame(x)
    y = [proc.kernel.to_complex(v) for v in y]
    if args.output:
        frame_io.store_vector(y, args.output)
    print(f"n={n} mode={mode} cycles={len(trace)} overflow={int(proc.kernel.overflow)}")
    return 0


def cmd_trace(args) -> int:
    mode = _numeric_mode(args)
    n = _check_n(args.n)
    res = run_stream(random_frames(n, args.frames, _seed(args)), mode, _scaling(args))
    text = trace_to_csv(res.trace)
    if args.trace_out:
        Path(args.trace_out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    sels = [row.sel for row in res.trace]
    toggles = sum(a != b for a, b in zip(sels, sels[1:]))
    done1 = sum(row.block1.done for row in res.trace)
    done2 = sum(row.block2.done for row in res.trace)
    print(f"frames={args.frames} cycles={res.cycles} sel_toggles={toggles} "
          f"blk1_done={done1} blk2_done={done2}",
          file=sys.stderr if not args.trace_out else sys.stdout)
    return 0


def cmd_verify(args) -> int:
    mode = _numeric_mode(args)
    n = _check_n(args.n)
    scaling = _scaling(args)
    frames = random_frames(n, args.frames, _seed(args))
    ok = True
    worst_rel, worst_snr = 0.0, float("inf")
    for i, data in enumerate(frames):
        res = run_2d(data, mode, scaling)
        scale = 1.0 / (n * n) if _scaled(mode, scaling) else 1.0
        m = compare(res.spectrum, dft2d_oracle(data), scale)
        print(f"frame {i}: {m}")
        worst_rel = max(worst_rel, m.relative)
        worst_snr = min(worst_snr, m.snr_db)
        passed = m.relative <= args.rel_tol if not mode.is_fixed else m.snr_db >= args.snr_threshold
        ok &= passed
    crit = (f"relative <= {args.rel_tol:g}" if not mode.is_fixed
            else f"snr >= {args.snr_threshold:g} dB")
    print(f"{'PASS' if ok else 'FAIL'}: n={n} mode={mode} frames={len(frames)} "
          f"worst_relative={worst_rel:.3e} worst_snr={worst_snr:.2f} dB ({crit})")
    return 0 if ok else 1


def _scaled(mode: NumericMode, scaling: bool | None) -> bool:
    return mode.is_fixed if scaling is None else scaling


def _parse_sweep(text: str) -> list[int]:
    if ".." in text:
        lo, hi = (int(t) for t in text.split("..", 1))
        out, n = [], lo
        while n <= hi:
            out.append(n)
            n *= 2
        return out
    return [int(t) for t in text.split(",") if t.strip()]


def cmd_resources(args) -> int:
    if args.n is None and not args.sweep:
        raise ConfigurationError("resources needs --n or --sweep")
    if args.n is not None:
        n = _check_n(args.n)
        reports = [resources(n, d, s) for s in ("fft1d", "fft2d")
                   for d in ("proposed", "traditional")]
        for r in reports:
            print(f"{r.scope:5s} {r.design:11s} BU={r.butterfly_units} "
                  f"mult={r.multipliers} add={r.adders}")
        alpha = reduction_factor(n) if n >= 4 else None
        print(f"alpha={alpha if alpha is not None else 'n/a'}")
        if args.output:
            payload = {"n": n, "alpha": str(alpha) if alpha is not None else None,
                       "reports": [asdict(r) for r in reports]}
            Path(args.output).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    if args.sweep:
        rows = sweep_report(_parse_sweep(args.sweep), jobs=args.jobs)
        text = sweep_to_csv(rows)
        if args.sweep_out:
            Path(args.sweep_out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="transform size (power of two)")
    common.add_argument("--mode", choices=("fixed", "float"), default="fixed")
    common.add_argument("--width", type=int, default=16, help="fixed-point word width")
    common.add_argument("--frac", type=int, default=15, help="fixed-point fractional bits")
    common.add_argument("--no-scaling", action="store_true",
                        help="disable per-stage halving in the butterflies")
    common.add_argument("--seed", type=int, help=f"RNG seed (falls back to ${SEED_ENV}, then 0)")
    common.add_argument("--jobs", type=int, default=1)

    io_opts = argparse.ArgumentParser(add_help=False)
    io_opts.add_argument("--input", type=Path)
    io_opts.add_argument("--format", choices=("pgm", "csv"), default="pgm")
    io_opts.add_argument("--signal", choices=("random", "impulse", "constant"), default="random",
                         help="generated input when --input is absent")
    io_opts.add_argument("--output", type=Path)

    p = argparse.ArgumentParser(prog="fftsim", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("fft2d", parents=[common, io_opts], help="simulate the 2D processor")
    s.add_argument("--layout", choices=("real_imag", "magnitude"), default="real_imag")
    s.add_argument("--trace-out", type=Path)
    s.set_defaults(func=cmd_fft2d)

    s = sub.add_parser("fft1d", parents=[common, io_opts], help="simulate one 1D block")
    s.set_defaults(func=cmd_fft1d)

    s = sub.add_parser("trace", parents=[common], help="dump the per-cycle trace CSV")
    s.add_argument("--frames", type=int, default=1)
    s.add_argument("--trace-out", type=Path)
    s.set_defaults(func=cmd_trace)

    s = sub.add_parser("verify", parents=[common], help="check the simulator against the oracle")
    s.add_argument("--frames", type=int, default=5)
    s.add_argument("--snr-threshold", type=float, default=60.0)
    s.add_argument("--rel-tol", type=float, default=1e-9)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("resources", parents=[common], help="butterfly/multiplier/adder counts")
    s.add_argument("--sweep", help="comma list or 'lo..hi' doubling range")
    s.add_argument("--output", type=Path, help="JSON report path")
    s.add_argument("--sweep-out", type=Path, help="sweep CSV path")
    s.set_defaults(func=cmd_resources)
    return p


def _origin(exc: BaseException) -> str:
    tb = traceback.extract_tb(exc.__traceback__)
    return Path(tb[-1].filename).stem if tb else "fftsim"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FFTSimError, OSError) as exc:
        kind = type(exc).__name__
        print(f"error [{_origin(exc)}] {kind}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
