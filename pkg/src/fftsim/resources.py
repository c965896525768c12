"""Closed-form butterfly / multiplier / adder counts.

A butterfly contains one complex multiplier and two adder/subtractors, so
every count follows from the butterfly-unit total.  The reused design needs
N/2 units per 1D block; a fully unrolled one needs (N/2)*log2(N).
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction

from .butterfly import log2_exact
from .errors import ConfigurationError

DESIGNS = ("proposed", "traditional")
SCOPES = ("fft1d", "fft2d")


@dataclass(frozen=True)
class ResourceReport:
    n: int
    design: str
    scope: str
    butterfly_units: int
    multipliers: int
    adders: int

    def to_json(self) -> str:
        return json.dumps(asdict(self))


def _valid_n(n) -> int:
    stages = log2_exact(n)
    if stages < 1:
        raise ConfigurationError(f"n must be >= 2, got {n}")
    return stages


def resources(n: int, design: str = "proposed", scope: str = "fft2d") -> ResourceReport:
    stages = _valid_n(n)
    if design not in DESIGNS:
        raise ConfigurationError(f"design must be one of {DESIGNS}, got {design!r}")
    if scope not in SCOPES:
        raise ConfigurationError(f"scope must be one of {SCOPES}, got {scope!r}")
    per_block = n // 2 if design == "proposed" else (n // 2) * stages
    bu = per_block if scope == "fft1d" else 2 * per_block
    return ResourceReport(n, design, scope, bu, bu, 2 * bu)


def reduction_factor(n: int) -> Fraction:
    """Proposed-over-traditional butterfly ratio for the 2D processor, 1/log2(n)."""
    stages = _valid_n(n)
    if stages < 2:
        raise ConfigurationError(f"reduction factor needs n >= 4, got {n}")
    alpha = Fraction(1, stages)
    ratio = Fraction(resources(n, "proposed", "fft2d").butterfly_units,
                     resources(n, "traditional", "fft2d").butterfly_units)
    assert alpha == ratio
    return alpha


SWEEP_FIELDS = ("n", "scope",
                "proposed_bu", "traditional_bu",
                "proposed_mult", "traditional_mult",
                "proposed_add", "traditional_add",
                "ratio")


def _sweep_row(n: int, scope: str) -> dict:
    p = resources(n, "proposed", scope)
    t = resources(n, "traditional", scope)
    return {
        "n": n, "scope": scope,
        "proposed_bu": p.butterfly_units, "traditional_bu": t.butterfly_units,
        "proposed_mult": p.multipliers, "traditional_mult": t.multipliers,
        "proposed_add": p.adders, "traditional_add": t.adders,
        "ratio": Fraction(p.butterfly_units, t.butterfly_units),
    }


def sweep_report(n_values, scope: str = "fft2d", jobs: int = 1) -> list[dict]:
    """One row per n (sorted) with proposed and traditional counts."""
    ns = sorted(set(n_values))
    for n in ns:
        _valid_n(n)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda n: _sweep_row(n, scope), ns))
    return [_sweep_row(n, scope) for n in ns]


def sweep_to_csv(rows, fp=None) -> str | None:
    own = fp is None
    out = io.StringIO() if own else fp
    w = csv.DictWriter(out, fieldnames=SWEEP_FIELDS, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({**row, "ratio": str(row["ratio"])})
    return out.getvalue() if own else None
