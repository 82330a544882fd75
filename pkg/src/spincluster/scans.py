"""Parameter sweeps: grids, phase boundaries, maxima, large-N curves.

A grid walks one or two axes (B, delta, T, or N) over fixed remaining
parameters and yields one record per point in row-major order (axis1
outer).  Invalid points (non-integer N, negative T, j = 0) produce a
flagged record with NaN measures instead of aborting the sweep, so a grid
that brushes an invalid corner still returns everything else.

Threshold temperatures come from a coarse scan plus bisection on the last
sign change of C(T), which keeps re-entrant regions honest.  The B-T
maximum of the rescaled concurrence uses the vectorized temperature
kernel per field value and sharpens the argmax with two 3x3 local
refinements at half and quarter grid spacing.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from . import entanglement
from .errors import DomainError, SpinClusterError
from .sectors import ClusterSpec
from .thermo import Temperature

__all__ = [
    "Axis",
    "GridSpec",
    "ScanRecord",
    "Boundary",
    "scan",
    "point_record",
    "threshold_temperature",
    "boundary",
    "max_rescaled",
    "limit_curve",
]

_AXIS_NAMES = {"b": "B", "t": "T", "n": "N", "delta": "delta"}
_AXIS_FIELD = {"B": "b", "T": "t", "N": "n", "delta": "delta"}
_FIXED_KEYS = ("n", "j", "delta", "b", "t")


def _canonical_axis(name: str) -> str:
    try:
        return _AXIS_NAMES[str(name).strip().lower()]
    except KeyError:
        raise DomainError(
            f"unknown axis {name!r}; valid axes are B, T, N, delta"
        ) from None


@dataclass(frozen=True)
class Axis:
    """One swept parameter: `steps` evenly spaced values from lo to hi."""

    name: str
    lo: float
    hi: float
    steps: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "name", _canonical_axis(self.name))
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
            raise DomainError(f"axis {self.name}: need finite lo <= hi, got [{lo}, {hi}]")
        if isinstance(self.steps, bool) or not isinstance(self.steps, (int, np.integer)):
            raise DomainError(f"axis {self.name}: steps must be an integer")
        if self.steps < 1:
            raise DomainError(f"axis {self.name}: steps must be >= 1, got {self.steps}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "steps", int(self.steps))

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


@dataclass(frozen=True)
class GridSpec:
    """One or two axes over a base point; every cluster field must be covered."""

    axis1: Axis
    axis2: Optional[Axis] = None
    fixed: dict = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        fixed = dict(self.fixed) if self.fixed else {}
        for key in fixed:
            if key not in _FIXED_KEYS:
                raise DomainError(f"unknown fixed parameter {key!r}; valid: {_FIXED_KEYS}")
        axis_fields = [_AXIS_FIELD[self.axis1.name]]
        if self.axis2 is not None:
            if self.axis2.name == self.axis1.name:
                raise DomainError(f"axis1 and axis2 both sweep {self.axis1.name}")
            axis_fields.append(_AXIS_FIELD[self.axis2.name])
        for field in axis_fields:
            if field in fixed:
                raise DomainError(f"{field!r} is both an axis and a fixed parameter")
        for required in ("n", "j", "t"):
            if required not in fixed and required not in axis_fields:
                raise DomainError(f"parameter {required!r} is neither fixed nor on an axis")
        fixed.setdefault("delta", 0.0)
        fixed.setdefault("b", 0.0)
        object.__setattr__(self, "fixed", fixed)

    def points(self) -> Iterator[tuple[float, float, float, float, float]]:
        """(n, j, delta, b, t) per grid point, axis1 outer, row-major."""
        base = {k: float(v) for k, v in self.fixed.items() if k in _FIXED_KEYS}
        f1 = _AXIS_FIELD[self.axis1.name]
        inner = self.axis2.values() if self.axis2 is not None else None
        f2 = _AXIS_FIELD[self.axis2.name] if self.axis2 is not None else None
        for v1 in self.axis1.values():
            point = dict(base)
            point[f1] = float(v1)
            if inner is None:
                yield (point.get("n"), point["j"], point["delta"], point["b"], point["t"])
                continue
            for v2 in inner:
                point[f2] = float(v2)
                yield (point.get("n"), point["j"], point["delta"], point["b"], point["t"])

    def size(self) -> int:
        return self.axis1.steps * (self.axis2.steps if self.axis2 is not None else 1)


@dataclass(frozen=True)
class ScanRecord:
    """One evaluated grid point; NaN measures flag an invalid point."""

    n: int
    j: float
    delta: float
    b: float
    t: float
    c: float
    c_r: float
    eof: float

    @property
    def valid(self) -> bool:
        return not math.isnan(self.c)


@dataclass(frozen=True)
class Boundary:
    """Threshold temperatures along a control axis (only where one exists)."""

    control_name: str
    points: tuple[tuple[float, float], ...]


def point_record(n, j, delta, b, t) -> ScanRecord:
    """Evaluate one parameter point, flagging instead of raising."""
    values = (n, j, delta, b, t)
    finite = all(v is not None and math.isfinite(float(v)) for v in values)
    n_int = int(round(float(n))) if finite else 0
    ok = (
        finite
        and abs(float(n) - n_int) <= 1e-9
        and n_int >= 2
        and float(j) != 0.0
        and float(t) >= 0.0
    )
    if not ok:
        nan = float("nan")
        return ScanRecord(
            n_int,
            float(j) if finite else float("nan"),
            float(delta) if finite else float("nan"),
            float(b) if finite else float("nan"),
            float(t) if finite else float("nan"),
            nan,
            nan,
            nan,
        )
    try:
        point = entanglement.thermal_entanglement(
            ClusterSpec(n_int, float(j), float(delta), float(b)), Temperature(float(t))
        )
    except SpinClusterError:
        nan = float("nan")
        return ScanRecord(n_int, float(j), float(delta), float(b), float(t), nan, nan, nan)
    return ScanRecord(
        n_int,
        float(j),
        float(delta),
        float(b),
        float(t),
        point.concurrence,
        point.rescaled,
        point.eof,
    )


def scan(grid: GridSpec, threads: int = 1) -> list[ScanRecord]:
    """Evaluate every grid point, in grid order, optionally across threads."""
    points = list(grid.points())
    if threads in (None, 0):
        threads = os.cpu_count() or 1
    threads = int(threads)
    if threads < 0:
        raise DomainError(f"threads must be >= 0, got {threads}")
    if threads <= 1 or len(points) < 256:
        return [point_record(*p) for p in points]
    chunks = np.array_split(np.arange(len(points)), threads * 4)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(lambda idx: [point_record(*points[i]) for i in idx], chunks)
        out: list[ScanRecord] = []
        for part in parts:
            out.extend(part)
    return out


def _concurrence_at(spec: ClusterSpec, t: float) -> float:
    return float(entanglement.concurrence_batch(spec, np.array([t]))[0])


def threshold_temperature(
    spec: ClusterSpec, t_max: float, coarse_points: int = 256
) -> Optional[float]:
    """Temperature where C(T) last drops to zero on [0, t_max].

    Returns None when the cluster is unentangled on the whole coarse
    grid, t_max itself when C(t_max) > 0 (the region is not closed inside
    the window), and otherwise bisects the last positive-to-zero change
    down to 1e-6 in T.
    """
    t_max = float(t_max)
    if not math.isfinite(t_max) or t_max <= 0.0:
        raise DomainError(f"t_max must be positive and finite, got {t_max}")
    if coarse_points < 2:
        raise DomainError(f"coarse_points must be >= 2, got {coarse_points}")
    ts = np.linspace(0.0, t_max, int(coarse_points))
    c = entanglement.concurrence_batch(spec, ts)
    positive = np.flatnonzero(c > 0.0)
    if positive.size == 0:
        return None
    last = int(positive[-1])
    if last == ts.size - 1:
        return t_max
    lo, hi = float(ts[last]), float(ts[last + 1])
    while hi - lo > 1e-6:
        mid = 0.5 * (lo + hi)
        if _concurrence_at(spec, mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def boundary(
    control_name: str,
    control_values: Iterable[float],
    template: ClusterSpec,
    t_max: float,
) -> Boundary:
    """Threshold temperature along B or delta; silent where none exists."""
    name = _canonical_axis(control_name)
    if name not in ("B", "delta"):
        raise DomainError(f"boundary control must be B or delta, got {control_name!r}")
    field = _AXIS_FIELD[name]
    points = []
    for value in control_values:
        v = float(value)
        if not math.isfinite(v):
            raise DomainError(f"control value must be finite, got {value!r}")
        spec = replace(template, **{field: v})
        threshold = threshold_temperature(spec, t_max)
        if threshold is not None:
            points.append((v, float(threshold)))
    return Boundary(name, tuple(points))


def max_rescaled(n: int, b_grid=None, t_grid=None) -> float:
    """Maximum of (N-1)C over the B-T plane at J = 1, Delta = 0.

    Defaults cover B in [0, 3] and T in [0.005, 2] at 200 points each;
    two 3x3 refinements at half and quarter spacing sharpen the argmax.
    """
    b_values = np.linspace(0.0, 3.0, 200) if b_grid is None else np.asarray(b_grid, float)
    t_values = np.linspace(0.005, 2.0, 200) if t_grid is None else np.asarray(t_grid, float)
    if b_values.ndim != 1 or b_values.size < 2 or t_values.ndim != 1 or t_values.size < 2:
        raise DomainError("b_grid and t_grid must be 1-d with at least 2 points")
    if np.any(t_values < 0.0):
        raise DomainError("temperatures must be >= 0")

    scale = float(n - 1)
    best = 0.0
    best_b = float(b_values[0])
    best_t = float(t_values[0])
    for b in b_values:
        spec = ClusterSpec(int(n), 1.0, 0.0, float(b))
        cr = scale * entanglement.concurrence_batch(spec, t_values)
        i = int(np.argmax(cr))
        if cr[i] > best:
            best = float(cr[i])
            best_b = float(b)
            best_t = float(t_values[i])

    db = float(b_values[1] - b_values[0])
    dt = float(t_values[1] - t_values[0])
    b_lo, b_hi = float(b_values[0]), float(b_values[-1])
    t_lo, t_hi = float(t_values[0]), float(t_values[-1])
    for shrink in (2.0, 4.0):
        bb = np.clip(best_b + (db / shrink) * np.array([-1.0, 0.0, 1.0]), b_lo, b_hi)
        tt = np.clip(best_t + (dt / shrink) * np.array([-1.0, 0.0, 1.0]), t_lo, t_hi)
        for b in bb:
            spec = ClusterSpec(int(n), 1.0, 0.0, float(b))
            cr = scale * entanglement.concurrence_batch(spec, tt)
            i = int(np.argmax(cr))
            if cr[i] > best:
                best = float(cr[i])
                best_b = float(b)
                best_t = float(tt[i])
    return best


def limit_curve(
    delta_values: Iterable[float],
    n_list: Sequence[int],
    t: float = 0.01,
    j: float = -1.0,
) -> list[tuple[float, int, float]]:
    """(delta, n, (n-1)C) rows over a delta grid for each cluster size.

    Defaults probe the ferromagnetic side at low temperature, where the
    rescaled concurrence approaches its size-independent limit shape.
    """
    temp = Temperature(float(t))
    rows: list[tuple[float, int, float]] = []
    for n in n_list:
        n = int(n)
        for d in delta_values:
            spec = ClusterSpec(n, float(j), float(d), 0.0)
            point = entanglement.thermal_entanglement(spec, temp)
            rows.append((float(d), n, point.rescaled))
    return rows
