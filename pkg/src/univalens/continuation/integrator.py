"""Dormand–Prince 5(4) integration of holomorphic systems along complex segments.

A segment ``t0 -> t1`` of the time plane is parametrized by ``s in [0, 1]``
so that the complex system ``dy/dt = f(t, y)`` becomes ``dy/ds = (t1 - t0) f``.
The fifth-order solution is propagated (local extrapolation) and the embedded
fourth-order solution provides the error estimate.  Steps are accepted when the
mixed absolute/relative local error is below ``tol``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np

# Dormand–Prince coefficients
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40])
_E = _B5 - _B4

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 5.0


class Outcome(str, enum.Enum):
    COMPLETED = "Completed"
    ESCAPED = "EscapedToPoleLocus"
    STEP_FAILURE = "StepFailure"
    INDETERMINATE = "Indeterminate"


class EscapeSignal(Exception):
    """Raised by a guard when the state has left the domain of the field."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass
class SegmentRun:
    y: np.ndarray
    t: complex
    error: float
    outcome: Outcome
    steps: int = 0
    rejected: int = 0
    increments: List[float] = field(default_factory=list)
    samples: List[Tuple[complex, np.ndarray]] = field(default_factory=list)
    reason: str = ""


RHS = Callable[[complex, np.ndarray], np.ndarray]
Guard = Callable[[np.ndarray], None]


def integrate_segment(f: RHS, y0, t0: complex, t1: complex, tol: float, *,
                      guard: Optional[Guard] = None, h0: Optional[float] = None,
                      h_min: float = 1e-14, max_steps: int = 200_000,
                      keep_samples: bool = False) -> SegmentRun:
    """Integrate from ``t0`` to ``t1`` along the straight segment."""
    y = np.array(y0, dtype=complex)
    delta = complex(t1) - complex(t0)
    length = abs(delta)
    if length == 0.0:
        return SegmentRun(y, complex(t0), 0.0, Outcome.COMPLETED)

    def g(s, state):
        return delta * np.asarray(f(t0 + s * delta, state), dtype=complex)

    s, err_total = 0.0, 0.0
    h = h0 if h0 is not None else min(1.0, 0.01 / length + 1e-3)
    k1 = g(0.0, y)
    run = SegmentRun(y, complex(t0), 0.0, Outcome.COMPLETED)
    if keep_samples:
        run.samples.append((complex(t0), y.copy()))
    while s < 1.0:
        if run.steps + run.rejected >= max_steps:
            run.outcome, run.reason = Outcome.STEP_FAILURE, "maximum number of steps reached"
            break
        h = min(h, 1.0 - s)
        try:
            ks = [k1]
            for i in range(1, 7):
                yi = y + h * sum(a * k for a, k in zip(_A[i], ks))
                ks.append(g(s + _C[i] * h, yi))
            y_new = y + h * sum(b * k for b, k in zip(_B5, ks) if b)
            err_vec = h * sum(e * k for e, k in zip(_E, ks))
            bad = not (np.all(np.isfinite(y_new)) and np.all(np.isfinite(err_vec)))
        except (ZeroDivisionError, OverflowError, FloatingPointError):
            bad = True
        if bad:
            run.rejected += 1
            h *= 0.25
            if h * length < h_min:
                run.outcome, run.reason = Outcome.STEP_FAILURE, "non-finite values near a singularity"
                break
            continue
        scale = tol * (1.0 + np.maximum(np.abs(y), np.abs(y_new)))
        ratio = float(np.max(np.abs(err_vec) / scale))
        if ratio <= 1.0:
            s += h
            y = y_new
            k1 = ks[6]
            err_total += float(np.max(np.abs(err_vec)))
            run.steps += 1
            run.increments.append(h * length)
            if keep_samples:
                run.samples.append((t0 + s * delta, y.copy()))
            if guard is not None:
                try:
                    guard(y)
                except EscapeSignal as esc:
                    run.outcome, run.reason = Outcome.ESCAPED, esc.reason
                    break
        else:
            run.rejected += 1
        factor = MAX_FACTOR if ratio == 0 else SAFETY * ratio ** -0.2
        h *= min(MAX_FACTOR, max(MIN_FACTOR, factor))
        if h * length < h_min and s < 1.0:
            run.outcome, run.reason = Outcome.STEP_FAILURE, f"step size underflow at s={s:.6g}"
            break
    run.y, run.t, run.error = y, t0 + s * delta, err_total
    return run


def tail_converges(increments: List[float], window: int = 256, margin: float = 10.0) -> bool:
    """Heuristic test that the remaining time to the boundary is finite.

    Over the last ``window`` accepted steps the increments must fit a geometric
    sequence with ratio below one and must have shrunk by at least ``margin``,
    so that the geometric tail bound is small compared with the time covered.
    """
    tail = [v for v in increments[-window:] if v > 0]
    if len(tail) < 8:
        return False
    logs = np.log(np.array(tail))
    slope = float(np.polyfit(np.arange(len(logs)), logs, 1)[0])
    return slope < 0.0 and tail[-1] * margin <= tail[0]
