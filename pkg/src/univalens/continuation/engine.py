"""Continuation of solutions of rational vector fields along time paths."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..algebra.fields import RationalVF2
from .field import NumericField
from .integrator import Outcome, integrate_segment, tail_converges
from .paths import PathSpec

NEAR_POLE = 1e-3
LARGE_NORM = 1e3


@dataclass
class ContinuationResult:
    endpoint: Tuple[complex, ...]
    error_estimate: float
    outcome: Outcome
    time: complex
    steps: int
    rejected: int
    escape_point: Optional[Tuple[complex, ...]] = None
    reason: str = ""
    samples: List[Tuple[complex, Tuple[complex, ...]]] = field(default_factory=list)

    @property
    def completed(self) -> bool:
        return self.outcome is Outcome.COMPLETED

    def to_json(self) -> dict:
        out = {"outcome": self.outcome.value, "endpoint": list(self.endpoint),
               "error_estimate": self.error_estimate, "time": self.time,
               "steps": self.steps, "rejected": self.rejected, "reason": self.reason}
        if self.escape_point is not None:
            out["escape_point"] = list(self.escape_point)
        return out

    def samples_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        n = len(self.endpoint)
        names = ["x", "y", "z", "u"][:n] if n <= 4 else [f"y{k}" for k in range(n)]
        w.writerow(["t_re", "t_im"] + [f"{c}_{p}" for c in names for p in ("re", "im")])
        for t, y in self.samples:
            row = [repr(t.real), repr(t.imag)]
            for v in y:
                row += [repr(v.real), repr(v.imag)]
            w.writerow(row)
        return buf.getvalue()


def integrate_path(rhs: Callable, y0, path: PathSpec, tol: float, *, guard=None,
                   keep_samples: bool = False, near_boundary=None) -> ContinuationResult:
    """Integrate a general complex system ``dy/dt = rhs(t, y)`` along a polyline."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    y = np.array(y0, dtype=complex)
    err, steps, rejected = 0.0, 0, 0
    samples: list = []
    t = path.start
    for a, b in path.segments():
        run = integrate_segment(rhs, y, a, b, tol, guard=guard, keep_samples=keep_samples)
        err += run.error
        steps += run.steps
        rejected += run.rejected
        if keep_samples:
            samples.extend((tt, tuple(complex(v) for v in yy)) for tt, yy in run.samples[(1 if samples else 0):])
        y, t = run.y, run.t
        if run.outcome is not Outcome.COMPLETED:
            outcome, reason = run.outcome, run.reason
            converging = tail_converges(run.increments)
            if outcome is Outcome.ESCAPED and not converging:
                outcome, reason = Outcome.INDETERMINATE, reason + "; remaining-time bound not certified"
            elif outcome is Outcome.STEP_FAILURE and converging and near_boundary is not None and near_boundary(y):
                outcome, reason = Outcome.ESCAPED, "approached the boundary with a convergent remaining-time bound"
            point = tuple(complex(v) for v in y)
            return ContinuationResult(point, err, outcome, t, steps, rejected,
                                      point if outcome is Outcome.ESCAPED else None, reason, samples)
    return ContinuationResult(tuple(complex(v) for v in y), err, Outcome.COMPLETED, t, steps, rejected,
                              samples=samples)


def continue_solution(vf: Union[RationalVF2, NumericField], start, path: PathSpec, tol: float = 1e-10,
                      keep_samples: bool = False) -> ContinuationResult:
    """Continue the solution of ``vf`` with value ``start`` at ``path.start`` along ``path``."""
    nf = vf if isinstance(vf, NumericField) else NumericField(vf)
    x0, y0 = complex(start[0]), complex(start[1])
    if nf.on_pole_locus(x0, y0):
        raise ValueError("start point lies on the pole locus")

    def near_boundary(state):
        x, y = complex(state[0]), complex(state[1])
        return nf.pole_distance(x, y) < NEAR_POLE or max(abs(x), abs(y)) > LARGE_NORM

    return integrate_path(nf, (x0, y0), path, tol, guard=nf.guard, keep_samples=keep_samples,
                          near_boundary=near_boundary)
