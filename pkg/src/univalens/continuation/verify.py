"""Residual checks of closed-form solutions against vector fields."""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Callable, List, Sequence, Tuple, Union

import numpy as np
import sympy

from ..algebra.fields import RationalVF2
from .field import NumericField

CAUCHY_NODES = 16
CAUCHY_RADIUS = 1e-3


class PolynomialField:
    """An ``n``-dimensional polynomial vector field given by component strings."""

    def __init__(self, components: Sequence[str], variables: Sequence[str] = ("x", "y", "z")):
        if len(components) != len(variables):
            raise ValueError("need one component per variable")
        syms = sympy.symbols(list(variables))
        local = {str(s): s for s in syms}
        exprs = [sympy.sympify(c.replace("^", "**"), locals=local) for c in components]
        self.components = tuple(components)
        self.variables = tuple(variables)
        self._fn = sympy.lambdify(syms, exprs, modules="cmath")

    def __call__(self, state: Sequence[complex]) -> np.ndarray:
        return np.array(self._fn(*state), dtype=complex)


FieldLike = Union[RationalVF2, NumericField, PolynomialField, Callable]


def _as_callable(vf: FieldLike) -> Callable[[np.ndarray], np.ndarray]:
    if isinstance(vf, RationalVF2):
        vf = NumericField(vf)
    if isinstance(vf, NumericField):
        return lambda s: vf(0j, s)
    return lambda s: np.asarray(vf(s), dtype=complex)


def cauchy_derivative(phi: Callable, t: complex, radius: float = CAUCHY_RADIUS,
                      nodes: int = CAUCHY_NODES) -> np.ndarray:
    """Derivative of a holomorphic map by the trapezoidal rule on a small circle."""
    acc = None
    for k in range(nodes):
        w = cmath.exp(2j * cmath.pi * k / nodes)
        v = np.asarray(phi(t + radius * w), dtype=complex) / w
        acc = v if acc is None else acc + v
    return acc / (nodes * radius)


@dataclass
class VerificationReport:
    max_residual: float
    tol: float
    residuals: List[Tuple[complex, float]]
    skipped: List[Tuple[complex, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.residuals) and self.max_residual <= self.tol

    def to_json(self) -> dict:
        return {"passed": self.passed, "max_residual": self.max_residual, "tol": self.tol,
                "residuals": [[t, r] for t, r in self.residuals],
                "skipped": [[t, why] for t, why in self.skipped]}


def verify_solution(parametrization: Callable, vf: FieldLike, times: Sequence[complex], tol: float,
                    derivative: Callable = None) -> VerificationReport:
    """Maximum relative residual ``|phi'(t) - X(phi(t))| / |X(phi(t))|`` over the sample times.

    The derivative is taken from ``derivative`` when given and otherwise by a
    Cauchy integral, so the check never uses the vector field to compute it.
    """
    field_fn = _as_callable(vf)
    residuals, skipped = [], []
    for t in times:
        t = complex(t)
        try:
            state = np.asarray(parametrization(t), dtype=complex)
            lhs = np.asarray(derivative(t), dtype=complex) if derivative else cauchy_derivative(parametrization, t)
            rhs = field_fn(state)
        except (ZeroDivisionError, OverflowError, ValueError) as exc:
            skipped.append((t, f"not evaluable: {exc}"))
            continue
        if not (np.all(np.isfinite(state)) and np.all(np.isfinite(lhs)) and np.all(np.isfinite(rhs))):
            skipped.append((t, "pole of the parametrization"))
            continue
        scale = float(np.max(np.abs(rhs)))
        if scale == 0.0:
            scale = max(1.0, float(np.max(np.abs(lhs))))
        residuals.append((t, float(np.max(np.abs(lhs - rhs))) / scale))
    worst = max((r for _, r in residuals), default=float("inf"))
    return VerificationReport(worst, tol, residuals, skipped)
