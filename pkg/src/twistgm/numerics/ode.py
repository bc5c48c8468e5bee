"""Adaptive Dormand-Prince 5(4) transport of linear systems along complex polylines."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..errors import InvalidArgument, PathThroughSingularity, StiffnessFailure

# Dormand-Prince tableau
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = np.array((35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0))
_B4 = np.array((5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40))
_E = _B5 - _B4


@dataclass(frozen=True)
class PathPlan:
    waypoints: tuple[complex, ...]
    min_clearance: float = 0.05

    def __init__(self, waypoints: Sequence[complex], min_clearance: float = 0.05):
        if not waypoints:
            raise InvalidArgument("a path needs at least one waypoint")
        if min_clearance <= 0:
            raise InvalidArgument("min_clearance must be positive")
        object.__setattr__(self, "waypoints", tuple(complex(w) for w in waypoints))
        object.__setattr__(self, "min_clearance", float(min_clearance))

    def check(self, singular_points: Sequence[complex]) -> None:
        for s in singular_points:
            for z0, z1 in zip(self.waypoints, self.waypoints[1:] or self.waypoints):
                if _segment_distance(complex(s), z0, z1) < self.min_clearance:
                    raise PathThroughSingularity(
                        f"segment {z0} -> {z1} passes within {self.min_clearance:g} of z = {s}"
                    )


def _segment_distance(p: complex, a: complex, b: complex) -> float:
    d = b - a
    if d == 0:
        return abs(p - a)
    s = ((p - a) * d.conjugate()).real / abs(d) ** 2
    s = min(1.0, max(0.0, s))
    return abs(p - (a + s * d))


@dataclass(frozen=True)
class OdeStats:
    steps: int
    rejected: int


def integrate_path(
    rhs: Callable[[complex, np.ndarray], np.ndarray],
    path: PathPlan,
    y0: Sequence[complex],
    *,
    singular_points: Sequence[complex] = (),
    rtol: float = 1e-12,
    atol: float = 1e-14,
    max_steps: int = 200_000,
) -> tuple[np.ndarray, OdeStats]:
    """Solve dy/dz = rhs(z, y) along the polyline, segment by segment."""
    path.check(singular_points)
    y = np.array(y0, dtype=complex)
    steps = rejected = 0
    for z0, z1 in zip(path.waypoints, path.waypoints[1:]):
        dz = z1 - z0
        if dz == 0:
            continue

        def f(s, yy, z0=z0, dz=dz):
            return dz * rhs(z0 + s * dz, yy)

        s, h = 0.0, 0.01
        k1 = f(s, y)
        while s < 1.0:
            if steps + rejected >= max_steps:
                raise StiffnessFailure(f"step budget of {max_steps} exhausted at z = {z0 + s * dz}")
            h = min(h, 1.0 - s)
            if h < 1e-14:
                raise StiffnessFailure(f"step size underflow at z = {z0 + s * dz}")
            ks = [k1]
            for i in range(1, 7):
                yi = y + h * sum(a * k for a, k in zip(_A[i], ks))
                ks.append(f(s + _C[i] * h, yi))
            y5 = y + h * sum(b * k for b, k in zip(_B5, ks))
            err_vec = h * sum(e * k for e, k in zip(_E, ks))
            scale = atol + rtol * np.maximum(np.abs(y), np.abs(y5))
            err = float(np.sqrt(np.mean(np.abs(err_vec / scale) ** 2)))
            if err <= 1.0:
                s += h
                y = y5
                k1 = ks[6]  # first-same-as-last
                steps += 1
            else:
                rejected += 1
            fac = 0.9 * (1.0 / max(err, 1e-10)) ** 0.2
            h *= min(5.0, max(0.2, fac))
    return y, OdeStats(steps, rejected)


def ode_solve_path(sys, path: PathPlan, initial: Sequence[complex], **kw) -> np.ndarray:
    """Transport f' = A(z) f of a numeric-capable system along ``path``.

    ``sys`` needs ``evaluate(z)`` returning A(z) and ``singular_points``.
    """

    def rhs(z, y):
        return np.asarray(sys.evaluate(z), dtype=complex) @ y

    pts = [complex(float(s)) for s in sys.singular_points]
    y, _ = integrate_path(rhs, path, initial, singular_points=pts, **kw)
    return y
