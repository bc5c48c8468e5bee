"""Numeric checks of the GL(2) x torus covariance of the projective integral.

F(Z) = integral of prod_j l_j(tau)^alpha_j over a segment between two roots,
dehomogenized at tau = (1, t) so that l_j = z_0j + t z_1j.  With
sum(alpha) = -2 one expects F(gZ) = det(g)^-1 F(Z) and F(Zh) = F(Z) prod h_j^alpha_j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import DegenerateConfiguration, ExponentSumViolation, InvalidArgument
from .quadrature import LinearFactor, QuadSpec, segment_integral


@dataclass(frozen=True)
class Comparison:
    name: str
    lhs: complex
    rhs: complex
    abs_err: float

    @property
    def rel_err(self) -> float:
        return self.abs_err / abs(self.rhs) if self.rhs else self.abs_err


def _as_matrix(z) -> np.ndarray:
    m = np.asarray(z, dtype=float)
    if m.ndim != 2 or m.shape[0] != 2:
        raise InvalidArgument("configuration must be a 2 x N matrix")
    return m


def projective_integral(z, alphas: Sequence[float], cycle: tuple[int, int],
                        q: QuadSpec = QuadSpec(), *, side: int = 1) -> complex:
    """Integrate prod (z_0j + t z_1j)^alpha_j from the root of column p to column q."""
    m = _as_matrix(z)
    if len(alphas) != m.shape[1]:
        raise InvalidArgument("one exponent per column")
    if not math.isclose(sum(alphas), -2.0, abs_tol=1e-12):
        raise ExponentSumViolation(f"exponents sum to {sum(alphas)}, not -2")
    factors = [LinearFactor(m[0, j], m[1, j], float(al)) for j, al in enumerate(alphas)]
    p, r = cycle
    ends = []
    for j in (p, r):
        root = factors[j].root
        if root is None:
            raise DegenerateConfiguration(f"column {j} has its root at infinity")
        ends.append(root)
    return segment_integral(factors, ends[0], ends[1], side=side, spec=q).value


def covariance_check(z, g, h: Sequence[float], alphas: Sequence[float], cycle: tuple[int, int],
                     q: QuadSpec = QuadSpec()) -> tuple[Comparison, Comparison]:
    """Return the (left GL(2), right torus) comparisons for one configuration."""
    m = _as_matrix(z)
    g = np.asarray(g, dtype=float)
    h = np.asarray(h, dtype=float)
    if np.any(h <= 0):
        raise InvalidArgument("torus scalings must be positive to keep principal branches")
    base = projective_integral(m, alphas, cycle, q)
    left = projective_integral(g @ m, alphas, cycle, q)
    want_left = base / np.linalg.det(g)
    right = projective_integral(m * h[None, :], alphas, cycle, q)
    want_right = base * math.prod(hj ** al for hj, al in zip(h, alphas))
    return (Comparison("F(gZ) = det(g)^-1 F(Z)", left, want_left, abs(left - want_left)),
            Comparison("F(Zh) = F(Z) prod h^alpha", right, want_right, abs(right - want_right)))


def elementary_g(p: int, i: int, eps: float) -> np.ndarray:
    """1 + eps E_{pi}."""
    g = np.eye(2)
    g[p, i] += eps
    return g


def torus_h(ncols: int, j: int, eps: float) -> np.ndarray:
    h = np.ones(ncols)
    h[j] *= 1 + eps
    return h


def master_value(z, alphas: Sequence[float], tau: Sequence[float]) -> float:
    m = _as_matrix(z)
    ls = np.asarray(tau, dtype=float) @ m
    if np.any(ls <= 0):
        raise InvalidArgument("sample point must make every linear form positive")
    return float(np.prod(ls ** np.asarray(alphas, dtype=float)))


def master_derivative_check(z, alphas: Sequence[float], tau: Sequence[float], i: int, j: int,
                            step: float = 1e-5) -> Comparison:
    """Central difference of Phi in z_ij against alpha_j tau_i / l_j * Phi."""
    m = _as_matrix(z)
    up, dn = m.copy(), m.copy()
    up[i, j] += step
    dn[i, j] -= step
    fd = (master_value(up, alphas, tau) - master_value(dn, alphas, tau)) / (2 * step)
    lj = float(np.asarray(tau, dtype=float) @ m[:, j])
    exact = alphas[j] * tau[i] / lj * master_value(m, alphas, tau)
    return Comparison(f"dPhi/dz_{i}{j}", fd, exact, abs(fd - exact))
