"""The six Kummer local solutions and continuation of 2F1 beyond the unit disk."""

from __future__ import annotations

import cmath
from typing import Optional

import numpy as np

from ..errors import InvalidArgument
from .ode import PathPlan, integrate_path
from .special import hyp2f1_series

SERIES_RADIUS = 0.9
_START = 0.5
_HEIGHT = 0.75

F4_VARIANTS = ("corrected", "printed")
F6_VARIANTS = ("corrected", "printed")


def _gauss_rhs(a, b, c):
    def rhs(w, y):
        f, fp = y
        fpp = (a * b * f - (c - (a + b + 1) * w) * fp) / (w * (1 - w))
        return np.array((fp, fpp))

    return rhs


def hyp2f1_continued(a: complex, b: complex, c: complex, w: complex, *, side: int = 1,
                     clearance: float = 0.05, rtol: float = 1e-13) -> complex:
    """F(a, b, c; w) on the principal sheet cut along [1, oo).

    Inside |w| < 0.9 this is the series.  Elsewhere the hypergeometric
    equation is integrated from w = 1/2 along a path through the half plane
    containing w; for w on the cut, ``side`` selects w + i0 (+1) or w - i0.
    """
    w = complex(w)
    if abs(w) < SERIES_RADIUS:
        return hyp2f1_series(a, b, c, w, margin=1 - SERIES_RADIUS)
    if side not in (1, -1):
        raise InvalidArgument("side must be +1 or -1")
    sigma = (1 if w.imag > 0 else -1) if w.imag != 0 else side
    height = max(_HEIGHT, abs(w.imag))
    path = PathPlan([_START, _START + 1j * sigma * height, w.real + 1j * sigma * height, w],
                    min_clearance=clearance)
    y0 = (hyp2f1_series(a, b, c, _START),
          a * b / c * hyp2f1_series(a + 1, b + 1, c + 1, _START))
    y, _ = integrate_path(_gauss_rhs(a, b, c), path, y0, singular_points=(0, 1),
                          rtol=rtol, atol=1e-300)
    return complex(y[0])


def kummer_local(index: int, a: complex, b: complex, c: complex, z: complex, *,
                 variant: Optional[str] = None, side: int = 1, rtol: float = 1e-13) -> complex:
    """f_1..f_6 around z = 0, 1, oo with principal-branch prefactors.

    ``variant`` applies to f_4 ("corrected" uses (c-a, c-b), "printed" the
    repeated (c-a, c-a)) and to f_6 ("corrected" has argument 1/z, "printed"
    reads the argument as z).  ``side`` picks the lip of the cut when a
    series argument lands on [1, oo); ``rtol`` is passed to the ODE continuation.
    """
    z = complex(z)

    def F(A, B, C, w):
        return hyp2f1_continued(A, B, C, w, side=side, rtol=rtol)

    if index == 1:
        return F(a, b, c, z)
    if index == 2:
        return z ** (1 - c) * F(a - c + 1, b - c + 1, 2 - c, z)
    if index == 3:
        return F(a, b, a + b - c + 1, 1 - z)
    if index == 4:
        v = variant or "corrected"
        if v not in F4_VARIANTS:
            raise InvalidArgument(f"unknown f4 variant {v!r}")
        second = c - b if v == "corrected" else c - a
        return (1 - z) ** (c - a - b) * F(c - a, second, c - a - b + 1, 1 - z)
    if index == 5:
        return z ** (-a) * F(a, a - c + 1, a - b + 1, 1 / z)
    if index == 6:
        v = variant or "corrected"
        if v not in F6_VARIANTS:
            raise InvalidArgument(f"unknown f6 variant {v!r}")
        arg = 1 / z if v == "corrected" else z
        return z ** (-b) * F(b - c + 1, b, b - a + 1, arg)
    raise InvalidArgument(f"Kummer index must be 1..6, got {index}")


def phase(x: float) -> complex:
    """e^{i pi x}."""
    return cmath.exp(1j * cmath.pi * x)
