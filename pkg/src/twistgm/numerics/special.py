"""Pochhammer symbols, the Gauss series and Gamma/Beta in double precision."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from ..errors import InvalidArgument, OutsideDisk, PolePar

EPS = 2.220446049250313e-16

# Lanczos coefficients for g = 7, nine terms
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)


def _is_nonpositive_integer(x: complex, tol: float = 1e-14) -> bool:
    x = complex(x)
    if abs(x.imag) > tol:
        return False
    r = round(x.real)
    return r <= 0 and abs(x.real - r) <= tol * max(1.0, abs(r))


def pochhammer(a: complex, n: int) -> complex:
    """Rising factorial (a)_n with (a)_0 = 1."""
    if n < 0:
        raise InvalidArgument(f"Pochhammer index must be non-negative, got {n}")
    out = 1 + 0j
    for k in range(n):
        out *= a + k
    return out


def gamma_ln(a: complex) -> complex:
    """log Gamma(a) via Lanczos, reflected for Re(a) < 1/2.

    The imaginary part is only determined mod 2 pi, which is all that
    exponentiation needs.
    """
    a = complex(a)
    if _is_nonpositive_integer(a):
        raise PolePar(f"Gamma has a pole at {a.real:g}")
    if a.real < 0.5:
        return complex(math.log(math.pi)) - cmath.log(cmath.sin(math.pi * a)) - gamma_ln(1 - a)
    x = a - 1
    acc = complex(_LANCZOS[0])
    for i, coef in enumerate(_LANCZOS[1:], start=1):
        acc += coef / (x + i)
    t = x + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (x + 0.5) * cmath.log(t) - t + cmath.log(acc)


def gamma(a: complex) -> complex:
    return cmath.exp(gamma_ln(a))


def beta(a: complex, b: complex) -> complex:
    """B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b)."""
    if _is_nonpositive_integer(a + b):
        raise PolePar(f"a + b = {complex(a + b).real:g} is a pole of Gamma")
    return cmath.exp(gamma_ln(a) + gamma_ln(b) - gamma_ln(a + b))


@dataclass(frozen=True)
class SeriesValue:
    value: complex
    error: float
    terms: int


def hyp2f1_series_err(
    a: complex,
    b: complex,
    c: complex,
    z: complex,
    *,
    rel_tol: float = 1e-16,
    margin: float = 0.02,
    max_terms: int = 200_000,
) -> SeriesValue:
    """Sum the Gauss series and report a truncation plus rounding estimate."""
    if _is_nonpositive_integer(c):
        raise PolePar(f"c = {complex(c).real:g} is a non-positive integer")
    z = complex(z)
    r = abs(z)
    if r >= 1 - margin:
        raise OutsideDisk(f"|z| = {r:.6g} is not below 1 - {margin:g}")
    term = 1 + 0j
    total = 1 + 0j
    largest = 1.0
    quiet = 0
    n = 0
    while quiet < 3:
        if n >= max_terms:
            raise OutsideDisk(f"series did not settle in {max_terms} terms at |z| = {r:.6g}")
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        n += 1
        total += term
        largest = max(largest, abs(term))
        if abs(term) < rel_tol * abs(total):
            quiet += 1
        else:
            quiet = 0
        if term == 0:
            break
    # geometric tail bound once the ratio has settled near |z|, plus rounding
    tail = abs(term) * r / (1 - r)
    err = tail + n * EPS * largest
    return SeriesValue(total, err, n + 1)


def hyp2f1_series(a: complex, b: complex, c: complex, z: complex, **kw) -> complex:
    """Gauss hypergeometric series F(a, b, c; z) for |z| < 1 - margin."""
    return hyp2f1_series_err(a, b, c, z, **kw).value
