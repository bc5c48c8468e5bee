"""Tanh-sinh quadrature on (0, 1) driven by the complex log of the integrand.

The integrand receives ``(log u, log(1 - u))`` computed without cancellation,
so endpoint factors like u^(-3/4) stay accurate even where u underflows.
Products of real linear factors with real exponents are assembled in log
space by :func:`segment_integral`, which also applies the branch phases.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from ..errors import DivergentEndpoint, InvalidArgument, QuadratureNoConvergence

LogIntegrand = Callable[[float, float], Optional[complex]]

MIN_LEVELS = 3
_DROP = 60.0  # tails below exp(-_DROP) of the peak term are ignored
_S_MAX = 12.0
_UNDERFLOW = -740.0


@dataclass(frozen=True)
class QuadSpec:
    """levels is the maximum halving depth; the step at depth k is 2^-k."""

    levels: int = 12
    abs_tol: float = 1e-300
    rel_tol: float = 1e-13

    def __post_init__(self):
        if self.levels < MIN_LEVELS:
            raise InvalidArgument(f"levels must be at least {MIN_LEVELS}")
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise InvalidArgument("tolerances must be positive")


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error: float
    levels: int
    evaluations: int


def _node(s: float) -> tuple[float, float, float]:
    """(log u, log(1-u), log du/ds) at abscissa s."""
    v = 0.5 * math.pi * math.sinh(abs(s))
    e = math.exp(-2 * v)
    small = -2 * v - math.log1p(e)
    big = -math.log1p(e)
    lu, lv = (big, small) if s >= 0 else (small, big)
    return lu, lv, math.log(math.pi * math.cosh(s)) + lu + lv


class _Evaluator:
    def __init__(self, logf: LogIntegrand):
        self.logf = logf
        self.count = 0

    def log_term(self, s: float) -> Optional[complex]:
        lu, lv, lw = _node(s)
        self.count += 1
        lf = self.logf(lu, lv)
        if lf is None:
            return None
        return lf + lw

    def term(self, s: float) -> complex:
        x = self.log_term(s)
        if x is None or x.real < _UNDERFLOW:
            return 0j
        return cmath.exp(x)


def _extent(ev: _Evaluator, direction: int) -> float:
    """Find where the terms in one direction fall below the drop threshold."""
    peak = -math.inf
    s = 0.0
    last_big = 0.0
    while s <= _S_MAX:
        x = ev.log_term(direction * s)
        if x is not None:
            peak = max(peak, x.real)
            if x.real > peak - _DROP:
                last_big = s
        if s - last_big > 1.0:
            break
        s += 0.125
    return min(last_big + 0.25, _S_MAX)


def tanh_sinh(logf: LogIntegrand, spec: QuadSpec = QuadSpec()) -> QuadResult:
    """Integrate exp(logf) over (0, 1) with level doubling."""
    ev = _Evaluator(logf)
    s_hi = _extent(ev, 1)
    s_lo = _extent(ev, -1)
    n_hi, n_lo = math.ceil(s_hi), math.ceil(s_lo)
    total = ev.term(0.0)
    total += sum(ev.term(k) for k in range(1, n_hi + 1))
    total += sum(ev.term(-k) for k in range(1, n_lo + 1))
    prev = total
    h = 1.0
    for level in range(1, spec.levels + 1):
        h /= 2
        k = 1
        while k * h <= s_hi:
            total += ev.term(k * h)
            k += 2
        k = 1
        while k * h <= s_lo:
            total += ev.term(-k * h)
            k += 2
        est = h * total
        diff = abs(est - prev)
        if level >= MIN_LEVELS and diff <= max(spec.abs_tol, spec.rel_tol * abs(est)):
            return QuadResult(est, diff, level, ev.count)
        prev = est
    raise QuadratureNoConvergence(
        f"no convergence after {spec.levels} levels (last change {diff:.3e}, value {est:.6g})"
    )


# ---------------------------------------------------------------------------
# Products of real linear factors on a real segment
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearFactor:
    """(alpha + beta t)^exponent, with real alpha, beta."""

    alpha: float
    beta: float
    exponent: float

    @property
    def root(self) -> Optional[float]:
        return None if self.beta == 0 else -self.alpha / self.beta

    def phase(self, negative: bool, side: int) -> float:
        """Argument of the base just off the real axis on ``side`` (+1 upper)."""
        if not negative:
            return 0.0
        return math.pi * side * (1.0 if self.beta > 0 else -1.0)


def _logabs_sign(x: float) -> tuple[float, bool]:
    if x == 0:
        return -math.inf, False
    return math.log(abs(x)), x < 0


def _local_exponent(factors: Sequence[LinearFactor], point: float) -> float:
    return sum(f.exponent for f in factors if f.root is not None and f.root == point)


def _check_integrable(factors, p: float, q: float) -> None:
    for end in (p, q):
        if math.isinf(end):
            k = sum(f.exponent for f in factors if f.beta != 0)
            if k >= -1:
                raise DivergentEndpoint(f"integrand decays like t^{k:g} at infinity")
        else:
            k = _local_exponent(factors, end)
            if k <= -1:
                raise DivergentEndpoint(f"local exponent {k:g} at t = {end:g} is not above -1")


def _piece(factors: Sequence[LinearFactor], p: float, q: float, side: int,
           spec: QuadSpec) -> QuadResult:
    """Integral over (p, q), p < q, with no roots strictly inside."""
    live = [f for f in factors if f.beta != 0 or f.alpha != 1]

    if not math.isinf(p) and not math.isinf(q):
        length = q - p
        log_len = math.log(length)

        def logf(lu, lv):
            acc = complex(log_len)
            u = math.exp(lu)
            for f in live:
                if f.root == p:
                    la, neg = _logabs_sign(f.beta * length)
                    la += lu
                elif f.root == q:
                    la, neg = _logabs_sign(-f.beta * length)
                    la += lv
                else:
                    la, neg = _logabs_sign(f.alpha + f.beta * (p + length * u))
                    if la == -math.inf:
                        return None
                acc += f.exponent * complex(la, f.phase(neg, side))
            return acc

    elif not math.isinf(p):
        # t = p + u / (1 - u)
        def logf(lu, lv):
            acc = complex(-2 * lv)
            for f in live:
                if f.root == p:
                    la, neg = _logabs_sign(f.beta)
                    la += lu - lv
                else:
                    num = (f.alpha + f.beta * p) * math.exp(lv) + f.beta * math.exp(lu)
                    la, neg = _logabs_sign(num)
                    if la == -math.inf:
                        return None
                    la -= lv
                acc += f.exponent * complex(la, f.phase(neg, side))
            return acc

    elif not math.isinf(q):
        # t = q - (1 - u) / u
        def logf(lu, lv):
            acc = complex(-2 * lu)
            for f in live:
                if f.root == q:
                    la, neg = _logabs_sign(-f.beta)
                    la += lv - lu
                else:
                    num = (f.alpha + f.beta * q) * math.exp(lu) - f.beta * math.exp(lv)
                    la, neg = _logabs_sign(num)
                    if la == -math.inf:
                        return None
                    la -= lu
                acc += f.exponent * complex(la, f.phase(neg, side))
            return acc

    else:
        raise InvalidArgument("the whole real line is not a supported cycle")
    return tanh_sinh(logf, spec)


def segment_integral(
    factors: Sequence[LinearFactor],
    start: float,
    end: float,
    *,
    side: int = 1,
    spec: QuadSpec = QuadSpec(),
) -> QuadResult:
    """Integrate prod (alpha_j + beta_j t)^e_j from ``start`` to ``end`` along R.

    Bases that are negative on the path take the principal branch at
    t + i0 (``side=+1``) or t - i0 (``side=-1``).  The path is split at any
    interior branch point.
    """
    if side not in (1, -1):
        raise InvalidArgument("side must be +1 (upper) or -1 (lower)")
    sign = 1.0
    p, q = start, end
    if p > q:
        p, q, sign = q, p, -1.0
    if p == q:
        return QuadResult(0j, 0.0, 0, 0)
    inner = sorted({f.root for f in factors if f.root is not None and p < f.root < q})
    cuts = [p, *inner, q]
    _check_integrable(factors, p, q)
    for r in inner:
        k = _local_exponent(factors, r)
        if k <= -1:
            raise DivergentEndpoint(f"local exponent {k:g} at interior point {r:g}")
    total, err, lev, evals = 0j, 0.0, 0, 0
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        res = _piece(factors, lo, hi, side, spec)
        total += res.value
        err += res.error
        lev = max(lev, res.levels)
        evals += res.evaluations
    return QuadResult(sign * total, err, lev, evals)
