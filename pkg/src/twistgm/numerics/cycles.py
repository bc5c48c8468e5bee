"""Twisted cycles of the Gauss integral as real segments with branch data.

The integrand is Phi * phi with Phi = t^a (1-t)^(c-a) (1-zt)^(-b), z in (0, 1),
so the branch points are ordered 0 < 1 < 1/z < oo.  Principal branches are
taken on (0, 1); on every other segment a negative base is continued through
the upper (side=+1) or lower (side=-1) half t-plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from ..errors import InvalidArgument
from .kummer import F4_VARIANTS, kummer_local, phase
from .quadrature import LinearFactor, QuadSpec, segment_integral
from .special import beta

POINTS = ("0", "1", "1/z", "inf")

_CYCLE_TAGS = {
    "inf0": ("inf", "0"),
    "01": ("0", "1"),
    "1-1z": ("1", "1/z"),
    "1inf": ("1", "inf"),
    "1zinf": ("1/z", "inf"),
    "0-1z": ("0", "1/z"),
}
_POINT_ALIASES = {"0": "0", "1": "1", "1/z": "1/z", "1z": "1/z", "inf": "inf", "oo": "inf", "∞": "inf"}


@dataclass(frozen=True)
class CycleId:
    """An oriented segment between two of the branch points 0, 1, 1/z, oo."""

    start: str
    end: str

    def __post_init__(self):
        if self.start not in POINTS or self.end not in POINTS or self.start == self.end:
            raise InvalidArgument(f"bad cycle endpoints {self.start!r}, {self.end!r}")

    @classmethod
    def parse(cls, text: str) -> "CycleId":
        key = text.strip()
        if key in _CYCLE_TAGS:
            return cls(*_CYCLE_TAGS[key])
        for sep in (",", " "):
            if sep in key:
                p, q = (s.strip() for s in key.split(sep, 1))
                if p in _POINT_ALIASES and q in _POINT_ALIASES:
                    return cls(_POINT_ALIASES[p], _POINT_ALIASES[q])
        raise InvalidArgument(f"unknown cycle {text!r}; known: {', '.join(_CYCLE_TAGS)}")

    @property
    def tag(self) -> str:
        for k, v in _CYCLE_TAGS.items():
            if v == (self.start, self.end):
                return k
        return f"{self.start},{self.end}"

    def endpoints(self, z: float) -> tuple[float, float]:
        """Real endpoints; oo is reached on the side away from the other points."""
        def loc(p: str, other: str) -> float:
            if p == "inf":
                return -math.inf if other == "0" else math.inf
            if p == "1/z":
                if z == 0:
                    raise InvalidArgument("the point 1/z is at infinity when z = 0")
                return 1 / z
            return float(p)

        return loc(self.start, self.end), loc(self.end, self.start)


ALL_CYCLES = tuple(CycleId(*v) for v in _CYCLE_TAGS.values())

# phi = const * t^i (1-t)^j (1-zt)^k relative to Phi
_FORM_SHIFTS = {
    "inf0": (None, (-1, 0, 0)),
    "01": (None, (-1, -1, 0)),
    "1-1z": ("z-1", (0, -1, -1)),
    "t1-1z": ("z", (0, -1, -1)),
    "1inf": (None, (0, -1, 0)),
    "1zinf": ("z", (0, 0, -1)),
    "0-1z": (None, (-1, 0, -1)),
}


def _gauss_factors(a: float, b: float, c: float, z: float, shifts=(-1, -1, 0)):
    e1, e2, e3 = shifts
    return [
        LinearFactor(0.0, 1.0, a + e1),
        LinearFactor(1.0, -1.0, c - a + e2),
        LinearFactor(1.0, -z, -b + e3),
    ]


def _check_z(z: float) -> None:
    if not 0 <= z < 1:
        raise InvalidArgument(f"z must be real in [0, 1), got {z}")


def cycle_integral(exponents, z: float, cycle: CycleId, q: QuadSpec = QuadSpec(), *,
                   side: int = 1):
    """Integral of t^e1 (1-t)^e2 (1-zt)^e3 over ``cycle`` with its QuadResult."""
    _check_z(z)
    e1, e2, e3 = exponents
    factors = [LinearFactor(0.0, 1.0, e1), LinearFactor(1.0, -1.0, e2), LinearFactor(1.0, -z, e3)]
    p, r = cycle.endpoints(z)
    return segment_integral(factors, p, r, side=side, spec=q)


def euler_cycle_integral(a: float, b: float, c: float, z: float, cycle: CycleId,
                         q: QuadSpec = QuadSpec(), *, side: int = 1) -> complex:
    """f_01 over ``cycle``: the integral of t^(a-1) (1-t)^(c-a-1) (1-zt)^(-b)."""
    return cycle_integral((a - 1, c - a - 1, -b), z, cycle, q, side=side).value


def form_integral(tag: str, a: float, b: float, c: float, z: float, cycle: CycleId,
                  q: QuadSpec = QuadSpec(), *, side: int = 1) -> complex:
    """Integral of Phi * phi_tag over ``cycle`` for the Gauss basis forms."""
    from ..cohomology import canonical_pair

    const, (i, j, k) = _FORM_SHIFTS[canonical_pair(tag)]
    scale = {None: 1.0, "z": z, "z-1": z - 1}[const]
    val = cycle_integral((a + i, c - a + j, -b + k), z, cycle, q, side=side).value
    return scale * val


# ---------------------------------------------------------------------------
# Beta-and-phase relations between cycle integrals and Kummer solutions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Relation:
    index: int
    label: str
    cycle: str
    side: int
    kummer: int
    variant: Optional[str]

    def factor(self, a: float, b: float, c: float) -> complex:
        return {
            1: lambda: beta(a, c - a),
            2: lambda: phase(a + b - c + 1) * beta(b - c + 1, 1 - b),
            3: lambda: phase(1 - a) * beta(a, b - c + 1),
            4: lambda: phase(a - c + 1) * beta(c - a, 1 - b),
            5: lambda: beta(a, 1 - b),
            6: lambda: phase(-(a + b - c + 1)) * beta(b - c + 1, c - a),
        }[self.index]()


# Conventions that make each stated phase hold; Kummer functions whose
# argument lies on [1, oo) are taken at w + i0 throughout.
RELATIONS = {
    1: Relation(1, "a", "01", 1, 1, None),
    2: Relation(2, "b", "1zinf", 1, 2, None),
    3: Relation(3, "c", "inf0", -1, 3, None),
    4: Relation(4, "d", "1-1z", 1, 4, "corrected"),
    5: Relation(5, "e", "0-1z", 1, 5, None),
    6: Relation(6, "f", "1inf", -1, 6, None),
}


@dataclass(frozen=True)
class RelationResult:
    index: int
    cycle: str
    side: int
    variant: Optional[str]
    lhs: complex
    rhs: complex
    abs_err: float
    rel_err: float


def relation_check(index: int, a: float, b: float, c: float, z: float,
                   q: QuadSpec = QuadSpec(), *, cycle: Optional[str] = None,
                   side: Optional[int] = None, variant: Optional[str] = None) -> RelationResult:
    """Compare a cycle integral with its beta-and-phase multiple of f_index.

    ``cycle``, ``side`` and ``variant`` override the defaults in RELATIONS,
    which is how alternative readings are tested.
    """
    if index not in RELATIONS:
        raise InvalidArgument(f"relation index must be 1..6, got {index}")
    rel = RELATIONS[index]
    cyc = CycleId.parse(cycle or rel.cycle)
    sd = side if side is not None else rel.side
    var = variant if variant is not None else rel.variant
    lhs = euler_cycle_integral(a, b, c, z, cyc, q, side=sd)
    rhs = rel.factor(a, b, c) * kummer_local(rel.kummer, a, b, c, z, variant=var)
    err = abs(lhs - rhs)
    return RelationResult(index, cyc.tag, sd, var, lhs, rhs, err, err / abs(rhs))


def match_relation(index: int, a: float, b: float, c: float, z: float,
                   q: QuadSpec = QuadSpec(), tol: float = 1e-6) -> list[RelationResult]:
    """Every (cycle, side, variant) reading of a relation that holds within ``tol``."""
    variants = F4_VARIANTS if RELATIONS[index].kummer == 4 else (RELATIONS[index].variant,)
    hits = []
    for cyc in ALL_CYCLES:
        for sd in (1, -1):
            for var in variants:
                try:
                    res = relation_check(index, a, b, c, z, q, cycle=cyc.tag, side=sd, variant=var)
                except Exception:  # divergent readings simply do not match
                    continue
                if res.rel_err < tol:
                    hits.append(res)
    return hits
