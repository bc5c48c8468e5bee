"""Point configurations on CP^1 and the master function built from them.

A 2 x (n+1) matrix Z in general position is brought to the canonical form

    columns (1, 0), (0, 1), (1, -1), (1, -z_3), ..., (1, -z_n)

by the left GL(2) action and right column scaling.  The master function is
Phi(t) = prod_j l_j(t)^alpha_j with l_0 = 1, l_1 = t, l_2 = 1 - t and
l_j = 1 - z_j t for j >= 3; the sign convention follows that linear-form
description (so z_j enters l_j as 1 - z_j t).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence, Union

from .errors import DegenerateConfiguration, ExponentSumViolation, ResonantExponent
from .exactalg import RatFuncZ, as_ratfunc, parse_rat
from .forms import Arrangement, OneForm

PROJECTIVE = "projective"
NONPROJECTED = "nonprojected"


def _minor(m, i: int, j: int):
    return m[0][i] * m[1][j] - m[0][j] * m[1][i]


@dataclass(frozen=True)
class ConfigZ:
    """Canonical configuration of n+1 points on CP^1.

    ``canonical_params`` holds z_3..z_n; an entry may be the symbol z itself
    (``RatFuncZ.z()``), which is how the Gauss case keeps its variable free.
    """

    n: int
    canonical_params: tuple[RatFuncZ, ...]

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("need at least four points (n >= 3)")
        if len(self.canonical_params) != self.n - 2:
            raise ValueError("expected n-2 canonical parameters")
        consts = [p.const_value() for p in self.canonical_params if p.is_const()]
        if any(v in (0, 1) for v in consts) or len(set(consts)) != len(consts):
            raise DegenerateConfiguration("canonical parameters must avoid 0, 1 and coincide")

    @property
    def points(self) -> tuple[tuple[RatFuncZ, RatFuncZ], ...]:
        one, zero = RatFuncZ.const(1), RatFuncZ()
        cols = [(one, zero), (zero, one), (one, -one)]
        cols += [(one, -zj) for zj in self.canonical_params]
        return tuple(cols)

    @classmethod
    def gauss(cls) -> "ConfigZ":
        """The Gr(2,4) configuration with its single cross-ratio left symbolic."""
        return cls(3, (RatFuncZ.z(),))

    @classmethod
    def from_params(cls, params: Sequence) -> "ConfigZ":
        return cls(len(params) + 2, tuple(as_ratfunc(parse_rat(p) if isinstance(p, str) else p)
                                          for p in params))

    def with_symbolic(self, index: int) -> "ConfigZ":
        """Replace z_index by the free symbol z (index counts from 3)."""
        if not 3 <= index <= self.n:
            raise ValueError(f"parameter index must lie in 3..{self.n}")
        params = list(self.canonical_params)
        params[index - 3] = RatFuncZ.z()
        return ConfigZ(self.n, tuple(params))


def normalize_z_matrix(raw: Sequence[Sequence]) -> ConfigZ:
    """Bring a general-position 2 x (n+1) rational matrix to canonical form.

    The first two columns go to (1,0), (0,1) and the third to (1,-1); the
    remaining columns then determine z_3..z_n uniquely.
    """
    if len(raw) != 2:
        raise ValueError("configuration matrix must have two rows")
    m = [[parse_rat(x) if isinstance(x, str) else Fraction(x) for x in row] for row in raw]
    ncols = len(m[0])
    if len(m[1]) != ncols or ncols < 4:
        raise ValueError("configuration matrix must be 2 x (n+1) with n >= 3")
    for i, j in combinations(range(ncols), 2):
        if _minor(m, i, j) == 0:
            raise DegenerateConfiguration(f"columns {i} and {j} are proportional")
    d01 = _minor(m, 0, 1)
    # coordinates of column k in the basis (column 0, column 1)
    coords = [(_minor(m, k, 1) / d01, _minor(m, 0, k) / d01) for k in range(ncols)]
    x2, y2 = coords[2]
    params = []
    for k in range(3, ncols):
        xk, yk = coords[k]
        params.append(RatFuncZ.const(x2 * yk / (y2 * xk)))
    return ConfigZ(ncols - 1, tuple(params))


@dataclass(frozen=True)
class BranchPoint:
    tag: str
    location: Optional[RatFuncZ]  # None marks the point at infinity

    @property
    def is_infinite(self) -> bool:
        return self.location is None


def _form_tag(j: int) -> str:
    return {0: "inf", 1: "0", 2: "1"}.get(j, f"1/z{j}")


class MasterFunction:
    """Phi(t) = prod_j (p_j + q_j t)^alpha_j with a single symbolic z.

    ``forms[j] = (p_j, q_j)``; index 0 is the constant form l_0 = 1 whose
    exponent is carried along but never enters d log Phi.
    """

    def __init__(self, forms, exponents, mode=NONPROJECTED, config=None, arrangement=None):
        self.arrangement = arrangement if arrangement is not None else Arrangement(forms)
        self.forms: tuple[tuple[RatFuncZ, RatFuncZ], ...] = self.arrangement.forms
        self.exponents: tuple[Fraction, ...] = tuple(Fraction(a) for a in exponents)
        if len(self.forms) != len(self.exponents):
            raise ValueError("one exponent per linear form")
        self.mode = mode
        self.config = config

    @property
    def n(self) -> int:
        return len(self.forms) - 1

    @property
    def pole_indices(self) -> tuple[int, ...]:
        """Indices of forms that vanish somewhere in the finite t-plane."""
        return self.arrangement.pole_indices

    def root(self, j: int) -> RatFuncZ:
        p, q = self.forms[j]
        return -p / q

    def exponent_at_infinity(self) -> Fraction:
        return sum((self.exponents[j] for j in self.pole_indices), Fraction(0))

    def branch_points(self) -> list[BranchPoint]:
        pts = [BranchPoint(_form_tag(j), self.root(j)) for j in self.pole_indices]
        pts.append(BranchPoint("inf", None))
        return pts

    def with_exponents(self, exponents) -> "MasterFunction":
        return MasterFunction(self.forms, exponents, self.mode, self.config, self.arrangement)

    def __mul__(self, other: "MasterFunction") -> "MasterFunction":
        """Product of master functions on the same arrangement."""
        if self.forms != other.forms:
            raise ValueError("master functions live on different arrangements")
        return self.with_exponents(a + b for a, b in zip(self.exponents, other.exponents))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MasterFunction):
            return NotImplemented
        return self.forms == other.forms and self.exponents == other.exponents

    def __hash__(self) -> int:
        return hash((self.forms, self.exponents))

    def __repr__(self) -> str:
        parts = []
        for (p, q), a in zip(self.forms, self.exponents):
            if not q:
                continue
            parts.append(f"({p} + ({q})*t)^({a})")
        return "MasterFunction(" + " * ".join(parts) + ")"

    # numeric evaluation, used by the finite-difference and quadrature checks
    def evaluate(self, t: complex, z: complex) -> complex:
        out = 1 + 0j
        for (p, q), a in zip(self.forms, self.exponents):
            if not q and p == 1:
                continue
            val = complex(p(z)) + complex(q(z)) * t
            out *= val ** float(a)
        return out


def _check_exponents(alphas: Sequence[Fraction], mode: str, pole_idx: Sequence[int]) -> None:
    for j in pole_idx:
        if alphas[j].denominator == 1:
            raise ResonantExponent(f"exponent alpha_{j} = {alphas[j]} is an integer")
    total = sum(alphas[j] for j in pole_idx)
    if total.denominator == 1:
        raise ResonantExponent(f"alpha_1 + ... + alpha_n = {total} is an integer")
    if mode == PROJECTIVE and alphas[0].denominator == 1:
        raise ResonantExponent(f"exponent alpha_0 = {alphas[0]} is an integer")


def build_master(
    config: ConfigZ,
    exponents: Sequence[Union[Fraction, int, str]],
    mode: str = NONPROJECTED,
    *,
    validate: bool = True,
) -> MasterFunction:
    """Assemble Phi for a canonical configuration.

    In non-projected mode ``exponents`` may list alpha_1..alpha_n (alpha_0 is
    then set to -2 - sum, inert) or alpha_0..alpha_n.  Projective mode needs
    all n+1 exponents and enforces sum(alpha) = -2.
    """
    if mode not in (PROJECTIVE, NONPROJECTED):
        raise ValueError(f"unknown mode {mode!r}")
    alphas = [parse_rat(a) if isinstance(a, str) else Fraction(a) for a in exponents]
    n = config.n
    if len(alphas) == n and mode == NONPROJECTED:
        alphas = [Fraction(-2) - sum(alphas)] + alphas
    if len(alphas) != n + 1:
        raise ValueError(f"expected {n + 1} exponents (or {n} in non-projected mode)")
    if mode == PROJECTIVE and sum(alphas) != -2:
        raise ExponentSumViolation(f"projective exponents sum to {sum(alphas)}, not -2")
    one, zero = RatFuncZ.const(1), RatFuncZ()
    forms = [(one, zero), (zero, one), (one, -one)]
    forms += [(one, -zj) for zj in config.canonical_params]
    if validate:
        _check_exponents(alphas, mode, range(1, n + 1))
    return MasterFunction(forms, alphas, mode, config)


def gauss_master(a, b, c, *, validate: bool = True) -> MasterFunction:
    """Phi = t^a (1-t)^(c-a) (1-zt)^(-b) with z symbolic."""
    a, b, c = (parse_rat(x) if isinstance(x, str) else Fraction(x) for x in (a, b, c))
    return build_master(ConfigZ.gauss(), [a, c - a, -b], validate=validate)


def gauss_params(m: MasterFunction) -> tuple[Fraction, Fraction, Fraction]:
    """Recover (a, b, c) from a Gauss master function."""
    a, ca, mb = m.exponents[1:4]
    return a, -mb, ca + a


def dlog_phi(m: MasterFunction) -> OneForm:
    """d log Phi = sum_j alpha_j q_j / l_j dt (simple poles only)."""
    arr = m.arrangement
    return OneForm(arr, {(j, 1): m.forms[j][1] * m.exponents[j] for j in arr.pole_indices})


def dz_log_phi(m: MasterFunction) -> OneForm:
    """Partial z-derivative of log Phi as a function of t."""
    out = OneForm.zero(m.arrangement)
    for j, ((p, q), a) in enumerate(zip(m.forms, m.exponents)):
        dp, dq = p.deriv(), q.deriv()
        if not (dp or dq) or not a:
            continue
        if not q:
            out = out + OneForm.const(m.arrangement, dp / p * a)
            continue
        # (dp + dq t) / (p + q t) = dq/q + (dp - dq p/q) / l_j
        out = out + OneForm.const(m.arrangement, dq / q * a)
        out = out + OneForm.inv_l(m.arrangement, j, 1, (dp - dq * p / q) * a)
    return out
