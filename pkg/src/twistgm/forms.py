"""Rational functions of t whose poles sit on an arrangement of linear forms.

Everything is kept in partial-fraction normal form relative to the forms
l_j(t) = p_j + q_j t (coefficients in Q(z)):

    R(t) = sum_{j,k} c_{j,k} / l_j(t)^k  +  sum_s d_s t^s

A one-form R(t) dt is represented by its coefficient R, so the same class
serves for 0-forms (the g in nabla g) and 1-forms.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import ForeignPole
from .exactalg import RatFuncZ, as_ratfunc

Coeff = Union[RatFuncZ, Fraction, int]


class Arrangement:
    """The linear forms plus memo tables for partial-fraction products."""

    def __init__(self, forms: Sequence[tuple[RatFuncZ, RatFuncZ]]):
        self.forms = tuple((as_ratfunc(p), as_ratfunc(q)) for p, q in forms)
        self.pole_indices = tuple(j for j, (_, q) in enumerate(self.forms) if q)
        self._pair: dict = {}
        self._tpow: dict = {}
        self._lpow: dict = {}
        self._resultant: dict = {}

    def __eq__(self, other) -> bool:
        return isinstance(other, Arrangement) and self.forms == other.forms

    def __hash__(self) -> int:
        return hash(self.forms)

    def resultant(self, i: int, j: int) -> RatFuncZ:
        """D_ij = p_i q_j - p_j q_i, so that q_j l_i - q_i l_j = D_ij."""
        key = (i, j)
        if key not in self._resultant:
            (pi, qi), (pj, qj) = self.forms[i], self.forms[j]
            d = pi * qj - pj * qi
            if not d:
                raise ValueError(f"forms {i} and {j} are proportional")
            self._resultant[key] = d
        return self._resultant[key]

    def pole_pair(self, i: int, k: int, j: int, m: int) -> dict[tuple[int, int], RatFuncZ]:
        """Partial fractions of 1 / (l_i^k l_j^m) for i != j."""
        key = (i, k, j, m)
        hit = self._pair.get(key)
        if hit is not None:
            return hit
        if k == 0:
            out = {(j, m): RatFuncZ.const(1)} if m else {}
        elif m == 0:
            out = {(i, k): RatFuncZ.const(1)}
        else:
            # 1/(l_i l_j) = (q_j/l_j - q_i/l_i) / D_ij, peeled one factor at a time
            d = self.resultant(i, j)
            qi, qj = self.forms[i][1], self.forms[j][1]
            out = {}
            for sub, coef in ((self.pole_pair(i, k - 1, j, m), qj / d),
                              (self.pole_pair(i, k, j, m - 1), -qi / d)):
                for key2, c in sub.items():
                    out[key2] = out.get(key2, RatFuncZ()) + c * coef
            out = {kk: v for kk, v in out.items() if v}
        self._pair[key] = out
        return out

    def lin_power(self, j: int, e: int) -> list[RatFuncZ]:
        """Coefficients (ascending in t) of l_j(t)^e."""
        key = (j, e)
        if key not in self._lpow:
            p, q = self.forms[j]
            self._lpow[key] = [p ** (e - r) * q ** r * comb(e, r) for r in range(e + 1)]
        return self._lpow[key]

    def tpow_over_pole(self, s: int, j: int, m: int):
        """t^s / l_j^m as (pole dict, polynomial coefficient list)."""
        key = (s, j, m)
        hit = self._tpow.get(key)
        if hit is not None:
            return hit
        p, q = self.forms[j]
        qinv = q.inverse()
        poles: dict[tuple[int, int], RatFuncZ] = {}
        poly: list[RatFuncZ] = []
        # t = (l_j - p_j)/q_j, expand binomially in l_j
        for r in range(s + 1):
            c = qinv ** s * comb(s, r) * (-p) ** (s - r)
            if not c:
                continue
            if r < m:
                poles[(j, m - r)] = poles.get((j, m - r), RatFuncZ()) + c
            else:
                for deg, lc in enumerate(self.lin_power(j, r - m)):
                    while len(poly) <= deg:
                        poly.append(RatFuncZ())
                    poly[deg] = poly[deg] + c * lc
        out = ({kk: v for kk, v in poles.items() if v}, poly)
        self._tpow[key] = out
        return out


def _clean_poly(poly: Iterable[RatFuncZ]) -> tuple[RatFuncZ, ...]:
    out = list(poly)
    while out and not out[-1]:
        out.pop()
    return tuple(out)


class OneForm:
    """Rational function of t (coefficient of dt) in partial-fraction form.

    ``poles`` maps (j, k) -> coefficient of 1/l_j^k (k >= 1); ``poly`` holds
    ascending coefficients of the polynomial part.  Instances are immutable.
    """

    __slots__ = ("arr", "poles", "poly")

    def __init__(self, arr: Arrangement, poles: Optional[Mapping] = None, poly: Iterable = ()):
        self.arr = arr
        self.poles: dict[tuple[int, int], RatFuncZ] = {
            k: as_ratfunc(v) for k, v in (poles or {}).items() if v
        }
        for j, k in self.poles:
            if j not in arr.pole_indices or k < 1:
                raise ForeignPole(f"no arrangement pole 1/l_{j}^{k}")
        self.poly: tuple[RatFuncZ, ...] = _clean_poly(as_ratfunc(c) for c in poly)

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, arr: Arrangement) -> "OneForm":
        return cls(arr)

    @classmethod
    def const(cls, arr: Arrangement, c: Coeff) -> "OneForm":
        return cls(arr, poly=[c])

    @classmethod
    def t_power(cls, arr: Arrangement, s: int, c: Coeff = 1) -> "OneForm":
        return cls(arr, poly=[0] * s + [c])

    @classmethod
    def inv_l(cls, arr: Arrangement, j: int, k: int = 1, c: Coeff = 1) -> "OneForm":
        return cls(arr, poles={(j, k): c})

    @classmethod
    def linear(cls, arr: Arrangement, j: int) -> "OneForm":
        p, q = arr.forms[j]
        return cls(arr, poly=[p, q])

    @classmethod
    def from_fraction(cls, arr: Arrangement, num: Sequence[Coeff], den: Sequence[Coeff]) -> "OneForm":
        """Build num(t)/den(t) from coefficient lists in t over Q(z).

        The denominator must factor into the arrangement's linear forms up to
        a constant; anything else raises ForeignPole.
        """
        den_c = [as_ratfunc(c) for c in den]
        while den_c and not den_c[-1]:
            den_c.pop()
        if not den_c:
            raise ZeroDivisionError("zero denominator")
        out = cls(arr, poly=num)
        for j in arr.pole_indices:
            p, q = arr.forms[j]
            while len(den_c) > 1:
                quot, rem = _divide_linear(den_c, p, q)
                if rem:
                    break
                den_c = quot
                out = out * cls.inv_l(arr, j)
        if len(den_c) > 1:
            raise ForeignPole("denominator has a factor outside the arrangement")
        return out * den_c[0].inverse()

    # -- structure --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.poles and not self.poly

    def __bool__(self) -> bool:
        return not self.is_zero()

    def max_order(self, j: int) -> int:
        return max((k for (jj, k) in self.poles if jj == j), default=0)

    def coeff(self, j: int, k: int) -> RatFuncZ:
        return self.poles.get((j, k), RatFuncZ())

    def simple_residues(self) -> list[RatFuncZ]:
        return [self.coeff(j, 1) for j in self.arr.pole_indices]

    def __eq__(self, other) -> bool:
        if not isinstance(other, OneForm):
            return NotImplemented
        return self.arr == other.arr and self.poles == other.poles and self.poly == other.poly

    def __hash__(self) -> int:
        return hash((frozenset(self.poles.items()), self.poly))

    def __repr__(self) -> str:
        return f"OneForm({self})"

    def __str__(self) -> str:
        bits = []
        for (j, k), c in sorted(self.poles.items()):
            p, q = self.arr.forms[j]
            lin = f"({p} + ({q})t)"
            bits.append(f"({c})/{lin}" + (f"^{k}" if k > 1 else ""))
        for s, c in enumerate(self.poly):
            if c:
                bits.append(f"({c})" + ("" if s == 0 else ("*t" if s == 1 else f"*t^{s}")))
        return " + ".join(bits) if bits else "0"

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "OneForm") -> None:
        if other.arr is not self.arr and other.arr != self.arr:
            raise ValueError("forms live on different arrangements")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, RatFuncZ)):
            other = OneForm.const(self.arr, other)
        if not isinstance(other, OneForm):
            return NotImplemented
        self._check(other)
        poles = dict(self.poles)
        for k, v in other.poles.items():
            poles[k] = poles.get(k, RatFuncZ()) + v
        a, b = list(self.poly), list(other.poly)
        if len(a) < len(b):
            a, b = b, a
        poly = [x + y for x, y in zip(a, b)] + a[len(b):]
        return OneForm(self.arr, poles, poly)

    __radd__ = __add__

    def __neg__(self) -> "OneForm":
        return OneForm(self.arr, {k: -v for k, v in self.poles.items()}, [-c for c in self.poly])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Coeff) -> "OneForm":
        c = as_ratfunc(c)
        if not c:
            return OneForm(self.arr)
        return OneForm(self.arr, {k: v * c for k, v in self.poles.items()}, [v * c for v in self.poly])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RatFuncZ)):
            return self.scale(other)
        if not isinstance(other, OneForm):
            return NotImplemented
        self._check(other)
        arr = self.arr
        poles: dict[tuple[int, int], RatFuncZ] = {}
        poly: list[RatFuncZ] = []

        def add_pole(key, c):
            poles[key] = poles.get(key, RatFuncZ()) + c

        def add_poly(deg, c):
            while len(poly) <= deg:
                poly.append(RatFuncZ())
            poly[deg] = poly[deg] + c

        for (i, k), ci in self.poles.items():
            for (j, m), cj in other.poles.items():
                c = ci * cj
                if i == j:
                    add_pole((i, k + m), c)
                else:
                    for key, v in arr.pole_pair(i, k, j, m).items():
                        add_pole(key, c * v)
        for left, right in ((self, other), (other, self)):
            for (j, m), cj in left.poles.items():
                for s, cs in enumerate(right.poly):
                    if not cs:
                        continue
                    pp, pl = arr.tpow_over_pole(s, j, m)
                    c = cj * cs
                    for key, v in pp.items():
                        add_pole(key, c * v)
                    for deg, v in enumerate(pl):
                        add_poly(deg, c * v)
        for s, cs in enumerate(self.poly):
            for r, cr in enumerate(other.poly):
                add_poly(s + r, cs * cr)
        return OneForm(arr, poles, poly)

    __rmul__ = __mul__

    # -- calculus ---------------------------------------------------------
    def deriv_t(self) -> "OneForm":
        poles = {}
        for (j, k), c in self.poles.items():
            q = self.arr.forms[j][1]
            poles[(j, k + 1)] = poles.get((j, k + 1), RatFuncZ()) + c * q * (-k)
        poly = [c * s for s, c in enumerate(self.poly)][1:]
        return OneForm(self.arr, poles, poly)

    def deriv_z(self) -> "OneForm":
        """Partial derivative in z at fixed t (the forms themselves move with z)."""
        poles: dict[tuple[int, int], RatFuncZ] = {}

        def add(key, c):
            poles[key] = poles.get(key, RatFuncZ()) + c

        for (j, k), c in self.poles.items():
            p, q = self.arr.forms[j]
            dp, dq = p.deriv(), q.deriv()
            add((j, k), c.deriv())
            if dp or dq:
                # d_z l_j = dp + dq t = dq/q * l_j + (dp - dq p/q)
                add((j, k), -c * k * dq / q)
                add((j, k + 1), -c * k * (dp - dq * p / q))
        return OneForm(self.arr, poles, [c.deriv() for c in self.poly])

    # -- evaluation -------------------------------------------------------
    def evaluate(self, t, z):
        """Numeric value at (t, z); exact if both are Fractions."""
        out = 0
        for (j, k), c in self.poles.items():
            p, q = self.arr.forms[j]
            out = out + c(z) / (p(z) + q(z) * t) ** k
        tp = 1
        for c in self.poly:
            out = out + c(z) * tp
            tp = tp * t
        return out


def _divide_linear(coeffs: list[RatFuncZ], p: RatFuncZ, q: RatFuncZ):
    """Divide a polynomial in t (ascending coefficients) by p + q t."""
    rem = list(coeffs)
    n = len(rem) - 1
    quot = [RatFuncZ()] * n
    for deg in range(n - 1, -1, -1):
        f = rem[deg + 1] / q
        quot[deg] = f
        rem[deg + 1] = RatFuncZ()
        rem[deg] = rem[deg] - f * p
    return quot, rem[0]
