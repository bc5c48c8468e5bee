"""Exact arithmetic in Q[z] and Q(z).

Rationals are :class:`fractions.Fraction`.  ``PolyZ`` is an immutable
univariate polynomial with rational coefficients, ``RatFuncZ`` a reduced
rational function with monic denominator.  Both are hashable and compare
structurally, which is what the symbolic layers rely on for equality tests.

A handful of field-generic linear algebra helpers (determinant, rank,
solve) live at the bottom; they work for any entries supporting ``+ - * /``
and ``== 0``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

from .errors import DivisionByZero, NonlinearDenominator, PoleAtPoint

Rat = Fraction
Scalar = Union[int, Fraction]

_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rat(text: Union[str, int, Fraction]) -> Fraction:
    """Parse ``"p/q"`` or an integer literal into a Fraction.

    Decimal strings are refused on purpose: exact inputs must stay exact.
    """
    if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
        return Fraction(text)
    m = _RAT_RE.match(str(text))
    if not m:
        raise ValueError(f"not an exact rational: {text!r} (use p/q or an integer)")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise DivisionByZero(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


class PolyZ:
    """Polynomial in z with rational coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def const(cls, c: Scalar) -> "PolyZ":
        return cls((c,))

    @classmethod
    def z(cls) -> "PolyZ":
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> "PolyZ":
        p = cls((1,))
        for r in roots:
            p = p * cls((-Fraction(r), 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyZ):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == PolyZ.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("PolyZ", self.coeffs))

    def __repr__(self) -> str:
        return f"PolyZ({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = f"{format_rat(abs(c))}*{mono}"
            else:
                body = format_rat(abs(c))
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    @staticmethod
    def _coerce(other) -> "PolyZ":
        if isinstance(other, PolyZ):
            return other
        if isinstance(other, (int, Fraction)):
            return PolyZ.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return PolyZ([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self) -> "PolyZ":
        return PolyZ([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PolyZ([c * other for c in self.coeffs])
        if not isinstance(other, PolyZ):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyZ()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return PolyZ(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PolyZ":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out, base = PolyZ((1,)), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: "PolyZ") -> tuple["PolyZ", "PolyZ"]:
        other = self._coerce(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        if len(rem) - 1 < dd:
            return PolyZ(), self
        inv_lc = 1 / other.lc
        quot = [Fraction(0)] * (len(rem) - dd)
        for k in range(len(rem) - 1 - dd, -1, -1):
            f = rem[k + dd] * inv_lc
            quot[k] = f
            if f:
                for j, c in enumerate(other.coeffs):
                    rem[k + j] -= f * c
        return PolyZ(quot), PolyZ(rem[:dd])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "PolyZ":
        if not self.coeffs or self.lc == 1:
            return self
        inv = 1 / self.lc
        return PolyZ([c * inv for c in self.coeffs])

    def deriv(self) -> "PolyZ":
        return PolyZ([k * c for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, point):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def shift(self, p: Fraction) -> "PolyZ":
        """Return the polynomial w -> self(p + w)."""
        out = PolyZ()
        base = PolyZ((p, 1))
        for c in reversed(self.coeffs):
            out = out * base + c
        return out


def poly_gcd(a: PolyZ, b: PolyZ) -> PolyZ:
    """Monic gcd by the Euclidean algorithm (gcd(0, 0) = 0)."""
    a, b = a.monic(), b.monic()
    while b:
        a, b = b, (a % b).monic()
    return a


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------

_ONE = PolyZ((1,))


class RatFuncZ:
    """Reduced rational function num/den in z, den monic; zero is 0/1."""

    __slots__ = ("num", "den")

    def __init__(self, num: Union[PolyZ, Scalar] = 0, den: Union[PolyZ, Scalar] = 1):
        if not isinstance(num, PolyZ):
            num = PolyZ.const(num)
        if not isinstance(den, PolyZ):
            den = PolyZ.const(den)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = PolyZ(), _ONE
            return
        if den.degree > 0 and num.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        lc = den.lc
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num: PolyZ, den: PolyZ) -> "RatFuncZ":
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def z(cls) -> "RatFuncZ":
        return cls._raw(PolyZ.z(), _ONE)

    @classmethod
    def const(cls, c: Scalar) -> "RatFuncZ":
        c = Fraction(c)
        return cls._raw(PolyZ.const(c), _ONE)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError(f"{self} is not constant")
        return self.num.coeffs[0] if self.num.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFuncZ):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.den.degree == 0 and self.num == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("RatFuncZ", self.num.coeffs, self.den.coeffs))

    def __repr__(self) -> str:
        return f"RatFuncZ({self})"

    def __str__(self) -> str:
        if self.den.degree == 0:
            return str(self.num)
        n = str(self.num)
        if " " in n or "/" in n:
            n = f"({n})"
        d = str(self.den)
        if " " in d:
            d = f"({d})"
        return f"{n}/{d}"

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFuncZ):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFuncZ.const(other)
        if isinstance(other, PolyZ):
            return RatFuncZ._raw(other, _ONE)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            return RatFuncZ(self.num + other.num, self.den)
        if other.den.degree == 0:
            return RatFuncZ._raw(self.num + other.num * self.den, self.den)
        if self.den.degree == 0:
            return RatFuncZ._raw(self.num * other.den + other.num, other.den)
        return RatFuncZ(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFuncZ":
        return RatFuncZ._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RatFuncZ()
            return RatFuncZ._raw(self.num * other, self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFuncZ()
        if self.den.degree == 0 and other.den.degree == 0:
            return RatFuncZ._raw(self.num * other.num, _ONE)
        return RatFuncZ(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFuncZ":
        if self.is_zero():
            raise DivisionByZero("inverse of the zero rational function")
        return RatFuncZ(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "RatFuncZ":
        if k < 0:
            return self.inverse() ** (-k)
        return RatFuncZ._raw(self.num**k, self.den**k)

    def deriv(self) -> "RatFuncZ":
        if self.den.degree == 0:
            return RatFuncZ._raw(self.num.deriv(), _ONE)
        return RatFuncZ(
            self.num.deriv() * self.den - self.num * self.den.deriv(), self.den * self.den
        )

    def __call__(self, point):
        return rf_eval(self, point)


def rf_normalize(num: PolyZ, den: PolyZ) -> RatFuncZ:
    """Unique reduced representative with monic denominator."""
    return RatFuncZ(num, den)


def rf_eval(f: RatFuncZ, point):
    """Evaluate exactly at a rational point or in double precision at a complex one."""
    if isinstance(point, Rational) and not isinstance(point, bool):
        point = Fraction(point)
        d = f.den(point)
        if d == 0:
            raise PoleAtPoint(f"{f} has a pole at z = {point}")
        return f.num(point) / d
    point = complex(point)
    d = f.den(point)
    if d == 0:
        raise PoleAtPoint(f"{f} has a pole at z = {point}")
    return complex(f.num(point)) / complex(d)


def as_ratfunc(x) -> RatFuncZ:
    if isinstance(x, RatFuncZ):
        return x
    if isinstance(x, PolyZ):
        return RatFuncZ(x)
    return RatFuncZ.const(x)


# ---------------------------------------------------------------------------
# Partial fractions
# ---------------------------------------------------------------------------


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(p: PolyZ) -> list[tuple[Fraction, int]]:
    """Rational roots with multiplicity; the leftover factor is ignored."""
    roots: list[tuple[Fraction, int]] = []
    rest = p
    mult0 = 0
    while rest.degree > 0 and rest.coeffs[0] == 0:
        rest = PolyZ(rest.coeffs[1:])
        mult0 += 1
    if mult0:
        roots.append((Fraction(0), mult0))
    if rest.degree <= 0:
        return roots
    scale = math.lcm(*(c.denominator for c in rest.coeffs))
    ints = [int(c * scale) for c in rest.coeffs]
    cands = set()
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            cands.add(Fraction(num, den))
            cands.add(Fraction(-num, den))
    for r in sorted(cands):
        m = 0
        lin = PolyZ((-r, 1))
        while rest.degree > 0:
            q, rem = divmod(rest, lin)
            if rem:
                break
            rest, m = q, m + 1
        if m:
            roots.append((r, m))
        if rest.degree <= 0:
            break
    return roots


@dataclass(frozen=True)
class ResidueDecomposition:
    """f = poly + sum(coeff / (z - pole)**order)."""

    poly: PolyZ
    terms: tuple[tuple[Fraction, int, Fraction], ...]

    def recombine(self) -> RatFuncZ:
        out = RatFuncZ(self.poly)
        for pole, order, coeff in self.terms:
            out = out + RatFuncZ(PolyZ.const(coeff), PolyZ((-pole, 1)) ** order)
        return out

    def simple_residues(self) -> dict[Fraction, Fraction]:
        """Residues at simple poles, or ValueError when a higher pole occurs."""
        out: dict[Fraction, Fraction] = {}
        for pole, order, coeff in self.terms:
            if order != 1:
                raise ValueError(f"pole of order {order} at z = {pole}")
            out[pole] = coeff
        return out


def _series_quotient(num: PolyZ, den: PolyZ, n: int) -> list[Fraction]:
    """First n Taylor coefficients at 0 of num/den (den(0) != 0)."""
    a = list(num.coeffs) + [Fraction(0)] * n
    b = list(den.coeffs) + [Fraction(0)] * n
    out: list[Fraction] = []
    for k in range(n):
        s = a[k] - sum(out[j] * b[k - j] for j in range(max(0, k - len(den.coeffs) + 1), k))
        out.append(s / b[0])
    return out


def residue_decompose(f: RatFuncZ) -> ResidueDecomposition:
    """Full partial-fraction decomposition over Q.

    Raises NonlinearDenominator if the denominator has an irreducible factor
    of degree two or more.
    """
    poly, rem = divmod(f.num, f.den)
    roots = rational_roots(f.den)
    if sum(m for _, m in roots) != f.den.degree:
        raise NonlinearDenominator(f"denominator {f.den} does not split over Q")
    terms = []
    for pole, mult in roots:
        other = PolyZ((1,))
        for p2, m2 in roots:
            if p2 != pole:
                other = other * PolyZ((-p2, 1)) ** m2
        # rem / ((z-pole)^mult * other): Taylor-expand rem/other at pole
        taylor = _series_quotient(rem.shift(pole), other.shift(pole), mult)
        for j, c in enumerate(taylor):
            if c != 0:
                terms.append((pole, mult - j, c))
    terms.sort(key=lambda t: (t[0], -t[1]))
    return ResidueDecomposition(poly, tuple(terms))


# ---------------------------------------------------------------------------
# Field-generic linear algebra
# ---------------------------------------------------------------------------

Matrix = list


def _is_zero(x) -> bool:
    return x == 0


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    n, m, p = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = a[i][0] * b[0][j]
            for k in range(1, m):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, s):
    return [[x * s for x in row] for row in a]


def row_reduce(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not _is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not _is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def mat_rank(rows: Sequence[Sequence]) -> int:
    return len(row_reduce(rows)[1])


def solve_linear(a: Sequence[Sequence], b: Sequence) -> list:
    """Solve a x = b for square nonsingular a; ValueError if singular."""
    n = len(a)
    aug = [list(a[i]) + [b[i]] for i in range(n)]
    red, piv = row_reduce(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("singular linear system")
    return [red[i][n] for i in range(n)]


def mat_det(a: Sequence[Sequence]):
    n = len(a)
    m = [list(r) for r in a]
    det = None
    sign = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if not _is_zero(m[i][c])), None)
        if piv is None:
            return m[0][0] * 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        det = m[c][c] if det is None else det * m[c][c]
        for i in range(c + 1, n):
            if not _is_zero(m[i][c]):
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det if sign == 1 else -det


def mat_inverse(a: Sequence[Sequence]) -> list[list]:
    n = len(a)
    one, zero = a[0][0] * 0 + 1, a[0][0] * 0
    aug = [list(a[i]) + [one if j == i else zero for j in range(n)] for i in range(n)]
    red, piv = row_reduce(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return [row[n:] for row in red]
