"""First-order Fuchsian systems, scalar elimination and the Weyl-algebra route.

A 2x2 system f' = (A_0/z + A_1/(z-1)) f is stored through its residues.
``catalog_matrix`` carries the closed-form catalog of the six (phi_01, phi_pq)
systems, used as an oracle for the connection matrices derived in
:mod:`twistgm.cohomology`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, perm
from typing import Mapping, Optional, Sequence

from .errors import ExponentSumViolation, NotCyclic, UnknownPair
from .exactalg import PolyZ, RatFuncZ, mat_det, parse_rat, residue_decompose


def _q(x) -> Fraction:
    return parse_rat(x) if isinstance(x, str) else Fraction(x)


@dataclass
class FuchsianSystem:
    """f'(z) = sum_s residues[s] / (z - s) f(z)."""

    size: int
    singular_points: list[Fraction]
    residues: list[list[list[Fraction]]]
    basis_labels: list[str] = field(default_factory=list)
    params: Optional[tuple[Fraction, Fraction, Fraction]] = None

    def matrix(self) -> list[list[RatFuncZ]]:
        out = [[RatFuncZ() for _ in range(self.size)] for _ in range(self.size)]
        for s, res in zip(self.singular_points, self.residues):
            pole = RatFuncZ(PolyZ.const(1), PolyZ((-s, 1)))
            for i in range(self.size):
                for j in range(self.size):
                    if res[i][j]:
                        out[i][j] = out[i][j] + pole * res[i][j]
        return out

    def residue(self, s) -> list[list[Fraction]]:
        s = Fraction(s)
        for point, res in zip(self.singular_points, self.residues):
            if point == s:
                return res
        return [[Fraction(0)] * self.size for _ in range(self.size)]

    def evaluate(self, z: complex) -> list[list[complex]]:
        """Numeric A(z)."""
        out = [[0j] * self.size for _ in range(self.size)]
        for s, res in zip(self.singular_points, self.residues):
            w = 1 / (z - float(s))
            for i in range(self.size):
                for j in range(self.size):
                    if res[i][j]:
                        out[i][j] += float(res[i][j]) * w
        return out

    @classmethod
    def from_matrix(cls, mat: Sequence[Sequence[RatFuncZ]], labels=(), params=None) -> "FuchsianSystem":
        size = len(mat)
        blocks: dict[Fraction, list[list[Fraction]]] = {}
        for i in range(size):
            for j in range(size):
                dec = residue_decompose(mat[i][j])
                if dec.poly:
                    raise ValueError(f"entry ({i},{j}) has a polynomial part")
                for pole, order, coeff in dec.terms:
                    if order != 1:
                        raise ValueError(f"entry ({i},{j}) has a pole of order {order}")
                    blocks.setdefault(pole, [[Fraction(0)] * size for _ in range(size)])[i][j] = coeff
        for must in (Fraction(0), Fraction(1)):
            blocks.setdefault(must, [[Fraction(0)] * size for _ in range(size)])
        pts = sorted(blocks)
        return cls(size, pts, [blocks[p] for p in pts], list(labels), params)

    @classmethod
    def from_connection(cls, conn, params=None) -> "FuchsianSystem":
        return cls.from_matrix(conn.matrix, [b.name for b in conn.basis], params)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FuchsianSystem):
            return NotImplemented
        return self.matrix() == other.matrix()


# ---------------------------------------------------------------------------
# The catalog of closed forms
# ---------------------------------------------------------------------------

CATALOG_TAGS = ("inf0", "1-1z", "t1-1z", "1inf", "1zinf", "0-1z")


def _catalog(tag: str, a: Fraction, b: Fraction, c: Fraction, printed: bool):
    z = RatFuncZ.z()
    iz = 1 / z
    iz1 = 1 / (z - 1)
    if tag == "inf0":
        return [[iz1 * (c - a - b), iz1 * (b - c)],
                [iz * (c - a), iz * (-c)]]
    if tag == "1-1z":
        return [[RatFuncZ(), iz1 * b],
                [iz * (-a), iz * (-c) + iz1 * (c - a - b)]]
    if tag == "t1-1z":
        return [[RatFuncZ(), iz * b],
                [iz1 * (-a), iz * (-(c - 1)) + iz1 * (c - a - b - 1)]]
    if tag == "1inf":
        return [[iz1 * (-a), iz1 * (c - b)],
                [iz * a - iz1 * a, iz * (-c) + iz1 * (c - b)]]
    if tag == "1zinf":
        return [[iz1 * (-a * b / c), iz1 * (-(b / c) * (b - c))],
                [iz1 * ((a / c) * (a - c)), iz * (-c) + iz1 * ((b - c) * (a - c) / c)]]
    if tag == "0-1z":
        # the "printed" variant carries -(c-1)/z in the (2,2) slot; the
        # reduction and the determinant identity both give -c/z
        c22 = (c - 1) if printed else c
        return [[iz1 * (-b), iz1 * b],
                [iz * (c - a) - iz1 * (c - a), iz * (-c22) + iz1 * (c - a)]]
    raise UnknownPair(f"unknown pair tag {tag!r}; known: {', '.join(CATALOG_TAGS)}")


def catalog_matrix(pair_tag: str, a, b, c, *, printed: bool = False) -> FuchsianSystem:
    """Closed-form (phi_01, phi_pq) system at rational (a, b, c).

    ``printed=True`` gives the (0, 1/z) variant with -(c-1)/z in the (2,2)
    slot, which fails the determinant identity; the default has -c/z.
    """
    from .cohomology import canonical_pair

    tag = canonical_pair(pair_tag)
    a, b, c = _q(a), _q(b), _q(c)
    mat = _catalog(tag, a, b, c, printed)
    return FuchsianSystem.from_matrix(mat, ["01", tag], (a, b, c))


def det_connection(sys: FuchsianSystem) -> RatFuncZ:
    if sys.size != 2:
        raise ValueError("determinant identity is stated for 2x2 systems")
    return mat_det(sys.matrix())


def trace_residue_sum(sys: FuchsianSystem) -> Fraction:
    return sum((res[i][i] for res in sys.residues for i in range(sys.size)), Fraction(0))


# ---------------------------------------------------------------------------
# Scalar second-order equations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScalarODE2:
    """f'' + p f' + q f = 0."""

    p: RatFuncZ
    q: RatFuncZ
    component: int = 0

    @classmethod
    def gauss(cls, a, b, c) -> "ScalarODE2":
        a, b, c = _q(a), _q(b), _q(c)
        z = RatFuncZ.z()
        return cls(c / z + (a + b + 1 - c) / (z - 1), (a * b) / (z * (z - 1)))

    def same_operator(self, other: "ScalarODE2") -> bool:
        return self.p == other.p and self.q == other.q


def to_scalar(sys: FuchsianSystem, component: int = 0) -> ScalarODE2:
    """Eliminate the other component of a 2x2 system.

    Uses row ``component`` to express the partner through f and f'.  If that
    coupling vanishes identically the other row is used instead, giving the
    equation for the partner component; both zero raises NotCyclic.
    """
    if sys.size != 2:
        raise ValueError("scalar elimination is implemented for 2x2 systems")
    A = sys.matrix()
    order = [component, 1 - component]
    if not A[order[0]][order[1]]:
        order.reverse()
        if not A[order[0]][order[1]]:
            raise NotCyclic("off-diagonal couplings vanish identically")
    i, j = order
    a11, a12, a21, a22 = A[i][i], A[i][j], A[j][i], A[j][j]
    log_d12 = a12.deriv() / a12
    p = -(a11 + a22 + log_d12)
    q = -(a11.deriv() - a11 * log_d12 + a12 * a21 - a11 * a22)
    return ScalarODE2(p, q, i)


# ---------------------------------------------------------------------------
# Weyl algebra Q<z, d> with d z = z d + 1
# ---------------------------------------------------------------------------


class WeylElement:
    """Normal-ordered element sum c_{i,j} z^i d^j."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[tuple[int, int], Fraction]] = None):
        self.terms: dict[tuple[int, int], Fraction] = {
            k: Fraction(v) for k, v in (terms or {}).items() if v
        }

    @classmethod
    def z(cls) -> "WeylElement":
        return cls({(1, 0): 1})

    @classmethod
    def d(cls) -> "WeylElement":
        return cls({(0, 1): 1})

    @classmethod
    def const(cls, c) -> "WeylElement":
        return cls({(0, 0): c})

    @staticmethod
    def _lift(x) -> "WeylElement":
        return x if isinstance(x, WeylElement) else WeylElement.const(x)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return WeylElement(out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), u in self.terms.items():
            for (k, l), v in other.terms.items():
                # d^j z^k = sum_r C(j, r) k!/(k-r)! z^(k-r) d^(j-r)
                for r in range(min(j, k) + 1):
                    key = (i + k - r, j - r + l)
                    out[key] = out.get(key, 0) + u * v * comb(j, r) * perm(k, r)
        return WeylElement(out)

    def __rmul__(self, other):
        return self._lift(other) * self

    def __pow__(self, n: int):
        out = WeylElement.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylElement.const(other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (i, j), c in sorted(self.terms.items(), key=lambda kv: (-kv[0][1], -kv[0][0])):
            mono = "*".join(x for x in (
                "" if i == 0 else ("z" if i == 1 else f"z^{i}"),
                "" if j == 0 else ("d" if j == 1 else f"d^{j}")) if x)
            bits.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)

    def coefficient_of_d(self, j: int) -> RatFuncZ:
        """The polynomial in z multiplying d^j."""
        deg = max((i for (i, jj) in self.terms if jj == j), default=-1)
        return RatFuncZ(PolyZ([self.terms.get((i, j), 0) for i in range(deg + 1)]))

    def order(self) -> int:
        return max((j for (_, j) in self.terms), default=0)


def weyl_reduce(alphas: Sequence) -> tuple[ScalarODE2, tuple[Fraction, Fraction, Fraction], WeylElement]:
    """Expand -d(a1+a2+1+zd) - (a1+1+zd)(a3-zd) and normalize to f''+pf'+qf.

    Returns the scalar equation, the parameters a = a1+1, b = -a3,
    c = a1+a2+2, and the raw operator.
    """
    al = [_q(x) for x in alphas]
    if len(al) != 4:
        raise ValueError("expected (alpha_0, alpha_1, alpha_2, alpha_3)")
    if sum(al) != -2:
        raise ExponentSumViolation(f"exponents sum to {sum(al)}, not -2")
    _, a1, a2, a3 = al
    z, d = WeylElement.z(), WeylElement.d()
    zd = z * d
    op = -(d * (a1 + a2 + 1 + zd)) - (a1 + 1 + zd) * (a3 - zd)
    lead = op.coefficient_of_d(2)
    p = op.coefficient_of_d(1) / lead
    q = op.coefficient_of_d(0) / lead
    return ScalarODE2(p, q), (a1 + 1, -a3, a1 + a2 + 2), op
