"""Twisted cohomology of CP^1 minus points: reduction and the Gauss-Manin matrix.

The covariant derivative is nabla g = dg + (d log Phi) g.  ``reduce`` writes an
arbitrary admissible one-form as a combination of basis forms plus an
explicit nabla-exact remainder nabla(witness), in three passes:

1. lower every pole of order k >= 2 at l_j = 0 using nabla(l_j^(1-k)); the
   leading coefficient is q_j (alpha_j - k + 1),
2. lower the polynomial part using nabla(t^(d+1)); the leading coefficient
   is d + 1 + sum(alpha_j),
3. solve for the basis coordinates among simple-pole forms, where the only
   relation left is d log Phi = nabla(1).

A vanishing leading coefficient in step 1 or 2 raises ResonantExponent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .arrangement import MasterFunction, dlog_phi, dz_log_phi, gauss_params
from .errors import ResonantExponent, SingularBasis, UnabsorbableFactor, UnknownPair
from .exactalg import (
    RatFuncZ,
    mat_rank,
    residue_decompose,
    solve_linear,
)
from .errors import NonlinearDenominator
from .forms import OneForm


@dataclass(frozen=True)
class BasisForm:
    """A cohomology basis element tagged by the pair of branch points it joins."""

    pair: tuple[str, str]
    form: OneForm
    label: str = ""

    @property
    def name(self) -> str:
        return self.label or "-".join(self.pair)


@dataclass(frozen=True)
class CohomClass:
    basis: tuple[BasisForm, ...]
    coords: tuple[RatFuncZ, ...]
    witness: OneForm

    def form(self) -> OneForm:
        out = OneForm.zero(self.witness.arr)
        for b, c in zip(self.basis, self.coords):
            out = out + b.form.scale(c)
        return out


def nabla0(g: OneForm, m: MasterFunction) -> OneForm:
    """nabla g = dg + g d log Phi, returned as the coefficient of dt."""
    return g.deriv_t() + g * dlog_phi(m)


def nabla_z(phi: OneForm, m: MasterFunction, wrt: Optional[int] = None) -> OneForm:
    """(d/dz + d/dz log Phi) phi; only one parameter is symbolic at a time."""
    if wrt is not None:
        sym = _symbolic_index(m)
        if sym is not None and sym != wrt:
            raise ValueError(f"parameter z_{wrt} is not the symbolic one (z_{sym} is)")
    return phi.deriv_z() + phi * dz_log_phi(m)


def _symbolic_index(m: MasterFunction) -> Optional[int]:
    for j, (p, q) in enumerate(m.forms):
        if not (p.is_const() and q.is_const()):
            return j
    return None


def _lower_poles(eta: OneForm, m: MasterFunction) -> tuple[OneForm, OneForm]:
    arr = m.arrangement
    witness = OneForm.zero(arr)
    while True:
        high = [(k, j) for (j, k) in eta.poles if k >= 2]
        if not high:
            return eta, witness
        k, j = max(high)
        q = m.forms[j][1]
        lead_exp = m.exponents[j] - (k - 1)
        if lead_exp == 0:
            raise ResonantExponent(
                f"pole of order {k} at l_{j} = 0 cannot be lowered: alpha_{j} = {k - 1}"
            )
        g = OneForm.inv_l(arr, j, k - 1, eta.coeff(j, k) / (q * lead_exp))
        eta = eta - nabla0(g, m)
        witness = witness + g


def _lower_polynomial(eta: OneForm, m: MasterFunction) -> tuple[OneForm, OneForm]:
    arr = m.arrangement
    witness = OneForm.zero(arr)
    total = m.exponent_at_infinity()
    while eta.poly:
        d = len(eta.poly) - 1
        lead = d + 1 + total
        if lead == 0:
            raise ResonantExponent(
                f"polynomial part of degree {d} cannot be lowered: sum of exponents = {total}"
            )
        g = OneForm.t_power(arr, d + 1, eta.poly[-1] / lead)
        eta = eta - nabla0(g, m)
        witness = witness + g
    return eta, witness


def to_simple_poles(eta: OneForm, m: MasterFunction) -> tuple[OneForm, OneForm]:
    """Return (eta', g) with eta = eta' + nabla(g) and eta' having simple poles only."""
    eta, w1 = _lower_poles(eta, m)
    eta, w2 = _lower_polynomial(eta, m)
    return eta, w1 + w2


def reduce(eta: OneForm, basis: Sequence[BasisForm], m: MasterFunction) -> CohomClass:
    """Coordinates of eta in ``basis`` modulo nabla-exact forms, with witness.

    The returned witness g satisfies eta - sum(coords_i basis_i) = nabla0(g).
    """
    basis = tuple(basis)
    idx = m.pole_indices
    if len(basis) != len(idx) - 1:
        raise SingularBasis(f"basis needs {len(idx) - 1} elements, got {len(basis)}")
    simple, witness = to_simple_poles(eta, m)
    reduced_basis = [to_simple_poles(b.form, m) for b in basis]
    omega = dlog_phi(m)
    # columns: basis residue vectors, then d log Phi (coefficient lambda)
    cols = [b.simple_residues() for b, _ in reduced_basis] + [omega.simple_residues()]
    rows = [[col[r] for col in cols] for r in range(len(idx))]
    try:
        sol = solve_linear(rows, simple.simple_residues())
    except ValueError:
        raise SingularBasis("basis forms are dependent modulo exact forms") from None
    coords, lam = sol[:-1], sol[-1]
    for (_, gb), x in zip(reduced_basis, coords):
        witness = witness - gb.scale(x)
    witness = witness + OneForm.const(m.arrangement, lam)
    return CohomClass(basis, tuple(coords), witness)


def cohomology_rank(forms: Sequence[OneForm], m: MasterFunction) -> int:
    """Dimension of the span of ``forms`` in cohomology (exact rank)."""
    omega = dlog_phi(m).simple_residues()
    vecs = [to_simple_poles(f, m)[0].simple_residues() for f in forms]
    return mat_rank(vecs + [omega]) - 1


# ---------------------------------------------------------------------------
# Basis catalogs
# ---------------------------------------------------------------------------

GAUSS_PAIRS = ("inf0", "01", "1-1z", "t1-1z", "1inf", "1zinf", "0-1z")

PAIR_ALIASES = {
    "inf0": "inf0", "∞0": "inf0", "inf-0": "inf0",
    "01": "01", "0-1": "01",
    "1-1z": "1-1z", "1·1/z": "1-1z", "1,1/z": "1-1z", "11z": "1-1z",
    "t1-1z": "t1-1z", "tilde-1-1z": "t1-1z", "tilde-1·1/z": "t1-1z", "tilde-1,1/z": "t1-1z",
    "1inf": "1inf", "1∞": "1inf", "1-inf": "1inf",
    "1zinf": "1zinf", "1/z·∞": "1zinf", "1z-inf": "1zinf", "1/z-inf": "1zinf",
    "0-1z": "0-1z", "0·1/z": "0-1z", "0,1/z": "0-1z", "01z": "0-1z",
}

_PAIR_POINTS = {
    "inf0": ("inf", "0"), "01": ("0", "1"), "1-1z": ("1", "1/z"), "t1-1z": ("1", "1/z"),
    "1inf": ("1", "inf"), "1zinf": ("1/z", "inf"), "0-1z": ("0", "1/z"),
}


def canonical_pair(tag: str) -> str:
    try:
        return PAIR_ALIASES[tag.strip()]
    except KeyError:
        raise UnknownPair(f"unknown basis pair {tag!r}; known: {', '.join(GAUSS_PAIRS)}") from None


def gauss_form(tag: str, m: MasterFunction) -> BasisForm:
    """The one-forms attached to branch-point pairs of t^a (1-t)^(c-a) (1-zt)^(-b)."""
    tag = canonical_pair(tag)
    arr = m.arrangement
    z = RatFuncZ.z()
    T, U, V = (OneForm.inv_l(arr, j) for j in (1, 2, 3))  # 1/t, 1/(1-t), 1/(1-zt)
    form = {
        "inf0": T,
        "01": T * U,
        "1-1z": (U * V).scale(z - 1),
        "t1-1z": (U * V).scale(z),
        "1inf": U,
        "1zinf": V.scale(z),
        "0-1z": T * V,
    }[tag]
    return BasisForm(_PAIR_POINTS[tag], form, tag)


def gauss_basis(tag: str, m: MasterFunction) -> tuple[BasisForm, BasisForm]:
    """The pair (phi_01, phi_pq) used for the first-order system of tag pq."""
    tag = canonical_pair(tag)
    if tag == "01":
        raise UnknownPair("phi_01 is always the first basis element; pick its partner")
    return gauss_form("01", m), gauss_form(tag, m)


def dlog_ratio_basis(m: MasterFunction) -> tuple[BasisForm, ...]:
    """d log(l_{j+1}/l_j) for j = 1..n-1, the default basis for any n."""
    arr = m.arrangement
    tags = [bp.tag for bp in m.branch_points()]
    out = []
    for j in range(1, m.n):
        form = OneForm.inv_l(arr, j + 1, 1, m.forms[j + 1][1]) - OneForm.inv_l(arr, j, 1, m.forms[j][1])
        out.append(BasisForm((tags[j - 1], tags[j]), form, f"dlog(l{j + 1}/l{j})"))
    return tuple(out)


# ---------------------------------------------------------------------------
# Exponent shift and the connection matrix
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ShiftRecord:
    """Bookkeeping for absorbing a common factor 1/l_j into Phi."""

    form_index: Optional[int] = None
    delta: int = 0
    note: str = "identity"

    @property
    def is_identity(self) -> bool:
        return self.form_index is None


_GAUSS_SHIFT_NOTES = {2: "c -> c-1", 3: "b -> b+1"}


def shift_exponents(
    m: MasterFunction, basis: Sequence[BasisForm]
) -> tuple[MasterFunction, tuple[BasisForm, ...], ShiftRecord]:
    """Absorb a factor 1/l_j shared by every basis form into Phi.

    Returns the master function with alpha_j lowered by one, the basis with
    that factor stripped, and a record of the shift.  The integrands
    Phi * basis_i are unchanged, so the connection matrix is too.  The factor
    1/t cannot be absorbed: dt is not a valid basis element.
    """
    basis = tuple(basis)
    shared = [j for j in m.pole_indices if all(b.form.max_order(j) >= 1 for b in basis)]
    if not shared:
        return m, basis, ShiftRecord()
    usable = [j for j in shared if j != 1]
    if not usable:
        raise UnabsorbableFactor("the only shared factor is 1/t, which cannot be absorbed into Phi")
    j = usable[0]
    lin = OneForm.linear(m.arrangement, j)
    stripped = tuple(BasisForm(b.pair, b.form * lin, b.label) for b in basis)
    exps = list(m.exponents)
    exps[j] -= 1
    if exps[j] == int(exps[j]):
        raise ResonantExponent(f"absorbing 1/l_{j} makes alpha_{j} an integer")
    note = _GAUSS_SHIFT_NOTES.get(j, f"alpha_{j} -> alpha_{j} - 1") if m.n == 3 else f"alpha_{j} -> alpha_{j} - 1"
    return m.with_exponents(exps), stripped, ShiftRecord(j, -1, note)


@dataclass
class Connection:
    """Gauss-Manin matrix A(z): nabla_z basis_i = sum_j A[i][j] basis_j."""

    matrix: list[list[RatFuncZ]]
    basis: tuple[BasisForm, ...]
    shift: ShiftRecord = field(default_factory=ShiftRecord)
    residues: Optional[dict[Fraction, list[list[Fraction]]]] = None
    poles: list[Fraction] = field(default_factory=list)
    fuchsian: bool = False

    def residue(self, s) -> list[list[Fraction]]:
        size = len(self.matrix)
        if self.residues is None:
            raise ValueError("connection is not of simple-pole Fuchsian form")
        return self.residues.get(Fraction(s), [[Fraction(0)] * size for _ in range(size)])


def _decompose_matrix(mat: list[list[RatFuncZ]]):
    size = len(mat)
    poles: set[Fraction] = set()
    residues: dict[Fraction, list[list[Fraction]]] = {}
    fuchsian = True
    for i in range(size):
        for j in range(size):
            try:
                dec = residue_decompose(mat[i][j])
            except NonlinearDenominator:
                return None, [], False
            if dec.poly:
                fuchsian = False
            for pole, order, coeff in dec.terms:
                poles.add(pole)
                if order != 1:
                    fuchsian = False
                    continue
                block = residues.setdefault(pole, [[Fraction(0)] * size for _ in range(size)])
                block[i][j] = coeff
    if not fuchsian:
        return None, sorted(poles), False
    return residues, sorted(poles), True


def gauss_manin(
    basis: Sequence[BasisForm],
    m: MasterFunction,
    wrt: Optional[int] = None,
    shift: str = "off",
) -> Connection:
    """Connection matrix of ``basis`` under d/dz, with its residue decomposition.

    ``shift="auto"`` first absorbs a common factor of the basis forms into
    Phi (see :func:`shift_exponents`); a basis whose only common factor is
    1/t is left alone.
    """
    basis = tuple(basis)
    record = ShiftRecord()
    work_m, work_basis = m, basis
    if shift == "auto":
        try:
            work_m, work_basis, record = shift_exponents(m, basis)
        except UnabsorbableFactor:
            pass
    elif shift != "off":
        raise ValueError("shift must be 'auto' or 'off'")
    rows = []
    for b in work_basis:
        cls = reduce(nabla_z(b.form, work_m, wrt), work_basis, work_m)
        rows.append(list(cls.coords))
    residues, poles, fuchsian = _decompose_matrix(rows)
    if fuchsian and m.n == 3 and not set(poles) <= {Fraction(0), Fraction(1)}:
        fuchsian = False
        residues = None
    return Connection(rows, basis, record, residues, poles, fuchsian)


def gauss_connection(tag: str, a, b, c, shift: str = "auto") -> Connection:
    """Convenience wrapper: the (phi_01, phi_pq) system at rational (a, b, c)."""
    from .arrangement import gauss_master

    m = gauss_master(a, b, c)
    return gauss_manin(gauss_basis(tag, m), m, shift=shift)


__all__ = [
    "BasisForm", "CohomClass", "Connection", "ShiftRecord", "GAUSS_PAIRS",
    "nabla0", "nabla_z", "reduce", "to_simple_poles", "cohomology_rank",
    "gauss_form", "gauss_basis", "dlog_ratio_basis", "canonical_pair",
    "shift_exponents", "gauss_manin", "gauss_connection", "gauss_params",
]
