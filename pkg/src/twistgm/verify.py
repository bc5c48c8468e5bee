"""Verification suites: exact oracles for the symbolic layer, tolerances for numerics.

Every suite returns a list of :class:`Check`.  Parameter samples come from a
seeded ``random.Random`` so identical (samples, seed) give identical reports.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from .arrangement import ConfigZ, build_master, gauss_master
from .cohomology import cohomology_rank, gauss_basis, gauss_connection, nabla0, reduce
from .exactalg import RatFuncZ, format_rat
from .forms import OneForm
from .fuchsian import CATALOG_TAGS as CATALOG_ORDER
from .fuchsian import (FuchsianSystem, ScalarODE2, WeylElement, det_connection, catalog_matrix,
                       to_scalar, weyl_reduce)
from .numerics import (ALL_CYCLES, PathPlan, QuadSpec, covariance_check, euler_cycle_integral,
                       form_integral, hyp2f1_series, match_relation, ode_solve_path,
                       relation_check)
from .numerics.covariance import elementary_g, torus_h
from .numerics.cycles import CycleId
from .numerics.special import beta

Number = Union[float, complex]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    expected: object
    actual: object
    abs_err: Optional[float] = None
    exact: bool = False
    tol: Optional[float] = None

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status,
               "expected": _jsonable(self.expected), "actual": _jsonable(self.actual)}
        if self.exact:
            out["exact"] = True
        else:
            out["abs_err"] = self.abs_err
            out["tol"] = self.tol
        return out


def _jsonable(x):
    if isinstance(x, complex):
        return x.real if x.imag == 0 else [x.real, x.imag]
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    if isinstance(x, Fraction):
        return format_rat(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


def exact_check(name: str, expected, actual) -> Check:
    return Check(name, expected == actual, expected, actual, exact=True)


def rel_check(name: str, expected: Number, actual: Number, tol: float) -> Check:
    err = abs(actual - expected)
    scale = abs(expected) or 1.0
    return Check(name, err <= tol * scale, complex(expected), complex(actual), err, tol=tol)


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def _rand_rat(rng: random.Random, lo: int = -3, hi: int = 3, max_den: int = 9) -> Fraction:
    den = rng.randint(2, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def sample_abc(rng: random.Random) -> tuple[Fraction, Fraction, Fraction]:
    """Rational (a, b, c) with a, b, c, c-a, c-b all non-integral."""
    while True:
        a, b, c = _rand_rat(rng), _rand_rat(rng), _rand_rat(rng)
        if all(x.denominator != 1 for x in (a, b, c, c - a, c - b)):
            return a, b, c


def sample_alphas(rng: random.Random) -> list[Fraction]:
    while True:
        a1, a2, a3 = _rand_rat(rng), _rand_rat(rng), _rand_rat(rng)
        if all(x.denominator != 1 for x in (a1, a2, a3, a1 + a2 + a3)):
            return [-2 - a1 - a2 - a3, a1, a2, a3]


def _fmt_abc(a, b, c) -> str:
    return f"a={format_rat(a)},b={format_rat(b)},c={format_rat(c)}"


# ---------------------------------------------------------------------------
# Exact suites
# ---------------------------------------------------------------------------


Derived = list[tuple[tuple[Fraction, Fraction, Fraction], dict[str, FuchsianSystem]]]


def derive_catalog(samples: int = 20, seed: int = 0) -> Derived:
    """Derive all six systems at ``samples`` seeded parameter points."""
    rng = random.Random(seed)
    out = []
    for _ in range(samples):
        a, b, c = sample_abc(rng)
        systems = {tag: FuchsianSystem.from_connection(gauss_connection(tag, a, b, c), (a, b, c))
                   for tag in CATALOG_ORDER}
        out.append(((a, b, c), systems))
    return out


def suite_matrices(samples: int = 20, seed: int = 0, derived: Optional[Derived] = None) -> list[Check]:
    derived = derived if derived is not None else derive_catalog(samples, seed)
    out = []
    for (a, b, c), systems in derived:
        for tag in CATALOG_ORDER:
            oracle = catalog_matrix(tag, a, b, c)
            out.append(exact_check(f"matrix {tag} {_fmt_abc(a, b, c)}",
                                   _matrix_str(oracle), _matrix_str(systems[tag])))
    return out


def _matrix_str(sys: FuchsianSystem) -> str:
    return "[" + "; ".join(", ".join(str(e) for e in row) for row in sys.matrix()) + "]"


def _per_tag(derived: Derived, fn: Callable) -> list[Check]:
    out = []
    for tag in CATALOG_ORDER:
        bad = None
        expected = actual = None
        for (a, b, c), systems in derived:
            expected, actual = fn(systems[tag], a, b, c)
            if expected != actual:
                bad = _fmt_abc(a, b, c)
                break
        name = f"{tag} ({len(derived)} samples)" + (f" first failure at {bad}" if bad else "")
        out.append(Check(name, bad is None, str(expected), str(actual), exact=True))
    return out


def suite_det(samples: int = 20, seed: int = 0, derived: Optional[Derived] = None) -> list[Check]:
    z = RatFuncZ.z()

    def fn(sys, a, b, c):
        return (a * b) / (z * (z - 1)), det_connection(sys)

    derived = derived if derived is not None else derive_catalog(samples, seed)
    return [Check("det " + c.name, c.passed, c.expected, c.actual, exact=True)
            for c in _per_tag(derived, fn)]


def suite_scalar(samples: int = 20, seed: int = 0, derived: Optional[Derived] = None) -> list[Check]:
    def fn(sys, a, b, c):
        want = ScalarODE2.gauss(a, b, c)
        got = to_scalar(sys, 0)
        return (str(want.p), str(want.q)), (str(got.p), str(got.q))

    derived = derived if derived is not None else derive_catalog(samples, seed)
    return [Check("scalar " + c.name, c.passed, c.expected, c.actual, exact=True)
            for c in _per_tag(derived, fn)]


def suite_weyl(samples: int = 20, seed: int = 0) -> list[Check]:
    rng = random.Random(seed)
    z, d = WeylElement.z(), WeylElement.d()
    out = []
    for _ in range(samples):
        al = sample_alphas(rng)
        ode, (a, b, c), op = weyl_reduce(al)
        # the hypergeometric operator z(1-z)d^2 + (c - (a+b+1)z)d - ab, built directly
        gauss_op = (z - z * z) * d * d + (c - (a + b + 1) * z) * d - a * b
        name = "weyl alphas=(" + ",".join(format_rat(x) for x in al) + ")"
        same_op = op == -gauss_op
        same_ode = ode.same_operator(ScalarODE2.gauss(a, b, c))
        map_ok = (a, b, c) == (al[1] + 1, -al[3], al[1] + al[2] + 2)
        out.append(Check(name, same_op and same_ode and map_ok, repr(-gauss_op), repr(op), exact=True))
    return out


def random_oneform(rng: random.Random, m, max_order: int = 3, max_deg: int = 2) -> OneForm:
    """A random admissible form with poles of order <= max_order at each l_j."""
    z = RatFuncZ.z()
    poles = {}
    for j in m.pole_indices:
        for k in range(1, rng.randint(0, max_order) + 1):
            poles[(j, k)] = _rand_rat(rng) + _rand_rat(rng) * z
    poly = [_rand_rat(rng) for _ in range(rng.randint(0, max_deg + 1))]
    return OneForm(m.arrangement, poles, poly)


def suite_reduce_props(samples: int = 100, seed: int = 0) -> list[Check]:
    rng = random.Random(seed)
    out = []
    for i in range(samples):
        a, b, c = sample_abc(rng)
        m = gauss_master(a, b, c)
        basis = gauss_basis(rng.choice(CATALOG_ORDER), m)
        g = random_oneform(rng, m)
        cls = reduce(nabla0(g, m), basis, m)
        zero = all(not x for x in cls.coords)
        out.append(Check(f"reduce(nabla g) sample {i} {_fmt_abc(a, b, c)}", zero,
                         "(0, 0)", "(" + ", ".join(str(x) for x in cls.coords) + ")", exact=True))
    return out


def suite_dimension(samples: int = 5, seed: int = 0) -> list[Check]:
    rng = random.Random(seed)
    out = []
    for n in (3, 4, 5):
        for s in range(samples):
            params = set()
            while len(params) < n - 2:
                p = _rand_rat(rng)
                if p not in (0, 1):
                    params.add(p)
            while True:
                al = [_rand_rat(rng) for _ in range(n)]
                if all(x.denominator != 1 for x in al) and sum(al).denominator != 1:
                    break
            m = build_master(ConfigZ.from_params(sorted(params)), al)
            arr = m.arrangement
            forms = [OneForm.inv_l(arr, j) for j in m.pole_indices]
            forms += [random_oneform(rng, m) for _ in range(2)]
            rank = cohomology_rank(forms, m)
            out.append(Check(f"rank n={n} sample {s}", rank == n - 1, n - 1, rank, exact=True))
    return out


# ---------------------------------------------------------------------------
# Numeric suites
# ---------------------------------------------------------------------------

RELATION_PARAMS = (1 / 3, 1 / 5, 5 / 7)
RELATION_Z = 0.3
ODE_PARAMS = (Fraction(1, 3), Fraction(1, 5), Fraction(5, 7))


def suite_series(q: QuadSpec = QuadSpec(), tol: float = 1e-10) -> list[Check]:
    grid = (0.25, 0.5, 0.75)
    out = []
    cyc = CycleId("0", "1")
    for a in grid:
        for ca in grid:
            c = a + ca
            for b in (0.2, 0.5):
                for z in (0.1, 0.3, 0.5, 0.7):
                    series = hyp2f1_series(a, b, c, z)
                    euler = euler_cycle_integral(a, b, c, z, cyc, q) / beta(a, c - a)
                    out.append(rel_check(f"series vs euler a={a},c-a={ca},b={b},z={z}",
                                         series, euler, tol))
    return out


def suite_relations(q: QuadSpec = QuadSpec()) -> list[Check]:
    a, b, c = RELATION_PARAMS
    z = RELATION_Z
    out = []
    for idx, tol in ((1, 1e-8), (2, 1e-6), (3, 1e-6), (6, 1e-6)):
        r = relation_check(idx, a, b, c, z, q)
        out.append(Check(f"relation {idx} cycle {r.cycle} side {r.side:+d}", r.rel_err <= tol,
                         r.rhs, r.lhs, r.abs_err, tol=tol))
    for idx in (4, 5):
        hits = match_relation(idx, a, b, c, z, q, tol=1e-6)
        desc = [f"cycle {h.cycle} side {h.side:+d}" + (f" variant {h.variant}" if h.variant else "")
                for h in hits]
        err = min((h.abs_err for h in hits), default=None)
        out.append(Check(f"relation {idx} unique match among {len(ALL_CYCLES)} cycles",
                         len(hits) == 1, "exactly one reading", "; ".join(desc) or "none",
                         err, tol=1e-6))
    return out


def suite_ode(q: QuadSpec = QuadSpec(), tol: float = 1e-6) -> list[Check]:
    a, b, c = ODE_PARAMS
    fa, fb, fc = float(a), float(b), float(c)
    z0, z1 = 0.1, 0.5
    cyc = CycleId("0", "1")
    want = beta(fa, fc - fa) * hyp2f1_series(fa, fb, fc, z1)
    out = []
    for tag in CATALOG_ORDER:
        sys = FuchsianSystem.from_connection(gauss_connection(tag, a, b, c))
        y0 = [form_integral("01", fa, fb, fc, z0, cyc, q), form_integral(tag, fa, fb, fc, z0, cyc, q)]
        y = ode_solve_path(sys, PathPlan([z0, z1]), y0)
        out.append(rel_check(f"ode {tag} f01 at z={z1}", want, complex(y[0]), tol))
        partner = form_integral(tag, fa, fb, fc, z1, cyc, q)
        out.append(rel_check(f"ode {tag} f_{tag} at z={z1}", partner, complex(y[1]), tol))
    return out


COV_Z = ((2.0, 1.0, 3.0, 1.0), (1.0, -2.0, -1.0, 4.0))
COV_ALPHAS = (-1 / 2, -1 / 3, -1 / 4, -11 / 12)
COV_CYCLE = (3, 1)


def suite_covariance(q: QuadSpec = QuadSpec(), tol: float = 1e-8, eps: float = 0.1) -> list[Check]:
    out = []
    ident = covariance_check(COV_Z, elementary_g(0, 0, 0.0), torus_h(4, 0, 0.0), COV_ALPHAS, COV_CYCLE, q)
    for cmp in ident:
        out.append(Check(f"identity: {cmp.name}", cmp.lhs == cmp.rhs, cmp.rhs, cmp.lhs,
                         cmp.abs_err, tol=0.0))
    for p in (0, 1):
        for i in (0, 1):
            left, _ = covariance_check(COV_Z, elementary_g(p, i, eps), [1, 1, 1, 1], COV_ALPHAS, COV_CYCLE, q)
            out.append(rel_check(f"g = 1 + {eps}E_{p}{i}: {left.name}", left.rhs, left.lhs, tol))
    hs = [(f"h_{j} -> (1+{eps})", torus_h(4, j, eps)) for j in range(4)]
    hs.append(("h = diag(1,1,1,3/2)", [1, 1, 1, 1.5]))
    for label, h in hs:
        _, right = covariance_check(COV_Z, [[1, 0], [0, 1]], h, COV_ALPHAS, COV_CYCLE, q)
        out.append(rel_check(f"{label}: {right.name}", right.rhs, right.lhs, tol))
    return out


SUITES: dict[str, Callable[[int, int, QuadSpec], list[Check]]] = {
    "matrices": lambda n, seed, q: suite_matrices(n, seed),
    "det": lambda n, seed, q: suite_det(n, seed),
    "scalar": lambda n, seed, q: suite_scalar(n, seed),
    "weyl": lambda n, seed, q: suite_weyl(n, seed),
    "reduce-props": lambda n, seed, q: suite_reduce_props(n, seed),
    "dimension": lambda n, seed, q: suite_dimension(max(1, n // 4), seed),
    "series": lambda n, seed, q: suite_series(q),
    "relations": lambda n, seed, q: suite_relations(q),
    "ode": lambda n, seed, q: suite_ode(q),
    "covariance": lambda n, seed, q: suite_covariance(q),
}
SUITE_NAMES = tuple(SUITES) + ("all",)


def run_suite(name: str, samples: int = 20, seed: int = 0, q: Optional[QuadSpec] = None) -> list[Check]:
    """Run one suite, or every suite in order for ``name == "all"``."""
    q = q or QuadSpec()
    if name == "all":
        return [c for key in SUITES for c in SUITES[key](samples, seed, q)]
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](samples, seed, q)
