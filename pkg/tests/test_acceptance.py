"""Acceptance criteria, one test and one PASS/FAIL line each.

Run under pytest, or directly with ``python3 tests/test_acceptance.py`` for
just the ten summary lines.  Criteria 1-3 share one set of derived systems;
derivation time is charged to criterion 1.
"""

import sys
import time

import pytest

from twistgm.verify import (derive_catalog, suite_covariance, suite_det, suite_dimension,
                            suite_matrices, suite_ode, suite_reduce_props, suite_relations,
                            suite_scalar, suite_series, suite_weyl)

SEED = 7
_cache = {}


def derived():
    if "derived" not in _cache:
        start = time.perf_counter()
        _cache["derived"] = derive_catalog(20, SEED)
        _cache["derive_s"] = time.perf_counter() - start
    return _cache["derived"]


def _matrices():
    checks = suite_matrices(derived=derived())
    return checks, _cache["derive_s"]


CRITERIA = [
    (1, "matrix derivation, 6 pairs x 20 samples, exact", 5.0, _matrices),
    (2, "determinant ab/(z(z-1)), exact", 1.0, lambda: suite_det(derived=derived())),
    (3, "scalar elimination to the Gauss equation, exact", 1.0, lambda: suite_scalar(derived=derived())),
    (4, "Weyl-algebra reduction and parameter map, 20 samples", 1.0, lambda: suite_weyl(20, SEED)),
    (5, "reduce(nabla g) = 0 for 100 random forms", 10.0, lambda: suite_reduce_props(100, SEED)),
    (6, "Euler integral over (0,1) / B vs series, rel 1e-10", 30.0, suite_series),
    (7, "cycle relations (a) 1e-8, (b,c,f) 1e-6, unique (d,e)", 60.0, suite_relations),
    (8, "ODE transport z=0.1 -> 0.5 for six systems, rel 1e-6", 10.0, suite_ode),
    (9, "GL(2) x torus covariance, rel 1e-8", 10.0, suite_covariance),
    (10, "simple-pole span has rank n-1 for n = 3, 4, 5", 5.0, lambda: suite_dimension(5, SEED)),
]


def run_criterion(number):
    _, title, limit, fn = CRITERIA[number - 1]
    if number in (2, 3):
        derived()  # derive outside the timed region; see criterion 1
    start = time.perf_counter()
    out = fn()
    elapsed = time.perf_counter() - start
    checks, extra = out if isinstance(out, tuple) else (out, 0.0)
    elapsed += extra
    failed = [c for c in checks if not c.passed]
    ok = bool(checks) and not failed and elapsed < limit
    line = (f"{'PASS' if ok else 'FAIL'}  criterion {number:2d}: {title}  "
            f"[{len(checks) - len(failed)}/{len(checks)} checks, {elapsed:.2f} s of {limit:g} s]")
    if failed:
        line += f"  first failure: {failed[0].name}"
    return ok, line


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA])
def test_criterion(number, capsys):
    ok, line = run_criterion(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(n) for n, *_ in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
