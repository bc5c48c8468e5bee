import random
from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twistgm.arrangement import (PROJECTIVE, ConfigZ, build_master, dlog_phi,
                                 gauss_master, gauss_params, normalize_z_matrix)
from twistgm.errors import DegenerateConfiguration, ExponentSumViolation, ResonantExponent
from twistgm.exactalg import RatFuncZ
from twistgm.forms import OneForm

z = RatFuncZ.z()
A, B, C = Q(1, 3), Q(1, 5), Q(5, 7)


def cross_ratio_param(m):
    """1 / cross-ratio of the column points p_k = z_1k / z_0k."""
    p = [m[1][k] / m[0][k] for k in range(4)]
    cr = ((p[0] - p[2]) * (p[1] - p[3])) / ((p[0] - p[3]) * (p[1] - p[2]))
    return 1 / cr


def random_matrix(rng, ncols=4):
    while True:
        m = [[Q(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(ncols)] for _ in range(2)]
        minors = [m[0][i] * m[1][j] - m[0][j] * m[1][i] for i in range(ncols) for j in range(i + 1, ncols)]
        if all(minors) and all(m[0]):
            return m


class TestNormalize:
    def test_gauss_matrix(self):
        zz = Q(3, 7)
        cfg = normalize_z_matrix([[1, 0, 1, 1], [0, 1, -1, -zz]])
        assert cfg.n == 3 and cfg.canonical_params == (RatFuncZ.const(zz),)

    def test_degenerate(self):
        with pytest.raises(DegenerateConfiguration):
            normalize_z_matrix([[1, 0, 2, 1], [0, 1, 0, 3]])

    def test_cross_ratio_oracle(self):
        rng = random.Random(11)
        for _ in range(30):
            m = random_matrix(rng)
            cfg = normalize_z_matrix(m)
            assert cfg.canonical_params[0].const_value() == cross_ratio_param(m)

    def test_group_invariance(self):
        rng = random.Random(5)
        for _ in range(30):
            m = random_matrix(rng, ncols=5)
            while True:
                g = [[Q(rng.randint(-5, 5)) for _ in range(2)] for _ in range(2)]
                if g[0][0] * g[1][1] - g[0][1] * g[1][0]:
                    break
            h = [Q(rng.choice([-3, -1, 1, 2, 5]), rng.randint(1, 4)) for _ in range(5)]
            gm = [[sum(g[r][k] * m[k][c] for k in range(2)) * h[c] for c in range(5)] for r in range(2)]
            assert normalize_z_matrix(gm) == normalize_z_matrix(m)

    def test_canonical_points(self):
        cfg = ConfigZ.gauss()
        one, zero = RatFuncZ.const(1), RatFuncZ()
        assert cfg.points == ((one, zero), (zero, one), (one, -one), (one, -z))


class TestMaster:
    def test_gauss_instance(self):
        m = gauss_master(A, B, C)
        assert m.exponents[1:] == (A, C - A, -B)
        assert gauss_params(m) == (A, B, C)
        assert m.forms[3] == (RatFuncZ.const(1), -z)
        t, zz = 0.3, 0.4
        want = t ** float(A) * (1 - t) ** float(C - A) * (1 - zz * t) ** float(-B)
        assert abs(m.evaluate(t, zz) - want) < 1e-14

    def test_projective_accepts(self):
        m = build_master(ConfigZ.gauss(), [Q(-1, 2)] * 4, PROJECTIVE)
        assert sum(m.exponents) == -2

    def test_projective_sum(self):
        with pytest.raises(ExponentSumViolation):
            build_master(ConfigZ.gauss(), [Q(-1, 2), Q(-1, 2), Q(-1, 3), Q(-1, 2)], PROJECTIVE)

    def test_resonant(self):
        with pytest.raises(ResonantExponent):
            build_master(ConfigZ.gauss(), [Q(2), Q(1, 3), Q(1, 5)])

    def test_integer_total_is_resonant(self):
        with pytest.raises(ResonantExponent):
            build_master(ConfigZ.gauss(), [Q(1, 2), Q(1, 3), Q(1, 6)])

    def test_branch_points(self):
        m = gauss_master(A, B, C)
        tags = [bp.tag for bp in m.branch_points()]
        assert tags == ["0", "1", "1/z3", "inf"]
        assert m.branch_points()[2].location == 1 / z


class TestDlog:
    def test_gauss(self):
        m = gauss_master(A, B, C)
        arr = m.arrangement
        want = OneForm(arr, {(1, 1): A, (2, 1): -(C - A), (3, 1): B * z})
        assert dlog_phi(m) == want

    def test_zero_exponents(self):
        m = build_master(ConfigZ.gauss(), [0, 0, 0], validate=False)
        assert dlog_phi(m).is_zero()

    def test_n4(self):
        cfg = ConfigZ.from_params([Q(2), Q(-3)])
        al = [Q(1, 3), Q(1, 5), Q(2, 7), Q(-1, 9)]
        m = build_master(cfg, al)
        want = OneForm(m.arrangement, {(1, 1): al[0], (2, 1): -al[1], (3, 1): -al[2] * 2, (4, 1): al[3] * 3})
        assert dlog_phi(m) == want

    @given(st.lists(st.fractions(-3, 3, max_denominator=6), min_size=3, max_size=3),
           st.lists(st.fractions(-3, 3, max_denominator=6), min_size=3, max_size=3))
    def test_product_additivity(self, e1, e2):
        m1 = build_master(ConfigZ.gauss(), e1, validate=False)
        m2 = m1.with_exponents([0] + e2)
        assert dlog_phi(m1 * m2) == dlog_phi(m1) + dlog_phi(m2)

    def test_pole_set_is_branch_set(self):
        m = build_master(ConfigZ.from_params([Q(2), Q(5, 3)]), [Q(1, 3), Q(1, 5), Q(2, 7), Q(1, 9)])
        finite = [bp for bp in m.branch_points() if not bp.is_infinite]
        keys = {j for (j, _) in dlog_phi(m).poles}
        assert len(keys) == len(finite) == len(m.pole_indices)
        assert {m.root(j).const_value() for j in keys} == {bp.location.const_value() for bp in finite}
