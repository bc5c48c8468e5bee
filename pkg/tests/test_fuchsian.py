import random
from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twistgm.cohomology import gauss_connection
from twistgm.errors import ExponentSumViolation, NotCyclic, UnknownPair
from twistgm.exactalg import RatFuncZ, rf_eval
from twistgm.fuchsian import (CATALOG_TAGS, FuchsianSystem, ScalarODE2, WeylElement,
                              det_connection, catalog_matrix, to_scalar, trace_residue_sum,
                              weyl_reduce)
from twistgm.verify import sample_abc

z = RatFuncZ.z()
A, B, C = Q(1, 3), Q(1, 5), Q(5, 7)


def samples(n, seed=0):
    rng = random.Random(seed)
    return [sample_abc(rng) for _ in range(n)]


class TestCatalog:
    def test_inf0_entries(self):
        sys = catalog_matrix("inf0", A, B, C)
        assert sys.singular_points == [0, 1]
        assert sys.residue(0) == [[0, 0], [C - A, -C]]
        assert sys.residue(1) == [[C - A - B, B - C], [0, 0]]
        assert sys.residue(Q(5)) == [[0, 0], [0, 0]]

    @pytest.mark.parametrize("tag", CATALOG_TAGS)
    def test_matches_derivation(self, tag):
        for a, b, c in samples(4, seed=CATALOG_TAGS.index(tag)):
            derived = FuchsianSystem.from_connection(gauss_connection(tag, a, b, c), (a, b, c))
            assert derived == catalog_matrix(tag, a, b, c)

    def test_printed_entry_differs(self):
        printed = catalog_matrix("0-1z", A, B, C, printed=True)
        assert printed != catalog_matrix("0-1z", A, B, C)
        assert printed.residue(0)[1][1] == -(C - 1)
        assert det_connection(printed) != A * B / (z * (z - 1))

    def test_string_params_and_aliases(self):
        assert catalog_matrix("inf0", "1/3", "1/5", "5/7") == catalog_matrix("inf0", A, B, C)
        with pytest.raises(UnknownPair):
            catalog_matrix("2-3", A, B, C)

    def test_evaluate_matches_matrix(self):
        sys = catalog_matrix("1zinf", A, B, C)
        mat = sys.matrix()
        for zv in (Q(1, 3), Q(-2), Q(7, 4)):
            num = sys.evaluate(complex(zv))
            for i in range(2):
                for j in range(2):
                    assert abs(num[i][j] - float(rf_eval(mat[i][j], zv))) < 1e-14

    def test_rejects_non_fuchsian(self):
        with pytest.raises(ValueError):
            FuchsianSystem.from_matrix([[1 / (z * z), RatFuncZ()], [RatFuncZ(), RatFuncZ()]])
        with pytest.raises(ValueError):
            FuchsianSystem.from_matrix([[z, RatFuncZ()], [RatFuncZ(), RatFuncZ()]])


class TestInvariants:
    @pytest.mark.parametrize("tag", CATALOG_TAGS)
    def test_determinant(self, tag):
        for a, b, c in samples(5, seed=1):
            assert det_connection(catalog_matrix(tag, a, b, c)) == a * b / (z * (z - 1))

    def test_zero_system(self):
        zero = FuchsianSystem.from_matrix([[RatFuncZ()] * 2] * 2)
        assert det_connection(zero) == RatFuncZ()
        assert trace_residue_sum(zero) == 0

    @pytest.mark.parametrize("tag", CATALOG_TAGS)
    def test_trace_sum(self, tag):
        # trace(A0 + A1) = -a - b for every basis in the catalog
        for a, b, c in samples(3, seed=2):
            assert trace_residue_sum(catalog_matrix(tag, a, b, c)) == -a - b


class TestScalar:
    @pytest.mark.parametrize("tag", CATALOG_TAGS)
    def test_first_component_is_gauss(self, tag):
        for a, b, c in samples(3, seed=3):
            ode = to_scalar(catalog_matrix(tag, a, b, c), 0)
            assert ode.same_operator(ScalarODE2.gauss(a, b, c))

    def test_diagonal_not_cyclic(self):
        diag = FuchsianSystem.from_matrix([[1 / z, RatFuncZ()], [RatFuncZ(), 1 / (z - 1)]])
        with pytest.raises(NotCyclic):
            to_scalar(diag)

    def test_triangular_falls_back(self):
        tri = FuchsianSystem.from_matrix([[1 / z, RatFuncZ()], [1 / (z - 1), RatFuncZ()]])
        assert to_scalar(tri, 0).component == 1


class TestWeyl:
    def test_commutator(self):
        zz, d = WeylElement.z(), WeylElement.d()
        assert d * zz == zz * d + 1
        assert d * zz - zz * d == 1

    def test_euler_square(self):
        zz, d = WeylElement.z(), WeylElement.d()
        theta = zz * d
        assert theta**2 == zz**2 * d**2 + zz * d

    def test_d_squared_z_squared(self):
        zz, d = WeylElement.z(), WeylElement.d()
        assert d**2 * zz**2 == zz**2 * d**2 + 4 * zz * d + 2

    rat = st.fractions(-3, 3, max_denominator=5)

    @given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), rat), max_size=3),
           st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), rat), max_size=3),
           st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), rat), max_size=3))
    def test_associative(self, x, y, w):
        def build(terms):
            return WeylElement({(i, j): c for i, j, c in terms})

        p, q, r = build(x), build(y), build(w)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r

    def test_reduction_example(self):
        al = [Q(-7, 6), Q(-2, 3), Q(1, 3), Q(-1, 2)]
        ode, (a, b, c), op = weyl_reduce(al)
        assert (a, b, c) == (Q(1, 3), Q(1, 2), Q(5, 3))
        assert ode.same_operator(ScalarODE2.gauss(a, b, c))
        zz, d = WeylElement.z(), WeylElement.d()
        gauss_op = (zz - zz**2) * d**2 + (c - (a + b + 1) * zz) * d - a * b
        assert op == -gauss_op
        assert op.order() == 2

    def test_sum_violation(self):
        with pytest.raises(ExponentSumViolation):
            weyl_reduce([Q(-1, 2), Q(-1, 2), Q(-1, 3), Q(-1, 2)])
