import random
from fractions import Fraction as Q

import pytest

from pilsys.exact import (AffineSolutionSet, Feasible, Infeasible, NoSolution,
                          Polyhedron, UniqueSolution,
                          check_infeasibility_certificate, fm_eliminate,
                          fm_feasible, lin_solve, lp_feasible, lp_maximize,
                          qmat, qvec, recession_cone)


def poly(C, d, E=(), f=(), dim=None):
    C = qmat(C)
    if dim is None:
        dim = len(C[0]) if C else len(E[0])
    return Polyhedron(C, qvec(d), qmat(E), qvec(f), dim)


class TestLinSolve:
    def test_unique(self):
        res = lin_solve(qmat([[1, 0], [1, 1]]), qvec([1, 1]))
        assert res == UniqueSolution([Q(1), Q(0)])

    def test_no_solution(self):
        res = lin_solve(qmat([[1, 0], [1, 0]]), qvec([1, 0]))
        assert isinstance(res, NoSolution)

    def test_affine_zero_matrix(self):
        res = lin_solve(qmat([[0]]), qvec([0]))
        assert isinstance(res, AffineSolutionSet)
        assert res.point == [Q(0)]
        assert res.basis == [[Q(1)]]

    def test_null_space_basis_exact(self):
        A = qmat([[1, 2, 3], [2, 4, 6]])
        res = lin_solve(A, qvec([6, 12]))
        assert isinstance(res, AffineSolutionSet)
        for v in res.basis:
            assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)
        assert len(res.basis) == 2

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            lin_solve(qmat([[1, 0]]), qvec([1, 2]))


class TestLpFeasible:
    def test_box(self):
        res = lp_feasible(poly([[-1], [1]], [0, 1]))
        assert isinstance(res, Feasible)
        assert Q(0) <= res.point[0] <= Q(1)

    def test_empty_box(self):
        P = poly([[-1], [1]], [-1, 0])  # x >= 1, x <= 0
        res = lp_feasible(P)
        assert isinstance(res, Infeasible)
        assert check_infeasibility_certificate(P, res)

    def test_infeasible_equality(self):
        # p in [0,1], 0*p = -1
        P = poly([[1], [-1]], [1, 0], E=[[0]], f=[-1])
        res = lp_feasible(P)
        assert isinstance(res, Infeasible)
        assert check_infeasibility_certificate(P, res)
        assert not fm_feasible(P)

    def test_degenerate_no_rows(self):
        res = lp_feasible(Polyhedron([], [], [], [], 3))
        assert res == Feasible([Q(0)] * 3)

    def test_feasible_point_satisfies_constraints(self):
        P = poly([[1, 1], [-1, 0], [0, -1]], [1, 0, 0], E=[[1, -1]], f=[0])
        res = lp_feasible(P)
        assert isinstance(res, Feasible)
        assert P.contains(res.point)


class TestLpMaximize:
    def test_bounded(self):
        status, val, arg = lp_maximize(poly([[-1], [1]], [0, 1]), qvec([1]))
        assert (status, val, arg) == ("optimal", Q(1), [Q(1)])

    def test_unbounded(self):
        status, _, _ = lp_maximize(poly([[-1]], [0]), qvec([1]))
        assert status == "unbounded"

    def test_infeasible(self):
        status, _, _ = lp_maximize(poly([[-1], [1]], [-1, 0]), qvec([1]))
        assert status == "infeasible"

    def test_2d(self):
        # max x+y over the triangle x,y >= 0, x+y <= 3/2
        P = poly([[-1, 0], [0, -1], [1, 1]], [0, 0, Q(3, 2)])
        status, val, arg = lp_maximize(P, qvec([1, 1]))
        assert status == "optimal" and val == Q(3, 2)
        assert P.contains(arg)


class TestFourierMotzkin:
    def test_substitution(self):
        # 0 <= p <= 1, x = p -> 0 <= x <= 1
        P = poly([[-1, 0], [1, 0]], [0, 1], E=[[1, -1]], f=[0], dim=2)
        R = fm_eliminate(P, 0)
        assert R.dim == 1
        assert fm_feasible(R)
        assert R.contains([Q(1, 2)]) and not R.contains([Q(2)])

    def test_substitution_infeasible(self):
        # 0 <= p <= 1, p = 2
        P = poly([[-1], [1]], [0, 1], E=[[1]], f=[2])
        R = fm_eliminate(P, 0)
        assert R.dim == 0
        assert not fm_feasible(R)

    def test_pairing(self):
        # p+q <= 1, p >= 0, q >= 0; eliminate q -> p <= 1, p >= 0
        P = poly([[1, 1], [-1, 0], [0, -1]], [1, 0, 0])
        R = fm_eliminate(P, 1)
        assert R.dim == 1
        assert R.contains([Q(0)]) and R.contains([Q(1)])
        assert not R.contains([Q(3, 2)]) and not R.contains([Q(-1, 2)])

    def test_bad_index(self):
        with pytest.raises(ValueError):
            fm_eliminate(poly([[1]], [0]), 1)

    def test_agrees_with_simplex_on_random_polyhedra(self):
        rng = random.Random(7)
        for _ in range(1000):
            dim = rng.randint(1, 4)
            rows = rng.randint(1, 8)
            C = [[Q(rng.randint(-3, 3)) for _ in range(dim)] for _ in range(rows)]
            d = [Q(rng.randint(-3, 3)) for _ in range(rows)]
            P = Polyhedron(C, d, [], [], dim)
            assert fm_feasible(P) == isinstance(lp_feasible(P), Feasible)


class TestRecessionCone:
    def test_halfline(self):
        R = recession_cone(poly([[1]], [1]))
        assert R.d == [Q(0)] and R.C == [[Q(1)]]

    def test_box_cone_is_origin(self):
        R = recession_cone(poly([[-1], [1]], [0, 1]))
        assert R.contains([Q(0)]) and not R.contains([Q(1)]) \
            and not R.contains([Q(-1)])

    def test_cone_closed_under_scaling(self):
        rng = random.Random(3)
        for _ in range(50):
            dim = rng.randint(1, 3)
            rows = rng.randint(1, 5)
            C = [[Q(rng.randint(-3, 3)) for _ in range(dim)] for _ in range(rows)]
            d = [Q(rng.randint(-3, 3)) for _ in range(rows)]
            R = recession_cone(Polyhedron(C, d, [], [], dim))
            y = [Q(rng.randint(-4, 4)) for _ in range(dim)]
            if R.contains(y):
                assert R.contains([2 * a for a in y])


class TestCertificates:
    def test_random_infeasible_always_validate(self):
        rng = random.Random(11)
        seen = 0
        for _ in range(400):
            dim = rng.randint(1, 3)
            rows = rng.randint(2, 6)
            C = [[Q(rng.randint(-3, 3)) for _ in range(dim)] for _ in range(rows)]
            d = [Q(rng.randint(-2, 2)) for _ in range(rows)]
            E = [[Q(rng.randint(-2, 2)) for _ in range(dim)]]
            f = [Q(rng.randint(-2, 2))]
            P = Polyhedron(C, d, E, f, dim)
            res = lp_feasible(P)
            if isinstance(res, Infeasible):
                seen += 1
                assert check_infeasibility_certificate(P, res)
            else:
                assert P.contains(res.point)
        assert seen > 20
