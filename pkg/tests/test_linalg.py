"""Matrices over both backends: solving, kernels, span sizes, exactness."""

import pytest
from hypothesis import given, settings, strategies as st

from oracles import span_closure
from totref.errors import DimensionMismatch, NotAComplex
from totref.family import eta, gamma
from totref.linalg import (Matrix, check_exact_at, column_span_size,
                           hstack, kernel_gens, solve_right, vstack)
from totref.rings import FiniteLocalRing


def mat_z9(z9, rows):
    return Matrix(z9, [[z9.from_int(v) for v in row] for row in rows])


def test_matrix_basic_algebra(z9):
    a = mat_z9(z9, [[1, 2], [3, 4]])
    b = mat_z9(z9, [[0, 1], [1, 0]])
    assert (a * b).entries == mat_z9(z9, [[2, 1], [4, 3]]).entries
    assert (a + b).entries == mat_z9(z9, [[1, 3], [4, 4]]).entries
    assert (a - a).is_zero
    assert a.transpose().entries == mat_z9(z9, [[1, 3], [2, 4]]).entries
    ident = Matrix.identity(z9, 2)
    assert (a * ident).entries == a.entries


def test_matrix_shape_errors(z9):
    a = mat_z9(z9, [[1, 2]])
    b = mat_z9(z9, [[1, 2]])
    with pytest.raises(DimensionMismatch):
        a * b


def test_hstack_vstack(z9):
    a = mat_z9(z9, [[1], [2]])
    b = mat_z9(z9, [[3], [4]])
    assert hstack([a, b]).entries == mat_z9(z9, [[1, 3], [2, 4]]).entries
    assert vstack([a, b]).entries == mat_z9(z9, [[1], [2], [3], [4]]).entries


def test_column_span_size_matches_closure_oracle(z9):
    cases = [[[3, 1], [0, 3]], [[3, 0], [0, 3]], [[1, 0], [0, 1]],
             [[3, 6], [3, 3]], [[0, 0], [0, 0]]]
    for rows in cases:
        mat = mat_z9(z9, rows)
        cols = [tuple(row[j] for row in rows) for j in range(2)]
        assert column_span_size(mat) == len(span_closure(cols, 9)), rows


def test_solve_right_finite_known_instance(z9):
    rho = mat_z9(z9, [[3, 1], [0, 3]])
    rhs = mat_z9(z9, [[4], [3]])  # rho * (1, 1)
    sol = solve_right(rho, rhs)
    assert sol is not None
    assert (rho * sol - rhs).is_zero


def test_solve_right_reports_unsolvable(z9):
    rho = mat_z9(z9, [[3, 0], [0, 3]])
    rhs = mat_z9(z9, [[1], [0]])
    assert solve_right(rho, rhs) is None


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 8), min_size=4, max_size=4),
       st.lists(st.integers(0, 8), min_size=4, max_size=4))
def test_solve_right_finds_constructed_solutions(avals, xvals):
    z9 = FiniteLocalRing(3, 2)
    a = mat_z9(z9, [avals[:2], avals[2:]])
    x = mat_z9(z9, [xvals[:2], xvals[2:]])
    rhs = a * x
    sol = solve_right(a, rhs)
    assert sol is not None
    assert (a * sol - rhs).is_zero


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 8), min_size=6, max_size=6))
def test_kernel_gens_annihilate_and_are_complete(vals):
    z9 = FiniteLocalRing(3, 2)
    a = mat_z9(z9, [vals[:3], vals[3:]])
    gens = kernel_gens(a)
    for g in gens:
        assert (a * g).is_zero
    # completeness: count kernel vectors two ways
    brute = 0
    for v0 in range(9):
        for v1 in range(9):
            for v2 in range(9):
                img = [(vals[0] * v0 + vals[1] * v1 + vals[2] * v2) % 9,
                       (vals[3] * v0 + vals[4] * v1 + vals[5] * v2) % 9]
                if img == [0, 0]:
                    brute += 1
    if gens:
        assert column_span_size(hstack(gens)) == brute
    else:
        assert brute == 1


def test_check_exact_at_accepts_periodic_pair(pair_z9):
    g = gamma(pair_z9, pair_z9.ring.from_int(1))
    e = eta(pair_z9, pair_z9.ring.from_int(1))
    rep = check_exact_at(e, g)
    assert rep.passed
    assert rep.details["kernel_size"] == rep.details["image_size"]


def test_check_exact_at_rejects_nonzero_composite(z9):
    a = mat_z9(z9, [[3]])
    b = mat_z9(z9, [[1]])
    with pytest.raises(NotAComplex):
        check_exact_at(b, a)


def test_check_exact_at_detects_inexactness(z9):
    # 3*3 = 0 but ker(0) is everything while im(3) is not
    zero = mat_z9(z9, [[0]])
    three = mat_z9(z9, [[3]])
    rep = check_exact_at(three, zero)
    assert not rep.passed


# -- graded layouts ---------------------------------------------------------

def test_graded_solve_right_round_trip(pair_f5):
    ring = pair_f5.ring
    g = gamma(pair_f5, ring.parse("z"))
    x = Matrix(ring, [[ring.parse("z")], [ring.parse("x")]],
               row_degs=g.col_degs, col_degs=(2,))
    rhs = g * x
    sol = solve_right(g, rhs, 8)
    assert sol is not None
    assert (g * sol - rhs).is_zero


def test_graded_kernel_gens_annihilate(pair_f5):
    ring = pair_f5.ring
    g = gamma(pair_f5, ring.parse("z"))
    gens = kernel_gens(g, 8)
    assert gens, "periodic presentations have nontrivial kernels"
    for k in gens:
        assert (g * k).is_zero


def test_graded_exactness_certificate(pair_f5):
    from totref.family import periodic_resolution
    diffs = periodic_resolution(pair_f5, pair_f5.ring.parse("z"), 2)
    rep = check_exact_at(diffs[1], diffs[0], 8)
    assert rep.passed
    assert rep.scope["mode"] == "degree"
