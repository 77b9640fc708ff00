import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricface.errors import CapExceeded
from toricface.exact import (
    IntMatrix,
    RatMatrix,
    det,
    elementary_divisors,
    invert_unimodular,
    kernel_basis,
    primitive,
    rank_mod_p,
    rank_over_field,
    row_lattice_basis,
    smith_normal_form,
    solve_nonneg,
    solve_rational,
)

small_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-6, 6), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
)


def test_rank_identity():
    assert rank_over_field(IntMatrix.identity(3)) == 3


def test_rank_zero_matrix():
    assert rank_over_field(IntMatrix.zero(2, 5)) == 0


def test_rank_dependent_rows():
    m = IntMatrix.from_rows([[1, 2], [2, 4], [3, 6]])
    assert rank_over_field(m) == 1


def test_rank_rational_entries():
    m = RatMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)], [3, 1]])
    assert rank_over_field(m) == 2
    singular = RatMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)], [3, 2]])
    assert rank_over_field(singular) == 1


@given(small_matrices)
@settings(max_examples=150, deadline=None)
def test_rank_equals_rank_of_transpose(rows):
    m = IntMatrix.from_rows(rows)
    assert rank_over_field(m) == rank_over_field(m.transpose())


def test_rank_mod_p_drops_on_char():
    m = IntMatrix.from_rows([[2, 0], [0, 1]])
    assert rank_over_field(m) == 2
    assert rank_mod_p(m, 2) == 1


def test_snf_identity():
    u, d, v = smith_normal_form(IntMatrix.identity(4))
    assert d == IntMatrix.identity(4)


def test_snf_diag_2_3():
    m = IntMatrix.from_rows([[2, 0], [0, 3]])
    _, d, _ = smith_normal_form(m)
    assert [d.at(0, 0), d.at(1, 1)] == [1, 6]


def test_snf_lower_triangular():
    m = IntMatrix.from_rows([[1, 0], [1, 2]])
    _, d, _ = smith_normal_form(m)
    assert [d.at(0, 0), d.at(1, 1)] == [1, 2]


def _check_snf(m):
    u, d, v = smith_normal_form(m)
    assert u.mul(m).mul(v) == d
    assert abs(det(u)) == 1
    assert abs(det(v)) == 1
    diag = [d.at(i, i) for i in range(min(d.rows, d.cols))]
    for i in range(d.rows):
        for j in range(d.cols):
            if i != j:
                assert d.at(i, j) == 0
    for a, b in zip(diag, diag[1:]):
        assert a >= 0
        if a != 0:
            assert b % a == 0
        else:
            assert b == 0


@given(small_matrices)
@settings(max_examples=150, deadline=None)
def test_snf_properties(rows):
    _check_snf(IntMatrix.from_rows(rows))


def test_kernel_basis_exactness():
    m = IntMatrix.from_rows([[1, 1, 1], [0, 1, 2]])
    basis = kernel_basis(m)
    assert len(basis) == 1
    v = basis[0]
    assert m.mul_vector(v) == (0, 0)
    assert primitive(v) in {(1, -2, 1), (-1, 2, -1)}


def test_row_lattice_basis_full():
    basis = row_lattice_basis([(1, 0), (1, 1), (1, 2)], 2)
    m = IntMatrix.from_rows(basis)
    assert rank_over_field(m) == 2
    assert abs(det(m)) == 1  # the lattice is all of Z^2


def test_invert_unimodular():
    m = IntMatrix.from_rows([[2, 1], [1, 1]])
    inv = invert_unimodular(m)
    assert m.mul(inv) == IntMatrix.identity(2)


def test_solve_rational():
    x = solve_rational([[2, 0], [0, 4]], [1, 2], 2)
    assert x == (Fraction(1, 2), Fraction(1, 2))
    assert solve_rational([[1, 1], [1, 1]], [0, 1], 2) is None


def test_solve_nonneg_knapsack():
    sols = solve_nonneg(IntMatrix.from_rows([[1, 1]]), [2], 10)
    assert sols == {(2, 0), (1, 1), (0, 2)}


def test_solve_nonneg_infeasible():
    assert solve_nonneg(IntMatrix.from_rows([[1, 1]]), [-1], 10) == set()


def test_solve_nonneg_two_constraints():
    a = IntMatrix.from_rows([[1, 1, 1], [0, 1, 2]])
    sols = solve_nonneg(a, [2, 2], 10)
    assert sols == {(1, 0, 1), (0, 2, 0)}


def test_solve_nonneg_exactness_property():
    rng = random.Random(7)
    for _ in range(50):
        nr = rng.randint(1, 3)
        nc = rng.randint(1, 4)
        a = IntMatrix.from_rows(
            [[rng.randint(0, 3) for _ in range(nc)] for _ in range(nr)]
        )
        b = [rng.randint(0, 4) for _ in range(nr)]
        try:
            sols = solve_nonneg(a, b, 12)
        except CapExceeded:
            continue
        for x in sols:
            assert list(a.mul_vector(x)) == b


def test_solve_nonneg_cap_exceeded_reports():
    # columns (1,0), (0,1), (-1,0): solutions (t, 1, t) for every t
    a = IntMatrix.from_rows([[1, 0, -1], [0, 1, 0]])
    with pytest.raises(CapExceeded) as exc:
        solve_nonneg(a, [0, 1], 5)
    assert (0, 1, 0) in exc.value.found


def test_elementary_divisors():
    m = IntMatrix.from_rows([[1, 0], [1, 2]])
    assert elementary_divisors(m) == [1, 2]
