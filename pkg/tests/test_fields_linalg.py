from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from quiverlab.fields import QQ, Fp, PrimeField, field_from_name
from quiverlab.linalg import SparseEchelon, determinant, nullspace, rank, rref, solve_in_span


def test_prime_field_arithmetic():
    F = PrimeField(7)
    a, b = F(3), F(5)
    assert a + b == 1
    assert a * b == 1
    assert (a / b) * b == a
    assert -a == 4
    assert F(0) == 0


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError):
        PrimeField(9)


def test_field_from_name():
    assert field_from_name("rational") is QQ
    assert field_from_name("5").p == 5


matrices = st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=4)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_matches_sympy(rows):
    frs = [[Fraction(x) for x in r] for r in rows]
    assert rank(frs, 3) == sympy.Matrix(rows).rank()


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_nullspace_vectors_are_killed(rows):
    frs = [[Fraction(x) for x in r] for r in rows]
    ns = nullspace(frs, 3, Fraction(0))
    assert len(ns) == 3 - sympy.Matrix(rows).rank()
    for v in ns:
        for r in frs:
            assert sum(a * b for a, b in zip(r, v)) == 0


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3))
def test_determinant_matches_sympy(rows):
    assert determinant([[Fraction(x) for x in r] for r in rows], Fraction(0)) == sympy.Matrix(rows).det()


def test_solve_in_span():
    basis = [[Fraction(1), Fraction(0), Fraction(1)], [Fraction(0), Fraction(1), Fraction(1)]]
    assert solve_in_span(basis, [Fraction(2), Fraction(3), Fraction(5)], Fraction(0)) == [2, 3]
    assert solve_in_span(basis, [Fraction(1), Fraction(0), Fraction(0)], Fraction(0)) is None


def test_sparse_echelon_membership():
    e = SparseEchelon()
    assert e.add({0: Fraction(1), 2: Fraction(1)})
    assert e.add({1: Fraction(1), 2: Fraction(1)})
    assert not e.add({0: Fraction(1), 1: Fraction(-1)})
    assert {0: Fraction(2), 2: Fraction(2)} in e
    assert {0: Fraction(1)} not in e
    assert len(e) == 2


def test_rref_over_prime_field():
    F = PrimeField(3)
    rows = [[F(1), F(2)], [F(2), F(1)]]
    red, piv = rref(rows)
    assert piv == [0]
    assert isinstance(red[0][0], Fp)
