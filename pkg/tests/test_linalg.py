from fractions import Fraction as F

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import small_fraction
from quadcurves.linalg import nullspace, rank

matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 6).flatmap(
        lambda n: st.lists(st.lists(small_fraction, min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_nullspace_against_sympy(rows):
    n = len(rows[0])
    basis = nullspace(rows, n)
    ref = sympy.Matrix(rows).nullspace()
    assert len(basis) == len(ref)
    assert rank(rows, n) == sympy.Matrix(rows).rank()
    for v in basis:
        assert all(sum(r[j] * v[j] for j in range(n)) == 0 for r in rows)
    # same span: stacking adds no rank
    if basis:
        both = sympy.Matrix([list(v) for v in basis] + [list(w.T) for w in ref])
        assert both.rank() == len(basis)


def test_free_variable_normalization():
    # x0 + x1 + x2 = 0
    basis = nullspace([[1, 1, 1]], 3)
    assert basis == [[F(-1), F(1), F(0)], [F(-1), F(0), F(1)]]


def test_full_rank_has_trivial_kernel():
    assert nullspace([[1, 2], [3, 4]], 2) == []
