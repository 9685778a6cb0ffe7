from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from flaghom.boundary import SparseMatrix, build_chain_complex
from flaghom.homology import (
    ConsistencyError,
    HomologySummary,
    StructureViolation,
    check_consistency,
    halve,
    homology_groups,
    mod2_betti,
    poincare_polynomial,
    rank_f2,
    rank_mod_p,
    rank_q,
    smith_normal_form,
    top_betti,
)

matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def _sympy_factors(dense):
    fs = invariant_factors(Matrix(dense), domain=ZZ)
    return sorted(abs(int(f)) for f in fs if f != 0)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_snf_matches_sympy(dense):
    assert smith_normal_form(SparseMatrix.from_dense(dense)) == _sympy_factors(dense)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_rank_agrees_with_sympy(dense):
    m = SparseMatrix.from_dense(dense)
    r = Matrix(dense).rank()
    assert rank_q(m) == r
    assert rank_mod_p(m, 2305843009213693951) == r


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_rank_f2_matches_mod_p(dense):
    m = SparseMatrix.from_dense(dense)
    assert rank_f2(m) == rank_mod_p(m, 2)


def test_snf_examples():
    assert smith_normal_form(SparseMatrix.from_dense([[0, 0], [0, 0]])) == []
    assert smith_normal_form(SparseMatrix.from_dense([[2]])) == [2]
    assert smith_normal_form(SparseMatrix.from_dense([[0, -2], [-2, 0]])) == [2, 2]
    # divisibility chain
    assert smith_normal_form(SparseMatrix.from_dense([[2, 0], [0, 3]])) == [1, 6]


def test_rank_mod_p_examples():
    two = SparseMatrix.from_dense([[2]])
    assert rank_mod_p(two, 2) == 0
    assert rank_mod_p(two, 3) == 1
    assert rank_mod_p(SparseMatrix.from_dense([[0, -2], [-2, 0]]), 5) == 2


def test_halve_rejects_odd():
    with pytest.raises(StructureViolation):
        halve(SparseMatrix.from_dense([[2, 3]]))


def test_small_homology(table):
    h = homology_groups(build_chain_complex(table("A", 1)))
    assert h.betti == [1, 1] and h.torsion_ranks == [0, 0]
    assert poincare_polynomial(h) == (1, 1)
    h = homology_groups(build_chain_complex(table("A", 2)))
    assert h.betti == [1, 0, 0, 1] and h.torsion_ranks == [0, 2, 0, 0]
    assert h.torsion[1] == [2, 2]
    assert poincare_polynomial(h) == (1, 0, 0, 1)
    h = homology_groups(build_chain_complex(table("A", 2), (1, 2)))
    assert poincare_polynomial(h) == (1,)


def test_mod2_betti(table):
    assert mod2_betti(build_chain_complex(table("A", 2))) == [1, 2, 2, 1]
    assert mod2_betti(build_chain_complex(table("A", 1))) == [1, 1]
    t = table("F", 4)
    assert mod2_betti(build_chain_complex(t)) == t.length_profile()


def test_f4_maximal(table):
    from flaghom import poly

    c = build_chain_complex(table("F", 4))
    want = poly.product([(1,) + (0,) * 10 + (1,), (1,) + (0,) * 6 + (1,), (1, 0, 0, 1), (1, 0, 0, 1)])
    exact = homology_groups(c, "exact")
    inferred = homology_groups(c, "rank-inferred")
    assert exact.poincare == want
    assert inferred.betti == exact.betti and inferred.torsion_ranks == exact.torsion_ranks
    assert not exact.violations
    check_consistency(exact)
    assert top_betti(c) == (24, 1)


def test_consistency_catches_bad_summary():
    h = HomologySummary([1, 1], [0, 0], [[], []], [1, 2], "exact")
    with pytest.raises(ConsistencyError):
        check_consistency(h)


@pytest.mark.parametrize("key", [("B", 3), ("C", 3), ("D", 4)])
def test_exact_and_inferred_agree(key, table):
    t = table(*key)
    for theta in [(), (1,), (2,), (1, 3)]:
        c = build_chain_complex(t, theta)
        a = homology_groups(c, "exact")
        b = homology_groups(c, "rank-inferred", workers=2)
        assert (a.betti, a.torsion_ranks) == (b.betti, b.torsion_ranks)
        check_consistency(a)
        assert mod2_betti(c) == [x + y + z for x, y, z in zip(a.betti, a.torsion_ranks, [0] + a.torsion_ranks)]
