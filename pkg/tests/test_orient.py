from __future__ import annotations

import pytest

from flaghom.boundary import build_chain_complex
from flaghom.homology import homology_groups
from flaghom.orient import a_n_rule, dim_flag, is_orientable, s_alpha_components, s_alpha_theta
from flaghom.rootsys import build_root_system

E6 = build_root_system("E", 6)
E7 = build_root_system("E", 7)
F4 = build_root_system("F", 4)


def test_disconnected_alpha_gives_zero():
    assert s_alpha_theta(E6, 1, (5, 6)) == 0


def test_worked_values():
    assert s_alpha_theta(E6, 2, (1, 3, 4, 5, 6)) == -9
    assert s_alpha_theta(E7, 2, (1, 3, 4, 5, 6, 7)) == -12
    parts = dict(s_alpha_components(E7, 5, (1, 2, 3, 4, 6, 7)))
    assert parts == {(1, 2, 3, 4): -6, (6, 7): -2}
    assert s_alpha_theta(E7, 5, (1, 2, 3, 4, 6, 7)) == -8


def test_a_n_rule():
    assert a_n_rule(5, 3) == -9
    assert a_n_rule(6, 3) == -12
    for n in range(1, 8):
        assert a_n_rule(n, 1) == a_n_rule(n, n) == -n
    with pytest.raises(ValueError):
        a_n_rule(3, 4)


def test_a_n_rule_matches_root_sum():
    # end attachment in A_(n+1); interior attachment via the fork of D_n
    for n in range(2, 7):
        a = build_root_system("A", n + 1)
        assert s_alpha_theta(a, n + 1, range(1, n + 1)) == a_n_rule(n, n)
        d = build_root_system("D", n + 1)
        assert s_alpha_theta(d, n + 1, range(1, n + 1)) == a_n_rule(n, n - 1)


def test_alpha_in_theta_rejected():
    with pytest.raises(ValueError):
        s_alpha_theta(F4, 1, (1, 2))


def test_dims():
    assert dim_flag(F4, (1,)) == 23
    assert dim_flag(F4, ()) == 24
    assert dim_flag(E6, (1, 3, 4, 5, 6)) == 21
    assert dim_flag(E6, (2, 3, 4, 5, 6)) == 16


def test_f4_examples(table):
    t = table("F", 4)
    for theta, top, orientable in [((1, 2), 21, True), ((1,), 21, False)]:
        h = homology_groups(build_chain_complex(t, theta))
        rep = is_orientable(F4, theta, h.poincare)
        assert rep.beta_top_degree == top
        assert rep.orientable_by_betti is orientable and rep.orientable_by_sum is orientable
        assert rep.agree


def test_e7_sum_criterion():
    rep = is_orientable(E7, (2, 5, 7))
    assert rep.dim == 60 and rep.orientable_by_sum
    assert rep.agree is None


def test_maximal_flags_orientable():
    for rs in (E6, E7, F4, build_root_system("B", 5), build_root_system("D", 6)):
        assert is_orientable(rs, ()).orientable_by_sum
