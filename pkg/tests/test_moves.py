from __future__ import annotations

import random

import pytest

from flaghom.moves import (
    MoveKind,
    UnsupportedMove,
    apply_move,
    degree_by_move_path,
    degree_by_normal_form,
    degree_to_normal_form,
    move_sign,
    neighbours,
)
from flaghom.rootsys import build_root_system
from flaghom.weyl import permutation_word


def test_move_signs():
    assert move_sign(MoveKind.COMMUTATION) == -1
    assert move_sign(MoveKind.SHORT_BRAID) == 1
    assert move_sign(MoveKind.LONG_BRAID) == -1


def test_apply_move_examples():
    a3 = build_root_system("A", 3)
    assert apply_move(a3, (1, 3), 1, MoveKind.COMMUTATION) == (3, 1)
    assert apply_move(build_root_system("A", 2), (1, 2, 1), 1, MoveKind.SHORT_BRAID) == (2, 1, 2)
    assert apply_move(build_root_system("B", 2), (1, 2, 1, 2), 1, MoveKind.LONG_BRAID) == (2, 1, 2, 1)
    assert apply_move(a3, (2, 1, 3), 2, MoveKind.COMMUTATION) == (2, 3, 1)


@pytest.mark.parametrize("word,pos,kind", [
    ((1, 2), 1, MoveKind.COMMUTATION),     # adjacent generators do not commute
    ((1, 3, 1), 1, MoveKind.SHORT_BRAID),  # no simple bond
    ((1, 3), 2, MoveKind.COMMUTATION),     # runs off the end
    ((1, 2, 1, 2), 1, MoveKind.LONG_BRAID),
])
def test_apply_move_rejects(word, pos, kind):
    with pytest.raises(ValueError, match="position"):
        apply_move(build_root_system("A", 3), word, pos, kind)


def test_move_path_examples():
    a3 = build_root_system("A", 3)
    assert degree_by_move_path(a3, (1, 2, 3), (1, 2, 3)) == 1
    assert degree_by_move_path(build_root_system("A", 2), (1, 2, 1), (2, 1, 2)) == 1
    assert degree_by_move_path(a3, (1, 3), (3, 1)) == -1
    with pytest.raises(ValueError):
        degree_by_move_path(a3, (1, 2), (2, 1))


def test_g2_rejected(table):
    g2 = build_root_system("G", 2)
    with pytest.raises(UnsupportedMove):
        list(neighbours(g2, (1, 2, 1, 2, 1, 2)))
    t = table("G", 2)
    with pytest.raises(UnsupportedMove):
        degree_by_normal_form(t, 1, 0, 1)


def test_path_independence_random(table):
    # exhaustive=True walks the whole reduced-word graph and fails on any
    # inconsistent sign; 60 random elements over three types
    rng = random.Random(7)
    for key in [("A", 4), ("B", 3), ("D", 4), ("C", 3)]:
        t = table(*key)
        for _ in range(15):
            w = rng.randrange(t.size)
            word = t.words[w]
            other = _random_reduced_word_of(t, w, rng)
            d = degree_by_move_path(t.rs, word, other)
            assert d == degree_to_normal_form(t, other)


def _random_reduced_word_of(t, w, rng):
    # walk down from w by random right descents
    word = []
    while w:
        desc = [i + 1 for i in range(t.rs.rank) if t.rdesc[w] >> i & 1]
        s = rng.choice(desc)
        word.insert(0, s)
        w = t.right[s - 1][w]
    return tuple(word)


@pytest.mark.parametrize("key", [("A", 3), ("B", 3)])
def test_algorithm_equals_move_path(key, table):
    t = table(*key)
    rs = t.rs
    pairs = 0
    for w in range(t.size):
        for wp, I, _ in t.covers(w):
            word = t.words[w]
            deleted = word[: I - 1] + word[I:]
            want = degree_by_move_path(rs, t.words[wp], deleted)
            assert degree_by_normal_form(t, w, wp, I) == want
            assert degree_by_normal_form(t, w, wp, I, full=True) == want
            assert degree_by_normal_form(t, w, wp, I, right_to_left=True) == want
            pairs += 1
    assert pairs > 0


def test_algorithm_rejects_non_cover(table):
    t = table("A", 3)
    w = t.index_of_word((1, 2, 1))
    with pytest.raises(ValueError):
        degree_by_normal_form(t, w, 0, 1)


def test_deleted_word_already_normal(table):
    t = table("A", 3)
    for w in range(t.size):
        for wp, I, _ in t.covers(w):
            word = t.words[w]
            if word[: I - 1] + word[I:] == t.words[wp]:
                assert degree_by_normal_form(t, w, wp, I) == 1


def test_sign_rule_for_w_equals_s_u_equals_u_s(table):
    # s_a u = u s_b with l(s_a u) = l(u) + 1 gives degree (-1)^l(u)
    t = table("A", 3)
    rs = t.rs
    seen = 0
    for u in range(t.size):
        for a in range(1, rs.rank + 1):
            w = t.left[a - 1][u]
            if t.lengths[w] != t.lengths[u] + 1:
                continue
            for b in range(1, rs.rank + 1):
                if t.right[b - 1][u] == w:
                    d = degree_by_move_path(rs, (a,) + t.words[u], t.words[u] + (b,))
                    assert d == (-1) ** t.lengths[u]
                    seen += 1
    assert seen >= 10


def test_context_invariance_random(table):
    # padding both words with a common prefix and suffix keeps the degree
    rng = random.Random(11)
    done = 0
    while done < 50:
        key = rng.choice([("A", 3), ("B", 3)])
        t = table(*key)
        rs = t.rs
        w = rng.randrange(t.size)
        a = _random_reduced_word_of(t, w, rng)
        b = _random_reduced_word_of(t, w, rng)
        p = _random_reduced_word_of(t, rng.randrange(t.size), rng)[:2]
        q = _random_reduced_word_of(t, rng.randrange(t.size), rng)[:2]
        padded = p + a + q
        if t.lengths[t.index_of_word(padded)] != len(padded):
            continue
        assert degree_by_move_path(rs, p + a + q, p + b + q) == degree_by_move_path(rs, a, b)
        done += 1


def test_s6_worked_pair(table):
    t = table("A", 5)
    w = t.index_of_word(permutation_word((4, 3, 6, 1, 2, 5)))
    wp = t.index_of_word(permutation_word((4, 3, 2, 1, 6, 5)))
    assert t.words[w] == (5, 2, 3, 4, 1, 2, 3, 1)
    assert t.words[wp] == (5, 1, 2, 3, 1, 2, 1)
    [(I, g)] = [(I, g) for x, I, g in t.covers(w) if x == wp]
    assert I == 4
    steps = []
    assert degree_by_normal_form(t, w, wp, I, steps=steps) == 1
    assert [j for _, j in steps] == [3, 3]
    deleted = t.words[w][:3] + t.words[w][4:]
    assert degree_by_move_path(t.rs, deleted, t.words[wp]) == 1
