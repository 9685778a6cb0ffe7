"""Elementary moves between reduced words and the degree of coordinate changes.

Two reduced words of the same element give two parameterisations of one
Schubert cell.  The change of coordinates between them has degree +-1,
and it factors over elementary moves:

    commutation   s_i s_j        -> s_j s_i          degree -1
    short braid   s_i s_j s_i    -> s_j s_i s_j      degree +1
    long braid    s_i s_j s_i s_j -> s_j s_i s_j s_i  degree -1

Triple bonds (G2) have no sign analysis here and are rejected.
"""

from __future__ import annotations

import enum
from collections import deque

from flaghom.rootsys import RootSystem
from flaghom.weyl import GroupTable, Word, from_word, lcp

MAX_BFS_NODES = 10**6


class UnsupportedMove(ValueError):
    """Triple-bond (G2) braid relations carry no known sign."""


class MoveKind(enum.Enum):
    COMMUTATION = 2
    SHORT_BRAID = 3
    LONG_BRAID = 4


_SIGN = {MoveKind.COMMUTATION: -1, MoveKind.SHORT_BRAID: 1, MoveKind.LONG_BRAID: -1}


def move_sign(kind: MoveKind) -> int:
    return _SIGN[kind]


def braid_order(rs: RootSystem, i: int, j: int) -> int:
    """Order m_ij of s_i s_j."""
    if i == j:
        return 1
    prod = rs.cartan[i - 1][j - 1] * rs.cartan[j - 1][i - 1]
    return {0: 2, 1: 3, 2: 4, 3: 6}[prod]


def _kind_for(rs: RootSystem, i: int, j: int) -> MoveKind:
    m = braid_order(rs, i, j)
    if m == 6:
        raise UnsupportedMove(
            f"s{i}, s{j} form a triple bond; only simple and double bonds have a sign rule"
        )
    return MoveKind(m)


def apply_move(rs: RootSystem, word, pos: int, kind: MoveKind) -> Word:
    """Apply a move to the letters starting at 1-based position pos."""
    word = tuple(word)
    span = kind.value
    k = pos - 1
    seg = word[k : k + span]
    expected = {
        MoveKind.COMMUTATION: "s_i s_j with a_ij = 0",
        MoveKind.SHORT_BRAID: "s_i s_j s_i over a simple bond",
        MoveKind.LONG_BRAID: "s_i s_j s_i s_j over a double bond",
    }[kind]
    if k < 0 or len(seg) != span:
        raise ValueError(f"position {pos}: word too short for {expected}")
    i, j = seg[0], seg[1]
    pattern = tuple(i if t % 2 == 0 else j for t in range(span))
    if i == j or seg != pattern or braid_order(rs, i, j) != span:
        raise ValueError(f"position {pos}: letters {seg} do not match {expected}")
    image = tuple(j if t % 2 == 0 else i for t in range(span))
    return word[:k] + image + word[k + span :]


def neighbours(rs: RootSystem, word: Word):
    """Yield (new_word, kind) for every single move applicable to word."""
    n = len(word)
    for k in range(n - 1):
        i, j = word[k], word[k + 1]
        if i == j:
            continue
        m = braid_order(rs, i, j)
        if m == 6:
            raise UnsupportedMove(f"triple bond between s{i} and s{j}")
        if k + m > n:
            continue
        seg = word[k : k + m]
        if all(seg[t] == (i if t % 2 == 0 else j) for t in range(m)):
            image = tuple(j if t % 2 == 0 else i for t in range(m))
            yield word[:k] + image + word[k + m :], MoveKind(m)


def degree_by_move_path(
    rs: RootSystem, word_a, word_b, max_nodes: int = MAX_BFS_NODES, exhaustive: bool = True
) -> int:
    """Degree of the coordinate change between two reduced words, by BFS.

    With exhaustive=True the whole reduced-word graph of the element is
    explored and every word must receive a single consistent sign, which
    checks path independence.
    """
    a, b = tuple(word_a), tuple(word_b)
    wa, wb = from_word(rs, a), from_word(rs, b)
    if wa != wb:
        raise ValueError(f"{a} and {b} evaluate to different elements")
    if wa.length != len(a) or wb.length != len(b):
        raise ValueError("both words must be reduced")
    sign = {a: 1}
    queue = deque([a])
    while queue:
        cur = queue.popleft()
        if cur == b and not exhaustive:
            break
        for nxt, kind in neighbours(rs, cur):
            s = sign[cur] * _SIGN[kind]
            seen = sign.get(nxt)
            if seen is None:
                if len(sign) >= max_nodes:
                    raise RuntimeError(f"reduced-word graph exceeds {max_nodes} nodes")
                sign[nxt] = s
                queue.append(nxt)
            elif seen != s:
                raise AssertionError(f"move degree is path dependent at {nxt}")
    return sign[b]


def _check_supported(rs: RootSystem) -> None:
    for i in range(1, rs.rank + 1):
        for j in range(i + 1, rs.rank + 1):
            _kind_for(rs, i, j)


def degree_by_normal_form(
    table: GroupTable,
    w: int,
    wprime: int,
    I: int,
    full: bool = False,
    right_to_left: bool = False,
    steps: list | None = None,
) -> int:
    """Degree between NF(w) with letter I deleted and NF(w').

    Letters of NF(w) left of the deletion are pushed one at a time into the
    normal-form suffix; each push lands the letter at some position j and
    contributes (-1)^j.  full=True skips the early exits; right_to_left
    pushes the suffix letters into the prefix instead.  If steps is a list,
    (letter, j) is appended for every push.
    """
    _check_supported(table.rs)
    word = table.words[w]
    target = table.words[wprime]
    ell = len(word)
    if not 1 <= I <= ell:
        raise ValueError(f"deletion index {I} out of range 1..{ell}")
    deleted = word[: I - 1] + word[I:]
    if table.lengths[wprime] != ell - 1 or table.index_of_word(deleted) != wprime:
        raise ValueError(f"not a covering pair with deletion index {I}")
    if right_to_left:
        return _degree_right_to_left(table, word, target, I)
    if target == deleted and not full:
        return 1

    p = 1
    if not full:
        while p < I and word[p - 1] == target[p - 1]:
            p += 1
    words, lengths, left = table.words, table.lengths, table.left
    u = table.index_of_word(word[I:])
    degree = 1
    for k in range(I - 1, p - 1, -1):
        s = word[k - 1]
        nu = left[s - 1][u]
        if lengths[nu] != lengths[u] + 1:
            raise AssertionError("left multiplication lowered the length inside a cover")
        j = lcp(words[u], words[nu])
        if steps is not None:
            steps.append((s, j))
        if j % 2:
            degree = -degree
        u = nu
    if word[: p - 1] + words[u] != target:
        raise AssertionError("normal-form insertion did not reach NF(w')")
    return degree


def degree_to_normal_form(table: GroupTable, word) -> int:
    """Degree between a reduced word and the normal form of its element.

    The word is normalised from its right end: each letter is pushed into
    the normal form of the letters after it.
    """
    words, lengths, left = table.words, table.lengths, table.left
    u = 0
    degree = 1
    for s in reversed(tuple(word)):
        nu = left[s - 1][u]
        if lengths[nu] != lengths[u] + 1:
            raise ValueError(f"{tuple(word)} is not reduced")
        if lcp(words[u], words[nu]) % 2:
            degree = -degree
        u = nu
    return degree


def _degree_right_to_left(table: GroupTable, word: Word, target: Word, I: int) -> int:
    # right multiplication does not act on normal forms by a single insertion,
    # so each step NF(v) s -> NF(v s) is renormalised from the right
    words, lengths, right = table.words, table.lengths, table.right
    v = table.index_of_word(word[: I - 1])
    degree = 1
    for s in word[I:]:
        nv = right[s - 1][v]
        if lengths[nv] != lengths[v] + 1:
            raise AssertionError("right multiplication lowered the length inside a cover")
        degree *= degree_to_normal_form(table, words[v] + (s,))
        v = nv
    if words[v] != target:
        raise AssertionError("normal-form insertion did not reach NF(w')")
    return degree
