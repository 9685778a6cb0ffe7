"""Weyl group elements, normal forms, Bruhat covers and full-group tables.

An element is identified by its matrix on the root lattice (simple-root
basis).  Composition follows act(uv, g) = act(u, act(v, g)), so the word
s_1 s_2 ... s_k applies s_k first.

Normal forms are InverseShortLex: the reduced word that is smallest when
words are compared from the right.  They are built by peeling off the
smallest right descent until the identity is reached.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from flaghom.rootsys import Root, RootSystem

Word = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

# tables take roughly 2 KB per element, so E7 (2,903,040 elements) is refused by default
DEFAULT_MAX_ORDER = 1_000_000


class ResourceError(RuntimeError):
    """The requested group is larger than the configured budget."""


class NotNormalForm(ValueError):
    pass


# ---------------------------------------------------------------------------
# matrices


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _identity_matrix(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def simple_reflection_matrix(rs: RootSystem, i: int) -> Matrix:
    n = rs.rank
    row = rs.cartan[i - 1]
    return tuple(
        tuple(int(k == j) - (row[j] if k == i - 1 else 0) for j in range(n)) for k in range(n)
    )


def _apply(m: Matrix, v) -> Root:
    return tuple(sum(r[j] * v[j] for j in range(len(v))) for r in m)


def _is_negative(v) -> bool:
    return any(c < 0 for c in v)


@dataclass(frozen=True)
class WeylElement:
    rs: RootSystem
    matrix: Matrix
    nf: Word
    length: int

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __mul__(self, other: WeylElement) -> WeylElement:
        return element_from_matrix(self.rs, _matmul(self.matrix, other.matrix))

    def __repr__(self):
        letters = "".join(f"s{i}" for i in self.nf) or "e"
        return f"WeylElement({self.rs.name}: {letters})"


def _word_matrix(rs: RootSystem, word) -> Matrix:
    m = _identity_matrix(rs.rank)
    for i in word:
        if not 1 <= i <= rs.rank:
            raise IndexError(f"generator index {i} out of range 1..{rs.rank}")
        m = _matmul(m, simple_reflection_matrix(rs, i))
    return m


def _length_of_matrix(rs: RootSystem, m: Matrix) -> int:
    return sum(1 for g in rs.positive_roots if _is_negative(_apply(m, g)))


def _nf_of_matrix(rs: RootSystem, m: Matrix) -> Word:
    letters = []
    reflections = [simple_reflection_matrix(rs, i) for i in range(1, rs.rank + 1)]
    while True:
        for i in range(rs.rank):
            if any(m[k][i] < 0 for k in range(rs.rank)):
                letters.append(i + 1)
                m = _matmul(m, reflections[i])
                break
        else:
            break
    return tuple(reversed(letters))


def element_from_matrix(rs: RootSystem, m: Matrix) -> WeylElement:
    nf = _nf_of_matrix(rs, m)
    return WeylElement(rs, m, nf, len(nf))


def from_word(rs: RootSystem, word) -> WeylElement:
    return element_from_matrix(rs, _word_matrix(rs, word))


def identity(rs: RootSystem) -> WeylElement:
    return WeylElement(rs, _identity_matrix(rs.rank), (), 0)


def act(w: WeylElement, gamma) -> Root:
    return _apply(w.matrix, gamma)


def length(w: WeylElement) -> int:
    return _length_of_matrix(w.rs, w.matrix)


def descents(w: WeylElement, side: str = "right") -> frozenset[int]:
    rs = w.rs
    if side == "right":
        return frozenset(
            i + 1 for i in range(rs.rank) if any(w.matrix[k][i] < 0 for k in range(rs.rank))
        )
    if side == "left":
        base = length(w)
        return frozenset(
            i
            for i in range(1, rs.rank + 1)
            if _length_of_matrix(rs, _matmul(simple_reflection_matrix(rs, i), w.matrix)) < base
        )
    raise ValueError("side must be 'left' or 'right'")


def normal_form(w: WeylElement) -> Word:
    return _nf_of_matrix(w.rs, w.matrix)


class NFDiff(NamedTuple):
    """How NF(s w) differs from NF(w).

    kind == "inserted": letter r sits at 0-based position j of the new word
    (j letters of the old word precede it).  kind == "deleted": the letter at
    1-based position j of the old word was removed.
    """

    kind: str
    j: int
    r: int | None = None


def lcp(a, b) -> int:
    n = min(len(a), len(b))
    k = 0
    while k < n and a[k] == b[k]:
        k += 1
    return k


def word_diff(old: Word, new: Word) -> NFDiff:
    k = lcp(old, new)
    if len(new) == len(old) + 1 and new[k + 1 :] == old[k:]:
        return NFDiff("inserted", k, new[k])
    if len(new) == len(old) - 1 and new[k:] == old[k + 1 :]:
        return NFDiff("deleted", k + 1)
    raise ValueError(f"{new} is not a single-letter edit of {old}")


def nf_left_multiply(rs: RootSystem, s: int, nf_w, check: bool = False) -> tuple[Word, NFDiff]:
    nf_w = tuple(nf_w)
    m = _word_matrix(rs, nf_w)
    if check and _nf_of_matrix(rs, m) != nf_w:
        raise NotNormalForm(f"{nf_w} is not the normal form of its element")
    new = _nf_of_matrix(rs, _matmul(simple_reflection_matrix(rs, s), m))
    return new, word_diff(nf_w, new)


def covers_down(w: WeylElement) -> list[tuple[WeylElement, int, Root]]:
    """Elements covered by w, from single-letter deletions of NF(w).

    Returns (w', I, gamma) with I the 1-based deleted position and
    gamma = u^{-1}(alpha_{s_I}) where u is the suffix after position I.
    """
    rs = w.rs
    word = w.nf
    out = []
    seen: set[Matrix] = set()
    for I in range(1, len(word) + 1):
        cand = from_word(rs, word[: I - 1] + word[I:])
        if cand.length != len(word) - 1:
            continue
        if cand.matrix in seen:
            raise AssertionError(f"deletion index not unique for cover of {w}")
        seen.add(cand.matrix)
        gamma = rs.simple_root(word[I - 1])
        for s in word[I:]:
            # u^{-1} = s_l ... s_{I+1}: the leftmost letter of u acts first
            c = rs.pairing(gamma, s)
            gamma = tuple(g - (c if k == s - 1 else 0) for k, g in enumerate(gamma))
        out.append((cand, I, gamma))
    return out


def permutation_word(one_line) -> Word:
    """Normal form of a permutation in one-line notation (type A_{n-1}).

    The right action of s_i swaps positions i and i+1; right descents are
    the positions with w_i > w_{i+1}.
    """
    w = list(one_line)
    letters = []
    while True:
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                letters.append(i + 1)
                break
        else:
            return tuple(reversed(letters))


def word_permutation(word, n: int) -> tuple[int, ...]:
    w = list(range(1, n + 1))
    for i in word:
        w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


# ---------------------------------------------------------------------------
# full group tables


class GroupTable:
    """All elements of W, indexed in deterministic BFS order.

    Element 0 is the identity; indices increase with length, and within a
    length layer follow (parent index, generator index) of first discovery.
    """

    def __init__(self, rs: RootSystem, perms: np.ndarray, layer_sizes: list[int]):
        self.rs = rs
        self.perms = perms
        n_pos = len(rs.positive_roots)
        self.n_pos = n_pos
        self.simple_idx = [rs.root_index(rs.simple_root(i)) for i in range(1, rs.rank + 1)]
        self.size = perms.shape[0]

        lengths = []
        self.by_length: list[list[int]] = []
        start = 0
        for k, m in enumerate(layer_sizes):
            self.by_length.append(list(range(start, start + m)))
            lengths.extend([k] * m)
            start += m
        self.lengths = lengths

        simple_images = perms[:, self.simple_idx]
        self.index = {tuple(k): i for i, k in enumerate(simple_images.tolist())}

        refl = _reflection_tables(rs)
        self.right: list[list[int]] = []
        self.left: list[list[int]] = []
        for s in range(rs.rank):
            rkeys = perms[:, refl[s][self.simple_idx]].tolist()
            self.right.append([self.index[tuple(k)] for k in rkeys])
            lkeys = refl[s][simple_images].tolist()
            self.left.append([self.index[tuple(k)] for k in lkeys])

        neg = simple_images >= n_pos
        weights = np.array([1 << i for i in range(rs.rank)], dtype=np.int64)
        self.rdesc = (neg.astype(np.int64) @ weights).tolist()
        ldesc = [0] * self.size
        for s in range(rs.rank):
            bit = 1 << s
            for w, sw in enumerate(self.left[s]):
                if lengths[sw] < lengths[w]:
                    ldesc[w] |= bit
        self.ldesc = ldesc

        words: list[Word] = [()] * self.size
        for w in range(1, self.size):
            mask = self.rdesc[w]
            s = (mask & -mask).bit_length() - 1
            words[w] = words[self.right[s][w]] + (s + 1,)
        self.words = words

        # inv_simple[u][s] = index of u^{-1}(alpha_s)
        inv = np.argsort(perms, axis=1)
        self.inv_simple = inv[:, self.simple_idx].tolist()
        # reflect_simple[g][j] = index of s_gamma(alpha_j) for positive root g
        self.reflect_simple = _root_reflection_images(rs)

    def __len__(self) -> int:
        return self.size

    def element(self, i: int) -> WeylElement:
        roots = self.rs.roots
        cols = [roots[k] for k in self.perms[i, self.simple_idx].tolist()]
        matrix = tuple(tuple(c[r] for c in cols) for r in range(self.rs.rank))
        return WeylElement(self.rs, matrix, self.words[i], self.lengths[i])

    def index_of(self, w: WeylElement) -> int:
        key = tuple(self.rs.root_index(act(w, self.rs.simple_root(i))) for i in range(1, self.rs.rank + 1))
        return self.index[key]

    def index_of_word(self, word) -> int:
        w = 0
        for s in word:
            w = self.right[s - 1][w]
        return w

    def length_profile(self) -> list[int]:
        return [len(b) for b in self.by_length]

    def descent_set(self, w: int, side: str = "right") -> frozenset[int]:
        mask = self.rdesc[w] if side == "right" else self.ldesc[w]
        return frozenset(i + 1 for i in range(self.rs.rank) if mask >> i & 1)

    def covers(self, w: int) -> list[tuple[int, int, int]]:
        """(w', I, gamma root index) for every element covered by w."""
        word = self.words[w]
        ell = len(word)
        if ell == 0:
            return []
        left = self.left
        suffix = [0] * (ell + 1)
        for k in range(ell, 0, -1):
            suffix[k - 1] = left[word[k - 1] - 1][suffix[k]]
        row = self.perms[w].tolist()
        lengths = self.lengths
        index = self.index
        out = []
        seen = set()
        for I in range(1, ell + 1):
            g = self.inv_simple[suffix[I]][word[I - 1] - 1]
            key = tuple(row[k] for k in self.reflect_simple[g])
            wp = index[key]
            if lengths[wp] == ell - 1:
                if wp in seen:
                    raise AssertionError(f"deletion index not unique for element {w}")
                seen.add(wp)
                out.append((wp, I, g))
        return out


def _reflection_tables(rs: RootSystem) -> np.ndarray:
    roots = rs.roots
    out = np.empty((rs.rank, len(roots)), dtype=np.int32)
    for s in range(rs.rank):
        for k, r in enumerate(roots):
            c = rs.pairing(r, s + 1)
            img = list(r)
            img[s] -= c
            out[s, k] = rs.root_index(img)
    return out


def _root_reflection_images(rs: RootSystem) -> list[list[int]]:
    out = []
    for g in rs.positive_roots:
        gg = rs.inner(g, g)
        row = []
        for j in range(1, rs.rank + 1):
            a = rs.simple_root(j)
            c, r = divmod(2 * rs.inner(a, g), gg)
            assert r == 0
            row.append(rs.root_index(tuple(x - c * y for x, y in zip(a, g))))
        out.append(row)
    return out


def enumerate_group(rs: RootSystem, max_order: int | None = DEFAULT_MAX_ORDER) -> GroupTable:
    order = rs.order
    if max_order is not None and order > max_order:
        raise ResourceError(
            f"|W({rs.name})| = {order} exceeds the element budget {max_order}"
        )
    refl = _reflection_tables(rs)
    n_roots = len(rs.roots)
    n_pos = n_roots // 2
    simple_idx = np.array([rs.root_index(rs.simple_root(i)) for i in range(1, rs.rank + 1)])
    dtype = np.int16 if n_roots < 2**15 else np.int32
    layer = np.arange(n_roots, dtype=dtype)[None, :]
    layers = [layer]
    while True:
        # children in (parent, generator) order
        kids = layer[:, refl]  # (m, rank, n_roots)
        ascent = layer[:, simple_idx] < n_pos  # (m, rank)
        kids = kids[ascent]
        if kids.shape[0] == 0:
            break
        keys = kids[:, simple_idx]
        _, first = np.unique(keys, axis=0, return_index=True)
        first.sort()
        layer = np.ascontiguousarray(kids[first])
        layers.append(layer)
    perms = np.concatenate(layers, axis=0)
    if perms.shape[0] != order:
        raise AssertionError(f"enumerated {perms.shape[0]} elements, expected {order}")
    return GroupTable(rs, perms, [x.shape[0] for x in layers])


def minimal_coset_reps(table: GroupTable, theta) -> list[int]:
    """Indices of W^theta = {w : no right descent in theta}, by (length, index)."""
    mask = 0
    for i in theta:
        if not 1 <= i <= table.rs.rank:
            raise IndexError(f"theta index {i} out of range 1..{table.rs.rank}")
        mask |= 1 << (i - 1)
    rdesc = table.rdesc
    return [w for w in range(table.size) if not rdesc[w] & mask]
