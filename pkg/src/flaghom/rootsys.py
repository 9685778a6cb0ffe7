"""Crystallographic root systems in Bourbaki labeling.

Roots are integer vectors in the basis of simple roots.  The Cartan matrix
convention used everywhere in this package is

    cartan[i][j] = <alpha_j, alpha_i^vee> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)

so that the simple reflection s_i acts by v -> v - (sum_j v_j cartan[i][j]) alpha_i.
Generator indices in the public API are 1-based, as in the Dynkin labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

Root = tuple[int, ...]

_DEGREES = {
    "E6": (2, 5, 6, 8, 9, 12),
    "E7": (2, 6, 8, 10, 12, 14, 18),
    "E8": (2, 8, 12, 14, 18, 20, 24, 30),
    "F4": (2, 6, 8, 12),
    "G2": (2, 6),
}


class RootSystemError(ValueError):
    pass


def _check_pair(type_tag: str, rank: int) -> None:
    if type_tag not in "ABCDEFG" or len(type_tag) != 1:
        raise RootSystemError(f"unknown type {type_tag!r}; expected one of A-G")
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }[type_tag]
    if not ok:
        need = {
            "A": "rank >= 1",
            "B": "rank >= 2",
            "C": "rank >= 2",
            "D": "rank >= 3",
            "E": "rank in {6, 7, 8}",
            "F": "rank == 4",
            "G": "rank == 2",
        }[type_tag]
        raise RootSystemError(f"invalid rank {rank} for type {type_tag}: requires {need}")


def cartan_matrix(type_tag: str, rank: int) -> tuple[tuple[int, ...], ...]:
    _check_pair(type_tag, rank)
    n = rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        # 1-based node labels
        a[i - 1][j - 1] = aij
        a[j - 1][i - 1] = aji

    if type_tag in "ABCD":
        last = n - 1 if type_tag == "D" else n
        for i in range(1, last):
            bond(i, i + 1)
        if type_tag == "B":
            # alpha_n short
            bond(n - 1, n, -1, -2)
        elif type_tag == "C":
            # alpha_n long
            bond(n - 1, n, -2, -1)
        elif type_tag == "D":
            if n >= 3:
                a[n - 2][n - 1] = a[n - 1][n - 2] = 0
                bond(n - 2, n)
    elif type_tag == "E":
        bond(1, 3)
        bond(2, 4)
        for i in range(3, n):
            bond(i, i + 1)
    elif type_tag == "F":
        bond(1, 2)
        # alpha_1, alpha_2 long; alpha_3, alpha_4 short
        bond(2, 3, -1, -2)
        bond(3, 4)
    elif type_tag == "G":
        # alpha_1 short, alpha_2 long
        bond(1, 2, -3, -1)
    return tuple(tuple(row) for row in a)


def _symmetrizer(cartan: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    """Half squared lengths d_i with d_i a_ij = d_j a_ji, shortest root normalised to 1."""
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and cartan[i][j] and d[j] is None:
                    d[j] = d[i] * cartan[i][j] / cartan[j][i]
                    stack.append(j)
    # normalise each connected component independently
    comp = _components(cartan, range(n))
    out = [0] * n
    for c in comp:
        low = min(d[i] for i in c)
        for i in c:
            q = d[i] / low
            assert q.denominator == 1
            out[i] = int(q)
    return tuple(out)


def _components(cartan, nodes) -> list[list[int]]:
    nodes = list(nodes)
    seen: set[int] = set()
    comps = []
    for s in nodes:
        if s in seen:
            continue
        comp = []
        stack = [s]
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in nodes:
                if j not in seen and cartan[i][j]:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


@dataclass(frozen=True)
class RootSystem:
    type_tag: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Root, ...]
    symmetrizer: tuple[int, ...]
    _index: dict = field(repr=False, compare=False, hash=False, default_factory=dict)

    @property
    def name(self) -> str:
        return f"{self.type_tag}{self.rank}"

    @property
    def roots(self) -> tuple[Root, ...]:
        """Positive roots followed by their negatives, in the same order."""
        return self.positive_roots + tuple(tuple(-c for c in r) for r in self.positive_roots)

    def root_index(self, v) -> int:
        """Index of v in ``roots``; raises KeyError if v is not a root."""
        return self._index[tuple(v)]

    def is_root(self, v) -> bool:
        return tuple(v) in self._index

    def simple_root(self, i: int) -> Root:
        return tuple(1 if k == i - 1 else 0 for k in range(self.rank))

    def pairing(self, v, i: int) -> int:
        """<v, alpha_i^vee>."""
        row = self.cartan[i - 1]
        return sum(c * a for c, a in zip(v, row))

    def inner(self, u, v) -> int:
        """Twice the normalised inner product, (u, v) with (alpha_i, alpha_i) = 2 d_i."""
        total = 0
        for i, ui in enumerate(u):
            if ui:
                di = self.symmetrizer[i]
                row = self.cartan[i]
                total += ui * di * sum(a * vj for a, vj in zip(row, v))
        return total

    @property
    def order(self) -> int:
        return weyl_group_order(self.type_tag, self.rank)


def build_root_system(type_tag: str, rank: int) -> RootSystem:
    type_tag = type_tag.upper()
    cartan = cartan_matrix(type_tag, rank)
    n = rank
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(n):
                c = sum(x * a for x, a in zip(v, cartan[i]))
                if c < 0:
                    w = list(v)
                    w[i] -= c
                    w = tuple(w)
                    if w not in found:
                        found.add(w)
                        nxt.append(w)
        frontier = nxt
    positive = tuple(sorted(found, key=lambda r: (sum(r), r)))
    rs = RootSystem(type_tag, rank, cartan, positive, _symmetrizer(cartan))
    for k, r in enumerate(rs.roots):
        rs._index[r] = k
    return rs


def reflect(rs: RootSystem, i: int, v) -> Root:
    """s_i(v) = v - <v, alpha_i^vee> alpha_i."""
    if not 1 <= i <= rs.rank:
        raise IndexError(f"generator index {i} out of range 1..{rs.rank}")
    c = rs.pairing(v, i)
    out = list(v)
    out[i - 1] -= c
    return tuple(out)


def height(v) -> int:
    return sum(v)


def coroot_coords(rs: RootSystem, gamma) -> tuple[int, ...]:
    """Coordinates of gamma^vee = 2 gamma / (gamma, gamma) over the simple coroots."""
    gamma = tuple(gamma)
    if not rs.is_root(gamma):
        raise RootSystemError(f"{gamma} is not a root of {rs.name}")
    # alpha_i^vee = alpha_i / d_i, gamma^vee = gamma / d_gamma
    d_gamma = Fraction(rs.inner(gamma, gamma), 2)
    out = []
    for c, di in zip(gamma, rs.symmetrizer):
        q = c * di / d_gamma
        if q.denominator != 1:
            raise ArithmeticError(f"non-integral coroot coefficient for {gamma}")
        out.append(int(q))
    return tuple(out)


def coroot_height(rs: RootSystem, gamma) -> int:
    gamma = tuple(gamma)
    if not rs.is_root(gamma) or any(c < 0 for c in gamma):
        raise RootSystemError(f"{gamma} is not a positive root of {rs.name}")
    return sum(coroot_coords(rs, gamma))


def dual_type(type_tag: str) -> str:
    return {"B": "C", "C": "B"}.get(type_tag, type_tag)


def weyl_group_order(type_tag: str, rank: int) -> int:
    _check_pair(type_tag, rank)
    n = rank
    if type_tag == "A":
        return prod(range(2, n + 2))
    if type_tag in "BC":
        return 2**n * prod(range(1, n + 1))
    if type_tag == "D":
        return 2 ** (n - 1) * prod(range(1, n + 1))
    return prod(_DEGREES[f"{type_tag}{n}"])


def subsystem_positive_roots(rs: RootSystem, theta) -> list[Root]:
    """Positive roots supported only on the simple roots indexed by theta."""
    keep = {i - 1 for i in theta}
    return [r for r in rs.positive_roots if all(c == 0 or k in keep for k, c in enumerate(r))]


def components(rs: RootSystem, theta) -> list[list[int]]:
    """Connected components (1-based labels) of the Dynkin subdiagram on theta."""
    nodes = sorted(i - 1 for i in theta)
    return [[i + 1 for i in c] for c in _components(rs.cartan, nodes)]
