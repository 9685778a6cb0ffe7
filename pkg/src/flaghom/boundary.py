"""Cellular boundary coefficients and chain complexes of flag manifolds.

For a covering pair (w, w') with w' obtained by deleting letter I of NF(w),

    c(w, w') = (-1)^I * deg * (1 + (-1)^ht(gamma^vee)),    gamma = u^{-1}(alpha_I),

where u is the part of NF(w) after position I and deg is the degree of the
coordinate change between the deleted word and NF(w').  Partial flags use
the same coefficients restricted to minimal coset representatives.
"""

from __future__ import annotations

import multiprocessing as mp
from dataclasses import dataclass, field

from flaghom.moves import _check_supported, degree_by_normal_form
from flaghom.rootsys import coroot_height
from flaghom.weyl import GroupTable, minimal_coset_reps


@dataclass(frozen=True)
class CoverDatum:
    w_index: int
    wprime_index: int
    I: int
    gamma: tuple[int, ...]
    degree: int
    coefficient: int


class SparseMatrix:
    """Integer matrix stored column-major as sorted (row, value) lists."""

    def __init__(self, nrows: int, ncols: int, cols: list[list[tuple[int, int]]] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.cols = cols if cols is not None else [[] for _ in range(ncols)]

    @classmethod
    def from_dense(cls, rows) -> SparseMatrix:
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = [[(i, rows[i][j]) for i in range(nrows) if rows[i][j]] for j in range(ncols)]
        return cls(nrows, ncols, cols)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col:
                out[i][j] = v
        return out

    def entries(self):
        for j, col in enumerate(self.cols):
            for i, v in col:
                yield i, j, v

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def row_dicts(self) -> dict[int, dict[int, int]]:
        rows: dict[int, dict[int, int]] = {}
        for j, col in enumerate(self.cols):
            for i, v in col:
                rows.setdefault(i, {})[j] = v
        return rows

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and self.shape == other.shape
            and self.cols == other.cols
        )

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"


def compose_is_zero(a: SparseMatrix, b: SparseMatrix) -> bool:
    """True when a @ b == 0."""
    if a.ncols != b.nrows:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    for col in b.cols:
        acc: dict[int, int] = {}
        for k, v in col:
            for i, x in a.cols[k]:
                acc[i] = acc.get(i, 0) + v * x
        if any(acc.values()):
            return False
    return True


@dataclass
class ChainComplex:
    """Cells per dimension and boundary maps D_k : C_k -> C_{k-1}.

    boundaries[k] has shape (len(cells[k-1]), len(cells[k])); boundaries[0]
    is the zero map out of dimension 0.
    """

    type_name: str
    theta: tuple[int, ...]
    cells: list[list[int]]
    boundaries: list[SparseMatrix] = field(repr=False)

    @property
    def top(self) -> int:
        return len(self.cells) - 1

    @property
    def counts(self) -> list[int]:
        return [len(c) for c in self.cells]

    def check_d_squared(self) -> bool:
        return all(
            compose_is_zero(self.boundaries[k], self.boundaries[k + 1])
            for k in range(1, self.top)
        )

    def nonzero_values(self) -> set[int]:
        return {v for d in self.boundaries for _, _, v in d.entries()}


def _coroot_parities(table: GroupTable) -> list[bool]:
    # indexed by positive-root index; gamma in a cover is always positive
    cached = getattr(table, "_coroot_even", None)
    if cached is None:
        rs = table.rs
        cached = [coroot_height(rs, g) % 2 == 0 for g in rs.positive_roots]
        table._coroot_even = cached
    return cached


def coefficient(table: GroupTable, w: int, wprime: int, I: int, gamma) -> int:
    """Boundary coefficient c(w, w') in {0, +2, -2}."""
    ht = coroot_height(table.rs, gamma)
    if ht % 2:
        return 0
    deg = degree_by_normal_form(table, w, wprime, I)
    return 2 * deg if I % 2 == 0 else -2 * deg


def cover_data(table: GroupTable, w: int) -> list[CoverDatum]:
    rs = table.rs
    out = []
    for wp, I, g in table.covers(w):
        gamma = rs.roots[g]
        deg = degree_by_normal_form(table, w, wp, I)
        ht = coroot_height(rs, gamma)
        c = 0 if ht % 2 else (2 if I % 2 == 0 else -2) * deg
        out.append(CoverDatum(w, wp, I, gamma, deg, c))
    return out


def _column(table: GroupTable, w: int, row_of: dict[int, int]) -> list[tuple[int, int]]:
    even = _coroot_parities(table)
    col = []
    for wp, I, g in table.covers(w):
        row = row_of.get(wp)
        if row is None or not even[g]:
            continue
        deg = degree_by_normal_form(table, w, wp, I)
        col.append((row, (2 if I % 2 == 0 else -2) * deg))
    col.sort()
    return col


_WORK: tuple | None = None


def _columns_block(block: list[int]) -> list[list[tuple[int, int]]]:
    table, row_of = _WORK
    return [_column(table, w, row_of) for w in block]


def build_chain_complex(table: GroupTable, theta=(), workers: int = 1) -> ChainComplex:
    """Cellular chain complex of the flag manifold with parabolic subset theta.

    Columns are independent; with workers > 1 they are computed in forked
    processes and merged in cell order, so the result does not depend on
    the worker count.
    """
    _check_supported(table.rs)
    theta = tuple(sorted(set(theta)))
    reps = minimal_coset_reps(table, theta)
    lengths = table.lengths
    top = max(lengths[w] for w in reps)
    cells: list[list[int]] = [[] for _ in range(top + 1)]
    for w in reps:
        cells[lengths[w]].append(w)
    row_of = {}
    for layer in cells:
        for k, w in enumerate(layer):
            row_of[w] = k
    _coroot_parities(table)

    order = [w for layer in cells[1:] for w in layer]
    if workers > 1 and len(order) > 256:
        global _WORK
        _WORK = (table, row_of)
        try:
            nblocks = workers * 4
            size = -(-len(order) // nblocks)
            blocks = [order[i : i + size] for i in range(0, len(order), size)]
            with mp.get_context("fork").Pool(workers) as pool:
                parts = pool.map(_columns_block, blocks)
        finally:
            _WORK = None
        columns = [c for part in parts for c in part]
    else:
        columns = [_column(table, w, row_of) for w in order]

    boundaries = [SparseMatrix(0, len(cells[0]))]
    pos = 0
    for k in range(1, top + 1):
        n = len(cells[k])
        boundaries.append(SparseMatrix(len(cells[k - 1]), n, columns[pos : pos + n]))
        pos += n
    return ChainComplex(table.rs.name, theta, cells, boundaries)
