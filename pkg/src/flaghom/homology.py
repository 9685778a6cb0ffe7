"""Integral homology of the cellular chain complexes.

Two modes:

exact          Smith normal form of every boundary map over Z.
rank-inferred  every entry of D is even, so D = 2M.  If rank_Q(M) equals
               rank_F2(M), all invariant factors of D equal 2 and the
               torsion in each degree is (Z/2)^rank D.  rank_Q is taken
               as the rank mod two large primes; any disagreement falls
               back to exact elimination for that map.
"""

from __future__ import annotations

import multiprocessing as mp
from dataclasses import dataclass, field
from math import gcd

from flaghom.boundary import ChainComplex, SparseMatrix

RANK_PRIMES = (2305843009213693951, 2305843009213693921)
AUTO_THRESHOLD = 20_000


class StructureViolation(ArithmeticError):
    """An integral invariant that the theory forbids (odd entry, factor != 2)."""


class ConsistencyError(AssertionError):
    pass


def _as_sparse(m) -> SparseMatrix:
    return m if isinstance(m, SparseMatrix) else SparseMatrix.from_dense(m)


def _normalise_diagonal(diag: list[int]) -> list[int]:
    diag = sorted(abs(d) for d in diag if d)
    if all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1)):
        return diag
    # turn an arbitrary diagonal into a divisibility chain
    d = diag[:]
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            d[i], d[j] = g, d[i] // g * d[j]
    return sorted(d)


def smith_normal_form(m) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix.

    Sparse elimination by unimodular row and column operations; the
    pivot is a smallest-magnitude entry of the shortest remaining row.
    """
    m = _as_sparse(m)
    rows = {i: dict(r) for i, r in m.row_dicts().items()}
    colidx: dict[int, set[int]] = {}
    for i, r in rows.items():
        for j in r:
            colidx.setdefault(j, set()).add(i)

    def row_axpy(dst: int, src: int, q: int) -> None:
        # row dst -= q * row src
        rd = rows[dst]
        for j, v in rows[src].items():
            x = rd.get(j, 0) - q * v
            if x:
                if j not in rd:
                    colidx[j].add(dst)
                rd[j] = x
            elif j in rd:
                del rd[j]
                colidx[j].discard(dst)

    diag = []
    while rows:
        i = min(rows, key=lambda r: (len(rows[r]), r))
        if not rows[i]:
            del rows[i]
            continue
        j = min(rows[i], key=lambda c: (abs(rows[i][c]), len(colidx[c]), c))
        while True:
            p = rows[i][j]
            smaller = None
            for r in sorted(colidx[j] - {i}):
                row_axpy(r, i, rows[r][j] // p)
                if j in rows[r] and (smaller is None or abs(rows[r][j]) < abs(rows[smaller][j])):
                    smaller = r
            if smaller is not None:
                i = smaller
                continue
            # column j now holds only the pivot; column ops touch row i alone
            rem = None
            for c in list(rows[i]):
                if c == j:
                    continue
                x = rows[i][c] % p
                if x:
                    rows[i][c] = x
                    if rem is None or abs(x) < abs(rows[i][rem]):
                        rem = c
                else:
                    del rows[i][c]
                    colidx[c].discard(i)
            if rem is not None:
                j = rem
                continue
            break
        diag.append(abs(p))
        del rows[i]
        colidx[j].discard(i)
    return _normalise_diagonal(diag)


def rank_mod_p(m, p: int) -> int:
    """Rank over F_p by sparse row reduction."""
    m = _as_sparse(m)
    if p == 2:
        return rank_f2(m)
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for _, r in sorted(m.row_dicts().items()):
        row = {j: v % p for j, v in r.items() if v % p}
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(row[c], -1, p)
                pivots[c] = {j: v * inv % p for j, v in row.items()}
                rank += 1
                break
            f = row[c]
            for j, v in piv.items():
                x = (row.get(j, 0) - f * v) % p
                if x:
                    row[j] = x
                else:
                    row.pop(j, None)
    return rank


def rank_f2(m) -> int:
    """Rank over F_2 with rows packed into Python integers."""
    m = _as_sparse(m)
    pivots: dict[int, int] = {}
    for _, r in sorted(m.row_dicts().items()):
        bits = 0
        for j, v in r.items():
            if v & 1:
                bits |= 1 << j
        while bits:
            low = bits & -bits
            piv = pivots.get(low)
            if piv is None:
                pivots[low] = bits
                break
            bits ^= piv
    return len(pivots)


def halve(m) -> SparseMatrix:
    """M with D = 2M; raises StructureViolation on an odd entry."""
    m = _as_sparse(m)
    cols = []
    for j, col in enumerate(m.cols):
        out = []
        for i, v in col:
            if v % 2:
                raise StructureViolation(f"odd boundary entry {v} at ({i}, {j})")
            out.append((i, v // 2))
        cols.append(out)
    return SparseMatrix(m.nrows, m.ncols, cols)


@dataclass
class MapInvariants:
    rank: int
    factors: list[int]  # invariant factors > 1
    certified: bool
    method: str


def _map_invariants(d: SparseMatrix, mode: str) -> MapInvariants:
    if d.nnz == 0:
        return MapInvariants(0, [], True, "zero")
    if mode == "rank-inferred":
        half = halve(d)
        r2 = rank_f2(half)
        rq = [rank_mod_p(half, p) for p in RANK_PRIMES]
        if rq[0] == rq[1] == r2:
            return MapInvariants(r2, [2] * r2, True, "rank-inferred")
    factors = smith_normal_form(d)
    return MapInvariants(len(factors), [f for f in factors if f > 1], True, "exact")


_MAPS: list | None = None


def _invariants_job(args):
    k, mode = args
    return k, _map_invariants(_MAPS[k], mode)


@dataclass
class HomologySummary:
    betti: list[int]
    torsion_ranks: list[int]
    torsion: list[list[int]]  # orders of cyclic torsion summands per degree
    cells: list[int]
    mode: str
    torsion_certified: bool = True
    violations: list[str] = field(default_factory=list)

    @property
    def poincare(self) -> tuple[int, ...]:
        p = list(self.betti)
        while p and p[-1] == 0:
            p.pop()
        return tuple(p)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))


def resolve_mode(mode: str, ncells: int) -> str:
    if mode == "auto":
        return "rank-inferred" if ncells > AUTO_THRESHOLD else "exact"
    if mode not in ("exact", "rank-inferred"):
        raise ValueError(f"unknown mode {mode!r}; expected exact, rank-inferred or auto")
    return mode


def homology_groups(c: ChainComplex, mode: str = "exact", workers: int = 1) -> HomologySummary:
    counts = c.counts
    mode = resolve_mode(mode, sum(counts))
    top = c.top
    ks = list(range(1, top + 1))
    if workers > 1 and len(ks) > 1:
        global _MAPS
        _MAPS = c.boundaries
        try:
            with mp.get_context("fork").Pool(workers) as pool:
                # large maps first so the pool stays busy
                jobs = sorted(ks, key=lambda k: -c.boundaries[k].nnz)
                res = dict(pool.map(_invariants_job, [(k, mode) for k in jobs], chunksize=1))
        finally:
            _MAPS = None
    else:
        res = {k: _map_invariants(c.boundaries[k], mode) for k in ks}
    inv = [MapInvariants(0, [], True, "zero")] + [res[k] for k in ks] + [MapInvariants(0, [], True, "zero")]
    betti, tors, torsion, violations = [], [], [], []
    for i in range(top + 1):
        betti.append(counts[i] - inv[i].rank - inv[i + 1].rank)
        fs = inv[i + 1].factors
        torsion.append(list(fs))
        tors.append(len(fs))
        bad = sorted({f for f in fs if f != 2})
        if bad:
            violations.append(f"degree {i}: torsion orders {bad} beyond Z/2")
    return HomologySummary(betti, tors, torsion, counts, mode, all(x.certified for x in inv), violations)


def mod2_betti(c: ChainComplex) -> list[int]:
    """F_2 Betti numbers; all boundary entries are even, so these are the cell counts."""
    for d in c.boundaries:
        halve(d)
    return c.counts


def check_consistency(h: HomologySummary) -> None:
    """Euler characteristic and universal-coefficient checks."""
    chi_cells = sum((-1) ** k * n for k, n in enumerate(h.cells))
    if chi_cells != h.euler_characteristic():
        raise ConsistencyError(f"Euler characteristic {h.euler_characteristic()} != {chi_cells}")
    for k, n in enumerate(h.cells):
        # over F_2 the differential vanishes, so b_k(F_2) = n_k
        prev = h.torsion_ranks[k - 1] if k else 0
        if h.betti[k] + h.torsion_ranks[k] + prev != n:
            raise ConsistencyError(
                f"degree {k}: b={h.betti[k]} + T_k={h.torsion_ranks[k]} + T_(k-1)={prev} != {n}"
            )


def poincare_polynomial(h: HomologySummary) -> tuple[int, ...]:
    return h.poincare


def rank_q(m) -> int:
    """Rank over Q (mod two large primes; exact elimination when they differ)."""
    m = _as_sparse(m)
    rs = [rank_mod_p(m, p) for p in RANK_PRIMES]
    if rs[0] == rs[1]:
        return rs[0]
    return len(smith_normal_form(m))


def top_betti(c: ChainComplex) -> tuple[int, int]:
    """(k, b_k) for the highest degree with nonzero rational Betti number."""
    ranks = {c.top + 1: 0}
    for k in range(c.top, -1, -1):
        ranks[k] = rank_q(c.boundaries[k]) if k else 0
        b = c.counts[k] - ranks[k] - ranks[k + 1]
        if b:
            return k, b
    raise ConsistencyError("chain complex with no homology")
