"""Verification suites: the cellular engine against reference tables."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from flaghom import poly
from flaghom.boundary import build_chain_complex
from flaghom.closedform import Unsupported, poincare_closed_form, theta_spec
from flaghom.homology import check_consistency, homology_groups, mod2_betti, top_betti
from flaghom.orient import is_orientable
from flaghom.rootsys import build_root_system
from flaghom.weyl import enumerate_group

# (beta_top, dim) by component type of theta.  "*" marks E7 subsets that do
# not contain {2, 5, 7}; a few E7 rows are keyed by the subset itself.
TABLE4 = {
    "F4": {
        "A1": (21, 23), "A1xA1": (18, 22), "A2": (21, 21), "B2": (18, 20),
        "A2xA1": (18, 20), "B3": (11, 15), "C3": (15, 15),
    },
    "E6": {
        "A1": (33, 35), "A1xA1": (30, 34), "A2": (33, 33), "A1xA1xA1": (27, 33),
        "A2xA1": (30, 32), "A2xA1xA1": (27, 31), "A3": (26, 30), "A2xA2": (30, 30),
        "A3xA1": (23, 29), "A2xA2xA1": (27, 29), "A4": (26, 26), "A4xA1": (23, 25),
        "D4": (24, 24), "A5": (15, 21), "D5": (16, 16),
    },
    "E7": {
        "A1": (60, 62), "A1xA1": (59, 61), "A1xA1xA1*": (54, 60), (2, 5, 7): (60, 60),
        "A2": (60, 60), "A1xA1xA1xA1": (57, 59), "A2xA1": (58, 59), "A2xA1xA1": (54, 58),
        "A2xA1xA1xA1": (57, 57), "A2xA2": (57, 57), "A3": (53, 57), "A2xA2xA1": (54, 56),
        "A3xA1*": (50, 56), (2, 4, 5, 7): (56, 56), (2, 5, 6, 7): (56, 56),
        "A3xA1xA1": (53, 55), "A3xA2": (50, 54), "A3xA2xA1": (53, 53), "A4": (53, 53),
        "A4xA1": (50, 52), "D4": (51, 51), "D4xA1": (48, 50), "A4xA2": (50, 50),
        "A5*": (42, 48), (2, 4, 5, 6, 7): (48, 48), "A5xA1": (45, 47), "D5": (43, 43),
        "D5xA1": (40, 42), "A6": (42, 42), "D6": (29, 33), "E6": (27, 27),
    },
}


@dataclass
class Row:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class Audit:
    """Structural facts about one chain complex that went through the engine."""

    name: str
    theta: tuple[int, ...]
    cells: int
    d_squared_zero: bool
    entries: frozenset
    mod2_is_cells: bool
    consistent: bool

    @property
    def ok(self) -> bool:
        return self.d_squared_zero and self.entries <= {2, -2} and self.mod2_is_cells and self.consistent


@dataclass
class SuiteResult:
    suite: str
    rows: list[Row] = field(default_factory=list)
    audits: list[Audit] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def lines(self) -> list[str]:
        out = [f"{'PASS' if r.ok else 'FAIL'} {self.suite} {r.name}: {r.detail}" for r in self.rows]
        bad = sum(not r.ok for r in self.rows)
        out.append(f"{self.suite}: {len(self.rows) - bad}/{len(self.rows)} rows pass")
        return out


def all_thetas(rank: int):
    for m in range(rank + 1):
        yield from itertools.combinations(range(1, rank + 1), m)


class Engine:
    """Cellular computations over one enumerated group, memoised per theta."""

    def __init__(self, type_tag: str, rank: int, mode: str = "auto", workers: int = 1, table=None):
        self.rs = build_root_system(type_tag, rank)
        self.table = table if table is not None else enumerate_group(self.rs)
        self.mode = mode
        self.workers = workers
        self._h = {}
        self.audits: list[Audit] = []

    def complex(self, theta):
        return build_chain_complex(self.table, theta, self.workers)

    def homology(self, theta):
        theta = tuple(sorted(theta))
        if theta not in self._h:
            c = self.complex(theta)
            d2 = c.check_d_squared()
            if not d2:
                raise AssertionError(f"{self.rs.name} theta={theta}: D o D != 0")
            h = homology_groups(c, self.mode, self.workers)
            check_consistency(h)
            self.audits.append(Audit(
                self.rs.name, theta, sum(c.counts), d2, frozenset(c.nonzero_values()),
                mod2_betti(c) == c.counts, True,
            ))
            self._h[theta] = h
        return self._h[theta]

    def poincare(self, theta) -> tuple[int, ...]:
        return self.homology(theta).poincare

    def top_degree(self, theta) -> int:
        theta = tuple(sorted(theta))
        if theta in self._h:
            return len(self._h[theta].poincare) - 1
        return top_betti(self.complex(theta))[0]


def _fmt(p) -> str:
    return poly.to_str(p) if not isinstance(p, Unsupported) else f"unsupported ({p.reason})"


def _table_rows(suite: str, type_tag: str, rank: int, keyfn, mode: str, workers: int) -> SuiteResult:
    eng = Engine(type_tag, rank, mode, workers)
    groups: dict[str, list] = {}
    for theta in all_thetas(rank):
        groups.setdefault(keyfn(theta), []).append(theta)
    res = SuiteResult(suite)
    for key, thetas in groups.items():
        if key is None:
            continue
        bad = []
        for theta in thetas:
            want = poincare_closed_form(type_tag, rank, theta)
            got = eng.poincare(theta)
            if isinstance(want, Unsupported) or tuple(want) != got:
                bad.append(f"theta={list(theta)} table {_fmt(want)} computed {_fmt(got)}")
        expect = poincare_closed_form(type_tag, rank, thetas[0])
        detail = "; ".join(bad) if bad else f"{len(thetas)} subsets, {_fmt(expect)}"
        res.rows.append(Row(key, not bad, detail))
    res.audits = eng.audits
    return res


def suite_f4(mode: str = "exact", workers: int = 1) -> SuiteResult:
    def key(theta):
        if len(theta) == 4:
            return None
        return theta_spec("F", 4, theta).label

    return _table_rows("f4-table", "F", 4, key, mode, workers)


def suite_e6(mode: str = "auto", workers: int = 1, thetas=None) -> SuiteResult:
    def key(theta):
        if len(theta) == 6:
            return None
        lab = theta_spec("E", 6, theta).label
        if lab in ("D4", "D5"):
            return lab
        return f"A8-subdiagram {lab}"

    if thetas is None:
        return _table_rows("e6-table", "E", 6, key, mode, workers)
    eng = Engine("E", 6, mode, workers)
    res = SuiteResult("e6-table")
    for theta in thetas:
        want = poincare_closed_form("E", 6, theta)
        got = eng.poincare(theta)
        ok = not isinstance(want, Unsupported) and tuple(want) == got
        res.rows.append(Row(f"{key(theta)} theta={list(theta)}", ok, f"table {_fmt(want)} computed {_fmt(got)}"))
    res.audits = eng.audits
    return res


def suite_bcd(n: int, mode: str = "auto", workers: int = 1) -> SuiteResult:
    res = SuiteResult(f"bcd-n{n}")
    for t in "BCD":
        eng = Engine(t, n, mode, workers)
        bad, unsupported = [], 0
        thetas = list(all_thetas(n))
        for theta in thetas:
            want = poincare_closed_form(t, n, theta)
            got = eng.poincare(theta)
            if isinstance(want, Unsupported):
                unsupported += 1
                continue
            if tuple(want) != got:
                bad.append(f"theta={list(theta)} formula {_fmt(want)} computed {_fmt(got)}")
        detail = "; ".join(bad) if bad else (
            f"{len(thetas) - unsupported} subsets match, {unsupported} without closed form"
        )
        res.rows.append(Row(f"{t}{n}", not bad, detail))
        res.audits.extend(eng.audits)
    return res


def _table4_key(type_tag: str, rank: int, theta):
    block = TABLE4[f"{type_tag}{rank}"]
    if theta in block:
        return theta
    lab = theta_spec(type_tag, rank, theta).label
    if type_tag == "E" and rank == 7 and not {2, 5, 7} <= set(theta) and lab + "*" in block:
        return lab + "*"
    return lab if lab in block else None


def suite_orient(type_tag: str, rank: int, mode: str = "auto", workers: int = 1) -> SuiteResult:
    suite = f"orient-{type_tag.lower()}{rank}"
    eng = Engine(type_tag, rank, mode, workers)
    block = TABLE4[f"{type_tag}{rank}"]
    res = SuiteResult(suite)
    disagree = []
    seen: dict = {}
    for theta in all_thetas(rank):
        top = eng.top_degree(theta)
        rep = is_orientable(eng.rs, theta, [0] * top + [1])
        if not rep.agree:
            disagree.append(list(theta))
        key = _table4_key(type_tag, rank, theta)
        if key is not None:
            seen.setdefault(key, []).append((theta, top, rep.dim, rep.orientable_by_sum))
    for key, want in block.items():
        got = seen.get(key, [])
        bad = [f"theta={list(t)} ({b}, {d})" for t, b, d, _ in got if (b, d) != want]
        ok = bool(got) and not bad
        name = key if isinstance(key, str) else "{" + ",".join(f"a{i}" for i in key) + "}"
        detail = "; ".join(bad) if bad else (
            f"beta_top={want[0]} dim={want[1]} over {len(got)} subsets" if got else "no subset of this type"
        )
        res.rows.append(Row(name, ok, detail))
    res.rows.append(Row(
        "criteria-agree", not disagree,
        f"root-sum and top-Betti tests agree on all {2 ** rank} subsets" if not disagree
        else f"disagree on {disagree}",
    ))
    return res


def suite_e7() -> SuiteResult:
    """E7 from the closed forms alone: table degrees, dims and root sums."""
    rs = build_root_system("E", 7)
    block = TABLE4["E7"]
    res = SuiteResult("e7-table")
    seen: dict = {}
    disagree = []
    n_257 = 0
    for theta in all_thetas(7):
        if {2, 5, 7} <= set(theta) and len(theta) < 7:
            n_257 += 1
        cf = poincare_closed_form("E", 7, theta)
        if isinstance(cf, Unsupported):
            res.rows.append(Row(f"theta={list(theta)}", False, cf.reason))
            continue
        rep = is_orientable(rs, theta, cf)
        if not rep.agree:
            disagree.append(list(theta))
        key = _table4_key("E", 7, theta)
        if key is not None:
            seen.setdefault(key, []).append((theta, rep.beta_top_degree, rep.dim))
    res.rows.append(Row("subsets-containing-a2a5a7", n_257 == 15, f"{n_257} proper subsets"))
    for key, want in block.items():
        got = seen.get(key, [])
        bad = [f"theta={list(t)} closed form gives ({b}, {d})" for t, b, d in got if (b, d) != want]
        name = key if isinstance(key, str) else "{" + ",".join(f"a{i}" for i in key) + "}"
        ok = bool(got) and not bad
        detail = "; ".join(bad[:3]) + (f" (+{len(bad) - 3} more)" if len(bad) > 3 else "") if bad else (
            f"beta_top={want[0]} dim={want[1]} over {len(got)} subsets" if got else "no subset of this type"
        )
        res.rows.append(Row(name, ok, f"table ({want[0]}, {want[1]}); {detail}" if bad else detail))
    res.rows.append(Row(
        "criteria-agree", not disagree,
        "closed-form degree and root-sum test agree on all 128 subsets" if not disagree
        else f"disagree on {disagree}",
    ))
    return res


SMALL_ORACLES = {
    # worked by hand from the coefficient formula
    ("A", 1): ((1, 1), (0, 0)),
    ("A", 2): ((1, 0, 0, 1), (0, 2, 0, 0)),
    ("B", 2): ((1, 1, 0, 1, 1), (0, 1, 1, 0, 0)),
}


def suite_small() -> SuiteResult:
    res = SuiteResult("smallgroup-oracles")
    for (t, r), (betti, tors) in SMALL_ORACLES.items():
        eng = Engine(t, r, "exact")
        h = eng.homology(())
        ok = tuple(h.betti) == betti and tuple(h.torsion_ranks) == tors and not h.violations
        res.rows.append(Row(f"{t}{r}", ok, f"betti {h.betti} torsion {h.torsion_ranks}"))
    return res


SUITES = {
    "f4-table": lambda mode, workers: suite_f4("exact" if mode == "auto" else mode, workers),
    "e6-table": lambda mode, workers: suite_e6(mode, workers),
    "e7-table": lambda mode, workers: suite_e7(),
    "bcd-n4": lambda mode, workers: suite_bcd(4, mode, workers),
    "bcd-n5": lambda mode, workers: suite_bcd(5, mode, workers),
    "orient-f4": lambda mode, workers: suite_orient("F", 4, mode, workers),
    "orient-e6": lambda mode, workers: suite_orient("E", 6, mode, workers),
    "smallgroup-oracles": lambda mode, workers: suite_small(),
}


def run_suite(name: str, mode: str = "auto", workers: int = 1) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](mode, workers)
