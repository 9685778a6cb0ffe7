"""Closed-form Poincaré polynomials of real flag manifolds of split type.

Theta is always given by inclusion: the simple roots that generate the
parabolic.  Dynkin diagrams are often drawn with the complement crossed
out, and the helpers below take the complement wherever a formula is
stated in terms of the removed roots k = (k_1 < ... < k_r).

Results are plain coefficient tuples (see flaghom.poly) or Unsupported.
"""

from __future__ import annotations

from dataclasses import dataclass

from flaghom import poly
from flaghom.poly import Poly
from flaghom.rootsys import build_root_system, components

MAX_CLASSICAL_RANK = 7


@dataclass(frozen=True)
class Unsupported:
    reason: str

    def __bool__(self) -> bool:
        return False


# ---- q-analogues ---------------------------------------------------------


def q_int(n: int) -> Poly:
    """(n)_t = 1 + t + ... + t^(n-1)."""
    if n < 0:
        raise ValueError("q-integer of a negative number")
    return tuple([1] * n)


def q_factorial(n: int) -> Poly:
    return poly.product(q_int(k) for k in range(1, n + 1))


def q_multinomial(n: int, parts, power: int = 1) -> Poly:
    """(n)_t! / prod (n_i)_t!, then t -> t^power."""
    parts = list(parts)
    if any(p < 0 for p in parts) or sum(parts) != n:
        raise ValueError(f"parts {parts} must be non-negative and sum to {n}")
    num = q_factorial(n)
    for p in parts:
        num = poly.divexact(num, q_factorial(p))
    return poly.substitute_power(num, power)


def one_plus(deg: int) -> Poly:
    return poly.add((1,), poly.monomial(deg))


def _odd_product(lo: int, hi: int, shift: int) -> Poly:
    # prod_{i=lo}^{hi} (1 + t^(4i+shift)); empty when hi < lo
    return poly.product(one_plus(4 * i + shift) for i in range(lo, hi + 1))


# ---- type A --------------------------------------------------------------


def _check_k(n: int, k) -> tuple[int, ...]:
    k = tuple(k)
    if any(b <= a for a, b in zip(k, k[1:])) or (k and (k[0] < 1 or k[-1] > n)):
        raise ValueError(f"k must satisfy 0 < k_1 < ... < k_r <= {n}, got {k}")
    return k


def _gaps(n: int, k) -> list[int]:
    pts = (0,) + tuple(k) + (n + 1,)
    return [b - a for a, b in zip(pts, pts[1:])]


def x_value(n: int, k) -> int:
    """X_n(k) = sum of floor(gap / 2) over the gaps of 0 < k_1 < ... < k_r <= n < n+1.

    The empty sequence is assigned 0.
    """
    k = _check_k(n, k)
    if not k:
        return 0
    return sum(g // 2 for g in _gaps(n, k))


def _pa_from_gaps(n: int, gaps: list[int]) -> Poly:
    halves = [g // 2 for g in gaps]
    x = sum(halves)
    q = one_plus(n) if n % 2 == 1 and 2 * x < n + 1 else (1,)
    return poly.product([q, q_multinomial(x, halves, 4), _odd_product(x, n // 2 - 1, 3)])


def pa(n: int, k) -> Poly:
    """Poincaré polynomial of the A_n flag with removed roots k.

    With k empty (Theta = everything) the flag is a point.
    """
    k = _check_k(n, k)
    if not k:
        return (1,)
    return _pa_from_gaps(n, _gaps(n, k))


def removed(n: int, theta) -> tuple[int, ...]:
    theta = set(theta)
    return tuple(i for i in range(1, n + 1) if i not in theta)


def pa_theta(n: int, theta) -> Poly:
    return pa(n, removed(n, theta))


def pa_components(n: int, sizes) -> Poly:
    """PA_n for any Theta whose components are A_{m_1}, A_{m_2}, ...

    The polynomial only sees the gaps between removed roots, so Theta may
    be laid out on the A_n line in any way that fits.
    """
    sizes = sorted(sizes, reverse=True)
    need = sum(m + 1 for m in sizes)
    if need > n + 1:
        raise ValueError(f"components {sizes} do not fit in A_{n}")
    gaps = [m + 1 for m in sizes] + [1] * (n + 1 - need)
    if len(gaps) == 1:
        return (1,)
    return _pa_from_gaps(n, gaps)


# ---- Theta classification ------------------------------------------------


@dataclass(frozen=True)
class ThetaSpec:
    type_tag: str
    rank: int
    included: tuple[int, ...]
    components: tuple[tuple[str, tuple[int, ...]], ...]

    @property
    def removed(self) -> tuple[int, ...]:
        return removed(self.rank, self.included)

    @property
    def label(self) -> str:
        if not self.components:
            return "empty"
        return "x".join(name for name, _ in self.components)


def component_type(rs, nodes) -> str:
    """Cartan type of the connected sub-diagram on nodes (1-based)."""
    nodes = sorted(nodes)
    m = len(nodes)
    adj = {i: [] for i in nodes}
    double = triple = False
    for a in nodes:
        for b in nodes:
            if a < b and rs.cartan[a - 1][b - 1]:
                adj[a].append(b)
                adj[b].append(a)
                prod = rs.cartan[a - 1][b - 1] * rs.cartan[b - 1][a - 1]
                double |= prod == 2
                triple |= prod == 3
    if triple:
        return "G2"
    if double:
        if m == 2:
            return "B2"
        d = [rs.symmetrizer[i - 1] for i in nodes]
        short = sum(1 for x in d if x == min(d))
        if m == 4 and short == 2:
            return "F4"
        return f"B{m}" if short == 1 else f"C{m}"
    branch = [i for i in nodes if len(adj[i]) == 3]
    if not branch:
        return f"A{m}"
    centre = branch[0]

    def arm(start: int) -> int:
        prev, cur, size = centre, start, 1
        while True:
            nxt = [j for j in adj[cur] if j != prev]
            if not nxt:
                return size
            prev, cur, size = cur, nxt[0], size + 1

    arms = sorted(arm(j) for j in adj[centre])
    if arms[:2] == [1, 1]:
        return f"D{m}"
    return {(1, 2, 2): "E6", (1, 2, 3): "E7", (1, 2, 4): "E8"}[tuple(arms)]


def theta_spec(type_tag: str, rank: int, theta) -> ThetaSpec:
    rs = build_root_system(type_tag, rank)
    theta = tuple(sorted(set(theta)))
    for i in theta:
        if not 1 <= i <= rank:
            raise ValueError(f"theta index {i} out of range 1..{rank}")
    comps = sorted(
        ((component_type(rs, c), tuple(c)) for c in components(rs, theta)),
        key=lambda x: (_type_key(x[0]), x[1]),
    )
    return ThetaSpec(rs.type_tag, rank, theta, tuple(comps))


def _type_key(name: str):
    # larger components first, then by letter
    return (-int(name[1:]), name[0])


# ---- classical types B, C, D ---------------------------------------------


def pb(n: int, theta, literal: bool = False) -> Poly:
    """Type B_n.

    The q_B branch is chosen by X_n(k) over the full removed set k.  With
    literal=True it uses X_(n-1) of the removed roots among 1..n-1, which
    disagrees with the cellular computation already for B3, theta = {1, 3}.
    """
    theta = set(theta)
    k = removed(n, theta)
    if not k:
        return (1,)
    k_a = removed(n - 1, theta - {n})
    x = x_value(n - 1, k_a) if literal else x_value(n, k)
    if n % 2 == 0:
        q = (1,)
    elif 2 * x < n + 1:
        q = one_plus(n)
    elif 2 * x == n + 1:
        q = one_plus(2 * n + 1)
    else:
        raise ArithmeticError(f"X = {x} exceeds (n+1)/2 for k = {k}")
    lo = (n + 1 - k[-1]) // 2
    return poly.product([q, pa(n - 1, k_a), _odd_product(lo, n // 2 - 1, 3)])


def pc(n: int, theta) -> Poly:
    theta = set(theta)
    k = removed(n, theta)
    if not k:
        return (1,)
    m = 2 * (n // 2)
    # Theta minus alpha_n sits on the first n-1 nodes of A_m; the rest are removed
    k_a = removed(m, theta - {n})
    lo = (n + 1 - k[-1]) // 2
    return poly.mul(pa(m, k_a), _odd_product(lo, (n + 1) // 2 - 1, 1))


def pd(n: int, theta, literal: bool = False) -> Poly | Unsupported:
    """Type D_n with alpha_(n-1), alpha_n not both in theta.

    For even n the product PA_(n-1) * prod (1 + t^(4i+3)) is short by a
    factor 1 + t^(n-1): its degree falls below dim F_theta even for the
    (orientable) maximal flag.  The factor is included unless literal=True.
    """
    theta = set(theta)
    if len(theta) == n:
        return (1,)
    if n in theta and n - 1 in theta:
        return Unsupported(f"D{n}: alpha_{n - 1} and alpha_{n} both in theta")
    if n in theta:
        # the diagram automorphism swapping alpha_(n-1) and alpha_n
        theta = (theta - {n}) | {n - 1}
    q = one_plus(n - 1) if n % 2 == 0 and not literal else (1,)
    return poly.product([q, pa(n - 1, removed(n - 1, theta)), _odd_product(0, (n - 1) // 2 - 1, 3)])


# ---- exceptional tables --------------------------------------------------


def _p(*factors) -> Poly:
    return poly.product(factors)


def _o(*degs) -> Poly:
    return poly.product(one_plus(d) for d in degs)


def _f4_table() -> dict[str, Poly]:
    return {
        "empty": _p(_o(11, 7, 3, 3)),
        "A1": _o(11, 7, 3),
        "A2": _o(11, 7, 3),
        "A1xA1": _o(11, 7),
        "A2xA1": _o(11, 7),
        "B2": _o(11, 7),
        "B3": _o(11),
        "C3": _o(15),
    }


def _e7_table_one() -> dict[tuple[int, ...], Poly]:
    base = _o(15, 13, 9)
    wide = _o(15, 13, 11, 9)
    q12 = q_multinomial(3, [1, 2], 4)
    q111 = q_multinomial(3, [1, 1, 1], 4)
    h = poly.mul(one_plus(13), poly.from_terms(
        {27: 1, 25: 1, 23: 1, 21: 1, 19: 1, 17: 1, 16: 1, 12: 1, 8: 2, 4: 1, 0: 1}
    ))
    rows = {
        (1, 2, 4, 5, 6, 7): _p(base, q12),
        (1, 2, 3, 5, 6, 7): _p(base, q12, q12),
        (1, 2, 4, 5, 7): _p(base, q12, q12),
        (1, 2, 5, 6, 7): _p(base, q12, q12),
        (2, 3, 5, 6, 7): _p(base, q12, q12),
        (1, 2, 3, 5, 7): _p(base, q12, q111),
        (1, 2, 5, 7): _p(base, q12, q111),
        (2, 3, 5, 7): _p(base, q12, q111),
        (2, 4, 5, 6, 7): wide,
        (2, 4, 5, 7): _p(wide, q12),
        (2, 5, 6, 7): _p(wide, q12),
        (2, 5, 7): _p(wide, q111),
        (2, 3, 4, 5, 6, 7): poly.from_terms({29: 1, 27: 1, 25: 1, 21: 1, 16: 1, 12: 1, 8: 1, 0: 1}),
        (1, 2, 3, 4, 5, 7): h,
        (2, 3, 4, 5, 7): _p(h, q_multinomial(2, [1, 1], 8)),
    }
    return rows


def _only_a(spec: ThetaSpec) -> list[int] | None:
    if all(name[0] == "A" for name, _ in spec.components):
        return [int(name[1:]) for name, _ in spec.components]
    return None


def _f4(spec: ThetaSpec) -> Poly | Unsupported:
    if len(spec.included) == 4:
        return (1,)
    row = _f4_table().get(spec.label)
    return row if row is not None else Unsupported(f"F4 theta of type {spec.label} has no table row")


def _e6(spec: ThetaSpec) -> Poly | Unsupported:
    if len(spec.included) == 6:
        return (1,)
    if spec.label == "D4":
        return q_multinomial(3, [1, 1, 1], 8)
    if spec.label == "D5":
        return q_multinomial(3, [1, 2], 8)
    sizes = _only_a(spec)
    if sizes is not None:
        return pa_components(8, sizes)
    return Unsupported(f"E6 theta of type {spec.label} has no table row")


def _e7(spec: ThetaSpec) -> Poly | Unsupported:
    theta = spec.included
    if len(theta) == 7:
        return (1,)
    if {2, 5, 7} <= set(theta):
        row = _e7_table_one().get(theta)
        return row if row is not None else Unsupported(f"E7 theta {theta} has no table row")
    base = _o(13, 9, 5)
    if spec.label == "D4":
        return poly.mul(base, q_multinomial(3, [1, 1, 1], 8))
    if spec.label == "D5":
        return poly.mul(base, q_multinomial(3, [1, 2], 8))
    if spec.label == "E6":
        return base
    sizes = _only_a(spec)
    if sizes is not None:
        return _p(_o(13, 5), pa_components(9, sizes))
    return Unsupported(f"E7 theta of type {spec.label} has no table row")


def poincare_closed_form(type_tag: str, rank: int, theta) -> Poly | Unsupported:
    """Closed-form Poincaré polynomial, or Unsupported with the reason."""
    type_tag = type_tag.upper()
    if type_tag == "G":
        return Unsupported("G2: no closed form (triple-bond signs are outside the move analysis)")
    if type_tag == "E" and rank == 8:
        return Unsupported("E8: no closed form available")
    spec = theta_spec(type_tag, rank, theta)
    n = rank
    if type_tag == "A":
        return pa_theta(n, spec.included)
    if type_tag in "BCD":
        if n > MAX_CLASSICAL_RANK:
            return Unsupported(f"{type_tag}{n}: closed forms are only established for n <= 7")
        if type_tag == "B":
            return pb(n, spec.included)
        if type_tag == "C":
            return pc(n, spec.included)
        return pd(n, spec.included)
    if type_tag == "F":
        return _f4(spec)
    if rank == 6:
        return _e6(spec)
    return _e7(spec)
