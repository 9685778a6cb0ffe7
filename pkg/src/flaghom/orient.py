"""Orientability of F_theta by two independent tests.

root sums   F_theta is orientable iff for every simple root alpha outside
            theta, S(alpha, theta) = sum over beta in <theta>^+ of
            <beta, alpha^vee> is even.
top Betti   a closed connected n-manifold is orientable iff H_n(Z) = Z,
            i.e. the Poincaré polynomial reaches degree dim F_theta.
"""

from __future__ import annotations

from dataclasses import dataclass

from flaghom.rootsys import RootSystem, components, subsystem_positive_roots


def s_alpha_theta(rs: RootSystem, alpha: int, theta) -> int:
    theta = set(theta)
    if alpha in theta:
        raise ValueError(f"alpha_{alpha} lies in theta; S(alpha, theta) needs alpha outside theta")
    if not 1 <= alpha <= rs.rank:
        raise IndexError(f"root index {alpha} out of range 1..{rs.rank}")
    return sum(rs.pairing(beta, alpha) for beta in subsystem_positive_roots(rs, theta))


def s_alpha_components(rs: RootSystem, alpha: int, theta) -> list[tuple[tuple[int, ...], int]]:
    """Per-component contributions to S(alpha, theta)."""
    return [(tuple(c), s_alpha_theta(rs, alpha, c)) for c in components(rs, theta)]


def a_n_rule(n: int, k: int) -> int:
    """S(alpha, A_n) when alpha is joined to the k-th node of an A_n chain."""
    if not 1 <= k <= n:
        raise ValueError(f"attachment node k={k} out of range 1..{n}")
    return -k * (n - k + 1)


def dim_flag(rs: RootSystem, theta) -> int:
    return len(rs.positive_roots) - len(subsystem_positive_roots(rs, theta))


@dataclass
class OrientabilityReport:
    theta: tuple[int, ...]
    dim: int
    criterion_sum: dict[int, int]
    orientable_by_sum: bool
    beta_top_degree: int | None = None
    orientable_by_betti: bool | None = None

    @property
    def agree(self) -> bool | None:
        if self.orientable_by_betti is None:
            return None
        return self.orientable_by_betti == self.orientable_by_sum


def is_orientable(rs: RootSystem, theta, poincare=None) -> OrientabilityReport:
    """Both criteria; the Betti one only when a Poincaré polynomial is given."""
    theta = tuple(sorted(set(theta)))
    sums = {a: s_alpha_theta(rs, a, theta) for a in range(1, rs.rank + 1) if a not in theta}
    dim = dim_flag(rs, theta)
    rep = OrientabilityReport(theta, dim, sums, all(v % 2 == 0 for v in sums.values()))
    if poincare is not None:
        coeffs = list(poincare)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        rep.beta_top_degree = len(coeffs) - 1
        rep.orientable_by_betti = rep.beta_top_degree == dim
    return rep
