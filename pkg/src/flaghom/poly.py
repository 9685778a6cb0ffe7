"""Dense integer polynomials in one variable, stored low degree first."""

from __future__ import annotations

from collections.abc import Iterable, Sequence

Poly = tuple[int, ...]


def trim(coeffs: Iterable[int]) -> Poly:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def one() -> Poly:
    return (1,)


def monomial(deg: int, coeff: int = 1) -> Poly:
    return trim([0] * deg + [coeff])


def from_terms(terms: dict[int, int]) -> Poly:
    """Build from a {degree: coefficient} mapping."""
    if not terms:
        return ()
    out = [0] * (max(terms) + 1)
    for d, c in terms.items():
        out[d] += c
    return trim(out)


def add(a: Sequence[int], b: Sequence[int]) -> Poly:
    n = max(len(a), len(b))
    return trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def mul(a: Sequence[int], b: Sequence[int]) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def product(factors: Iterable[Sequence[int]]) -> Poly:
    acc: Poly = (1,)
    for f in factors:
        acc = mul(acc, f)
    return acc


def divexact(a: Sequence[int], b: Sequence[int]) -> Poly:
    """Exact division; raises ArithmeticError on a nonzero remainder."""
    a = list(trim(a))
    b = trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    lead = b[-1]
    if len(a) < len(b):
        if any(a):
            raise ArithmeticError("polynomial division is not exact")
        return ()
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        c, r = divmod(a[k + len(b) - 1], lead)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        q[k] = c
        if c:
            for i, y in enumerate(b):
                a[k + i] -= c * y
    if any(a):
        raise ArithmeticError("polynomial division is not exact")
    return trim(q)


def substitute_power(a: Sequence[int], power: int) -> Poly:
    """Return a(t**power)."""
    if power < 1:
        raise ValueError("power must be >= 1")
    if not a:
        return ()
    out = [0] * ((len(a) - 1) * power + 1)
    for i, c in enumerate(a):
        out[i * power] = c
    return trim(out)


def degree(a: Sequence[int]) -> int:
    a = trim(a)
    return len(a) - 1


def evaluate(a: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def to_str(a: Sequence[int], var: str = "t") -> str:
    a = trim(a)
    if not a:
        return "0"
    parts = []
    for d in range(len(a) - 1, -1, -1):
        c = a[d]
        if not c:
            continue
        if d == 0:
            mono = str(c)
        else:
            head = "" if c == 1 else ("-" if c == -1 else f"{c}*")
            mono = head + (var if d == 1 else f"{var}^{d}")
        parts.append(mono)
    return " + ".join(parts).replace("+ -", "- ")
