from __future__ import annotations

import pytest

from flaghom import poly


def test_trim_and_degree():
    assert poly.trim([1, 0, 2, 0, 0]) == (1, 0, 2)
    assert poly.degree((1, 0, 2)) == 2
    assert poly.trim([0, 0]) == ()


def test_mul_add():
    a = (1, 1)
    assert poly.mul(a, a) == (1, 2, 1)
    assert poly.add((1, 2), (0, 0, 3)) == (1, 2, 3)


def test_divexact_roundtrip():
    a = poly.mul((1, 0, 1), (1, 1, 1))
    assert poly.divexact(a, (1, 1, 1)) == (1, 0, 1)
    with pytest.raises(ArithmeticError):
        poly.divexact((1, 0, 1), (1, 1))


def test_substitute_and_evaluate():
    assert poly.substitute_power((1, 2), 3) == (1, 0, 0, 2)
    assert poly.evaluate((1, 0, 2), 2) == 9


def test_to_str():
    assert poly.to_str((1, 0, 0, 0, 2, 0, 0, 3)) == "3*t^7 + 2*t^4 + 1"
