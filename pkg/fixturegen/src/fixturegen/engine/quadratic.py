"""Exact invariants of quadratic fields: class numbers by the Dirichlet
formulas, fundamental units by the minimal Pell solution, roots of unity by
discriminant."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

import mpmath
from sympy import jacobi_symbol


def kronecker(d: int, a: int) -> int:
    """Kronecker symbol (d/a) for a >= 1."""
    if a == 0:
        return 1 if abs(d) == 1 else 0
    out = 1
    if a < 0:
        raise ValueError("positive a only")
    while a % 2 == 0:
        a //= 2
        if d % 2 == 0:
            return 0
        out *= {1: 1, 7: 1, 3: -1, 5: -1}[d % 8]
    if a == 1:
        return out
    return out * int(jacobi_symbol(d % a, a))


def imaginary_class_number(d: int) -> int:
    """h(Q(sqrt(d))) for field discriminant d < 0, by Dirichlet's finite sum:
    h = w/(2|d|) |sum_{a=1}^{|d|-1} chi(a) a|."""
    assert d < 0
    w = 6 if d == -3 else 4 if d == -4 else 2
    total = sum(kronecker(d, a) * a for a in range(1, abs(d)))
    h2 = Fraction(w * abs(total), 2 * abs(d))
    assert h2.denominator == 1 and h2 > 0, f"Dirichlet sum failed for d={d}"
    return int(h2)


def fundamental_unit_xy(d: int, limit: int = 10 ** 6) -> tuple[int, int]:
    """Minimal (x, y), y >= 1, with x^2 - d y^2 = +-4 for field discriminant
    d > 0; the fundamental unit is (x + y sqrt(d))/2."""
    assert d > 0
    for y in range(1, limit):
        for pm in (-4, 4):
            x2 = d * y * y + pm
            if x2 > 0:
                x = isqrt(x2)
                if x * x == x2:
                    return x, y
    raise ArithmeticError(f"no Pell solution found for d={d} below y={limit}")


def real_class_number(d: int, log_eps) -> int:
    """h(Q(sqrt(d))) for field discriminant d > 0 via
    h = sqrt(d) L(1, chi_d) / (2 log eps), with
    L(1, chi) = -(1/sqrt(d)) sum chi(a) log(2 sin(pi a / d)).

    The sum is evaluated at high precision and h is the nearest integer; the
    rounding error is asserted tiny."""
    assert d > 0
    with mpmath.workdps(50):
        total = mpmath.mpf(0)
        for a in range(1, d):
            chi = kronecker(d, a)
            if chi:
                total += chi * mpmath.log(2 * mpmath.sin(mpmath.pi * a / d))
        h = -total / (2 * mpmath.mpf(log_eps))
        h_int = int(mpmath.nint(h))
        assert abs(h - h_int) < mpmath.mpf("1e-25"), f"class number not integral: {h}"
    assert h_int >= 1
    return h_int


def quadratic_invariants(d: int) -> dict:
    """h, w, regulator (as an mpmath-ready description) and the fundamental
    unit (x, y) with eps = (x + y sqrt(d))/2, for a field discriminant d."""
    if d < 0:
        return {"h": imaginary_class_number(d), "w": 6 if d == -3 else 4 if d == -4 else 2,
                "unit_xy": None}
    x, y = fundamental_unit_xy(d)
    with mpmath.workdps(50):
        eps = (x + y * mpmath.sqrt(d)) / 2
        log_eps = mpmath.log(eps)
        h = real_class_number(d, log_eps)
    return {"h": h, "w": 2, "unit_xy": (x, y)}
