"""Fourier-Motzkin elimination over exact rationals.

Serves as the independent feasibility oracle next to the simplex path.
Only non-strict inequalities are needed: every system produced by the
cone machinery is of the form ``c . x >= rhs``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Ineq = tuple[tuple[Fraction, ...], Fraction]


def _normalize(coeffs: Sequence[Fraction], rhs: Fraction) -> Ineq:
    """Scale an inequality to coprime integer data (direction preserved)."""
    vals = list(coeffs) + [rhs]
    if all(v == 0 for v in vals):
        return (tuple(Fraction(0) for _ in coeffs), Fraction(0))
    m = lcm(*(v.denominator for v in vals))
    ints = [v.numerator * (m // v.denominator) for v in vals]
    g = gcd(*(abs(i) for i in ints))
    ints = [i // g for i in ints]
    return (tuple(Fraction(i) for i in ints[:-1]), Fraction(ints[-1]))


def _prune(rows: set[Ineq]) -> set[Ineq]:
    """Keep only the tightest bound for each coefficient direction."""
    best: dict[tuple[Fraction, ...], Fraction] = {}
    for coeffs, rhs in rows:
        prev = best.get(coeffs)
        if prev is None or rhs > prev:
            best[coeffs] = rhs
    return {(c, r) for c, r in best.items()}


def _substitute_equality(rows: set[Ineq], remaining: list[int]):
    """Eliminate one variable pinned by an opposite pair of rows, if any.

    A pair ``c . x >= r`` and ``-c . x >= -r`` forces ``c . x = r``; any
    variable with a nonzero coefficient there can be solved for and
    substituted away without growing the system.
    """
    for coeffs, rhs in rows:
        neg = (tuple(-x for x in coeffs), -rhs)
        if neg not in rows:
            continue
        var = next((v for v in remaining if coeffs[v] != 0), None)
        if var is None:
            continue
        pivot = coeffs[var]
        out = set()
        for c2, r2 in rows:
            if (c2, r2) in ((coeffs, rhs), neg):
                continue
            f = c2[var] / pivot
            if f == 0:
                out.add((c2, r2))
            else:
                out.add(_normalize(
                    tuple(a - f * b for a, b in zip(c2, coeffs)), r2 - f * rhs))
        remaining.remove(var)
        return _prune(out)
    return None


def feasible(ineqs: Sequence[Ineq], nvars: int) -> bool:
    """Decide whether {x : c . x >= rhs for all rows} is nonempty."""
    rows = _prune({_normalize(c, r) for c, r in ineqs})
    remaining = list(range(nvars))
    while remaining:
        substituted = _substitute_equality(rows, remaining)
        if substituted is not None:
            rows = substituted
            for coeffs, rhs in rows:
                if all(c == 0 for c in coeffs) and rhs > 0:
                    return False
            continue

        # eliminate the variable producing the fewest new rows first
        def cost(v: int) -> int:
            lo = sum(1 for coeffs, _ in rows if coeffs[v] > 0)
            hi = sum(1 for coeffs, _ in rows if coeffs[v] < 0)
            return lo * hi - lo - hi

        var = min(remaining, key=cost)
        remaining.remove(var)
        lower, upper, rest = [], [], []
        for coeffs, rhs in rows:
            cj = coeffs[var]
            if cj > 0:
                lower.append((coeffs, rhs))
            elif cj < 0:
                upper.append((coeffs, rhs))
            else:
                rest.append((coeffs, rhs))
        new = set()
        for cl, rl in lower:
            for cu, ru in upper:
                # positive combination cancelling x_var
                a = -cu[var]
                b = cl[var]
                coeffs = tuple(a * x + b * y for x, y in zip(cl, cu))
                new.add(_normalize(coeffs, a * rl + b * ru))
        rows = _prune(set(rest) | new)
        # early exit on a constant contradiction
        for coeffs, rhs in rows:
            if all(c == 0 for c in coeffs) and rhs > 0:
                return False
    return all(rhs <= 0 for coeffs, rhs in rows)
