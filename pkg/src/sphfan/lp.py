"""Exact rational linear feasibility.

The workhorse is a phase-1 simplex over Fractions with Bland's rule, so
termination is unconditional and every answer is exact.  A
:class:`FeasibilitySystem` holds equalities plus per-variable lower bounds
(``None`` = free) and either produces a witness point or reports
infeasibility.

When oracle cross-checking is enabled (CLI flag ``--oracle``), every
simplex verdict is replayed through the independent Fourier-Motzkin
eliminator and a disagreement raises :class:`OracleDisagreement`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import fourier_motzkin
from .rational import Vec

_cross_check = False


def set_oracle_cross_check(enabled: bool) -> None:
    global _cross_check
    _cross_check = enabled


class OracleDisagreement(RuntimeError):
    """Simplex and Fourier-Motzkin disagreed on a feasibility verdict."""


def solve_eq_nonneg(a: Sequence[Sequence[Fraction]],
                    b: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """Find y >= 0 with a @ y = b, or None.  Phase-1 simplex, Bland's rule."""
    m = len(a)
    n = len(a[0]) if m else 0
    rows = []
    rhs = []
    for i in range(m):
        if b[i] < 0:
            rows.append([-x for x in a[i]])
            rhs.append(-b[i])
        else:
            rows.append(list(a[i]))
            rhs.append(Fraction(b[i]))

    # tableau columns: n originals, m artificials, then rhs
    tab = [rows[i] + [Fraction(1 if j == i else 0) for j in range(m)] + [rhs[i]]
           for i in range(m)]
    basis = [n + i for i in range(m)]
    # reduced costs of the phase-1 objective (minimize sum of artificials)
    cost = [-sum(tab[i][j] for i in range(m)) for j in range(n)]
    obj = -sum(rhs, Fraction(0))

    while True:
        enter = next((j for j in range(n) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            # phase-1 objective is bounded below by 0, so this cannot happen
            raise RuntimeError("unbounded phase-1 problem")
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        f = cost[enter]
        obj -= f * tab[leave][-1]
        cost = [c - f * tab[leave][j] for j, c in enumerate(cost[:n])]
        basis[leave] = enter

    if obj != 0:
        return None
    y = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        if bv < n:
            y[bv] = tab[i][-1]
    return y


@dataclass(frozen=True)
class FeasibilitySystem:
    """Equalities ``A x = b`` with per-variable lower bounds (None = free)."""

    equalities: tuple[Vec, ...]
    rhs: Vec
    lower_bounds: tuple[Optional[Fraction], ...]

    def __post_init__(self):
        nvars = len(self.lower_bounds)
        for row in self.equalities:
            if len(row) != nvars:
                raise ValueError("equality row length does not match variable count")
        if len(self.rhs) != len(self.equalities):
            raise ValueError("rhs length does not match equality count")

    def solve(self) -> Optional[Vec]:
        """Exact witness x, or None if the system is infeasible."""
        witness = self._solve_simplex()
        if _cross_check:
            fm = fourier_motzkin.feasible(self._as_inequalities(), len(self.lower_bounds))
            if fm != (witness is not None):
                raise OracleDisagreement(
                    f"simplex says {'feasible' if witness is not None else 'infeasible'}, "
                    f"Fourier-Motzkin says {'feasible' if fm else 'infeasible'}")
        return witness

    def _solve_simplex(self) -> Optional[Vec]:
        nvars = len(self.lower_bounds)
        # substitute x_i = y_i + lb_i (y_i >= 0) for bounded variables,
        # x_i = y_i - y'_i for free ones
        cols: list[list[int]] = []  # (column index, sign) pairs per variable
        ncols = 0
        col_spec = []
        for lb in self.lower_bounds:
            if lb is None:
                col_spec.append((ncols, ncols + 1))
                ncols += 2
            else:
                col_spec.append((ncols, None))
                ncols += 1
        a = []
        b = []
        for row, r in zip(self.equalities, self.rhs):
            arow = [Fraction(0)] * ncols
            shift = Fraction(0)
            for coeff, lb, spec in zip(row, self.lower_bounds, col_spec):
                pos, neg = spec
                arow[pos] += coeff
                if neg is not None:
                    arow[neg] -= coeff
                else:
                    shift += coeff * lb
            a.append(arow)
            b.append(r - shift)
        y = solve_eq_nonneg(a, b)
        if y is None:
            return None
        x = []
        for lb, (pos, neg) in zip(self.lower_bounds, col_spec):
            if neg is None:
                x.append(y[pos] + lb)
            else:
                x.append(y[pos] - y[neg])
        return tuple(x)

    def _as_inequalities(self):
        """The same system as a list of (coeffs, rhs) rows meaning c.x >= rhs."""
        ineqs = []
        nvars = len(self.lower_bounds)
        for row, r in zip(self.equalities, self.rhs):
            ineqs.append((tuple(row), r))
            ineqs.append((tuple(-c for c in row), -r))
        for i, lb in enumerate(self.lower_bounds):
            if lb is not None:
                coeffs = tuple(Fraction(1 if j == i else 0) for j in range(nvars))
                ineqs.append((coeffs, lb))
        return ineqs
