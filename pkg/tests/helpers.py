"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from sphfan.cones import Cone
from sphfan.fourier_motzkin import feasible
from sphfan.spherical import ColoredCone, SphericalDatum, validate_colored_cone


def random_vec(rng: random.Random, n: int, lo: int = -5, hi: int = 5):
    return tuple(Fraction(rng.randint(lo, hi)) for _ in range(n))


def random_cone(rng: random.Random, max_rank: int = 4, max_gens: int = 6) -> Cone:
    n = rng.randint(1, max_rank)
    k = rng.randint(0, max_gens)
    return Cone(n, [random_vec(rng, n) for _ in range(k)])


def random_pointed_cone(rng: random.Random, max_rank: int = 4,
                        max_gens: int = 6) -> Cone:
    while True:
        c = random_cone(rng, max_rank, max_gens)
        if c.is_strictly_convex():
            return c


def brute_force_faces(c: Cone) -> list[Cone]:
    """Independent face oracle: subset + supporting-functional feasibility.

    For every subset T of generators, decide by Fourier-Motzkin whether
    some w satisfies w.g = 0 on T and w.g >= 1 off T; each feasible T
    contributes the face cone(T).
    """
    gens = c.generators
    n = c.ambient_rank
    idx = range(len(gens))
    faces = []
    for mask in range(1 << len(gens)):
        t = [i for i in idx if mask >> i & 1]
        rest = [i for i in idx if not mask >> i & 1]
        ineqs = []
        for i in t:
            ineqs.append((gens[i], Fraction(0)))
            ineqs.append((tuple(-x for x in gens[i]), Fraction(0)))
        for i in rest:
            ineqs.append((gens[i], Fraction(1)))
        if feasible(ineqs, n):
            faces.append(Cone(n, [gens[i] for i in t]))
    return faces


def fm_relint_meets_cone(c: Cone, v: Cone) -> bool:
    """Fourier-Motzkin reformulation of relint(c) ∩ v != ∅."""
    gc, gv = c.generators, v.generators
    n = c.ambient_rank
    nvars = len(gc) + len(gv)
    ineqs = []
    for i in range(len(gc)):
        coeffs = [Fraction(0)] * nvars
        coeffs[i] = Fraction(1)
        ineqs.append((tuple(coeffs), Fraction(1)))
    for j in range(len(gv)):
        coeffs = [Fraction(0)] * nvars
        coeffs[len(gc) + j] = Fraction(1)
        ineqs.append((tuple(coeffs), Fraction(0)))
    for k in range(n):
        coeffs = [g[k] for g in gc] + [-h[k] for h in gv]
        ineqs.append((tuple(coeffs), Fraction(0)))
        ineqs.append((tuple(-x for x in coeffs), Fraction(0)))
    return feasible(ineqs, nvars)


def random_datum(rng: random.Random, max_rank: int = 3,
                 max_colors: int = 3) -> SphericalDatum:
    n = rng.randint(1, max_rank)
    # bias toward large valuation cones so CC2 is satisfiable often
    if rng.random() < 0.5:
        vgens = [tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)]
        vgens += [tuple(-x for x in g) for g in vgens]
    else:
        vgens = [random_vec(rng, n) for _ in range(rng.randint(1, 2 * n))]
    names = ["c%d" % i for i in range(rng.randint(0, max_colors))]
    rho = {name: random_vec(rng, n, -3, 3) for name in names}
    return SphericalDatum(n, Cone(n, vgens), names, rho)


def random_valid_colored_cone(rng: random.Random, d: SphericalDatum,
                              attempts: int = 50) -> ColoredCone | None:
    """A colored cone passing CC1/CC2, built from rho images and V points."""
    v = d.valuation_cone
    for _ in range(attempts):
        palette = [c for c in d.colors if rng.random() < 0.4]
        k = rng.randint(0, 3)
        vpoints = []
        for _ in range(k):
            if v.generators:
                coeffs = [Fraction(rng.randint(0, 2)) for _ in v.generators]
                point = tuple(
                    sum((a * g[i] for a, g in zip(coeffs, v.generators)), Fraction(0))
                    for i in range(d.rank))
                vpoints.append(point)
        cone = Cone(d.rank, [d.rho[c] for c in palette] + vpoints)
        cc = ColoredCone(cone, palette)
        if validate_colored_cone(d, cc).ok:
            return cc
    return None
