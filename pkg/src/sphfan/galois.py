"""Finite group actions on a spherical datum and fan invariance.

The group is given by an explicit finite list of elements (matrix on the
ambient lattice plus a permutation of colors); continuity means every
relevant action factors through such a finite quotient, so closure and
inverse checks can be exhaustive.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .cones import Cone, cones_equal
from .rational import Mat
from .spherical import (ColoredCone, ColoredFan, FanAxiomError,
                        RankMismatchError, SphericalDatum, colored_cones_equal,
                        faces_closure)


class GroupElement:
    __slots__ = ("name", "matrix", "color_perm")

    def __init__(self, name: str, matrix: Mat, color_perm: Mapping[str, str]):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "color_perm", dict(color_perm))

    def __setattr__(self, name, value):
        raise AttributeError("GroupElement is immutable")

    def same_action(self, other: "GroupElement") -> bool:
        return self.matrix == other.matrix and self.color_perm == other.color_perm


class GaloisAction:
    """Finite quotient of a Galois group acting on a spherical datum."""

    __slots__ = ("datum", "elements")

    def __init__(self, datum: SphericalDatum, elements: Sequence[GroupElement]):
        names = [e.name for e in elements]
        if len(set(names)) != len(names):
            raise ValueError("duplicate element names")
        for e in elements:
            if e.matrix.nrows != datum.rank or e.matrix.ncols != datum.rank:
                raise RankMismatchError(f"element {e.name!r} matrix is not rank x rank")
            if set(e.color_perm) != set(datum.colors) or \
                    set(e.color_perm.values()) != set(datum.colors):
                raise ValueError(f"element {e.name!r} color map is not a permutation of the colors")
        object.__setattr__(self, "datum", datum)
        object.__setattr__(self, "elements", tuple(elements))

    def __setattr__(self, name, value):
        raise AttributeError("GaloisAction is immutable")

    def element(self, name: str) -> GroupElement:
        for e in self.elements:
            if e.name == name:
                return e
        raise KeyError(f"unknown group element {name!r}")

    def compose(self, g: GroupElement, h: GroupElement) -> tuple[Mat, dict]:
        """The action of g∘h (apply h, then g)."""
        matrix = g.matrix.matmul(h.matrix)
        perm = {c: g.color_perm[h.color_perm[c]] for c in self.datum.colors}
        return matrix, perm

    def _find(self, matrix: Mat, perm: dict) -> Optional[GroupElement]:
        for e in self.elements:
            if e.matrix == matrix and e.color_perm == perm:
                return e
        return None


@dataclass(frozen=True)
class ActionReport:
    has_identity: bool
    closed: bool
    has_inverses: bool
    unimodular: bool
    v_stable: bool
    rho_equivariant: bool
    failures: tuple[str, ...]   # human-readable counterexample notes

    @property
    def ok(self) -> bool:
        return (self.has_identity and self.closed and self.has_inverses
                and self.unimodular and self.v_stable and self.rho_equivariant)


def validate_action(a: GaloisAction) -> ActionReport:
    d = a.datum
    failures = []

    ident_mat = Mat.identity(d.rank)
    ident_perm = {c: c for c in d.colors}
    has_identity = a._find(ident_mat, ident_perm) is not None
    if not has_identity:
        failures.append("no identity element")

    closed = True
    for g in a.elements:
        for h in a.elements:
            if a._find(*a.compose(g, h)) is None:
                closed = False
                failures.append(f"composite {g.name!r}∘{h.name!r} is not in the list")

    has_inverses = True
    for g in a.elements:
        inv = next((h for h in a.elements
                    if a._find(*a.compose(g, h)) is not None
                    and a.compose(g, h)[0] == ident_mat
                    and a.compose(g, h)[1] == ident_perm), None)
        if inv is None:
            has_inverses = False
            failures.append(f"element {g.name!r} has no inverse in the list")

    unimodular = True
    for g in a.elements:
        if not g.matrix.is_integral_unimodular():
            unimodular = False
            failures.append(f"element {g.name!r} is not integral unimodular")

    v_stable = True
    v = d.valuation_cone
    for g in a.elements:
        image = Cone(d.rank, [g.matrix.matvec(x) for x in v.generators])
        if not cones_equal(image, v):
            v_stable = False
            failures.append(f"element {g.name!r} does not map V onto V")

    rho_equivariant = True
    for g in a.elements:
        for c in d.colors:
            if g.matrix.matvec(d.rho[c]) != d.rho[g.color_perm[c]]:
                rho_equivariant = False
                failures.append(f"element {g.name!r} breaks rho-equivariance at color {c!r}")

    return ActionReport(has_identity=has_identity, closed=closed,
                        has_inverses=has_inverses, unimodular=unimodular,
                        v_stable=v_stable, rho_equivariant=rho_equivariant,
                        failures=tuple(failures))


def apply_element(a: GaloisAction, gamma: str | GroupElement,
                  cc: ColoredCone) -> ColoredCone:
    """The translated colored cone (M·C, perm(F))."""
    e = a.element(gamma) if isinstance(gamma, str) else gamma
    cone = Cone(a.datum.rank, [e.matrix.matvec(g) for g in cc.cone.generators])
    palette = {e.color_perm[f] for f in cc.palette}
    return ColoredCone(cone, palette)


@dataclass(frozen=True)
class InvarianceReport:
    # (element name, member index) pairs whose image is not a member
    failures: tuple[tuple[str, int], ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def is_invariant_fan(a: GaloisAction, fan: ColoredFan) -> InvarianceReport:
    failures = []
    for e in a.elements:
        for i, cc in enumerate(fan):
            image = apply_element(a, e, cc)
            if not any(colored_cones_equal(image, m) for m in fan):
                failures.append((e.name, i))
    return InvarianceReport(failures=tuple(failures))


def orbit(a: GaloisAction, cc: ColoredCone) -> list[ColoredCone]:
    out: list[ColoredCone] = []
    for e in a.elements:
        image = apply_element(a, e, cc)
        if not any(colored_cones_equal(image, m) for m in out):
            out.append(image)
    return out


def invariant_closure(a: GaloisAction, seeds: Sequence[ColoredCone]) -> ColoredFan:
    """Minimal Γ-invariant colored fan containing the seeds.

    Alternates orbit expansion and face expansion to a fixed point, then
    runs the final CF2 pass (raising FanAxiomError with a witness on
    failure).  Both expansions are monotone, so the fixed point does not
    depend on the interleaving order.
    """
    from .spherical import colored_faces

    members: list[ColoredCone] = []

    def add(cc: ColoredCone) -> bool:
        if any(colored_cones_equal(cc, m) for m in members):
            return False
        members.append(cc)
        return True

    for s in seeds:
        add(s)
    changed = True
    while changed:
        changed = False
        for cc in list(members):
            for e in a.elements:
                if add(apply_element(a, e, cc)):
                    changed = True
            for face in colored_faces(a.datum, cc):
                if add(face):
                    changed = True
    return faces_closure(a.datum, members)
