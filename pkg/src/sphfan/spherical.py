"""Spherical data, colored cones, colored fans, and their validity axioms.

A datum is the combinatorial tuple (rank, valuation cone, colors, rho).
Colored cones are pairs (cone, palette); the two cone axioms are

  CC1: the cone is generated by the rho-images of its palette together
       with finitely many valuation-cone elements, and
  CC2: its relative interior meets the valuation cone.

Colored fans additionally satisfy face closure (CF1) and uniqueness of
the cone whose relative interior contains any given valuation vector
(CF2, decided pairwise).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .cones import Cone, cones_equal, relint_meets_cone, relints_meet_in
from .rational import Vec, is_zero_vec, rat


class UnknownColorError(KeyError):
    pass


class RankMismatchError(ValueError):
    pass


class FanAxiomError(ValueError):
    """Raised by constructive operations when CF2 fails; carries a witness."""

    def __init__(self, message: str, witness: Optional[Vec] = None):
        super().__init__(message)
        self.witness = witness


class SphericalDatum:
    """The input tuple: rank, valuation cone V, color set D, map rho."""

    __slots__ = ("rank", "valuation_cone", "colors", "rho")

    def __init__(self, rank: int, valuation_cone: Cone,
                 colors: Sequence[str] = (),
                 rho: Mapping[str, Iterable] = None):
        rho = dict(rho or {})
        if valuation_cone.ambient_rank != rank:
            raise RankMismatchError("valuation cone rank differs from datum rank")
        if len(set(colors)) != len(colors):
            raise ValueError("duplicate color identifiers")
        images = {}
        for c in colors:
            if c not in rho:
                raise UnknownColorError(f"no rho image for color {c!r}")
            v = tuple(rat(e) for e in rho[c])
            if len(v) != rank:
                raise RankMismatchError(f"rho image of {c!r} has wrong length")
            images[c] = v
        extra = set(rho) - set(colors)
        if extra:
            raise UnknownColorError(f"rho defined on unknown colors: {sorted(extra)}")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "valuation_cone", valuation_cone)
        object.__setattr__(self, "colors", tuple(colors))
        object.__setattr__(self, "rho", images)

    def __setattr__(self, name, value):
        raise AttributeError("SphericalDatum is immutable")

    def check_colors(self, palette: Iterable[str]) -> None:
        unknown = set(palette) - set(self.colors)
        if unknown:
            raise UnknownColorError(f"unknown colors: {sorted(unknown)}")


class ColoredCone:
    """A pair (cone, palette).  Validity only via validate_colored_cone."""

    __slots__ = ("cone", "palette")

    def __init__(self, cone: Cone, palette: Iterable[str] = ()):
        object.__setattr__(self, "cone", cone)
        object.__setattr__(self, "palette", frozenset(palette))

    def __setattr__(self, name, value):
        raise AttributeError("ColoredCone is immutable")

    def __repr__(self):
        return f"ColoredCone({self.cone!r}, {sorted(self.palette)})"


def colored_cones_equal(a: ColoredCone, b: ColoredCone) -> bool:
    return a.palette == b.palette and cones_equal(a.cone, b.cone)


class ColoredFan:
    """Nonempty, duplicate-free finite collection of colored cones."""

    __slots__ = ("cones",)

    def __init__(self, cones: Iterable[ColoredCone]):
        members: list[ColoredCone] = []
        for cc in cones:
            if not any(colored_cones_equal(cc, m) for m in members):
                members.append(cc)
        if not members:
            raise ValueError("a colored fan must be nonempty")
        ranks = {cc.cone.ambient_rank for cc in members}
        if len(ranks) != 1:
            raise RankMismatchError("fan members have mixed ambient ranks")
        object.__setattr__(self, "cones", tuple(members))

    def __setattr__(self, name, value):
        raise AttributeError("ColoredFan is immutable")

    def __len__(self):
        return len(self.cones)

    def __iter__(self):
        return iter(self.cones)


def fans_equal(a: ColoredFan, b: ColoredFan) -> bool:
    return (len(a) == len(b)
            and all(any(colored_cones_equal(x, y) for y in b) for x in a))


@dataclass(frozen=True)
class ColoredConeReport:
    cc1: bool
    cc2: bool
    cc2_witness: Optional[Vec]
    cc1_detail: str = ""

    @property
    def ok(self) -> bool:
        return self.cc1 and self.cc2


@dataclass(frozen=True)
class ColoredFanReport:
    cone_reports: tuple[ColoredConeReport, ...]
    cf1: bool
    cf1_missing: tuple[tuple[int, ColoredCone], ...]
    cf2: bool
    cf2_failures: tuple[tuple[int, int, Vec], ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.cone_reports) and self.cf1 and self.cf2


def _check(d: SphericalDatum, cc: ColoredCone) -> None:
    if cc.cone.ambient_rank != d.rank:
        raise RankMismatchError("colored cone rank differs from datum rank")
    d.check_colors(cc.palette)


def validate_colored_cone(d: SphericalDatum, cc: ColoredCone) -> ColoredConeReport:
    """Decide CC1 and CC2 independently, with witnesses.

    CC1 is equivalent to: rho(palette) lies in the cone, and the cone is
    regenerated by rho(palette) together with generators of its
    intersection with V.
    """
    _check(d, cc)
    c = cc.cone
    v = d.valuation_cone
    rho_imgs = [d.rho[f] for f in sorted(cc.palette)]

    cc1 = True
    detail = ""
    for f in sorted(cc.palette):
        if not c.contains(d.rho[f]):
            cc1 = False
            detail = f"rho({f}) lies outside the cone"
            break
    if cc1:
        regen = Cone(d.rank, list(rho_imgs) + list(c.intersect(v).generators))
        if not cones_equal(regen, c):
            cc1 = False
            detail = "cone is not generated by rho(palette) and cone ∩ V"

    witness = relint_meets_cone(c, v)
    return ColoredConeReport(cc1=cc1, cc2=witness is not None,
                             cc2_witness=witness, cc1_detail=detail)


def is_strictly_convex_colored(d: SphericalDatum, cc: ColoredCone) -> bool:
    _check(d, cc)
    if not cc.cone.is_strictly_convex():
        return False
    return all(not is_zero_vec(d.rho[f]) for f in cc.palette)


def colored_faces(d: SphericalDatum, cc: ColoredCone) -> list[ColoredCone]:
    """Colored faces of cc: faces whose relative interior meets V, with
    the induced palette {f : rho(f) in face}.  cc itself is included."""
    _check(d, cc)
    v = d.valuation_cone
    out = []
    for face in cc.cone.faces():
        if relint_meets_cone(face, v) is None:
            continue
        palette = {f for f in cc.palette if face.contains(d.rho[f])}
        out.append(ColoredCone(face, palette))
    return out


def validate_colored_fan(d: SphericalDatum, fan: ColoredFan) -> ColoredFanReport:
    """Per-cone CC1/CC2, then CF1 (face closure) and CF2 (pairwise)."""
    for cc in fan:
        _check(d, cc)
    reports = tuple(validate_colored_cone(d, cc) for cc in fan)

    cf1_missing = []
    for i, cc in enumerate(fan):
        for face in colored_faces(d, cc):
            if not any(colored_cones_equal(face, m) for m in fan):
                cf1_missing.append((i, face))

    cf2_failures = []
    members = fan.cones
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            w = relints_meet_in(members[i].cone, members[j].cone, d.valuation_cone)
            if w is not None:
                cf2_failures.append((i, j, w))

    return ColoredFanReport(
        cone_reports=reports,
        cf1=not cf1_missing,
        cf1_missing=tuple(cf1_missing),
        cf2=not cf2_failures,
        cf2_failures=tuple(cf2_failures),
    )


def is_strictly_convex_fan(d: SphericalDatum, fan: ColoredFan) -> bool:
    return all(is_strictly_convex_colored(d, cc) for cc in fan)


def maximal_cones(d: SphericalDatum, fan: ColoredFan) -> list[ColoredCone]:
    """Members that are not a proper colored face of another member.

    The fan is "simple" (one closed orbit) iff exactly one maximal cone.
    """
    face_lists = [colored_faces(d, cc) for cc in fan]
    out = []
    for cc in fan:
        proper_face = any(
            other is not cc
            and not colored_cones_equal(cc, other)
            and any(colored_cones_equal(cc, f) for f in faces)
            for other, faces in zip(fan, face_lists))
        if not proper_face:
            out.append(cc)
    return out


def is_simple(d: SphericalDatum, fan: ColoredFan) -> bool:
    return len(maximal_cones(d, fan)) == 1


def orbit_count(fan: ColoredFan) -> int:
    """Number of orbits of the classified embedding: one per colored cone."""
    return len(fan.cones)


def faces_closure(d: SphericalDatum, cones: Sequence[ColoredCone]) -> ColoredFan:
    """Close the given colored cones under faces and check CF2.

    Raises FanAxiomError (with witness) on a CF2 violation; the returned
    fan is ordered by dimension, then first occurrence.
    """
    collected: list[ColoredCone] = []
    for cc in cones:
        for face in colored_faces(d, cc):
            if not any(colored_cones_equal(face, m) for m in collected):
                collected.append(face)
    collected.sort(key=lambda cc: cc.cone.dim)
    fan = ColoredFan(collected)
    for i in range(len(fan.cones)):
        for j in range(i + 1, len(fan.cones)):
            w = relints_meet_in(fan.cones[i].cone, fan.cones[j].cone,
                                d.valuation_cone)
            if w is not None:
                raise FanAxiomError(
                    "CF2 violation: two cones share a valuation point in their "
                    "relative interiors", witness=w)
    return fan
