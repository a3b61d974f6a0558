import random
from fractions import Fraction

import pytest

from sphfan.cones import Cone, cones_equal
from sphfan.spherical import (ColoredCone, ColoredFan, FanAxiomError,
                              RankMismatchError, SphericalDatum,
                              UnknownColorError, colored_cones_equal,
                              colored_faces, faces_closure, fans_equal,
                              is_simple, is_strictly_convex_colored,
                              is_strictly_convex_fan, maximal_cones,
                              orbit_count, validate_colored_cone,
                              validate_colored_fan)

from helpers import random_datum, random_valid_colored_cone


def full_line():
    return Cone(1, [(1,), (-1,)])


def full_plane():
    return Cone(2, [(1, 0), (-1, 0), (0, 1), (0, -1)])


def p1_datum():
    return SphericalDatum(1, full_line())


def p1_fan():
    return ColoredFan([ColoredCone(Cone(1)),
                       ColoredCone(Cone(1, [(1,)])),
                       ColoredCone(Cone(1, [(-1,)]))])


class TestDatum:
    def test_duplicate_colors_rejected(self):
        with pytest.raises(ValueError):
            SphericalDatum(1, full_line(), ["a", "a"], {"a": (1,)})

    def test_missing_rho(self):
        with pytest.raises(UnknownColorError):
            SphericalDatum(1, full_line(), ["a"], {})

    def test_rho_length_checked(self):
        with pytest.raises(RankMismatchError):
            SphericalDatum(1, full_line(), ["a"], {"a": (1, 0)})

    def test_rank_of_valuation_cone(self):
        with pytest.raises(RankMismatchError):
            SphericalDatum(2, full_line())


class TestValidateColoredCone:
    def test_zero_cone_over_line(self):
        r = validate_colored_cone(p1_datum(), ColoredCone(Cone(1)))
        assert r.cc1 and r.cc2

    def test_ray_outside_valuation_cone(self):
        d = SphericalDatum(1, Cone(1, [(1,)]))
        r = validate_colored_cone(d, ColoredCone(Cone(1, [(-1,)])))
        assert not r.cc1 and not r.cc2

    def test_quadrant_with_color(self):
        d = SphericalDatum(2, full_plane(), ["a"], {"a": (1, 0)})
        r = validate_colored_cone(d, ColoredCone(Cone(2, [(1, 0), (0, 1)]), ["a"]))
        assert r.cc1 and r.cc2
        assert r.cc2_witness is not None

    def test_color_needed_for_cc1(self):
        # V is only the upper half plane: the ray (1,0) is generated by
        # rho(a), not by valuation vectors, so CC1 holds with the color
        # and fails without it
        d = SphericalDatum(2, Cone(2, [(0, 1), (1, 1), (-1, 1)]),
                           ["a"], {"a": (1, 0)})
        with_color = validate_colored_cone(
            d, ColoredCone(Cone(2, [(1, 0), (0, 1)]), ["a"]))
        assert with_color.cc1
        without = validate_colored_cone(
            d, ColoredCone(Cone(2, [(1, 0), (0, 1)])))
        assert not without.cc1

    def test_unknown_color(self):
        with pytest.raises(UnknownColorError):
            validate_colored_cone(p1_datum(), ColoredCone(Cone(1), ["nope"]))

    def test_rank_mismatch(self):
        with pytest.raises(RankMismatchError):
            validate_colored_cone(p1_datum(), ColoredCone(Cone(2)))


class TestStrictConvexity:
    def test_zero(self):
        assert is_strictly_convex_colored(p1_datum(), ColoredCone(Cone(1)))

    def test_line_cone(self):
        d = SphericalDatum(2, full_plane())
        assert not is_strictly_convex_colored(
            d, ColoredCone(Cone(2, [(1, 0), (-1, 0)])))

    def test_zero_rho_in_palette(self):
        d = SphericalDatum(2, full_plane(), ["a"], {"a": (0, 0)})
        assert not is_strictly_convex_colored(
            d, ColoredCone(Cone(2, [(1, 0)]), ["a"]))


class TestColoredFaces:
    def test_ray_over_line(self):
        faces = colored_faces(p1_datum(), ColoredCone(Cone(1, [(1,)])))
        assert len(faces) == 2
        assert any(f.cone.is_zero for f in faces)

    def test_face_excluded_when_relint_misses_v(self):
        # V = upper closed half plane; relint(ray(0,-1)) misses V
        d = SphericalDatum(2, Cone(2, [(0, 1), (1, 0), (-1, 0)]))
        cc = ColoredCone(Cone(2, [(1, 0), (0, -1)]))
        faces = colored_faces(d, cc)
        assert not any(cones_equal(f.cone, Cone(2, [(0, -1)])) for f in faces)
        assert any(cones_equal(f.cone, Cone(2, [(1, 0)])) for f in faces)

    def test_palette_restricts_to_face(self):
        d = SphericalDatum(2, full_plane(), ["a"], {"a": (1, 0)})
        cc = ColoredCone(Cone(2, [(1, 0), (0, 1)]), ["a"])
        faces = colored_faces(d, cc)
        assert len(faces) == 4
        for f in faces:
            if f.cone.contains((Fraction(1), Fraction(0))):
                assert f.palette == frozenset({"a"})
            else:
                assert f.palette == frozenset()

    def test_faces_are_valid_and_closed(self):
        rng = random.Random(101)
        d = random_datum(rng)
        cc = random_valid_colored_cone(rng, d)
        assert cc is not None
        faces = colored_faces(d, cc)
        for f in faces:
            assert validate_colored_cone(d, f).ok
            for ff in colored_faces(d, f):
                assert any(colored_cones_equal(ff, g) for g in faces)


class TestValidateColoredFan:
    def test_p1_fan_valid(self):
        rep = validate_colored_fan(p1_datum(), p1_fan())
        assert rep.ok
        assert is_strictly_convex_fan(p1_datum(), p1_fan())

    def test_missing_face_fails_cf1(self):
        fan = ColoredFan([ColoredCone(Cone(1, [(1,)]))])
        rep = validate_colored_fan(p1_datum(), fan)
        assert not rep.cf1 and rep.cf1_missing

    def test_overlap_fails_cf2(self):
        d = SphericalDatum(2, full_plane())
        a = ColoredCone(Cone(2, [(1, 0), (0, 1)]))
        b = ColoredCone(Cone(2, [(1, 1), (1, -1)]))
        members = [a, b]
        for cc in (a, b):
            members.extend(colored_faces(d, cc))
        rep = validate_colored_fan(d, ColoredFan(members))
        assert not rep.cf2
        (i, j, w), *_ = rep.cf2_failures
        assert rep.cone_reports[i].ok and rep.cone_reports[j].ok
        assert d.valuation_cone.contains(w)

    def test_same_cone_two_palettes_rejected_by_cf2(self):
        d = SphericalDatum(2, full_plane(), ["a"], {"a": (1, 0)})
        cone = Cone(2, [(1, 0), (0, 1)])
        fan = ColoredFan([ColoredCone(cone, ["a"]), ColoredCone(cone)])
        assert len(fan) == 2
        rep = validate_colored_fan(d, fan)
        assert not rep.cf2

    def test_empty_fan_rejected(self):
        with pytest.raises(ValueError):
            ColoredFan([])


class TestMaximalAndOrbits:
    def test_p1(self):
        d, fan = p1_datum(), p1_fan()
        maxc = maximal_cones(d, fan)
        assert len(maxc) == 2
        assert not is_simple(d, fan)
        assert orbit_count(fan) == 3

    def test_single_cone_closure_is_simple(self):
        d = SphericalDatum(2, full_plane(), ["a"], {"a": (1, 0)})
        cc = ColoredCone(Cone(2, [(1, 0), (0, 1)]), ["a"])
        fan = faces_closure(d, [cc])
        assert is_simple(d, fan)
        assert orbit_count(fan) == len(colored_faces(d, cc)) == 4

    def test_homogeneous_fan(self):
        fan = ColoredFan([ColoredCone(Cone(1))])
        assert orbit_count(fan) == 1
        assert is_simple(p1_datum(), fan)


class TestFacesClosure:
    def test_single_ray(self):
        fan = faces_closure(p1_datum(), [ColoredCone(Cone(1, [(1,)]))])
        assert len(fan) == 2

    def test_both_rays_give_p1(self):
        fan = faces_closure(p1_datum(), [ColoredCone(Cone(1, [(1,)])),
                                         ColoredCone(Cone(1, [(-1,)]))])
        assert fans_equal(fan, p1_fan())

    def test_cf2_violation_raises_with_witness(self):
        d = SphericalDatum(2, full_plane())
        with pytest.raises(FanAxiomError) as exc:
            faces_closure(d, [ColoredCone(Cone(2, [(1, 0), (0, 1)])),
                              ColoredCone(Cone(2, [(1, 1), (1, -1)]))])
        assert exc.value.witness is not None

    def test_closure_output_validates(self):
        rng = random.Random(131)
        count = 0
        while count < 10:
            d = random_datum(rng)
            cc = random_valid_colored_cone(rng, d)
            if cc is None:
                continue
            count += 1
            fan = faces_closure(d, [cc])
            assert validate_colored_fan(d, fan).ok

    def test_toric_reduction(self):
        # with no colors and V = Q^n, a classical fan is a colored fan
        d = SphericalDatum(2, full_plane())
        quadrants = [Cone(2, [(1, 0), (0, 1)]), Cone(2, [(0, 1), (-1, 0)]),
                     Cone(2, [(-1, 0), (0, -1)]), Cone(2, [(0, -1), (1, 0)])]
        fan = faces_closure(d, [ColoredCone(c) for c in quadrants])
        rep = validate_colored_fan(d, fan)
        assert rep.ok
        assert orbit_count(fan) == 9  # 4 quadrants + 4 rays + origin
