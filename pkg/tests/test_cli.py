import json

import pytest

from sphfan.cli import main

DATUM = """
{"kind": "datum", "version": "1",
 "payload": {"rank": 1,
             "valuation_cone": {"generators": [["1"], ["-1"]]},
             "colors": []}}
"""

P1_FAN = """
{"kind": "fan", "version": "1",
 "payload": {"cones": [{"generators": [], "colors": []},
                       {"generators": [["1"]], "colors": []},
                       {"generators": [["-1"]], "colors": []}]}}
"""

HALF_FAN = """
{"kind": "fan", "version": "1",
 "payload": {"cones": [{"generators": [["1"]], "colors": []}]}}
"""

NEGATION = """
{"kind": "action", "version": "1",
 "payload": {"elements": [{"name": "id", "matrix": [[1]], "color_perm": {}},
                          {"name": "sigma", "matrix": [[-1]], "color_perm": {}}]}}
"""

BAD_ACTION = """
{"kind": "action", "version": "1",
 "payload": {"elements": [{"name": "id", "matrix": [[1]], "color_perm": {}},
                          {"name": "g", "matrix": [[2]], "color_perm": {}}]}}
"""

PLANE_DATUM = """
{"kind": "datum", "version": "1",
 "payload": {"rank": 2,
             "valuation_cone": {"generators": [["1", "0"], ["-1", "0"],
                                               ["0", "1"], ["0", "-1"]]},
             "colors": []}}
"""

QUAD_FAN = """
{"kind": "fan", "version": "1",
 "payload": {"cones": [{"generators": [], "colors": []},
                       {"generators": [["1", "0"]], "colors": []},
                       {"generators": [["0", "1"]], "colors": []},
                       {"generators": [["1", "0"], ["0", "1"]], "colors": []}]}}
"""

PROJECTION = """
{"kind": "morphism", "version": "1",
 "payload": {"matrix": [["1", "0"]], "domain_colors": [], "color_map": {}}}
"""


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestValidate:
    def test_p1_passes(self, files, capsys):
        code, out = run(capsys, "validate", files("d.json", DATUM),
                        files("f.json", P1_FAN), "--strict")
        assert code == 0
        report = json.loads(out)
        assert report["overall"] == "pass"
        assert any(c["axiom"] == "SC" for c in report["checks"])

    def test_half_fan_fails_cf1(self, files, capsys):
        code, out = run(capsys, "validate", files("d.json", DATUM),
                        files("f.json", HALF_FAN))
        assert code == 1
        report = json.loads(out)
        assert any(c["axiom"] == "CF1" and c["result"] == "fail"
                   for c in report["checks"])

    def test_autocomplete_fixes_cf1(self, files, capsys):
        code, out = run(capsys, "validate", files("d.json", DATUM),
                        files("f.json", HALF_FAN), "--autocomplete")
        assert code == 0

    def test_autocomplete_is_idempotent_on_closed_fan(self, files, capsys):
        code1, out1 = run(capsys, "validate", files("d.json", DATUM),
                          files("f.json", P1_FAN), "--autocomplete")
        code2, out2 = run(capsys, "validate", files("d2.json", DATUM),
                          files("f2.json", P1_FAN))
        assert code1 == code2 == 0
        assert out1 == out2

    def test_parse_error_exits_2(self, files, capsys):
        code, _ = run(capsys, "validate", files("d.json", DATUM),
                      files("f.json", "{bad"))
        assert code == 2

    def test_missing_file_exits_2(self, files, capsys):
        code, _ = run(capsys, "validate", files("d.json", DATUM),
                      "/nonexistent/fan.json")
        assert code == 2

    def test_reports_are_deterministic(self, files, capsys):
        d = files("d.json", DATUM)
        f = files("f.json", P1_FAN)
        _, out1 = run(capsys, "validate", d, f)
        _, out2 = run(capsys, "validate", d, f)
        assert out1 == out2

    def test_oracle_flag(self, files, capsys):
        code, _ = run(capsys, "--oracle", "validate", files("d.json", DATUM),
                      files("f.json", P1_FAN))
        assert code == 0


class TestFaces:
    def test_lists_faces_sorted_by_dimension(self, files, capsys):
        code, out = run(capsys, "faces", files("d.json", PLANE_DATUM),
                        files("f.json", QUAD_FAN), "--cone", "3")
        assert code == 0
        report = json.loads(out)
        dims = [f["dim"] for f in report["faces"]]
        assert dims == sorted(dims)
        assert len(report["faces"]) == 4

    def test_invalid_cone_exits_1(self, files, capsys):
        datum = DATUM.replace('["1"], ["-1"]', '["1"]')
        fan = HALF_FAN.replace('[["1"]]', '[["-1"]]')
        code, out = run(capsys, "faces", files("d.json", datum),
                        files("f.json", fan))
        assert code == 1
        report = json.loads(out)
        assert any(c["result"] == "fail" for c in report["checks"])

    def test_index_out_of_range(self, files, capsys):
        code, _ = run(capsys, "faces", files("d.json", DATUM),
                      files("f.json", P1_FAN), "--cone", "9")
        assert code == 2


class TestInvariant:
    def test_p1_invariant(self, files, capsys):
        code, out = run(capsys, "invariant", files("d.json", DATUM),
                        files("f.json", P1_FAN), files("a.json", NEGATION))
        assert code == 0
        report = json.loads(out)
        assert report["overall"] == "pass"

    def test_half_fan_not_invariant(self, files, capsys):
        code, out = run(capsys, "invariant", files("d.json", DATUM),
                        files("f.json", HALF_FAN), files("a.json", NEGATION))
        assert code == 1
        report = json.loads(out)
        assert any(c["axiom"] == "INV" and c["result"] == "fail"
                   for c in report["checks"])

    def test_closure_emits_p1_fan(self, files, capsys):
        code, out = run(capsys, "invariant", files("d.json", DATUM),
                        files("f.json", HALF_FAN), files("a.json", NEGATION),
                        "--closure")
        doc = json.loads(out)
        assert doc["kind"] == "fan"
        assert len(doc["payload"]["cones"]) == 3

    def test_bad_action_fails_act(self, files, capsys):
        code, out = run(capsys, "invariant", files("d.json", DATUM),
                        files("f.json", P1_FAN), files("a.json", BAD_ACTION))
        assert code == 1
        report = json.loads(out)
        assert any(c["axiom"] == "ACT" and c["result"] == "fail"
                   for c in report["checks"])


class TestMorphism:
    def test_identity(self, files, capsys):
        ident = PROJECTION.replace('[["1", "0"]]', '[["1", "0"], ["0", "1"]]')
        code, out = run(capsys, "morphism", files("sd.json", PLANE_DATUM),
                        files("td.json", PLANE_DATUM), files("m.json", ident),
                        files("sf.json", QUAD_FAN), files("tf.json", QUAD_FAN))
        assert code == 0

    def test_projection_onto_p1(self, files, capsys):
        code, out = run(capsys, "morphism", files("sd.json", PLANE_DATUM),
                        files("td.json", DATUM), files("m.json", PROJECTION),
                        files("sf.json", QUAD_FAN), files("tf.json", P1_FAN))
        assert code == 0
        report = json.loads(out)
        assert all(c["result"] == "pass" for c in report["checks"])

    def test_projection_onto_trivial_fan_fails(self, files, capsys):
        trivial = '{"kind": "fan", "version": "1", "payload": {"cones": [{"generators": [], "colors": []}]}}'
        code, out = run(capsys, "morphism", files("sd.json", PLANE_DATUM),
                        files("td.json", DATUM), files("m.json", PROJECTION),
                        files("sf.json", QUAD_FAN), files("tf.json", trivial))
        assert code == 1


class TestMaxDim:
    def test_rank_cap(self, files, capsys, monkeypatch):
        monkeypatch.setenv("SPHFAN_MAX_DIM", "1")
        code, _ = run(capsys, "validate", files("d.json", PLANE_DATUM),
                      files("f.json", QUAD_FAN))
        assert code == 2

    def test_default_cap_allows_rank_2(self, files, capsys, monkeypatch):
        monkeypatch.delenv("SPHFAN_MAX_DIM", raising=False)
        code, _ = run(capsys, "validate", files("d.json", PLANE_DATUM),
                      files("f.json", QUAD_FAN))
        assert code == 0
