import io
import json
import re
import subprocess
import sys

import pytest

from oodset.cli import run

from conftest import ERRORS, FIXTURES, VALID

CANON = str(FIXTURES / "valid" / "canonical.ood")
CYCLE = str(FIXTURES / "valid" / "cycle3.ood")


def oodset(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


class TestExitCodes:
    def test_canonical_check(self):
        code, out, _ = oodset("check", CANON)
        assert code == 0
        assert out.rstrip().endswith("0 errors, 0 warnings")

    def test_cycle(self):
        code, out, _ = oodset("check", CYCLE)
        assert code == 1
        assert "InheritanceCycle" in out and "M.P.c1, M.P.c2, M.P.c3" in out

    def test_unknown_command(self):
        code, out, err = oodset("frobnicate", CANON)
        assert code == 3 and "usage:" in err and out == ""

    def test_missing_arguments(self):
        assert oodset()[0] == 3
        assert oodset("check", CANON, "--format", "xml")[0] == 3
        assert oodset("check", CANON, "--max-size", "0")[0] == 3

    def test_flags_validated_before_read(self, tmp_path):
        missing = str(tmp_path / "nope.ood")
        assert oodset("powerset", missing)[0] == 3
        assert oodset("check", missing)[0] == 2

    @pytest.mark.parametrize("path", ERRORS, ids=lambda p: p.name)
    def test_bad_input(self, path):
        code, out, err = oodset("check", str(path))
        assert code == 2 and out == ""
        assert path.name[:4].upper() in err
        assert "Traceback" not in err

    def test_not_utf8(self, tmp_path):
        bad = tmp_path / "bad.ood"
        bad.write_bytes(b"model X { \xff }")
        code, _, err = oodset("check", str(bad))
        assert code == 2 and "UTF-8" in err

    def test_unknown_scope(self):
        code, _, err = oodset("check", CANON, "--scope", "M.Zed")
        assert code == 3 and "M.Zed" in err

    def test_warnings_only_exit_zero(self):
        code, out, _ = oodset("check", str(FIXTURES / "valid" / "self_assoc.ood"))
        assert code == 0 and "0 errors, 1 warnings" in out

    @pytest.mark.parametrize("path", VALID, ids=lambda p: p.name)
    def test_exit_one_iff_errors(self, path):
        code, out, _ = oodset("check", str(path), "--format", "json")
        doc = json.loads(out)
        has_error = any(v["severity"] == "Error" for v in doc["violations"])
        assert code == (1 if has_error else 0)


class TestJson:
    def test_check_schema(self):
        _, out, _ = oodset("check", CANON, "--format", "json")
        doc = json.loads(out)
        assert list(doc)[:3] == ["tool", "version", "command"]
        assert doc["tool"] == "oodset" and doc["command"] == "check"
        assert doc["violations"] == []
        assert doc["table1"] == {
            "inheritance": {"reflexive": False, "symmetric": False, "transitive": True, "conforms": True},
            "association": {"reflexive": False, "symmetric": True, "transitive": False, "conforms": True},
            "aggregation": {"reflexive": False, "symmetric": False, "transitive": False, "conforms": True},
        }

    def test_metrics(self):
        _, out, _ = oodset("metrics", CANON, "--format", "json")
        doc = json.loads(out)
        classes = doc["metrics"]["classes"]
        assert len(classes) == 3
        assert classes[0] == {"name": "M.P.c1", "coupling": 2, "cohesion_ratio": 2 / 3, "lcom": 0}
        assert doc["metrics"]["packages"][0]["connectivity_index"] == 1.0

    def test_violation_fields(self):
        _, out, _ = oodset("check", CYCLE, "--format", "json")
        (v,) = json.loads(out)["violations"]
        assert list(v) == ["kind", "severity", "subjects", "line", "column", "message"]
        assert v["kind"] == "InheritanceCycle" and v["subjects"] == ["M.P.c1", "M.P.c2", "M.P.c3"]

    def test_empty_model(self):
        for cmd in ("check", "metrics", "relations"):
            code, out, _ = oodset(cmd, str(FIXTURES / "valid" / "empty_model.ood"), "--format", "json")
            doc = json.loads(out)
            assert code == 0 and doc["violations"] == []
        assert doc["relations"]["universe"] == []

    @pytest.mark.parametrize("cmd", ["check", "metrics", "relations"])
    def test_round_trip_and_determinism(self, cmd):
        outs = [oodset(cmd, CANON, "--format", "json")[1] for _ in range(3)]
        assert outs[0] == outs[1] == outs[2]
        assert json.dumps(json.loads(outs[0]), indent=2, ensure_ascii=False) + "\n" == outs[0]

    def test_json_model_import(self, tmp_path):
        _, out, _ = oodset("check", CANON, "--format", "json")
        exported = tmp_path / "canon.json"
        exported.write_text(out)
        code, again, _ = oodset("check", str(exported), "--format", "json")
        assert code == 0
        assert json.loads(again)["model"] == json.loads(out)["model"]
        assert json.loads(again)["table1"] == json.loads(out)["table1"]

    def test_output_file(self, tmp_path):
        target = tmp_path / "r.json"
        code, out, _ = oodset("metrics", CANON, "--format", "json", "-o", str(target))
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["command"] == "metrics"


class TestRelationsCommand:
    def test_direct_vs_closure(self):
        _, direct, _ = oodset("relations", CANON, "--format", "json", "--kind", "inherits")
        _, closed, _ = oodset("relations", CANON, "--format", "json", "--kind", "inherits", "--closure")
        d, c = json.loads(direct)["relations"], json.loads(closed)["relations"]
        assert set(d) == {"universe", "inherits"}
        assert d["inherits"] == [["M.P.c1", "M.P.c2"], ["M.P.c2", "M.P.c3"]]
        assert c["inherits"] == [["M.P.c1", "M.P.c2"], ["M.P.c1", "M.P.c3"], ["M.P.c2", "M.P.c3"]]

    def test_text(self):
        code, out, _ = oodset("relations", CANON)
        assert code == 0 and "associates: (M.P.c1, M.P.c3), (M.P.c3, M.P.c1)" in out


class TestPowersetCommand:
    def test_package(self):
        _, out, _ = oodset("powerset", CANON, "--scope", "M.P", "--format", "json")
        ps = json.loads(out)["powerset"]
        assert ps["count"] == 8 and ps["subsets"][0] == [] and ps["subsets"][-1] == [
            "M.P.c1", "M.P.c2", "M.P.c3"]

    def test_guard(self):
        code, _, err = oodset("powerset", CANON, "--scope", "M.P", "--max-size", "2")
        assert code == 3 and "max-size" in err

    def test_needs_package_scope(self):
        assert oodset("powerset", CANON, "--scope", "M")[0] == 3


class TestGraph:
    def test_canonical(self):
        code, dot, _ = oodset("graph", CANON)
        assert code == 0
        nodes = re.findall(r'^\s+"[^"]+";$', dot, re.M)
        edges = re.findall(r'^\s+"[^"]+" -> ', dot, re.M)
        assert len(nodes) == 3 and len(edges) == 4
        assert '"M.P.c2" -> "M.P.c1" [style=solid, arrowhead=empty];' in dot
        assert '"M.P.c1" -> "M.P.c3" [dir=none];' in dot
        assert '"M.P.c2" -> "M.P.c3" [style=dashed, arrowhead=vee];' in dot
        assert "(super, sub)" in dot

    def test_empty(self):
        _, dot, _ = oodset("graph", str(FIXTURES / "valid" / "empty_model.ood"))
        assert dot == "digraph design {\n}\n"

    def test_aggregation_diamond(self):
        _, dot, _ = oodset("graph", str(FIXTURES / "valid" / "aggregation.ood"))
        assert '"M.P.Wheel" -> "M.P.Car" [arrowhead=odiamond];' in dot

    def test_dot_file(self, tmp_path):
        target = tmp_path / "g.dot"
        code, out, _ = oodset("graph", CANON, "--dot", str(target))
        assert code == 0
        assert target.read_text().startswith("digraph design {")
        assert "0 errors, 0 warnings" in out

    def test_stable_and_one_node_per_class(self):
        path = str(FIXTURES / "valid" / "multi_package.ood")
        dots = [oodset("graph", path)[1] for _ in range(3)]
        assert dots[0] == dots[1] == dots[2]
        assert len(re.findall(r'^\s+"[^"]+";$', dots[0], re.M)) == 5

    def test_scope_and_kind(self):
        path = str(FIXTURES / "valid" / "multi_package.ood")
        _, dot, _ = oodset("graph", path, "--scope", "Core.Domain", "--kind", "aggregates")
        assert len(re.findall(r'^\s+"[^"]+";$', dot, re.M)) == 3
        assert dot.count("->") == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "oodset", "check", CANON],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "0 errors, 0 warnings" in proc.stdout
