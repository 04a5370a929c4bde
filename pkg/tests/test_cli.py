import io
import json
from pathlib import Path

from repgraph.cli import run
from repgraph.io import Source, rep_from_json
from repgraph.fixtures import l23_rep
from repgraph.representation import isomorphism

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def cli(*argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], out)
    return code, json.loads(out.getvalue())


def test_act_on_l23_rep():
    code, body = cli("act", FIX / "l23_rep.json", "--vertex", "v_5", "--expr", "e[3]")
    assert code == 0 and body["result"] == {"v_9": "1"}
    code, body = cli("act", FIX / "l23_rep.json", "--vertex", "v_6", "--expr", "f[2]*")
    assert body["result"] == {"v_4": "1"}


def test_act_on_rational_efg():
    code, body = cli("act", FIX / "rational_efg.json", "--vertex", "v_9", "--expr", "e[1] g[1] e[1] f[1]*")
    assert body["result"] == {"v_6": "1"}


def test_act_reports_collapsing_monomials():
    code, body = cli("act", FIX / "bipartite_double.json", "--vertex", "u_1", "--expr", "e[1] e[1] + u")
    assert code == 0
    assert body["result"] == {"u_1": "1"}
    assert body["warnings"]


def test_decisions_and_exit_codes():
    assert cli("simple", FIX / "F7.json") == (0, {"irreducible": True})
    assert cli("simple", FIX / "F3.json")[0] == 1
    code, body = cli("simple", FIX / "irrational_efef2.json")
    assert code == 1 and body["irreducible"] is None and "undecided" in body
    assert cli("quotient-of", FIX / "F3.json", FIX / "F4.json") == (1, {"quotient": False})
    assert cli("quotient-of", FIX / "F1.json", FIX / "F7.json")[0] == 0
    assert cli("equivalent", FIX / "rational_efg.json", FIX / "irrational_efef2.json")[0] == 1
    assert cli("equivalent", FIX / "F1.json", FIX / "F7.json")[0] == 0


def test_relations_over_f2():
    code, body = cli("relations", FIX / "F1.json", "--field", "fp:2")
    assert code == 0 and body["ok"] and body["field"] == "fp:2"


def test_graded():
    code, body = cli("graded", FIX / "rational_efg.json")
    assert code == 1 and body["witness"] == "e[1] f[1] g[1]"
    code, body = cli("graded", FIX / "F2.json")
    assert code == 0 and body["dimension"] == 2


def test_validate_detects_kinds():
    assert cli("validate", FIX / "l22.json")[1]["kind"] == "graph"
    assert cli("validate", FIX / "F5.json") == (0, {"kind": "representation graph", "ok": True})
    assert cli("validate", FIX / "char2_table.json")[0] == 0


def test_minimize_and_quotient(tmp_path):
    code, body = cli("minimize", FIX / "F5.json")
    assert code == 0 and body["vertices"] == 1
    code, body = cli("quotient", FIX / "bipartite_double.json", "--partition", '[["u_1","u_2"],["v_1","v_2"]]')
    assert code == 0 and body["admissible"]
    code, body = cli("quotient", FIX / "bipartite_double.json", "--partition", '[["u_1","v_1"],["u_2"],["v_2"]]')
    assert code == 1 and body["admissible"] is False


def test_universal():
    code, body = cli("universal", FIX / "F7.json", "--root", "u", "--depth", 2)
    assert code == 0 and body["vertices"] == 17 and body["projection_is_immersion"]


def test_cover_check(tmp_path):
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"vertices": {"v": "v"}, "edges": {"e": "e", "f": "f"}}))
    assert cli("cover-check", FIX / "l22.json", FIX / "l22.json", "--map", m) == (
        0, {"covering": True, "immersion": True})


def test_chen_commands():
    code, body = cli("chen-rational", FIX / "three_loops.json", "--cycle", "e,f,g", "--depth", 1)
    assert code == 0 and body["vertices"] == 9
    assert body["dictionary"]["v1"] == {"prefix": [], "cycle": ["e", "f", "g"]}
    code, body = cli("chen-sink", FIX / "sink_example.json", "--sink", "u", "--depth", 1)
    assert body["dictionary"]["v:a"] == {"path": ["a"], "sink": "u"}
    code, body = cli("chen-irrational", FIX / "three_loops.json", "--prefix", "e f e f f", "--depth", 1)
    assert body["vertices"] == 17
    code, body = cli("chen-oracle", FIX / "three_loops.json", "--cycle", "e,f,g",
                     "--depth", 2, "--budget", 3)
    assert code == 0 and body["mismatch_count"] == 0


def test_chen_errors():
    code, body = cli("chen-rational", FIX / "three_loops.json", "--cycle", "e,e", "--depth", 1)
    assert code == 2 and body["type"] == "NotSimpleCycle"
    code, body = cli("chen-rational", FIX / "l22.json", "--cycle", "e", "--depth", 1)
    assert body["type"] == "NotWeightOne"


def test_branching_commands():
    code, body = cli("branch-interval", FIX / "l23.json")
    assert code == 0 and body["valid"] == {"ok": True} and body["relations"]["ok"]
    code, body = cli("branch-from", FIX / "l23_rep.json")
    assert code == 0
    code, body = cli("branch-act", FIX / "three_loops.json", "--point", "1/6", "--expr", "e[1]")
    assert body["result"] == {"1/2": "1"}
    code, body = cli("branch-act", FIX / "l23_rep.json", "--point", "v_5", "--expr", "e[3]")
    assert body["result"] == {"v_9": "1"}


def test_reconstruct_and_char2():
    code, body = cli("reconstruct", "--table", FIX / "char2_table.json")
    assert code == 1 and body["rejection"] == "AssumptionIVViolation"
    code, body = cli("reconstruct", "--table", FIX / "char2_table.json", "--field", "q")
    assert code == 1 and body["rejection"] == "RelationViolation"
    code, body = cli("char2-demo")
    assert code == 0 and body["ok"]


def test_input_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "vertices": ["v"],\n  "edges": [{"id": "e", "src": "v", "dst": "w"}]\n}\n')
    code, body = cli("validate", bad)
    assert code == 2
    assert (body["file"], body["line"], body["field"], body["type"]) == (str(bad), 3, "edges", "MalformedGraph")
    code, body = cli("act", FIX / "F7.json", "--vertex", "u", "--expr", "1/2*e[1]", "--field", "fp:2")
    assert code == 2 and body["type"] == "ParseError"
    code, body = cli("act", FIX / "F7.json", "--vertex", "nope", "--expr", "e[1]")
    assert code == 2 and body["field"] == "vertex"
    code, body = cli("validate", tmp_path / "missing.json")
    assert code == 2 and body["type"] == "InputError"
    code, body = cli("frobnicate")
    assert code == 2 and body["type"] == "UsageError"


def test_export_dot_sidecar_round_trip(tmp_path):
    out = tmp_path / "w.dot"
    code, body = cli("export-dot", FIX / "l23_rep.json", "--out", out, "--name", "W")
    assert code == 0
    dot = out.read_text()
    assert dot.startswith('digraph "W" {') and "style=dashed" in dot
    text = (tmp_path / "w.dot.json").read_text()
    F = rep_from_json(json.loads(text), Source.parse(text))
    assert F == l23_rep()
    assert isomorphism(F, l23_rep()) is not None


def test_output_is_deterministic(tmp_path):
    a = io.StringIO()
    b = io.StringIO()
    run(["branch-interval", str(FIX / "l22.json"), "--seed", "4"], a)
    run(["branch-interval", str(FIX / "l22.json"), "--seed", "4"], b)
    assert a.getvalue() == b.getvalue()
    run(["export-dot", str(FIX / "F2.json"), "--out", str(tmp_path / "1.dot")], io.StringIO())
    run(["export-dot", str(FIX / "F2.json"), "--out", str(tmp_path / "2.dot")], io.StringIO())
    assert (tmp_path / "1.dot").read_text() == (tmp_path / "2.dot").read_text()
