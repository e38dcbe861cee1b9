import json
import subprocess
import sys

import pytest

from snakepoly.cli import main
from snakepoly.emptiness import expected_empty
from snakepoly.errors import DomainError
from snakepoly.snake import parse_raw_snake_graph
from snakepoly.surface import MarkedSurface, TaggedArc, TaggedTriangulation
from snakepoly.verify import (COUNTEREXAMPLES, check_instance, load_counterexample, run_corpus,
                              run_counterexample, support_geometry)


def lines(text):
    return [json.loads(l) for l in text.splitlines() if l.strip()]


def test_support_geometry_original_coordinates():
    count, missing, inner = support_geometry([(5, 0, 1), (5, 2, 1)])
    assert count == 3 and missing == [(5, 1, 1)] and inner == [(5, 1, 1)]
    count, missing, inner = support_geometry([(1, 0), (0, 1), (1, 1)])
    assert (count, missing, inner) == (3, [], [])


def test_check_instance_and_json():
    S = MarkedSurface.polygon(6)
    T = TaggedTriangulation.parse(S, "c0_2,c0_3,c0_4")
    v = check_instance(S, T, TaggedArc.parse(S, "c1_5"), "nf")
    assert v.saturated and v.ok
    d = v.to_json(timing=False)
    assert "elapsed" not in d and d["ok"] is True and d["matching_count"] == 4
    with pytest.raises(DomainError):
        check_instance(MarkedSurface.polygon(7), T, TaggedArc.parse(S, "c1_5"), "bd")


def test_emptiness_predicate_examples():
    S = MarkedSurface.polygon(6)
    zigzag = TaggedTriangulation.parse(S, "c0_2,c0_3,c3_5")
    g = TaggedArc.parse(S, "c1_4")
    # crosses all three arcs, and the first and third share no endpoint
    assert not expected_empty(zigzag, g, "nf")
    assert not check_instance(S, zigzag, g, "nf").empty
    assert expected_empty(zigzag, g, "bd") and expected_empty(zigzag, g, "pc")
    fan = TaggedTriangulation.parse(S, "c0_2,c2_4,c0_4")
    assert expected_empty(fan, TaggedArc.parse(S, "c1_5"), "nf")
    P = MarkedSurface.punctured(4)
    with pytest.raises(DomainError):
        expected_empty(TaggedTriangulation.parse(P, "r0,r1,r2,r3"), TaggedArc.parse(P, "c0_2L"), "nf")
    assert expected_empty(TaggedTriangulation.parse(P, "r0,r1,r2,r3"), TaggedArc.parse(P, "r0n"), "bd")


def test_run_corpus_is_deterministic():
    a = run_corpus({"surfaces": ["polygon:5", {"surface": "punctured:3", "modes": ["bd"]}]})
    b = run_corpus({"surfaces": ["punctured:3"], "modes": ["bd"]})
    assert a["summary"]["failures"] == 0
    assert a["summary"]["instances"] == 45 + 168 // 2
    keys = [(v.surface, v.triangulation, v.gamma, v.mode) for v in a["verdicts"]]
    assert keys == sorted(keys)
    assert [v.to_json(False) for v in b["verdicts"]] == \
        [v.to_json(False) for v in a["verdicts"] if v.surface == "punctured:3"]
    with pytest.raises(DomainError):
        run_corpus({"surfaces": ["polygon:5"], "modes": ["zz"]})


@pytest.mark.parametrize("name", COUNTEREXAMPLES)
def test_bundled_counterexamples_are_unsaturated(name):
    G = load_counterexample(name)
    v = run_counterexample(G)
    assert not v.saturated and v.witnesses
    assert G.label_order is not None


def test_unknown_counterexample():
    with pytest.raises(DomainError):
        load_counterexample("klein_bottle")


def test_raw_graph_with_no_witnesses():
    G = parse_raw_snake_graph({"shape": "E", "tiles": [
        {"square": "p", "S": "a", "E": "q", "N": "c", "W": "d"},
        {"square": "q", "S": "e", "E": "f", "N": "g", "W": "q"}], "boundary_labels": ["a", "c", "d", "e", "f", "g"]})
    assert run_counterexample(G).saturated


# ---------------------------------------------------------------------------
# command line


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_listing(capsys):
    code, out, _ = run(capsys, "arcs", "--surface", "punctured:4")
    assert code == 0 and lines(out)[-1] == {"summary": {"arcs": 16}}
    code, out, _ = run(capsys, "triangulations", "--surface", "polygon:7")
    assert code == 0 and lines(out)[-1] == {"summary": {"triangulations": 42}}


def test_cli_snake_expand_newton(capsys):
    args = ["--surface", "polygon:6", "--triangulation", "c0_2,c0_3,c0_4", "--arc", "c1_5"]
    code, out, _ = run(capsys, "snake", *args)
    assert code == 0 and len(lines(out)[0]["snake_graph"]["tiles"]) == 3
    code, out, _ = run(capsys, "expand", *args, "--mode", "pc")
    rec = lines(out)[0]
    assert code == 0 and rec["mode"] == "pc" and len(rec["terms"]) == 4
    code, out, _ = run(capsys, "newton", *args, "--mode", "nf")
    rec = lines(out)[0]
    assert code == 0 and rec["saturated"] and len(rec["lattice_points"]) == 4


def test_cli_notched_snake(capsys):
    code, out, _ = run(capsys, "snake", "--surface", "punctured:4", "--triangulation", "r0,r1,r2,r3",
                       "--arc", "r0n")
    assert code == 0 and lines(out)[0]["arc"] == "l0"


def test_cli_polytope(capsys, tmp_path):
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"generators": [["0", "0"], ["0", "2"]]}))
    code, out, _ = run(capsys, "polytope", "--raw", str(f))
    rec = lines(out)[0]
    assert code == 0 and rec["lattice_points"] == [[0, 0], [0, 1], [0, 2]] and not rec["empty"]


def test_cli_check_and_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "check", "--surface", "punctured:4", "--triangulation", "r0,r1,r2,r3",
                       "--arc", "c0_2L", "--mode", "pc")
    assert code == 0 and lines(out)[0]["ok"]
    out_file = tmp_path / "v.jsonl"
    code, _, err = run(capsys, "verify", "--surface", "polygon:5", "--surface", "punctured:3",
                       "--modes", "bd", "--out", str(out_file))
    recs = lines(out_file.read_text())
    assert code == 0 and recs[-1]["summary"]["instances"] == 15 + 84
    assert "elapsed" not in recs[0]
    code, _, err = run(capsys, "verify", "--surface", "polygon:9", "--modes", "bd", "--out", str(out_file))
    assert code == 0 and "warning" in err


def test_cli_counterexample(capsys, tmp_path):
    code, out, _ = run(capsys, "counterexample", "--name", "annulus")
    rec = lines(out)[0]
    assert code == 0 and [1, 2, 1, 1, 1, 0, 0, 1] in rec["witnesses"]
    raw = tmp_path / "g.json"
    raw.write_text(json.dumps(load_counterexample("punctured_torus").to_json()))
    code, out, _ = run(capsys, "counterexample", "--raw", str(raw))
    rec = lines(out)[0]
    assert code == 0 and rec["parity"]["all_even"] and rec["parity"]["odd_midpoints"]


def test_cli_explain(capsys):
    code, out, _ = run(capsys, "explain", "--surface", "punctured:3", "--triangulation", "c0_2L,r0,r2",
                       "--arc", "r1n")
    rec = json.loads(out)
    assert code == 0 and set(rec["verdicts"]) == {"bd", "pc"}


def test_cli_usage_errors(capsys):
    assert run(capsys, "expand", "--surface", "polygon:6")[0] == 2
    assert run(capsys, "arcs")[0] == 2
    assert run(capsys, "arcs", "--surface", "cube:3")[0] == 2
    code, _, err = run(capsys, "expand", "--surface", "polygon:6", "--triangulation", "c0_2", "--arc", "c1_3")
    assert code == 2 and "error" in err
    assert run(capsys, "counterexample")[0] == 2
    assert run(capsys, "polytope", "--raw", "/nonexistent.json")[0] == 2
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "snakepoly.cli", "arcs", "--surface", "polygon:5"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and '"arcs": 5' in res.stdout
