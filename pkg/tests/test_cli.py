import json

from efc.cli import main
from efc.lp.textio import read_lp
from efc.formulations import graphic_independence_ef
from efc.graph import read_graph

from conftest import corpus


def test_build_writes_lp(tmp_path, capsys):
    out = tmp_path / "k4.lp"
    assert main(["build", "--kind", "graphic", "--input", corpus("k4.graph"), "--out", str(out)]) == 0
    assert "level=0 part=k4" in capsys.readouterr().out
    ef = read_lp(out.read_text())
    assert ef.lp == graphic_independence_ef(read_graph(corpus("k4.graph"))).lp


def test_verify_pass_and_json(capsys):
    assert main(["verify", "--input", corpus("k4.graph"), "--trials", "10", "--format", "json-lines"]) == 0
    recs = [json.loads(x) for x in capsys.readouterr().out.splitlines()]
    assert recs[-1]["ok"] is True


def test_verify_cap_is_usage_error(capsys):
    assert main(["verify", "--input", corpus("k5.graph"), "--cap", "5"]) == 2
    assert "TooLarge" in capsys.readouterr().err


def test_verify_failure_exit_code(tmp_path, capsys):
    lp = tmp_path / "k4.lp"
    assert main(["build", "--input", corpus("k4.graph"), "--out", str(lp)]) == 0
    text = "".join(ln for ln in lp.read_text().splitlines(True) if not ln.startswith("row ctotal "))
    broken = tmp_path / "broken.lp"
    broken.write_text(text)
    assert main(["verify", "--input", corpus("k4.graph"), "--lp", str(lp), "--trials", "10"]) == 0
    capsys.readouterr()
    assert main(["verify", "--input", corpus("k4.graph"), "--lp", str(broken), "--trials", "10"]) == 1
    assert "status=fail" in capsys.readouterr().out


def test_invalid_tree_is_input_error(tmp_path, capsys):
    bad = tmp_path / "bad.dectree"
    bad.write_text("node A graphic %s\nnode B graphic %s\nedge A B 12 13 34\n"
                   % (corpus("k5.graph"), corpus("k5_b.graph")))
    assert main(["verify", "--input", str(bad)]) == 2
    assert "InvalidTree" in capsys.readouterr().err


def test_decompose(capsys):
    assert main(["decompose", "--input", corpus("two_k5.dectree")]) == 0
    out = capsys.readouterr().out
    assert "centroid=A" in out and "leaf=B" in out


def test_stats_phi_count(capsys):
    assert main(["stats", "--input", corpus("k5.graph"), "--kind", "graphic"]) == 0
    out = capsys.readouterr().out
    assert "phi_vars=80 expected=80 match" in out


def test_circuit_dominant_verb(capsys):
    assert main(["circuit-dominant", "--kind", "r10", "--verify", "--trials", "5"]) == 0
    assert "ok=yes" in capsys.readouterr().out


def test_usage_errors(capsys):
    assert main(["nonsense"]) == 2
    assert main(["stats", "--input", "/no/such/file"]) == 2
    assert main(["decompose", "--input", corpus("k4.graph")]) == 2
