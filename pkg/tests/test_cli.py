import json
import subprocess
import sys

import pytest

from spinecert.cli import main, parse_graph, render_graph
from spinecert.digraph import make_digraph
from spinecert.errors import ParseError
from spinecert.harness import GenParams, gen_instance
from spinecert.recognition import SpinePartition

C5_TEXT = "n 5\na 0 1\na 1 2\na 2 3\na 3 4\na 4 0\n"


@pytest.fixture
def c5_file(tmp_path):
    path = tmp_path / "c5.g"
    path.write_text(C5_TEXT)
    return path


def test_parse_c5(c5):
    D, spine = parse_graph(C5_TEXT)
    assert D == c5 and spine is None


def test_parse_with_spine_and_comments():
    D, spine = parse_graph("# tiny\nn 3\n\na 0 1   # arc\nx 0 1\ny 2\n")
    assert D.arcs == {(0, 1)}
    assert spine == SpinePartition.of((0, 1), {2})
    _, implied = parse_graph("n 3\na 0 1\nx 0 1\n")
    assert implied == spine


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("n 2\na 0 0\n", 2, "loop"),
        ("n 2\na 0 1\na 0 1\n", 3, "duplicate"),
        ("a 0 1\n", 1, "first directive"),
        ("n 2\na 0 x\n", 2, "decimal"),
        ("n 2\na 0 5\n", 2, "outside"),
        ("n 2\nz 1\n", 2, "unknown"),
        ("n 3\na 0 1\nx 0 2\ny 1\n", 4, "invalid spine"),
        ("n 3\na 0 1\na 1 2\nx 0\ny 1 2\n", 5, "not stable"),
    ],
)
def test_parse_errors(text, line, fragment):
    with pytest.raises(ParseError) as err:
        parse_graph(text)
    assert err.value.line == line
    assert fragment in str(err.value)


def test_parse_missing_n():
    with pytest.raises(ParseError):
        parse_graph("# nothing\n")


def test_render_round_trip():
    for seed in range(50):
        kind = ("spine", "split", "general", "tournament", "transitive-acyclic")[seed % 5]
        params = GenParams(kind, n=6, max_x=5, max_y=4, density=0.4, seed=seed)
        inst = gen_instance(params)
        D, spine = parse_graph(render_graph(inst.digraph, inst.spine))
        assert D.arcs == inst.digraph.arcs and D.n == inst.digraph.n
        assert spine == inst.spine


def test_certify_and_verify(c5_file, tmp_path, capsys):
    cert_path = tmp_path / "cert.json"
    assert main(["certify", "-i", str(c5_file), "-k", "1", "-o", str(cert_path)]) == 0
    cert = json.loads(cert_path.read_text())
    assert (cert["case"], cert["k_norm"], cert["weight"]) == ("long-path", 1, 1)
    assert cert["spine_source"] == "found"
    assert main(["verify", "-i", str(c5_file), "-c", str(cert_path)]) == 0

    cert["k_norm"] = 2
    cert_path.write_text(json.dumps(cert))
    capsys.readouterr()
    assert main(["verify", "-i", str(c5_file), "-c", str(cert_path)]) == 1
    assert "norm mismatch" in capsys.readouterr().out


def test_certify_given_spine(tmp_path, capsys):
    path = tmp_path / "g.g"
    path.write_text("n 4\na 0 1\na 0 2\na 3 1\nx 0 1\ny 2 3\n")
    assert main(["certify", "-i", str(path), "-k", "1"]) == 0
    cert = json.loads(capsys.readouterr().out)
    assert cert["spine_source"] == "given" and cert["case"] == "fishbone"


def test_certify_without_spine_exits_2(tmp_path, capsys):
    # two disjoint arcs: every stable Y leaves an untraceable complement
    path = tmp_path / "g.g"
    path.write_text("n 4\na 1 0\na 2 3\n")
    assert main(["certify", "-i", str(path), "-k", "1"]) == 2
    assert "no spine partition" in capsys.readouterr().err
    assert main(["recognize", "-i", str(path)]) == 0
    assert capsys.readouterr().out == "none\n"


def test_oracle_command(c5_file, capsys):
    assert main(["oracle", "-i", str(c5_file), "-k", "1", "-q", "alpha"]) == 0
    assert capsys.readouterr().out.strip() == "2"
    assert main(["oracle", "-i", str(c5_file), "-q", "lambda"]) == 0
    assert capsys.readouterr().out.strip() == "5"
    assert main(["oracle", "-i", str(c5_file), "-q", "pi"]) == 2


def test_recognize(c5_file, capsys):
    assert main(["recognize", "-i", str(c5_file)]) == 0
    assert capsys.readouterr().out == "x 1 2 3 4\ny 0\n"
    assert main(["recognize", "-i", str(c5_file), "--split-only"]) == 0
    assert capsys.readouterr().out == "none\n"


def test_usage_errors(tmp_path, capsys):
    assert main([]) == 2
    assert main(["certify", "-i", str(tmp_path / "missing.g"), "-k", "1"]) == 2
    bad = tmp_path / "bad.g"
    bad.write_text("n 2\na 0 0\n")
    assert main(["certify", "-i", str(bad), "-k", "1"]) == 2
    assert "line 2" in capsys.readouterr().err


def test_gen_and_fuzz(tmp_path):
    out = tmp_path / "g.g"
    assert main(["gen", "--kind", "spine", "--seed", "4", "--max-x", "4", "--max-y", "3", "-o", str(out)]) == 0
    D, spine = parse_graph(out.read_text())
    assert spine is not None
    log = tmp_path / "log.jsonl"
    assert main(["fuzz", "--kind", "spine", "--count", "20", "--seed", "1", "--max-x", "5", "--max-y", "3",
                 "--density", "0.2,0.5,0.8", "--log", str(log)]) == 0
    assert len(log.read_text().splitlines()) > 20
    assert main(["fuzz", "--kind", "general", "--count", "10", "--seed", "1", "--n", "5",
                 "--check", "linial", "--check", "dual"]) == 0


def test_certificates_verify_in_separate_process(tmp_path):
    for seed in range(5):
        g = tmp_path / f"g{seed}.g"
        inst = gen_instance(GenParams("spine", max_x=5, max_y=4, density=0.3, seed=seed))
        g.write_text(render_graph(inst.digraph, inst.spine))
        for k in range(1, inst.digraph.n + 1):
            c = tmp_path / f"c{seed}_{k}.json"
            assert main(["certify", "-i", str(g), "-k", str(k), "-o", str(c)]) == 0
            proc = subprocess.run([sys.executable, "-m", "spinecert", "verify", "-i", str(g), "-c", str(c)],
                                  capture_output=True, text=True)
            assert proc.returncode == 0, proc.stdout
