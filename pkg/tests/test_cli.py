"""End-to-end checks of the command-line surface."""

import json

from click.testing import CliRunner

from buckettrees.cli import main


def run(*args):
    result = CliRunner().invoke(main, list(args))
    assert result.exit_code == 0, result.output
    return result.output


def test_grow_csv():
    out = run("grow", "--family", "recursive:b=2", "--n", "3", "--count", "2",
              "--seed", "1")
    lines = out.strip().splitlines()
    assert lines[0] == "index,tree"
    assert lines[1] == "0,{1,2}({3})"
    assert len(lines) == 3


def test_grow_doc():
    out = run("grow", "--n", "4", "--format", "doc", "--seed", "2")
    doc = json.loads(out)
    assert doc["trees"][0]["b"] == 2
    assert doc["trees"][0]["root"]["labels"] == [1, 2]


def test_grow_deterministic():
    a = run("grow", "--n", "20", "--seed", "9")
    b = run("grow", "--n", "20", "--seed", "9")
    assert a == b


def test_enumerate_trees():
    out = run("enumerate", "--family", "recursive:b=2", "--n", "4")
    lines = out.strip().splitlines()
    assert lines[0] == "tree,weight,probability"
    # {1,2}({3,4}) plus the two orderings of {1,2}({3},{4})
    assert len(lines) == 4
    assert "{1,2}({3,4}),2,1/3" in lines
    assert "{1,2}({3},{4}),2,1/3" in lines


def test_enumerate_statistic_pmf():
    out = run("enumerate", "--family", "recursive:b=2", "--n", "4", "--pmf", "K")
    lines = out.strip().splitlines()
    assert lines[0] == "value,probability,float"
    table = {line.split(",")[0]: line.split(",")[1] for line in lines[1:]}
    assert table == {"1": "2/3", "2": "1/3"}


def test_pmf_k():
    out = run("pmf-k", "--family", "recursive:b=2", "--n", "4")
    assert "2,1/3" in out


def test_pmf_k_limit():
    out = run("pmf-k", "--family", "recursive:b=2", "--n", "4", "--limit")
    assert "1,2/3" in out and "2,1/3" in out


def test_descendants_and_conditional():
    out = run("descendants", "--family", "recursive:b=2", "--n", "4", "--j", "3")
    assert "1,2/3" in out and "2,1/3" in out
    cond = run("descendants", "--family", "recursive:b=2", "--n", "4", "--j", "3",
               "--conditional", "1")
    assert cond == out


def test_degree():
    out = run("degree", "--family", "recursive:b=2", "--n", "5", "--j", "3")
    assert "0,5/6" in out and "1,1/6" in out


def test_tau():
    out = run("tau", "--family", "recursive:b=2", "--n", "5", "--j", "3")
    assert "4,1/3" in out and "5,2/3" in out


def test_convert_round_trip():
    tree = "{1,2}({3,4}({5}),{6})"
    diamond = run("convert", "--from", "tree", "--to", "diamond", tree).strip()
    back = run("convert", "--from", "diamond", "--to", "bucket", diamond).strip()
    assert back == tree


def test_convert_reads_stdin():
    result = CliRunner().invoke(
        main, ["convert", "--from", "tree", "--to", "bucket"], input="{1,2}({3})\n")
    assert result.exit_code == 0
    assert result.output.strip() == "{1,2}({3})"


def test_urn():
    out = run("urn", "--family", "port:b=2,alpha=1", "--steps", "10",
              "--replicates", "200", "--seed", "3")
    lines = out.strip().splitlines()
    assert lines[0] == "type,divisor,mean_balls,mean_node_estimate"
    assert len(lines) == 3


def test_urn_spectrum():
    out = run("urn-spectrum", "--family", "port:b=2,alpha=1", "--b-range", "2")
    lines = out.strip().splitlines()
    assert lines[0].startswith("b,balance,second_real")
    assert lines[1].startswith("2,2,-2")


def test_spectrum():
    out = run("spectrum", "--family", "recursive:b=2", "--b-range", "2..3")
    lines = out.strip().splitlines()
    assert lines[0] == "b,kappa,root,re,im,residual,phase_indicator"
    assert lines[1].split(",")[3] == "1"  # principal root of the b=2 row


def test_out_file(tmp_path):
    path = tmp_path / "pmf.csv"
    run("pmf-k", "--n", "4", "--out", str(path))
    assert "2,1/3" in path.read_text()


def test_bad_family_fails():
    result = CliRunner().invoke(main, ["grow", "--family", "nope:b=2", "--n", "3"])
    assert result.exit_code != 0


def test_verify_quick():
    out = run("verify", "--level", "quick", "--seed", "0")
    assert "ALL CHECKS PASSED" in out
    assert out.count("PASS") >= 6
