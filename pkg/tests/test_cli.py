import logging
from pathlib import Path

import pytest

from linksleep.cli import main
from linksleep.io import read_edge_list
from linksleep.reports import read_csv_rows

DATA = Path(__file__).parent / "data"


def run(*argv):
    return main([str(a) for a in argv])


def test_generate(tmp_path, capsys):
    out = tmp_path / "ba.edges"
    assert run("generate", "--family", "ba", "--nodes", 353, "--edges", 820, "--seed", 7, "--out", out) == 0
    assert len(out.read_text().splitlines()) == 820
    assert "N=353 M=820" in capsys.readouterr().out
    first = out.read_bytes()
    run("generate", "--family", "ba", "--nodes", 353, "--edges", 820, "--seed", 7, "--out", out)
    assert out.read_bytes() == first


def test_generate_infeasible(tmp_path, capsys):
    assert run("generate", "--family", "er", "--nodes", 4, "--edges", 2, "--out", tmp_path / "x") == 2
    assert "error" in capsys.readouterr().err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["generate", "--family", "ws"])
    assert info.value.code == 1


def test_ingest(tmp_path):
    out = tmp_path / "rf.edges"
    assert run("ingest", DATA / "cch_small", "--out", out) == 0
    assert out.read_text() == "0 1\n0 2\n"
    assert run("ingest", DATA / "external_only.cch", "--out", out) == 2


def test_powerdown_tree_warns(tmp_path, caplog):
    tree = tmp_path / "tree.edges"
    tree.write_text("0 1\n1 2\n1 3\n")
    with caplog.at_level(logging.WARNING, logger="linksleep"):
        assert run("powerdown", tree, "--scheme", "sbf", "--out", tmp_path) == 0
    assert "spanning tree" in caplog.text
    meta, rows = read_csv_rows((tmp_path / "tree_sbf_s0.trace.csv").read_text())
    assert rows == [] and meta["scheme"] == "sbf"


def test_powerdown_disconnected(tmp_path):
    bad = tmp_path / "bad.edges"
    bad.write_text("0 1\n2 3\n")
    assert run("powerdown", bad, "--scheme", "lbf", "--out", tmp_path) == 2


def test_powerdown_hybrid_and_report(tmp_path, capsys):
    net = tmp_path / "ba.edges"
    run("generate", "--family", "ba", "--nodes", 80, "--edges", 170, "--seed", 1, "--out", net)
    for scheme in ("random", "sbf", "lbf", "hybrid"):
        assert run("powerdown", net, "--scheme", scheme, "--window", 5, "--out", tmp_path, "--gnuplot") == 0
    meta, rows = read_csv_rows((tmp_path / "ba_hybrid_s0.trace.csv").read_text())
    kappa = int(meta["kappa"])
    assert [r["phase"] for r in rows] == ["lbf"] * kappa + ["random"] * (len(rows) - kappa)
    _, curve = read_csv_rows((tmp_path / "ba_lbf_s0.rc.csv").read_text())
    assert len(curve) == 170 - 80 + 2
    assert (tmp_path / "ba_lbf_s0.rc.gp").exists()
    traces = sorted(tmp_path.glob("*.trace.csv"))
    assert run("report", *traces, "--out", tmp_path / "rep") == 0
    _, summary = read_csv_rows((tmp_path / "rep" / "summary.csv").read_text())
    assert len(summary) == 4
    _, energy = read_csv_rows((tmp_path / "rep" / "energy_report.csv").read_text())
    assert list(energy[0]) == ["scheme", "network", "seed", "sleep_units", "max_active_units", "savings_ratio"]


def test_report_rejects_mismatched_m(tmp_path):
    a, b = tmp_path / "a.edges", tmp_path / "b.edges"
    a.write_text("0 1\n1 2\n0 2\n")
    b.write_text("0 1\n1 2\n2 3\n0 3\n0 2\n")
    run("powerdown", a, "--scheme", "sbf", "--label", "net", "--out", tmp_path / "x")
    run("powerdown", b, "--scheme", "lbf", "--label", "net", "--out", tmp_path / "x")
    traces = sorted((tmp_path / "x").glob("*.trace.csv"))
    assert run("report", *traces, "--out", tmp_path / "rep") == 2


def test_simulate(tmp_path):
    k2 = tmp_path / "k2.edges"
    k2.write_text("0 1\n")
    out = tmp_path / "sim.csv"
    assert run("simulate", k2, "--grid", "1,2,3,4", "--seeds", "0,1", "--steps", 1000, "--warmup", 200, "--out", out) == 0
    _, rows = read_csv_rows(out.read_text())
    assert len(rows) == 8
    eta = {(int(r["R"]), int(r["seed"])): float(r["order_parameter"]) for r in rows}
    assert abs(eta[(1, 0)]) < 1e-3 and eta[(4, 0)] > 0
    assert run("simulate", k2, "--grid", "1", "--steps", 0, "--out", out) == 2
    assert run("simulate", k2, "--grid", "", "--out", out) == 2


def test_mincut_and_betweenness(tmp_path):
    c4 = tmp_path / "c4.edges"
    c4.write_text("0 1\n1 2\n2 3\n0 3\n")
    run("powerdown", c4, "--scheme", "sbf", "--out", tmp_path)
    trace = tmp_path / "c4_sbf_s0.trace.csv"
    out = tmp_path / "mc.csv"
    assert run("mincut", c4, trace, "--indices", "0,1", "--out", out) == 0
    _, rows = read_csv_rows(out.read_text())
    assert [(r["removal_index"], r["m_c"], r["pairs"]) for r in rows] == [("0", "2", "6"), ("1", "1", "6")]
    assert run("mincut", c4, trace, "--indices", "5", "--out", out) == 2
    bet = tmp_path / "b.csv"
    assert run("betweenness", c4, "--trace", trace, "--index", 1, "--out", bet) == 0
    assert bet.read_text().splitlines()[0] == "edge_id,u,v,betweenness"


def write_manifest(path, out):
    path.write_text(
        "[experiment]\n"
        "schemes = random, sbf, lbf, hybrid\n"
        "window = 5\n"
        f"out = {out}\n"
        "\n[network er]\nfamily = ER\nnodes = 30\nedges = 60\nseeds = 1, 2\n"
        "\n[network c5]\nfile = c5.edges\n",
        encoding="utf-8",
    )
    (path.parent / "c5.edges").write_text("0 1\n1 2\n2 3\n3 4\n0 4\n0 2\n")


def test_manifest_run(tmp_path):
    manifest = tmp_path / "exp.ini"
    write_manifest(manifest, "results")
    assert run("run", manifest) == 0
    _, summary = read_csv_rows((tmp_path / "results" / "summary.csv").read_text())
    assert {(r["network"], r["scheme"]) for r in summary} == {
        (n, s) for n in ("er", "c5") for s in ("random", "sbf", "lbf", "hybrid")
    }
    assert len(list((tmp_path / "results" / "traces").glob("er_*.trace.csv"))) == 8


def test_missing_manifest(tmp_path):
    assert run("run", tmp_path / "none.ini") == 2
