import json

import pytest

from twotasep import cli


def run(capsys, *argv):
    code = cli.main(["--json", *argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def test_prob_ring(capsys):
    code, out = run(capsys, "prob", "ring", "--word", "12020")
    assert code == 0
    assert {k: out[k] for k in ("class", "o", "weight", "probability")} == \
        {"class": "12020", "o": 5, "weight": 5, "probability": "1/4"}
    assert out["agree"]


def test_prob_ring_inhomogeneous(capsys):
    code, out = run(capsys, "prob", "ring", "--word", "2021", "--params", "d=2/3,e=5/7")
    assert code == 0 and out["agree"]


def test_prob_open(capsys):
    code, out = run(capsys, "prob", "open", "--word", "20201210", "--alpha", "1/2", "--beta", "1/3")
    assert code == 0 and out["agree"]
    assert out["probability"] == out["solver"] == out["ansatz"]
    assert out["uchiyama_numerator"] == "5/23328"


def test_mlq_commands(capsys):
    code, out = run(capsys, "mlq", "drop", "--mlq", "11000110100110|00111010111101")
    assert out["type"] == "22001202001020" and out["weights"] == [1, 1, 0, 0, 2, 0, 1]
    code, out = run(capsys, "mlq", "lift", "--word", "22001202001020", "--weights", "1,1,0,0,2,0,1")
    assert out["mlq"] == "11000110100110|00111010111101"
    code, out = run(capsys, "mlq", "enumerate", "--word", "12020")
    assert out["count"] == 5


def test_trat_det_ansatz(capsys):
    assert run(capsys, "trat", "enumerate", "--word", "120201210")[1]["count"] == 5
    assert run(capsys, "trat", "weight", "--word", "12020")[1]["value"] == "5/1"
    assert len(run(capsys, "trat", "paths", "--word", "12020")[1]["paths"]) == 5
    assert run(capsys, "det", "--word", "120201210")[1]["weight"] == 5
    assert run(capsys, "ansatz", "ring", "--word", "12011020")[1]["trace"] == "4/1"
    code, out = run(capsys, "ansatz", "open", "--word", "11")
    assert out["probability"] == "1/1"


def test_chain_commands(capsys):
    code, out = run(capsys, "chain", "project", "--kind", "mlq", "--k", "2", "--r", "1", "--l", "2")
    assert code == 0 and out["ok"]
    code, out = run(capsys, "chain", "solve", "--kind", "ring", "--k", "1", "--r", "1", "--l", "1")
    assert code == 0 and len(out["stationary"]) == 6
    code, out = run(capsys, "chain", "project", "--kind", "amlq", "--k", "2", "--r", "1", "--l", "1")
    assert code == 0 and out["ok"]


def test_states_csv(capsys):
    assert cli.main(["states", "--k", "2", "--r", "1", "--l", "1", "--csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "class,o,weight,class_probability"
    assert "1220,4,3/1,1/2" in lines


def test_usage_errors(capsys):
    assert cli.main(["prob", "ring", "--word", "12x"]) == 2
    assert cli.main(["ansatz", "ring", "--word", "2200"]) == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["prob", "ring", "--nope"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["mlq", "drop"])
    assert exc.value.code == 2


def test_verify_report_schema(capsys):
    code, out = run(capsys, "verify", "flips", "--max-n", "5")
    assert code == 0 and out["passed"]
    rep = out["reports"][0]
    assert rep["version"] == cli.REPORT_VERSION
    assert rep["counterexample"] is None
    assert all(v["passed"] for v in rep["identities"].values())


def test_verify_reports_counterexample(capsys, monkeypatch):
    real = cli.trat.trat_count
    monkeypatch.setattr(cli.trat, "trat_count", lambda x: real(x) + (x == (1, 2, 0)))
    code, out = run(capsys, "verify", "ring", "--max-n", "3", "--points", "1")
    assert code == 1 and not out["passed"]
    cex = out["reports"][0]["counterexample"]
    assert cex["identity"] == "solver = o|trat|/C(n,k)C(n,l)"
    assert cex["word"] == "120"


def test_human_output(capsys):
    assert cli.main(["prob", "ring", "--word", "12020"]) == 0
    assert "probability: 1/4" in capsys.readouterr().out
