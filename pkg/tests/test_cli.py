import json

import pytest

from flagtorsion.cli import main
from flagtorsion.complexes import loads_complex


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_construct_and_reload(capsys, tmp_path):
    code, out = run(capsys, "construct", "xm:3")
    assert code == 0
    assert loads_complex(out.out).fvector() == (26, 82, 56)
    target = tmp_path / "rp2.json"
    assert main(["construct", "rp2", "--out", str(target)]) == 0
    code, out = run(capsys, "homology", str(target), "--format", "json")
    data = json.loads(out.out)
    assert data["homology"][1]["torsion"] == [2]


def test_verify_exit_codes(capsys):
    code, out = run(capsys, "verify", "2", "4")
    assert code == 0 and "3/3 passed" in out.out


def test_reproduce_exit_codes(capsys):
    assert run(capsys, "reproduce", "lemma51")[0] == 0
    code, out = run(capsys, "reproduce", "T5")
    assert code == 1 and "|V(H)|=7" in out.out


def test_usage_errors(capsys):
    assert run(capsys, "construct", "nonsense")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["reproduce", "T9"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    assert run(capsys, "betti", "xm:2")[0] == 2
    assert run(capsys, "sample", "--n", "5", "--p", "2")[0] == 2


def test_betti_and_torsion(capsys):
    code, out = run(capsys, "betti", "rp2", "--char", "2", "--format", "json")
    table = json.loads(out.out)
    assert [9, 11, 1] in table["entries"]
    code, out = run(capsys, "torsion", "rp2", "--format", "json")
    assert json.loads(out.out)["primes"] == [2]
    code, out = run(capsys, "torsion", "xm:6", "--sizes", "38", "--primes-up-to", "2")
    assert "primes: [2]" in out.out


def test_density_search_sample(capsys):
    code, out = run(capsys, "density", "rp2", "--format", "json")
    assert json.loads(out.out)["density"] == "30/11"
    code, out = run(capsys, "search", "rp2", "rp2", "--format", "json")
    assert json.loads(out.out)["status"] == "found"
    a = run(capsys, "sample", "--n", "12", "--p", "0.4", "--seed", "5")[1].out
    b = run(capsys, "sample", "--n", "12", "--p", "0.4", "--seed", "5")[1].out
    assert a == b


def test_experiment_output(capsys, tmp_path):
    plot = tmp_path / "g.dat"
    argv = ["experiment", "--pattern", "rp2", "--n", "40", "--p", "0.5", "--trials", "3", "--seed", "1"]
    code, first = run(capsys, *argv, "--plot", str(plot))
    assert code == 0
    assert first.out.splitlines()[0].startswith("n,p,trials,found")
    assert plot.read_text().startswith("# n p")
    code, second = run(capsys, *argv)
    assert first.out == second.out
    code, js = run(capsys, *argv, "--format", "json")
    assert len(json.loads(js.out)["trials"]) == 3
