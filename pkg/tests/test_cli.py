import json

import pytest

from pfk3 import ktheory as kt
from pfk3.cli import main
from pfk3.construction import dumps_instance


@pytest.fixture(scope="module")
def instance_file(tmp_path_factory, inst):
    path = tmp_path_factory.mktemp("cli") / "inst.json"
    path.write_text(dumps_instance(inst))
    return str(path)


def test_usage_errors(capsys):
    for argv in ([], ["frobnicate"], ["sample"], ["sample", "--seed", "1", "--prime", "4"],
                 ["sample", "--seed", "1", "--prime", "101"], ["verify", "--instance", "x", "--fibers", "-2"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 4, argv


def test_io_errors(tmp_path, capsys):
    assert main(["verify", "--instance", str(tmp_path / "missing.json")]) == 3
    bad = tmp_path / "bad.json"
    bad.write_text("{]")
    assert main(["map-point", "--instance", str(bad), "--seed", "1"]) == 3
    bad.write_text(json.dumps({"format": "pfk3-instance"}))
    assert main(["verify", "--instance", str(bad)]) == 3


def test_genericity_exhaustion(capsys):
    assert main(["sample", "--seed", "1", "--retries", "0"]) == 2


def test_sample_to_stdout(capsys, inst):
    assert main(["sample", "--seed", "1"]) == 0
    assert capsys.readouterr().out == dumps_instance(inst)


def test_ktheory_tables(capsys):
    assert main(["ktheory", "--check", "en"]) == 0
    out = capsys.readouterr().out
    assert all(f"n={n}: {v}" in out for n, v in enumerate([1, 6, 15, 28]))
    assert main(["ktheory", "--check", "pr"]) == 0
    out = capsys.readouterr().out
    assert "pr[O(-1)] = 0" in out and "pr[O(1)] = 0" in out
    assert main(["ktheory", "--check", "mukai"]) == 0
    assert "ext^1 = 8" in capsys.readouterr().out


def test_ktheory_json_report(capsys):
    assert main(["ktheory", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["verdict"] == "pass" and report["rng"] == "splitmix64/v1"
    names = [c["name"] for c in report["checks"]]
    assert names == sorted(names)


def test_check_failure_exit_code(monkeypatch, capsys):
    real = kt.en_class_check

    def broken():
        r = real()
        r.passed = False
        return r

    monkeypatch.setattr(kt, "en_class_check", broken)
    assert main(["ktheory", "--check", "en"]) == 1


def test_map_point(instance_file, capsys):
    assert main(["map-point", "--instance", instance_file, "--seed", "3", "--json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["status"] in ("generic", "degenerate")
    assert d["length"] == 4 and sum(d["eliminant_factor_degrees"]) == 4
    assert main(["map-point", "--instance", instance_file, "--seed", "3", "--stats", "10"]) == 0
    assert "squarefree eliminants" in capsys.readouterr().out


def test_verify_fast(instance_file, capsys):
    code = main(["verify", "--instance", instance_file, "--fibers", "3", "--pairs", "2", "--json"])
    report = json.loads(capsys.readouterr().out)
    assert code == 0 and report["verdict"] == "pass"
    assert report["config"]["fibers"] == 3 and report["instance"]["seed"] == 1
    counts = {}
    for c in report["checks"]:
        counts[c["name"]] = counts.get(c["name"], 0) + 1
        assert "seconds" not in c
    assert counts["gamma_fiber_length"] == 3 and counts["pair_distinct"] == 2
    keys = [(c["name"], -1 if c["index"] is None else c["index"]) for c in report["checks"]]
    assert keys == sorted(keys)
