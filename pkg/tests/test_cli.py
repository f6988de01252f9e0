import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from qfano import cli
from qfano.report import RunConfig, emit_json, report_from_dict, run

SCHEMA = json.loads((Path(__file__).parents[1] / "docs" / "report.schema.json").read_text())


def call(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_single_check(capsys):
    code, out, _ = call(capsys, "verify", "--only", "pi.g_decomposition", "--json")
    data = json.loads(out)
    assert code == 0
    assert [r["id"] for r in data["results"]] == ["pi.g_decomposition"]
    jsonschema.validate(data, SCHEMA)


def test_verify_text_groups_by_topic(capsys):
    code, out, _ = call(capsys, "verify", "--only", "pi.syzygy,h13.hyperdet", "--classes")
    assert code == 0
    assert out.index("== 15-fold identities ==") < out.index("== 13-fold ==")
    assert "2 checks: 2 pass, 0 fail, 0 skipped" in out


@pytest.mark.parametrize("argv", [
    ["verify", "--only", "no.such.check"],
    ["verify", "--samples", "0"],
    ["verify", "--jobs", "0"],
    ["verify", "--all", "--only", "pi.syzygy"],
    ["verify", "--classes", "999"],
    ["hilbert", "--class", "999"],
    ["hilbert", "--class", "308", "--order", "-1"],
    ["sample", "--target", "G", "--bound", "-1"],
    ["catalog", "dump", "no.such.object"],
    ["catalog", "dump"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 2 and out == "" and "error" in err


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["sample", "--target", "Q"],
                                  ["verify", "--samples", "x"]])
def test_parser_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2


def test_failing_check_exits_1(capsys, monkeypatch):
    from dataclasses import replace

    from qfano import verifier as V

    broken = replace(V.CHECKS["pi.syzygy"], run=lambda ctx: V.outcome("pi.syzygy", ["injected"]))
    monkeypatch.setitem(V.CHECKS, "pi.syzygy", broken)
    code, out, _ = call(capsys, "verify", "--only", "pi.syzygy", "--json", "--classes")
    data = json.loads(out)
    assert code == 1
    assert data["results"][0]["status"] == "fail" and data["results"][0]["witness"] == "injected"
    jsonschema.validate(data, SCHEMA)


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("QFANO_SEED", "1234")
    _, out, _ = call(capsys, "verify", "--only", "pi.syzygy", "--json", "--classes")
    assert json.loads(out)["config"]["seed"] == 1234
    _, a, _ = call(capsys, "sample", "--target", "Pi")
    _, b, _ = call(capsys, "sample", "--target", "Pi", "--seed", "1234")
    assert a == b
    monkeypatch.setenv("QFANO_SEED", "abc")
    code, _, err = call(capsys, "sample", "--target", "Pi")
    assert code == 2 and "QFANO_SEED" in err


def test_seed_default_is_42(capsys, monkeypatch):
    monkeypatch.delenv("QFANO_SEED", raising=False)
    _, out, _ = call(capsys, "verify", "--only", "pi.syzygy", "--json", "--classes")
    assert json.loads(out)["config"]["seed"] == 42


def test_output_is_byte_identical(capsys):
    argv = ("verify", "--only", "pi.pfaffian_chart", "h13.isomorphism", "--samples", "5")
    _, a, _ = call(capsys, *argv)
    _, b, _ = call(capsys, *argv)
    assert a == b


def test_timing_is_opt_in(capsys):
    _, out, _ = call(capsys, "verify", "--only", "pi.syzygy", "--json", "--timing", "--classes")
    data = json.loads(out)
    assert "elapsed" in data and "elapsed" in data["results"][0]
    jsonschema.validate(data, SCHEMA)


def test_json_round_trip():
    report = run(RunConfig(seed=5, samples=3, only=("pi.syzygy", "sections.872"), classes=(308,),
                           format="json"))
    data = json.loads(emit_json(report))
    jsonschema.validate(data, SCHEMA)
    assert report_from_dict(data).to_dict() == data
    assert data["classes"][0]["delta"] == 51


def test_hilbert_json_308(capsys):
    code, out, _ = call(capsys, "hilbert", "--class", "308", "--json")
    data = json.loads(out)
    assert code == 0
    assert (data["delta"], data["k"]) == (51, 47)
    assert data["adjunction"]["K_X"] == -1


def test_hilbert_text(capsys):
    code, out, _ = call(capsys, "hilbert", "--class", "1766", "--order", "6")
    assert code == 0
    assert "delta: 24" in out and "k: 26" in out
    line = next(l for l in out.splitlines() if l.startswith("expansion: "))
    assert len(json.loads(line.split(": ", 1)[1])) == 7


@pytest.mark.parametrize("target", ["G", "Pi", "S", "H13"])
def test_sample_targets(capsys, target):
    code, out, _ = call(capsys, "sample", "--seed", "3", "--bound", "5", "--target", target, "--json")
    data = json.loads(out)
    assert code == 0 and data["target"] == target and data["point"]


def test_sample_point_lies_on_g(capsys, pi):
    from fractions import Fraction

    _, out, _ = call(capsys, "sample", "--seed", "8", "--bound", "5", "--target", "G")
    pt = {k: Fraction(v) for k, v in (line.split(" = ") for line in out.splitlines())}
    assert pi.G.evaluate(pt) == 0


def test_catalog_dump(capsys, pi):
    code, out, _ = call(capsys, "catalog", "dump", "pi.G")
    assert code == 0 and out.strip() == pi.G.to_text()
    code, out, _ = call(capsys, "catalog", "dump", "pi.F")
    assert out.splitlines()[0].startswith("F1 = ")
    from qfano.catalog.universe import poly
    assert all(poly(line.split(" = ", 1)[1]) == f for line, f in zip(out.splitlines(), pi.F))


@pytest.mark.parametrize("object_id", cli.dump_ids())
def test_every_dump_is_deterministic(object_id):
    assert cli.dump(object_id) == cli.dump(object_id)
    assert cli.dump(object_id).strip()


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "qfano.cli", "verify", "--only", "pi.syzygy"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "PASS" in proc.stdout
