import json

import jsonschema
import pytest

from toroidal.cli import main
from toroidal.pipeline import RunConfig, parse_ideal_spec, report_text, run_pipeline
from toroidal.field import QuadraticField
from toroidal.ideals import ideal, inverse_different
from toroidal.serialize import schema

QUICK = dict(samples=300, torsion_trials=30, vd_samples=8, trace_bound=12)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_field_info(capsys):
    code, out, _ = run(capsys, "field", "info", "--D", "5")
    d = json.loads(out)
    assert code == 0 and d["fundamental_unit"] == ["0", "1"] and d["square_generator"] == ["1", "1"]


def test_ideal_commands(capsys):
    assert json.loads(run(capsys, "ideal", "norm", "--ideal", "2")[1])["norm"] == "4"
    code, out, _ = run(capsys, "ideal", "nt-check", "--level", "2")
    d = json.loads(out)
    assert code == 1 and not d["NT"] and d["order"] == 2
    assert run(capsys, "ideal", "nt-check", "--level", "7")[0] == 0
    d = json.loads(run(capsys, "ideal", "mul", "--ideal", "2", "--other", "3")[1])
    assert d["product"]["hnf"] == [["6", "0"], ["0", "6"]]


def test_cone_commands(capsys):
    d = json.loads(run(capsys, "cone", "hilbert-basis", "--rays", "1,1;1,-1")[1])
    assert sorted(d["hilbert_basis"]) == [[1, -1], [1, 0], [1, 1]]
    d = json.loads(run(capsys, "cone", "smooth", "--rays", "1,1;1,-1")[1])
    assert d["smooth"] is False
    assert len(json.loads(run(capsys, "cone", "faces", "--rays", "1,0")[1])["faces"]) == 2


def test_fan_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "fan", "check", "--D", "2", "--samples", "300", "--smooth")
    assert code == 1 and json.loads(out)["smooth"] is False
    path = tmp_path / "fan.json"
    code, _, _ = run(capsys, "fan", "subdivide", "--D", "2", "--json-out", str(path))
    assert code == 0
    code, out, _ = run(capsys, "fan", "check", "--input", str(path), "--D", "2", "--smooth", "--complete",
                       "--samples", "300")
    assert code == 0 and json.loads(out)["complete"]


def test_cusp_and_qexp_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "cusps", "derive", "--a", "0", "--c", "1")
    assert code == 0 and json.loads(out)["kind"] == "cusp"
    code, out, _ = run(capsys, "cusps", "torsion-search", "--samples", "40")
    assert code == 0 and json.loads(out)["torsion_free"]
    path = tmp_path / "theta.json"
    assert run(capsys, "theta", "--trace-bound", "6", "--json-out", str(path))[0] == 0
    assert json.loads(run(capsys, "qexp", "verify", "--input", str(path))[1])["koecher"]
    assert json.loads(run(capsys, "qexp", "padic", "--input", str(path))[1])["divisible"] is False
    d = json.loads(run(capsys, "qexp", "reduce", "--xi", "2,3")[1])
    assert d["representative"] == ["1", "0"] and d["power"] != 0
    assert run(capsys, "qexp", "reduce", "--xi", "2,5")[0] == 2


def test_jacobi_hodge_vd(capsys, tmp_path):
    path = tmp_path / "j.json"
    assert run(capsys, "jacobi", "enumerate", "--orbit-constant", "--trace-bound", "4",
               "--json-out", str(path))[0] == 0
    assert run(capsys, "jacobi", "check", "--input", str(path))[0] == 0
    d = json.loads(run(capsys, "hodge-tate", "--weights", "2,4")[1])
    assert d["multiset"] == [1, 2, 4, 5] and d["symmetry"]
    d = json.loads(run(capsys, "vd", "phi", "--q", "1", "--l=-1/2")[1])
    assert d["phi"] == "0" and len(d["argmin"]) == 2
    assert run(capsys, "vd", "act", "--q", "2,1", "--l=1/3,1/5")[0] == 0


def test_usage_errors(capsys, tmp_path):
    assert run(capsys)[0] == 2
    empty = tmp_path / "empty.json"
    empty.write_text("{}")
    code, _, err = run(capsys, "pipeline", "--config", str(empty))
    assert code == 2 and "config" in err
    assert run(capsys, "hodge-tate", "--weights", "2,3")[0] == 2
    assert run(capsys, "field", "info", "--D", "4")[0] == 2
    assert run(capsys, "cone", "smooth")[0] == 2
    theta = tmp_path / "t.json"
    run(capsys, "theta", "--json-out", str(theta), "--trace-bound", "3")
    assert run(capsys, "jacobi", "check", "--input", str(theta))[0] == 2


def test_ideal_specs():
    F = QuadraticField(5)
    assert parse_ideal_spec(F, "dual-o") == inverse_different(F)
    assert parse_ideal_spec(F, "sqrtD") == ideal(F, F.sqrt_D())
    assert parse_ideal_spec(F, "2;1,1") == ideal(F, 2, F(1, 1))
    assert parse_ideal_spec(F, "1/3") == ideal(F, F(1) / 3)


def test_pipeline_passes_and_is_deterministic(tmp_path):
    cfg = RunConfig(**QUICK)
    r1, r2 = run_pipeline(cfg), run_pipeline(cfg)
    assert r1["passed"], [s for s in r1["stages"] if s["status"] != "pass"]
    assert report_text(r1) == report_text(r2)
    jsonschema.validate(r1, schema())


def test_pipeline_level_two_fails_nt():
    r = run_pipeline(RunConfig(level="2", **QUICK))
    nt = next(s for s in r["stages"] if s["stage"] == "nt")
    assert nt["status"] == "fail" and not r["passed"]
    assert nt["checks"][0]["witness"][1] == "2"
    # the other stages still ran
    assert all(s["status"] == "pass" for s in r["stages"] if s["stage"] != "nt")


def test_pipeline_cli_config(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"D": 2, "level": "3", **QUICK}))
    out = tmp_path / "report.json"
    code, _, _ = run(capsys, "pipeline", "--config", str(cfg), "--json-out", str(out))
    assert code == 1
    assert json.loads(out.read_text())["stages"][2]["status"] == "fail"


def test_pipeline_nonprincipal_scaling():
    r = run_pipeline(RunConfig(c_ideal="2", **QUICK))
    statuses = {s["stage"]: s["status"] for s in r["stages"]}
    assert statuses["field"] == "pass" and statuses["hodge"] == "pass"


def test_pipeline_stage_error_skips_dependents(monkeypatch):
    from toroidal import pipeline

    def boom(ctx):
        raise RuntimeError("boom")

    stages = [(n, boom if n == "cusps" else f) for n, f in pipeline.STAGES]
    monkeypatch.setattr(pipeline, "STAGES", stages)
    r = run_pipeline(RunConfig(**QUICK))
    st = {s["stage"]: s for s in r["stages"]}
    assert st["cusps"]["status"] == "error" and "boom" in st["cusps"]["error"]
    assert st["fans"]["status"] == "skipped" and st["qexp"]["status"] == "skipped"
    assert st["jacobi"]["status"] == "pass" and not r["passed"]
    jsonschema.validate(r, schema())
