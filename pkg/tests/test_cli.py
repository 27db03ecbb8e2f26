import csv
import io
import json

import pytest
import yaml

from semiadv import codes, decode, experiment
from semiadv.channel import make_rng
from semiadv.cli import main
from semiadv.errors import InvalidParameters
from semiadv.field import make_field

IRS = {"family": "IRS", "n": 64, "k": 16, "s": 4, "field": {"p": 65537}}


def write_cfg(path, **data):
    path.write_text(yaml.safe_dump(data, sort_keys=False))
    return str(path)


def pipeline(tmp_path, code, e0, e, L=None):
    assert main(["encode", write_cfg(tmp_path / "enc.yaml", code=code, seed=4,
                                     message_output="msg.txt", output="word.txt")]) == 0
    assert main(["corrupt", write_cfg(tmp_path / "cor.yaml", code=code, seed=4, input="word.txt",
                                      channel={"e0": e0, "e": e, "adversary": "singleComponent"},
                                      output="noisy.txt")]) == 0
    dec = {"e": e} if L is None else {"e": e, "L": L}
    assert main(["decode", write_cfg(tmp_path / "dec.yaml", code=code, input="noisy.txt",
                                     decoder=dec, output="out.txt")]) == 0


def test_identity_pipeline_is_byte_identical(tmp_path):
    pipeline(tmp_path, IRS, 0, 0)
    assert (tmp_path / "out.txt").read_bytes() == (tmp_path / "msg.txt").read_bytes()
    assert (tmp_path / "word.txt").read_bytes() == (tmp_path / "noisy.txt").read_bytes()


def test_pipeline_matches_in_process_api(tmp_path):
    code = {"family": "FRS", "n": 32, "k": 20, "s": 8, "field": {"p": 65537}}
    pipeline(tmp_path, code, 3, 20, L=4)
    result = json.loads((tmp_path / "out.txt.result.json").read_text())
    assert result["status"] == "Success"
    spec = experiment.build_spec(code)
    y = codes.parse_word(spec, (tmp_path / "noisy.txt").read_text())
    res = decode.decode(spec, y, 20, 4)
    assert codes.format_message(res.message) == (tmp_path / "out.txt").read_text()
    assert (tmp_path / "out.txt").read_text() == (tmp_path / "msg.txt").read_text()
    log = json.loads((tmp_path / "noisy.txt.pattern.json").read_text())
    assert len(log["pattern"]["adversarial"]) == 3 and len(log["pattern"]["random"]) == 17


def test_input_message_file(tmp_path):
    spec = experiment.build_spec(IRS)
    msg = codes.random_message(spec, make_rng(8))
    (tmp_path / "m.txt").write_text(codes.format_message(msg))
    cfg = write_cfg(tmp_path / "e.yaml", code=IRS, input="m.txt", output="w.txt")
    assert main(["encode", cfg]) == 0
    assert codes.parse_word(spec, (tmp_path / "w.txt").read_text()) == codes.encode(spec, msg)


def test_decode_failure_is_recorded(tmp_path):
    spec = experiment.build_spec(IRS)
    F = spec.field
    garbage = codes.Word(F, F.random(make_rng(0), (64, 4)))
    (tmp_path / "g.txt").write_text(codes.format_word(garbage))
    cfg = write_cfg(tmp_path / "d.yaml", code=IRS, input="g.txt", decoder={"e": 10},
                    output="o.txt")
    assert main(["decode", cfg]) == 0
    result = json.loads((tmp_path / "o.txt.result.json").read_text())
    assert result["status"] == "Fail" and result["reason"] in [r.value for r in decode.FailReason]
    assert not (tmp_path / "o.txt").exists()


def test_malformed_inputs(tmp_path, capsys):
    (tmp_path / "bad.txt").write_text("1,2,3,4\n1,2,oops,4\n")
    cfg = write_cfg(tmp_path / "d.yaml", code=IRS, input="bad.txt", output="o.txt")
    assert main(["decode", cfg]) == 3
    assert "bad.txt:2:" in capsys.readouterr().err
    (tmp_path / "broken.yaml").write_text("code: {family: IRS\n  n: [\n")
    assert main(["decode", str(tmp_path / "broken.yaml")]) == 3
    assert main(["frobnicate", cfg]) == 2
    assert main(["decode"]) == 2
    bad_code = dict(IRS, k=100)
    assert main(["encode", write_cfg(tmp_path / "x.yaml", code=bad_code, output="w.txt")]) == 2
    assert main(["encode", str(tmp_path / "missing.yaml")]) == 2


def small_experiment(tmp_path, name, **extra):
    data = dict(code=IRS, grid={"points": [[0, 10], [10, 38], [24, 24], [30, 40]]}, trials=6,
                adversaries=["randomReplace", "singleComponent"], seed=5, output=f"{name}.csv")
    data.update(extra)
    return write_cfg(tmp_path / f"{name}.yaml", **data)


def test_experiment_csv(tmp_path):
    assert main(["experiment", small_experiment(tmp_path, "a")]) == 0
    text = (tmp_path / "a.csv").read_text()
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == experiment.CSV_COLUMNS
    assert len(rows) == 8
    for r in rows:
        assert int(r["successes"]) <= int(r["trials"])
        assert r["rate"] == f"{r['successes']}/{r['trials']}"
    beyond = [r for r in rows if r["e"] == "40"]
    assert all(r["in_region"] == "0" and r["successes"] == "0" for r in beyond)
    inside = [r for r in rows if r["in_region"] == "1"]
    assert all(r["successes"] == r["trials"] for r in inside)
    js = json.loads((tmp_path / "a.csv.json").read_text())
    assert all("wall_seconds" in r for r in js["rows"])


def test_experiment_is_deterministic_and_parallel_safe(tmp_path, monkeypatch):
    assert main(["experiment", small_experiment(tmp_path, "a")]) == 0
    assert main(["experiment", small_experiment(tmp_path, "b")]) == 0
    monkeypatch.setenv("SEMIADV_THREADS", "3")
    assert main(["experiment", small_experiment(tmp_path, "c")]) == 0
    a = (tmp_path / "a.csv").read_bytes()
    assert a == (tmp_path / "b.csv").read_bytes() == (tmp_path / "c.csv").read_bytes()
    assert main(["experiment", small_experiment(tmp_path, "a"), "--seed", "6",
                 "--out", str(tmp_path / "d.csv")]) == 0
    assert (tmp_path / "d.csv").read_bytes() != a


def test_rows_reproducible_in_isolation(tmp_path):
    cfg = experiment.ExperimentConfig(code=IRS, grid={"points": [[5, 20], [10, 30]]}, trials=4,
                                      seed=9)
    rows, _ = experiment.run_experiment(cfg)
    spec = cfg.spec()
    again = [experiment.run_trial(spec, None, 10, 30, "randomReplace", 9, 1, t) for t in range(4)]
    assert sum(r["ok"] for r in again) == rows[1]["successes"]


def test_region_grid_includes_corners():
    spec = experiment.build_spec(IRS)
    pts = experiment.make_grid(spec, {"region": {"samples": 20}})
    assert len(pts) >= 20
    for corner in [(10, 38), (24, 24), (0, 38)]:
        assert corner in pts
    assert all(decode.in_region(spec, e0, e) for e0, e in pts)


def test_config_roundtrip_and_validation():
    cfg = experiment.ExperimentConfig(code=IRS, decoder={"L": None}, grid={"points": [[1, 2]]},
                                      trials=3, adversaries=["burst"], seed=2, output="x.csv")
    again = experiment.ExperimentConfig.from_dict(yaml.safe_load(experiment.dump_yaml(cfg.to_dict())))
    assert again == cfg
    with pytest.raises(InvalidParameters):
        experiment.make_grid(cfg.spec(), {"points": [[3, 2]]})
    with pytest.raises(InvalidParameters):
        experiment.make_grid(cfg.spec(), {"points": [[0, 65]]})
    with pytest.raises(InvalidParameters):
        experiment.ExperimentConfig(code=IRS, adversaries=["nobody"])
    with pytest.raises(InvalidParameters):
        experiment.ExperimentConfig.from_dict({"code": IRS, "surprise": 1})


def test_gssb_and_ballcheck_commands(tmp_path):
    rs = {"family": "RS", "n": 12, "k": 4, "field": {"p": 17}}
    cfg = write_cfg(tmp_path / "g.yaml", code=rs, gssb={"e0": 6, "e": 6, "L": 2, "samples": 3},
                    output="g.json")
    assert main(["gssb", cfg]) == 0
    out = json.loads((tmp_path / "g.json").read_text())
    assert out["verified"] and all(s >= 3 for s in out["ball_sizes"])
    rs8 = {"family": "RS", "n": 8, "k": 2, "field": {"p": 13}}
    cfg = write_cfg(tmp_path / "b.yaml", code=rs8, ballcheck={"e0": 0, "e": 0, "trials": 5},
                    output="b.json")
    assert main(["ballcheck", cfg]) == 0
    assert json.loads((tmp_path / "b.json").read_text())["unique_rate"] == 1.0


def test_bench_command_schema(tmp_path):
    cfg = write_cfg(tmp_path / "bench.yaml", bench={"sizes": [64, 128, 256], "repetitions": 2},
                    output="bench.csv")
    assert main(["bench", cfg]) == 0
    lines = (tmp_path / "bench.csv").read_text().splitlines()
    assert lines[0] == "n,median_seconds,doubling_ratio"
    assert [l.split(",")[0] for l in lines[1:]] == ["64", "128", "256"]
    assert lines[1].split(",")[2] == "" and all(l.split(",")[2] for l in lines[2:])


def test_field_shorthand():
    spec = experiment.build_spec({"family": "RS", "n": 4, "k": 2, "q": 7})
    assert spec.field == make_field(7)
