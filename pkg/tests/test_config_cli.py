import json

import pytest

from kae.bundled import fixture_path, model_path
from kae.cli import main
from kae.config import RunConfig, read_config_file, resolve_config
from kae.errors import ConfigError

REF = str(fixture_path("conf_mini_ref.json"))
CAND = str(fixture_path("conf_mini_cand.json"))
GOLD = str(fixture_path("conf_mini_gold.json"))


def stderr_json(capsys):
    return json.loads(capsys.readouterr().err.strip().splitlines()[-1])


def test_defaults():
    cfg = resolve_config({}, env={})
    assert (cfg.lam, cfg.preselect_th, cfg.prop_th, cfg.decision_th, cfg.seed, cfg.ratio) == (0.5, 0.3, 0.75, 0.5, 42, 10)


def test_precedence(tmp_path):
    path = tmp_path / "kae.conf"
    path.write_text("# run settings\nlambda = 0.3\nseed = 5\nratio = 4\n", encoding="utf-8")
    assert resolve_config({}, str(path), env={}).seed == 5
    cfg = resolve_config({}, str(path), env={"KAE_SEED": "9"})
    assert (cfg.lam, cfg.seed, cfg.ratio) == (0.3, 9, 4)
    cfg = resolve_config({"seed": 11, "lam": 0.7, "ratio": None}, str(path), env={"KAE_SEED": "9"})
    assert (cfg.lam, cfg.seed, cfg.ratio) == (0.7, 11, 4)


@pytest.mark.parametrize("change", [
    {"lam": 0.0}, {"lam": 1.5}, {"preselect_th": 2.5}, {"prop_th": 0.0}, {"decision_th": 1.2},
    {"ratio": 0}, {"split": 1.0}, {"model_kind": "svm"}, {"preselect_direction": "sideways"},
    {"jobs": 0}, {"embeddings": "/nonexistent/vectors.txt"},
])
def test_invalid_values(change):
    with pytest.raises(ConfigError):
        RunConfig(**change)


def test_config_file_errors(tmp_path):
    bad = tmp_path / "bad.conf"
    bad.write_text("colour = blue\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        read_config_file(bad)
    bad.write_text("seed = many\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        read_config_file(bad)
    bad.write_text("just words\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        read_config_file(bad)
    with pytest.raises(ConfigError):
        read_config_file(tmp_path / "missing.conf")


def test_config_serialized_without_jobs():
    doc = RunConfig(jobs=3).to_dict()
    assert "jobs" not in doc and doc["lam"] == 0.5


def test_cli_lambda_out_of_range(capsys):
    assert main(["match-props", "--ref", REF, "--cand", CAND, "--lambda", "1.5"]) == 2
    err = stderr_json(capsys)
    assert err["stage"] == "config" and "lambda" in err["message"]


def test_cli_missing_input(capsys, tmp_path):
    assert main(["align", "--ref", str(tmp_path / "nope.json"), "--cand", CAND]) == 2
    assert stderr_json(capsys)["stage"] == "ingest"


def test_cli_match_props_and_sim(capsys, tmp_path):
    assert main(["match-props", "--ref", REF, "--cand", CAND, "--jobs", "1"]) == 0
    matches = json.loads(capsys.readouterr().out)
    assert any(m["ref"] == "name" and m["cand"] == "name" for m in matches)
    out = tmp_path / "sim.csv"
    assert main(["sim", "--ref", REF, "--cand", CAND, "--kind", "entity", "--out", str(out)]) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("refId,candId")
    assert len(lines) == 1 + 6 * 13


def test_cli_align_eval_extend(capsys, tmp_path):
    align = tmp_path / "align.json"
    assert main(["align", "--ref", REF, "--cand", CAND, "--gold", GOLD, "--out", str(align)]) == 0
    assert "F1" in capsys.readouterr().err
    report = tmp_path / "report.json"
    assert main(["eval", "--pred", str(align), "--gold", GOLD, "--out", str(report)]) == 0
    assert json.loads(report.read_text())["f1"] >= 0.9
    ext, ext_report = tmp_path / "ext.json", tmp_path / "ext_report.json"
    assert main(["extend", "--ref", REF, "--cand", CAND, "--alignment", str(align),
                 "--out", str(ext), "--report", str(ext_report)]) == 0
    assert json.loads(ext_report.read_text())["merged_etypes"]


def test_cli_train(capsys, tmp_path):
    args = ["train", "--task", "entity", "--out", str(tmp_path / "m.bin"), "--model-kind", "gbdt", "--holdout"]
    for name in ("biblio_mini", "event_mini"):
        args += ["--ref", str(fixture_path(f"{name}_ref.json")), "--cand", str(fixture_path(f"{name}_cand.json")),
                 "--gold", str(fixture_path(f"{name}_gold.json"))]
    assert main(args) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["task"] == "entity" and 0.0 <= summary["test_accuracy"] <= 1.0
    assert (tmp_path / "m.bin").stat().st_size > 0


def test_cli_train_mismatched_inputs(capsys, tmp_path):
    assert main(["train", "--task", "etype", "--ref", REF, "--cand", CAND, "--gold", GOLD,
                 "--ref", REF, "--out", str(tmp_path / "m.bin")]) == 2
    assert stderr_json(capsys)["stage"] == "config"


def test_cli_wrong_model_for_task(capsys):
    assert main(["align", "--ref", REF, "--cand", CAND, "--model", str(model_path("entity"))]) == 2
    assert stderr_json(capsys)["stage"] == "etype-matcher"


def test_cli_seed_env(monkeypatch, capsys, tmp_path):
    monkeypatch.setenv("KAE_SEED", "not-a-number")
    assert main(["match-props", "--ref", REF, "--cand", CAND]) == 2
    assert stderr_json(capsys)["stage"] == "config"
    # a malformed environment value is reported even when a flag would override it
    assert main(["match-props", "--ref", REF, "--cand", CAND, "--seed", "3"]) == 2
    monkeypatch.setenv("KAE_SEED", "8")
    assert main(["match-props", "--ref", REF, "--cand", CAND]) == 0
