import json
import subprocess
import sys

import pytest

from moduncert import frames as frames_mod
from moduncert import is_parseval
from moduncert.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def strip_timestamp(text):
    return "\n".join(line for line in text.splitlines() if '"timestamp"' not in line)


@pytest.fixture
def pair(tmp_path, capsys):
    code, _, _ = run_cli(capsys, "gen", "--kind", "fourier-pair", "--n", "2",
                         "--d", "1", "--out", str(tmp_path / "pair"))
    assert code == 0
    return tmp_path / "pair" / "a.json", tmp_path / "pair" / "b.json"


def test_gen_then_coherence(pair, capsys):
    a, b = pair
    code, out, _ = run_cli(capsys, "coherence", str(a), str(b))
    assert code == 0
    assert out.strip() == "0.707107"


def test_gen_written_frames_round_trip(pair):
    a, _ = pair
    doc = json.loads(a.read_text())
    assert set(doc) == {"header", "n", "m", "d", "vectors"}
    assert set(doc["header"]) == {"timestamp", "tool", "version", "command"}
    body = {k: v for k, v in doc.items() if k != "header"}
    frame = frames_mod.from_json(doc)
    assert is_parseval(frame)
    assert json.dumps(frames_mod.to_json(frame)) == json.dumps(body)


def test_entropy_command(tmp_path, pair, capsys):
    a, _ = pair
    code, _, _ = run_cli(capsys, "gen", "--kind", "unit-vector", "--n", "2",
                         "--d", "1", "--seed", "7", "--out", str(tmp_path / "v.json"))
    assert code == 0
    code, out, _ = run_cli(capsys, "entropy", str(a), str(tmp_path / "v.json"),
                           "--out", str(tmp_path / "e.json"))
    assert code == 0
    assert out.startswith("entropy: min=")
    doc = json.loads((tmp_path / "e.json").read_text())
    assert doc["kind"] == "entropy"
    assert doc["in_domain"] is True


def test_verify_writes_report_and_csv(tmp_path, pair, capsys):
    a, b = pair
    rep, csv_path = tmp_path / "rep.json", tmp_path / "rep.csv"
    code, out, _ = run_cli(capsys, "verify", str(a), str(b), "--bound", "deutsch",
                           "--trials", "10000", "--seed", "7",
                           "--out", str(rep), "--csv", str(csv_path))
    assert code == 0
    assert "-> OK" in out
    doc = json.loads(rep.read_text())
    assert doc["kind"] == "verification"
    assert doc["bound_value"] == pytest.approx(0.31669436764074993, abs=1e-12)
    assert doc["violations"] == []
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "trial,min_gap,worst_fiber"
    assert len(lines) == 10001


def test_verify_reports_deterministic_modulo_timestamp(tmp_path, pair, capsys):
    a, b = pair
    texts = []
    for name in ("r1.json", "r2.json"):
        code, _, _ = run_cli(capsys, "verify", str(a), str(b), "--trials", "50",
                             "--seed", "3", "--out", str(tmp_path / name))
        assert code == 0
        texts.append((tmp_path / name).read_text())
    assert strip_timestamp(texts[0]) == strip_timestamp(texts[1])


def test_search_command(tmp_path, pair, capsys):
    a, b = pair
    code, out, _ = run_cli(capsys, "search", str(a), str(b),
                           "--bound", "maassen-uffink", "--restarts", "4",
                           "--max-iters", "200", "--seed", "5",
                           "--out", str(tmp_path / "s.json"))
    assert code == 0
    assert "best_gap" in out
    doc = json.loads((tmp_path / "s.json").read_text())
    assert doc["kind"] == "search"
    assert abs(doc["best_gap"]) < 1e-3
    assert doc["boundary_grazing"] is True


def test_buzano_and_chain_commands(tmp_path, pair, capsys):
    a, b = pair
    for seed, name in ((1, "x"), (2, "y"), (3, "z")):
        run_cli(capsys, "gen", "--kind", "unit-vector", "--n", "2", "--d", "1",
                "--seed", str(seed), "--out", str(tmp_path / f"{name}.json"))
    code, out, _ = run_cli(capsys, "buzano", str(tmp_path / "x.json"),
                           str(tmp_path / "y.json"), str(tmp_path / "z.json"))
    assert code == 0
    assert "holds=true" in out
    code, out, _ = run_cli(capsys, "chain", str(a), str(b), str(tmp_path / "x.json"))
    assert code == 0
    assert out.strip() == "chain: holds=true"


def test_malformed_json_exits_1(tmp_path, pair, capsys):
    a, _ = pair
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    code, _, err = run_cli(capsys, "coherence", str(bad), str(a))
    assert code == 1
    assert "malformed JSON" in err
    missing = tmp_path / "missing.json"
    code, _, err = run_cli(capsys, "coherence", str(missing), str(a))
    assert code == 1
    assert "cannot read" in err


def test_field_diagnostics_exit_1(tmp_path, pair, capsys):
    a, _ = pair
    doc = json.loads(a.read_text())
    doc["vectors"][0]["entries"][0][0] = [1.0]
    bad = tmp_path / "badfield.json"
    bad.write_text(json.dumps(doc))
    code, _, err = run_cli(capsys, "coherence", str(bad), str(a))
    assert code == 1
    assert "badfield.json" in err


def test_non_parseval_exits_1(tmp_path, pair, capsys):
    a, b = pair
    doc = json.loads(a.read_text())
    doc["vectors"][0]["entries"][0][0] = [5.0, 0.0]
    corrupt = tmp_path / "corrupt.json"
    corrupt.write_text(json.dumps(doc))
    code, _, err = run_cli(capsys, "verify", str(corrupt), str(b), "--trials", "5")
    assert code == 1
    assert "not Parseval" in err


def test_shape_mismatch_exits_1(tmp_path, pair, capsys):
    a, _ = pair
    code, _, _ = run_cli(capsys, "gen", "--kind", "onb", "--n", "3", "--d", "1",
                         "--out", str(tmp_path / "f3.json"))
    assert code == 0
    code, _, err = run_cli(capsys, "verify", str(a), str(tmp_path / "f3.json"),
                           "--trials", "5")
    assert code == 1
    assert "mismatch" in err


def test_usage_error_exits_1(capsys):
    assert run_cli(capsys, "verify")[0] == 1
    assert run_cli(capsys, "gen", "--kind", "nope", "--n", "2", "--out", "x")[0] == 1
    assert run_cli(capsys, "verify", "a", "b", "--trials", "0")[0] == 1


def test_out_dir_env_resolves_relative_paths(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("MODUNCERT_OUT_DIR", str(tmp_path / "outputs"))
    code, _, _ = run_cli(capsys, "gen", "--kind", "onb", "--n", "2", "--d", "1",
                         "--out", "sub/frame.json")
    assert code == 0
    assert (tmp_path / "outputs" / "sub" / "frame.json").exists()


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "moduncert", "gen", "--kind", "fourier-pair",
         "--n", "2", "--d", "1", "--out", str(tmp_path / "p")],
        capture_output=True, text=True)
    assert proc.returncode == 0
    proc = subprocess.run(
        [sys.executable, "-m", "moduncert", "coherence",
         str(tmp_path / "p" / "a.json"), str(tmp_path / "p" / "b.json")],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "0.707107"
