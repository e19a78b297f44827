import pytest

from hypermst.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_no_arguments_is_usage_error(capsys):
    code, _, err = run(capsys)
    assert code == 2
    assert "usage" in err


def test_unknown_flag(capsys):
    code, _, err = run(capsys, "constants", "--bogus", "1")
    assert code == 2
    assert "unrecognized" in err


def test_bad_number(capsys):
    assert run(capsys, "beta", "--t", "3", "--c", "abc")[0] == 2


def test_domain_error_exits_2(capsys):
    code, _, err = run(capsys, "beta", "--t", "1", "--c", "1")
    assert code == 2
    assert err.startswith("error:")


def test_constants_graph_case(capsys):
    code, out, _ = run(capsys, "constants", "--t", "2")
    assert code == 0
    assert "U_t = 1.202056" in out
    assert "L_t = 0.601028" in out


def test_beta_below_threshold(capsys):
    code, out, _ = run(capsys, "beta", "--t", "3", "--c", "0.1")
    assert code == 0
    assert "beta = 0\n" in out


def test_beta_fraction_argument(capsys):
    code, out, _ = run(capsys, "beta", "--t", "3", "--c", "1/6")
    assert code == 0
    assert "c = 0.166666666667" in out
    assert "beta = 0\n" in out


def test_simulate_is_deterministic(capsys, tmp_path):
    argv = ["simulate", "--n", "60", "--trials", "3", "--seed", "5", "--workers", "1"]
    code1, out1, _ = run(capsys, *argv, "--out", str(tmp_path / "a.csv"))
    code2, out2, _ = run(capsys, *argv, "--out", str(tmp_path / "b.csv"))
    assert code1 == code2 == 0
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    strip = lambda text: [l for l in text.splitlines() if not l.startswith(("# ", "wrote"))]
    assert strip(out1) == strip(out2)


def test_output_dir_from_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("HYPERMST_OUTPUT_DIR", str(tmp_path))
    code, out, _ = run(capsys, "giant", "--n", "500", "--c", "1/6,0.5", "--trials", "2", "--workers", "1")
    assert code == 0
    assert (tmp_path / "giant.csv").exists()
    assert "c_grid=(0.166666666667, 0.5)" in out


def test_config_file_with_override(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("n = 400\ntrials = 5\nc = 1, 2\n")
    code, out, _ = run(capsys, "decay", "--config", str(cfg), "--trials", "2", "--workers", "1",
                       "--out", str(tmp_path / "d.csv"))
    assert code == 0
    assert "n=400" in out and "trials=2" in out
    assert len((tmp_path / "d.csv").read_text().splitlines()) == 3


def test_projection_command(capsys, tmp_path):
    code, out, _ = run(capsys, "projection", "--n", "300", "--trials", "3", "--workers", "1",
                       "--out", str(tmp_path / "p.csv"))
    assert code == 0
    assert "dominance_violations = 0" in out


def test_unwritable_output(capsys, tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("")
    code, _, err = run(capsys, "simulate", "--n", "20", "--trials", "1", "--workers", "1",
                       "--out", str(blocker / "x.csv"))
    assert code == 2
    assert "blocker" in err


@pytest.mark.slow
def test_verify_passes(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--workers", "1", "--out", str(tmp_path / "v.csv"))
    assert code == 0
    assert "passes = 200" in out
    assert "clique oracle checks passed" in out
