import json

import pytest

from coregrowth.cli import main, parse_partition


def run_cli(*argv):
    return main(list(argv))


def test_parse_partition():
    assert parse_partition("2,1,1") == (2, 1, 1)
    assert parse_partition("[4, 3, 1]") == (4, 3, 1)
    assert parse_partition("") == ()


def test_dims_command(capsys):
    assert run_cli("dims", "--k", "3", "2,1,1") == 0
    out = capsys.readouterr().out
    assert "6" in out and "sandwich" in out.splitlines()[0]


def test_dims_rejects_unbounded(capsys):
    assert run_cli("dims", "--k", "3", "4,1") == 2
    assert "error" in capsys.readouterr().err


def test_dims_all_reduced(capsys):
    assert run_cli("dims", "--k", "3", "--all-reduced") == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 7


def test_chain_command(tmp_path, capsys):
    jpath = tmp_path / "chain.json"
    cpath = tmp_path / "pi.csv"
    code = run_cli("chain", "--k", "3", "--json", str(jpath), "--csv", str(cpath))
    out = capsys.readouterr().out
    assert code == 0
    assert "lcd(pi) = 20" in out
    payload = json.loads(jpath.read_text())
    assert payload["lcd"] == 20
    assert cpath.read_text().startswith("index,parts")


def test_chain_guard(capsys):
    assert run_cli("chain", "--k", "9") == 2
    assert "guard" in capsys.readouterr().err


def test_tasep_command(capsys):
    assert run_cli("tasep", "--k", "4", "--word", "1-4-2-3-5") == 0
    out = capsys.readouterr().out
    assert "(3,1)" in out
    assert run_cli("tasep", "--k", "5", "--state", "3,3,1,1") == 0
    out = capsys.readouterr().out
    assert "4-2-3-5-1-6" in out
    assert run_cli("tasep", "--k", "3", "--state", "1") == 0
    out = capsys.readouterr().out
    assert "2-3-1-4" in out


def test_tasep_malformed(capsys):
    assert run_cli("tasep", "--k", "4", "--word", "1-1-2-3-5") == 2
    assert run_cli("tasep", "--k", "4", "--word", "1-2-3") == 2
    assert run_cli("tasep", "--k", "3") == 2


def test_verify_all_small(capsys, tmp_path):
    jpath = tmp_path / "report.json"
    assert run_cli("verify", "--k", "2", "--suite", "all", "--json", str(jpath)) == 0
    out = capsys.readouterr().out
    assert "[PASS]" in out and "hard failures" in out
    payload = json.loads(jpath.read_text())
    assert payload["command"] == "verify"
    assert all(v["status"] == "PASS" for v in payload["verifiers"])


def test_simulate_command(tmp_path, capsys):
    cfg = {
        "k": 3,
        "n": 3000,
        "seed": 1,
        "outputs": {"boundary_csv": str(tmp_path / "b.csv"), "svg": str(tmp_path / "o.svg")},
    }
    cpath = tmp_path / "run.json"
    cpath.write_text(json.dumps(cfg))
    assert run_cli("simulate", "--config", str(cpath)) == 0
    out = capsys.readouterr().out
    assert "rho_hat" in out
    first = (tmp_path / "b.csv").read_text()
    assert run_cli("simulate", "--config", str(cpath)) == 0
    capsys.readouterr()
    assert (tmp_path / "b.csv").read_text() == first  # same seed, same bytes


def test_simulate_bad_config(tmp_path, capsys):
    cpath = tmp_path / "bad.json"
    cpath.write_text('{"k": 3}')
    assert run_cli("simulate", "--config", str(cpath)) == 2
    assert run_cli("simulate") == 2


def test_cache_round_trip(tmp_path, capsys):
    cache = tmp_path / "cache"
    assert run_cli("--cache", str(cache), "dims", "--k", "3", "2,1") == 0
    assert (cache / "dimtable_k3.json").exists()
    assert run_cli("--cache", str(cache), "dims", "--k", "3", "2,1") == 0


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        run_cli("bogus-command")
    assert exc.value.code == 2


def test_verify_theorems_suite_k3(capsys):
    assert run_cli("verify", "--k", "3", "--suite", "theorems") == 0
    out = capsys.readouterr().out
    assert "[PASS] (theorem)" in out and "0 hard failures" in out
