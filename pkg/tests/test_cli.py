import json

import pytest

from cayleykit import cli
from cayleykit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# Happy paths


def test_nf(capsys):
    code, out, err = run(capsys, "nf", "lamplighter", "a b a' b")
    assert code == 0
    assert out == "# b ↑ a b # a'\n"
    assert err.startswith("steps:")
    assert "(certified)" in err


def test_nf_default_word_is_identity(capsys):
    code, out, _ = run(capsys, "nf", "zn:1")
    assert code == 0
    assert out == "eps\n"


def test_nf_json(capsys):
    code, out, _ = run(capsys, "--json", "nf", "zn:1", "a a")
    assert code == 0
    body = json.loads(out)
    assert body["word"] == "a a"
    assert body["steps"]["certified"] is True


def test_json_flag_after_subcommand(capsys):
    _, before, _ = run(capsys, "--json", "nf", "zn:1", "a a")
    _, after, _ = run(capsys, "nf", "zn:1", "a a", "--json")
    assert before == after


def test_wp(capsys):
    code, out, _ = run(capsys, "wp", "bs:1:2", "t a t' a' a'")
    assert (code, out) == (0, "true\n")
    code, out, _ = run(capsys, "wp", "bs:1:2", "t a t'")
    assert (code, out) == (0, "false\n")


def test_mul(capsys):
    code, out, _ = run(capsys, "mul", "zn:1", "a a", "a'")
    assert (code, out) == (0, "a\n")


def test_enum(capsys):
    code, out, err = run(capsys, "enum", "lamplighter", "--radius", "1")
    assert code == 0
    assert set(out.splitlines()) == {"# ↑ #", "a # ↑ #", "a' # ↑ #", "# b ↑ #"}
    assert "count: 4" in err


def test_htable(capsys):
    code, out, err = run(capsys, "htable", "lamplighter", "--max-n", "4")
    assert code == 0
    assert out.startswith("n\th\n")
    assert "h vanishes up to n = 4" in err


def test_htable_alpha_file(capsys, tmp_path):
    path = tmp_path / "alpha.json"
    path.write_text(json.dumps(
        {"a": "a", "a'": "a'", "b": "a", "#": "", "↑": ""}))
    code, out, err = run(capsys, "htable", "lamplighter",
                         "--alpha", str(path), "--max-n", "4")
    assert code == 0
    assert "4\t2" in out
    assert "NONZERO" in err


def test_qcheck(capsys):
    code, out, _ = run(capsys, "qcheck", "zn:1", "--radius", "4")
    assert code == 0
    assert "minimal C = 0.800" in out
    assert "declared 1.0" in out
    assert "growth: 0:0 1:1 2:2 3:3 4:4" in out


def test_check(capsys):
    code, out, _ = run(capsys, "check", "zn:1", "--radius", "3",
                       "--samples", "20")
    assert code == 0
    assert out.startswith("pass:")


def test_bench_table_and_determinism(capsys):
    code, out1, err = run(capsys, "bench", "zn:1", "--lens", "2,4,8")
    assert code == 0
    assert out1.splitlines()[0] == "len\tsteps\tsteps/len^2"
    assert len(out1.splitlines()) == 4
    assert err.startswith("C2 = ")
    _, out2, _ = run(capsys, "bench", "zn:1", "--lens", "2,4,8")
    assert out1 == out2


def test_manifest(capsys):
    code, out, _ = run(capsys, "manifest", "zn:2")
    assert code == 0
    body = json.loads(out)
    assert body["name"] == "zn:2"
    assert body["timeClass"] == "pf-linear"


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.startswith("cayleykit ")


# ---------------------------------------------------------------------------
# Exit codes


def test_exit_2_on_bad_expression(capsys):
    code, _, err = run(capsys, "nf", "dp(zn:1")
    assert code == 2
    assert err.startswith("error [parse]:")
    assert "position" in err


def test_exit_2_on_bad_word(capsys):
    code, _, err = run(capsys, "nf", "zn:1", "a q")
    assert code == 2
    assert "error [parse]" in err


def test_exit_2_on_membership_violation(capsys):
    code, _, err = run(capsys, "mul", "zn:1", "a a'", "a")
    assert code == 2
    assert "error [membership]" in err


def test_exit_3_on_strict_uncertified(capsys):
    code, _, err = run(capsys, "nf", "bs:1:2", "t a t'", "--strict")
    assert code == 3
    assert err.startswith("error [budget]:")


def test_exit_2_on_unreadable_alpha(capsys, tmp_path):
    code, _, err = run(capsys, "htable", "zn:1",
                       "--alpha", str(tmp_path / "missing.json"))
    assert code == 2
    assert "cannot read alpha file" in err


def test_exit_2_on_malformed_alpha(capsys, tmp_path):
    path = tmp_path / "alpha.json"
    path.write_text("{broken")
    code, _, err = run(capsys, "htable", "zn:1", "--alpha", str(path))
    assert code == 2
    assert "not JSON" in err
    path.write_text(json.dumps(["a"]))
    code, _, err = run(capsys, "htable", "zn:1", "--alpha", str(path))
    assert code == 2
    assert "must map symbols to words" in err


def test_exit_2_on_bad_lens(capsys):
    for lens in ("2,x", "0,4", ""):
        code, _, err = run(capsys, "bench", "zn:1", "--lens", lens)
        assert code == 2
        assert "error [parse]" in err


def test_exit_4_on_failed_check(capsys, monkeypatch):
    body = {"rep": "r", "oracle": "o", "cases": 5, "passed": False,
            "failures": ["word problem disagrees with o on a"]}
    monkeypatch.setattr(cli, "_call", lambda *a, **k: body)
    code, out, err = run(capsys, "check", "zn:1")
    assert code == 4
    assert out.startswith("FAIL:")
    assert "disagrees" in err
    code, out, _ = run(capsys, "--json", "check", "zn:1")
    assert code == 4
    assert json.loads(out)["passed"] is False


def test_exit_4_on_failed_qcheck(capsys, monkeypatch):
    body = {"radius": 2, "checked": 9, "minimalC": 9.0, "declaredC": 1.0,
            "ok": False, "worst": {"word": "w", "nfLength": 9, "distance": 0},
            "growth": [[0, 9]]}
    monkeypatch.setattr(cli, "_call", lambda *a, **k: body)
    code, out, _ = run(capsys, "qcheck", "zn:1")
    assert code == 4
    assert "minimal C = 9.000" in out
    code, _, _ = run(capsys, "--json", "qcheck", "zn:1")
    assert code == 4


def test_exit_4_on_oracle_kind(capsys, monkeypatch):
    async def fake(url, method, path, payload):
        return 409, {"kind": "oracle", "message": "rep and oracle differ"}
    monkeypatch.setattr(cli, "_call_async", fake)
    code, _, err = run(capsys, "wp", "zn:1", "a")
    assert code == 4
    assert err.startswith("error [oracle]:")


def test_validation_error_maps_to_exit_2(capsys):
    code, _, err = run(capsys, "qcheck", "zn:1", "--radius", "99")
    assert code == 2
    assert "invalid request" in err


def test_usage_error_is_exit_code_2_from_argparse(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    assert "invalid choice" in capsys.readouterr().err
