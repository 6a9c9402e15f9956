"""toricglue 命令行：输出、JSON 报告与退出码。"""

import json
from pathlib import Path

import pytest

import core
from toricglue_cli import main

DATA = Path(__file__).resolve().parent / "data"
EXAMPLE1 = str(DATA / "configs" / "example1.json")
FAMILY_332 = str(DATA / "configs" / "family_3_3_2.json")
DROPPED = str(DATA / "systems" / "example1_dropped.json")


@pytest.fixture(autouse=True)
def _reset_engine_config():
    yield
    core.set_engine_config(None)


class TestFamily:
    def test_emit_equations(self, capsys):
        assert main(["family", "3", "3", "2", "--p", "2", "--q", "3", "--emit-equations"]) == 0
        assert capsys.readouterr().out.splitlines() == [
            "y1^6 - x1*x3",
            "y2^6 - x2*x3",
            "y3^2 - x1*x2*y1^2*y2^2",
            "y3^3 - x1^2*x2^2*x3",
        ]

    def test_human_report(self, capsys):
        assert main(["family", "3", "3", "2"]) == 0
        out = capsys.readouterr().out
        assert "w3 = [4, 4, 2]" in out
        assert "witness G: y1^2*y2^2*y3 - x1*x2*x3" in out

    def test_n_below_three(self, capsys):
        assert main(["family", "2", "3", "2"]) == 2
        err = capsys.readouterr().err
        assert "INVALID_FAMILY" in err
        assert "n >= 3" in err

    def test_same_primes(self, capsys):
        assert main(["family", "3", "3", "2", "--p", "2", "--q", "2"]) == 2
        assert "p and q must differ" in capsys.readouterr().err

    def test_json_report(self, capsys):
        assert main(["family", "3", "4", "3", "--json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["params"] == {"n": 3, "f": 4, "g": 3}
        assert len(report["system"]["binomials"]) == 4


class TestGlue:
    def test_example1_p2(self, capsys):
        assert main(["glue", EXAMPLE1, "--p", "2"]) == 0
        out = capsys.readouterr().out
        assert "y3^2 - x1*x2*y1^2*y2^2" in out
        assert "alpha=1" in out

    def test_plain_gluing_exits_one(self, capsys):
        assert main(["glue", EXAMPLE1, "--p", "0"]) == 1
        assert "no tree found" in capsys.readouterr().out

    def test_family_shorthand_file(self, capsys):
        assert main(["glue", FAMILY_332, "--p", "3", "--json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["equations"][-1] == "y3^3 - x1^2*x2^2*x3"

    def test_missing_file(self, capsys, tmp_path):
        assert main(["glue", str(tmp_path / "none.json")]) == 2
        assert "FILE_NOT_FOUND" in capsys.readouterr().err


class TestMarkov:
    def test_example1(self, capsys):
        assert main(["markov", EXAMPLE1]) == 0
        out = capsys.readouterr().out
        assert "6 binomials" in out
        assert "x3*y3 - y1^4*y2^4" in out

    def test_invalid_bound(self, capsys):
        assert main(["markov", EXAMPLE1, "--bound", "0"]) == 2
        assert "INVALID_BOUND" in capsys.readouterr().err


class TestVerify:
    def test_example1_is_verified(self, capsys):
        assert main(["verify", EXAMPLE1, "--primes", "5,7"]) == 0
        assert capsys.readouterr().out.splitlines()[-1] == "verified"

    def test_dropped_system_fails_with_witnesses(self, capsys):
        assert main(["verify", FAMILY_332, "--primes", "5", "--against", DROPPED]) == 1
        out = capsys.readouterr().out
        assert "DIFFER" in out
        assert "witness" in out

    def test_output_file(self, tmp_path, capsys):
        target = tmp_path / "reports" / "verify.json"
        assert main(["verify", EXAMPLE1, "--primes", "5", "--output", str(target)]) == 0
        report = json.loads(target.read_text(encoding="utf-8"))
        assert report["verified"] is True
        assert report["reports"][0]["field_prime"] == 5

    def test_point_cap_exits_three(self, tmp_path, capsys):
        settings = tmp_path / "settings.json"
        settings.write_text(json.dumps({"vanishing_point_cap": 1000}), encoding="utf-8")
        assert main(["verify", EXAMPLE1, "--primes", "5", "--settings", str(settings)]) == 3
        assert "POINT_CAP_EXCEEDED" in capsys.readouterr().err

    def test_non_prime_field(self, capsys):
        assert main(["verify", EXAMPLE1, "--primes", "6"]) == 2
        assert "NOT_PRIME" in capsys.readouterr().err

    @pytest.mark.parametrize("primes", [",", " , "])
    def test_empty_prime_list_exits_two(self, primes, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", FAMILY_332, "--primes", primes, "--against", DROPPED])
        assert exc.value.code == 2
        assert "at least one prime" in capsys.readouterr().err

    def test_unwritable_output_exits_two(self, tmp_path, capsys):
        blocker = tmp_path / "blocker"
        blocker.write_text("", encoding="utf-8")
        assert main(["verify", EXAMPLE1, "--primes", "5", "--output", str(blocker / "verify.json")]) == 2
        assert "OUTPUT_WRITE_FAILED" in capsys.readouterr().err
