import io
import json
import subprocess
import sys

import pytest

from lorenzgame import fixture_path, parse_game
from lorenzgame.cli import main, rational

EX46 = fixture_path("ex46.json")
EX29 = fixture_path("ex29.json")


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_rational_format():
    from fractions import Fraction
    assert rational(Fraction(6)) == "6"
    assert rational(Fraction(13, 2)) == "13/2"
    assert rational(Fraction(-4, 6)) == "-2/3"


def test_egalitarian_table():
    code, out, _ = run("egalitarian", "--game", EX46)
    assert code == 0
    assert out.splitlines()[-3:] == ["  (60, 70, 80)", "  (64, 65, 81)", "  (65, 64, 81)"]


def test_dutta_ray_rationals():
    code, out, _ = run("dutta-ray", "--game", EX29)
    assert code == 0 and out.rstrip().endswith("solution: (6, 7, 8)")
    code, out, _ = run("dutta-ray", "--game", EX29, "--format", "json")
    assert json.loads(out)["result"]["solution"] == ["6", "7", "8"]


def test_core_member_reports_violation():
    for payoff, total in (("64,65,81", 146), ("65,64,81", 145)):
        code, out, _ = run("core-member", "--game", EX46, "--payoff", payoff, "--format", "json")
        assert code == 1
        v = json.loads(out)["result"]["violation"]
        assert (v["coalition"], v["payoff_sum"], v["worth"]) == ("2,3", total, 150)
    code, _, _ = run("core-member", "--game", EX46, "--payoff", "60,70,80")
    assert code == 0


def test_reduce_and_save(tmp_path):
    path = tmp_path / "reduced.json"
    code, out, _ = run("reduce", "--game", EX46, "--coalition", "2,3", "--payoff", "64,65,81",
                       "--save", str(path), "--format", "json")
    assert code == 0
    assert json.loads(out)["result"]["worths"] == {"2": 60, "3": 80, "2,3": 146}
    assert parse_game(path.read_text()).worth == (0, 60, 80, 146)
    code, out, _ = run("egalitarian", "--game", str(path), "--format", "json")
    assert json.loads(out)["result"]["vectors"] == [[66, 80]]


def test_verify_exit_codes():
    code, out, _ = run("verify", "--property", "ega-rgp", "--game", EX46, "--format", "json")
    assert code == 1
    ce = json.loads(out)["result"]["counterexample"]
    assert ce["x"] == [64, 65, 81] and ce["coalition"] == "2,3"
    code, _, _ = run("verify", "--property", "lss-rgp", "--game", EX46)
    assert code == 0


def test_check_convex_negative(tmp_path):
    path = tmp_path / "g.json"
    path.write_text('{"n": 2, "v": {"1": 1, "2": 1, "1,2": 1}}')
    code, out, _ = run("check-convex", "--game", str(path))
    assert code == 1 and "v({1}) + v({2}) = 2 > 1" in out


@pytest.mark.parametrize("argv", [
    ["bogus"],
    [],
    ["lss"],
    ["lss", "--game", EX46, "--frobnicate"],
    ["core-member", "--game", EX46, "--payoff", "1,2"],
    ["core-member", "--game", EX46, "--payoff", "a,b,c"],
    ["reduce", "--game", EX46, "--coalition", "1,2,3", "--payoff", "60,70,80"],
    ["lss", "--game", "/nonexistent/game.json"],
    ["lss", "--game", EX46, "--budget", "0"],
])
def test_input_errors_exit_2(argv):
    code, _, _ = run(*argv)
    assert code == 2


def test_bad_game_file(tmp_path):
    path = tmp_path / "g.json"
    path.write_text('{"n": 2, "v": {"1": 1, "2": 1}}')
    code, _, err = run("lss", "--game", str(path))
    assert code == 2 and '"1,2"' in err


def test_budget_exit_3(monkeypatch):
    assert run("core", "--game", EX46, "--budget", "100")[0] == 3
    monkeypatch.setenv("LORENZGAME_BUDGET", "100")
    assert run("core", "--game", EX46)[0] == 3
    monkeypatch.setenv("LORENZGAME_BUDGET", "lots")
    assert run("core", "--game", EX46)[0] == 2


def test_non_convex_structural_command_is_input_error(tmp_path):
    path = tmp_path / "g.json"
    path.write_text('{"n": 2, "v": {"1": 1, "2": 1, "1,2": 1}}')
    assert run("canonical", "--game", str(path))[0] == 2


@pytest.mark.parametrize("argv", [
    ["check-convex"], ["core"], ["core", "--coalition", "1,2"], ["lss"], ["decmin"],
    ["canonical"], ["egalitarian"], ["lorenz-core"], ["lorenz-core", "--coalition", "2,3"],
    ["dutta-ray"], ["core-member", "--payoff", "60,70,80"],
    ["reduce", "--coalition", "2,3", "--payoff", "64,65,81"],
    ["verify", "--property", "core-crgp"],
])
def test_output_is_deterministic_and_json_round_trips(argv):
    first = run(*argv, "--game", EX46, "--format", "json")
    second = run(*argv, "--game", EX46, "--format", "json")
    assert first == second and first[0] == 0
    doc = json.loads(first[1])
    assert json.dumps(doc, indent=2, ensure_ascii=False) + "\n" == first[1]
    assert doc["game"] == {"n": 3, "supermodular": True}
    assert run(*argv, "--game", EX46) == run(*argv, "--game", EX46)


def test_random_game_file():
    code, out, _ = run("random", "--seed", "3", "--n", "4", "--bound", "6")
    assert code == 0 and parse_game(out).n == 4
    assert run("random", "--seed", "3", "--n", "4", "--bound", "6")[1] == out
    code, out, _ = run("random", "--seed", "3", "--n", "3", "--bound", "6", "--noise", "2")
    assert code == 0 and parse_game(out).n == 3


def test_bundled_fixture_by_name():
    code, out, _ = run("lss", "--game", "ex46.json")
    assert code == 0 and "(60, 70, 80)" in out


def test_search_egalitarian():
    code, out, _ = run("search-egalitarian", "--count", "5", "--n", "3", "--format", "json")
    result = json.loads(out)["result"]
    assert code == 0 and result["games"] == 5
    assert isinstance(result["seeds_without_core_egalitarian"], list)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lorenzgame", "lss", "--game", EX46],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "(60, 70, 80)" in proc.stdout
