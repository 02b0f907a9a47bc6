import json

import pytest

from dblcat.cli import main
from dblcat.presentation import shipped_presentation_dir
from dblcat.suite import DEFAULT_CHECKS, SuiteConfig, run_suite

IDEMPOTENT = shipped_presentation_dir() / "idempotent.dcat"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_square_passes_with_text_report(capsys):
    code, out, _ = run(capsys, "check", "--instance", "square")
    assert code == 0
    assert "PASS  double" in out and "FAIL" not in out


def test_every_check_passes_on_small_span():
    report = run_suite(SuiteConfig(instance="span", size=1, level="symmetric", checks=("all",)))
    assert report.ok, report.summary()
    assert {c.name for c in report.checks} >= set(DEFAULT_CHECKS)


@pytest.mark.parametrize("argv", [
    ("check", "--checks", "double,nonsense"),
    ("check", "--size", "9"),
    ("check", "--instance", "span", "--file", "x.dcat"),
    ("check", "--file", "/nonexistent/x.dcat"),
    ("frobnicate",),
])
def test_configuration_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_parse_error_exits_3(capsys, tmp_path):
    bad = tmp_path / "bad.dcat"
    bad.write_text("double X\nobject\n")
    code, _, err = run(capsys, "check", "--file", str(bad))
    assert code == 3 and "ParseError" in err


def test_empty_check_list_gives_empty_report(capsys):
    code, out, _ = run(capsys, "check", "--instance", "square", "--checks", "", "--out", "json")
    assert code == 0
    assert json.loads(out)["checks"] == []


def test_failing_presentation_exits_1_and_replays(capsys, tmp_path):
    bad = tmp_path / "bad.dcat"
    bad.write_text(IDEMPOTENT.read_text().replace("vcomp iM e = e\n", "vcomp iM e = iM\n"))
    saved = tmp_path / "report.json"
    code, out, _ = run(capsys, "check", "--file", str(bad), "--checks", "double", "--out", "json",
                       "--output", str(saved))
    assert code == 1 and out == ""
    report = json.loads(saved.read_text())
    witnesses = [w for c in report["checks"] for w in c["witnesses"]]
    assert witnesses
    code, out, _ = run(capsys, "replay", str(saved))
    assert code == 0
    assert out.count("reproduced") == len(witnesses) and "NOT" not in out


def test_replay_of_a_fixed_input_is_not_reproduced(capsys, tmp_path):
    bad = tmp_path / "bad.dcat"
    bad.write_text(IDEMPOTENT.read_text().replace("vcomp iM e = e\n", "vcomp iM e = iM\n"))
    saved = tmp_path / "report.json"
    run(capsys, "check", "--file", str(bad), "--checks", "double", "--out", "json", "--output", str(saved))
    bad.write_text(IDEMPOTENT.read_text())
    code, out, _ = run(capsys, "replay", str(saved))
    assert code == 1 and "NOT reproduced" in out
