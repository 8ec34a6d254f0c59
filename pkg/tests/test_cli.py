import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from cli_cases import CASES
from dcurve.cli import Command, main, run_command
from dcurve.parsing import Context

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out.strip(), out.err.strip()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_json(name, capsys):
    record = json.loads((GOLDEN / f"{name}.json").read_text())
    status, out, _ = run(capsys, *record["argv"], "--json")
    assert status == record["exit"]
    assert json.loads(out) == record["stdout"]
    assert list(json.loads(out))[:4] == ["verb", "inputs", "result", "witness"]


def test_json_output_is_stable(capsys):
    first = run(capsys, "resultant", "x*u - u'' - 1", "y*u - u'' - 1", "--json")
    second = run(capsys, "resultant", "x*u - u'' - 1", "y*u - u'' - 1", "--json")
    assert first == second


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["parametrize", "x'' - y'"], "not unirational; gcld = D"),
        (["resultant", "x*u - u'' - 1", "y*u - u'' - 1", "--var", "u"], "(y - x)^3"),
        (["proper", "((u''+1)/u, (u''+1)/u)"], "improper: ord_x(R)=0, expected 2"),
        (["parametrize", "y' - x' - x"], "(u', u' + u)"),
        (["invert", "(u', u + u')"], "u = y - x"),
        (["membership", "x'' - y'", "x' - y"], "D = D"),
        (["verify", "y' - x' - x", "(-u'/u^2, (u - u')/u^2)"], "true"),
        (["wronskian", "1", "t", "t^2"], "2"),
    ],
)
def test_text_output(argv, expected, capsys):
    status, out, _ = run(capsys, *argv)
    assert status == 0 and out == expected


def test_exit_codes(capsys):
    assert run(capsys, "parametrize", "x^(-1)")[0] == 2
    assert run(capsys, "gcld", "D")[0] == 2
    assert run(capsys, "implicitize", "((u''+1)/u, (u''+1)/u)")[0] == 2
    assert run(capsys, "mobius", "(u', u)", "1", "2", "2", "4")[0] == 2
    assert run(capsys, "verify", "x + u", "(u, u)")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["parametrize", "x", "--var", "x"])


def test_parse_error_text_names_position(capsys):
    status, out, err = run(capsys, "parametrize", "x + * y")
    assert status == 2 and out == ""
    assert "position 4" in err and "'*'" in err


def test_invariant_violation_exits_3(monkeypatch):
    import dcurve.cli as cli
    from dcurve.curves import InvariantError

    def boom(args, ctx):
        raise InvariantError("broken")

    verbs = dict(cli.VERBS)
    kinds, tail, opt, _ = verbs["parametrize"]
    verbs["parametrize"] = (kinds, tail, opt, boom)
    monkeypatch.setattr(cli, "VERBS", verbs)
    status, text = run_command(Command("parametrize", ["y' - x"]))
    assert status == 3 and "invariant violation" in text


def test_expressions_from_file(tmp_path, capsys):
    src = tmp_path / "exprs.txt"
    src.write_text("# improper pair\nx*u - u'' - 1\n\ny*u - u'' - 1  # second\n")
    status, out, _ = run(capsys, "resultant", "--file", str(src))
    assert status == 0 and out == "(y - x)^3"
    assert run(capsys, "resultant", "--file", str(tmp_path / "missing"))[0] == 2


def test_leading_minus_after_separator(capsys):
    status, out, _ = run(capsys, "gcld", "--", "-D - 1", "D")
    assert status == 0 and out == "1"


def test_constant_field_rejects_t():
    status, text = run_command(Command("wronskian", ["t"], Context(field="q")))
    assert status == 2


@pytest.mark.skipif(shutil.which("dcurve") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["dcurve", "parametrize", "x'' - y'"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "not unirational; gcld = D"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dcurve.cli", "gcld", "D^2", "D"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "D"
