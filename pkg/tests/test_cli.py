"""The effectkit command line: reports, exit codes, and census determinism."""
import io
import subprocess
import sys


from effectkit.cli import EXIT_CAP, EXIT_FALSE, EXIT_INPUT, EXIT_OK, emit_census, run

from conftest import FIXTURES


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def fields(text):
    return dict(line.split(" = ", 1) for line in text.splitlines() if " = " in line)


def test_validate_fixtures():
    code, out, _ = call("validate", *(str(FIXTURES / f) for f in ("mo2.ea", "c3.mv", "z3.grp")))
    assert code == EXIT_OK
    assert out.count("valid = true") == 3


def test_invalid_algebra_exits_one(tmp_path):
    bad = tmp_path / "bad.ea"
    bad.write_text("elements: 0 h u\nzero: 0\nunit: u\nsum:\n  h + h = h\n")
    code, out, _ = call("validate", str(bad))
    assert code == EXIT_FALSE
    assert "valid = false" in out


def test_parse_error_exits_two(tmp_path):
    bad = tmp_path / "bad.ea"
    bad.write_text("elements: 0 u\nzero: 0\nunit: u\nsum:\n  0 + q = u\n")
    code, out, err = call("classify", str(bad))
    assert code == EXIT_INPUT and out == ""
    assert "line 5" in err


def test_missing_file_and_missing_arguments():
    assert call("classify", "/nonexistent.ea")[0] == EXIT_INPUT
    assert call("classify")[0] == EXIT_INPUT
    assert call("zoo")[0] == EXIT_INPUT


def test_cap_exceeded_exits_three(monkeypatch):
    monkeypatch.setenv("EFFECTKIT_CAP", "3")
    code, _, err = call("enumerate", "--max", "5")
    assert code == EXIT_CAP and "cap" in err


def test_classify_report():
    code, out, _ = call("classify", str(FIXTURES / "mo2.ea"))
    f = fields(out)
    assert code == 0
    assert f["is_oml"] == "true" and f["is_mv_effect"] == "false"
    assert f["center"] == "[0, u]"


def test_measures_report():
    f = fields(call("measures", str(FIXTURES / "c2.ea"))[1])
    assert f["vertices"] == "1" and f["vertex.0"] == "0:0, h:1/2, u:1"


def test_unigroup_report():
    f = fields(call("unigroup", str(FIXTURES / "b2.ea"))[1])
    assert f["rank"] == "2" and f["unit"] == "(1, 1)" and f["torsion"] == "[]"
    assert f["interpolation"] == "true (up to k=2)"
    assert f["correspondence.riesz_iff_interpolation"].startswith("true / true agree=true")


def test_compress_reports():
    f = fields(call("compress", str(FIXTURES / "nonlattice.grp"))[1])
    assert f["general_comparability"] == "false"
    assert f["witness.general_comparability"] == "(-1, 1)"
    f = fields(call("compress", "--box", "3", str(FIXTURES / "fb2_u2.grp"))[1])
    assert f["rgc"] == "true (up to k=3)"


def test_harness_exit_codes():
    code, out, _ = call("harness87", str(FIXTURES / "fb2_u2.grp"))
    assert code == EXIT_OK and fields(out)["heyting_formula"] == "true"
    code, out, _ = call("harness87", str(FIXTURES / "mo2.ea"))
    assert code == EXIT_OK and fields(out)["agree"] == "true"


def test_zoo_command_emits_parseable_text():
    from effectkit.formats import parse
    from effectkit.zoo import zoo
    code, out, _ = call("zoo", "chain(2)")
    assert code == 0 and parse(out).payload == zoo("chain(2)")


def test_census_golden_and_deterministic():
    golden = (FIXTURES / "census_max5.txt").read_text()
    assert emit_census(5) == golden
    assert emit_census(5, workers=3) == golden
    assert call("enumerate", "--max", "5")[1] == golden


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "effectkit.cli", "center",
                           str(FIXTURES / "b2.ea")], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "subject = b2\ncenter = [0, a, b, u]\n"
