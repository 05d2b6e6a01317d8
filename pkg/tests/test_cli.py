import subprocess
import sys

import pytest

from vazhu.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_identities(capsys):
    code, out, _ = call(capsys, "verify", "identities", "--max-s", "10")
    assert code == 0
    assert "summary certificate=0 fail=0 inconclusive=0 pass=33" in out


def test_bullet_of_odd_vector_is_zero(capsys):
    code, out, _ = call(capsys, "product", "--family", "heis", "--g", "neg1", "--T", "2",
                        "--n", "0/2", "--op", "bullet", "--u", "[1]", "--v", "[1]")
    assert code == 0 and out == "0\n"


def test_product_values(capsys):
    _, out, _ = call(capsys, "product", "--op", "bullet", "--u", "[1]", "--v", "[1]")
    assert out == "1*[1,1] + 1/12*[]\n"
    _, out, _ = call(capsys, "product", "--family", "vir", "--c", "1/2", "--op", "star",
                     "--u", "[2]", "--v", "[2]")
    assert "." not in out


def test_small_caps_are_inconclusive(capsys):
    code, out, _ = call(capsys, "verify", "assoc", "--family", "heis", "--g", "neg1", "--T", "2",
                        "--n", "1/2", "--seed", "7", "--P", "1")
    assert code == 3
    assert "status=inconclusive" in out


def test_default_caps_certify(capsys):
    code, out, _ = call(capsys, "verify", "assoc", "--family", "heis", "--g", "neg1", "--T", "2",
                        "--n", "1/2", "--seed", "7")
    assert code == 0 and "inconclusive=0" in out


def test_reports_are_deterministic(capsys, tmp_path):
    argv = ["verify", "ideal", "--family", "vir", "--c", "1/2", "--n", "1", "--seed", "11",
            "--samples", "5", "--W", "2"]
    first = call(capsys, *argv)
    second = call(capsys, *argv)
    assert first == second
    other = call(capsys, *argv[:-4], "--seed", "12", "--samples", "5", "--W", "2")
    assert other[1] != first[1]


def test_usage_errors(capsys):
    assert call(capsys, "verify", "nonsense")[0] == 2
    assert call(capsys, "product", "--op", "bullet", "--u", "[1]")[0] == 2
    assert call(capsys, "product", "--T", "2", "--n", "1/3", "--op", "bullet", "--u", "[1]",
                "--v", "[1]")[0] == 2
    assert call(capsys, "product", "--family", "vir", "--op", "bullet", "--u", "[2]", "--v", "[2]")[0] == 2
    assert call(capsys, "verify", "unit", "--P", "5,3")[0] == 2


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# twisted boson\nfamily = heis\ng = neg1\nT = 2\nn = 1/2\nW = 2\n")
    code, out, _ = call(capsys, "verify", "unit", "--config", str(cfg))
    assert code == 0 and "n=1/2" in out and "g=neg1" in out
    code, out, _ = call(capsys, "verify", "unit", "--config", str(cfg), "--n", "2/2")
    assert "n=2/2" in out
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    assert call(capsys, "verify", "unit", "--config", str(bad))[0] == 2


def test_schedule_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("VAZHU_SCHEDULE", "2,4")
    _, out, _ = call(capsys, "verify", "unit", "--W", "1")
    assert "schedule=2,4" in out


def test_quotient_and_export(capsys, tmp_path):
    code, out, _ = call(capsys, "quotient", "--W", "4", "--P", "4,8")
    assert code == 0 and "dim=5" in out and "e1*e1 = 1/12*e0 + 1*e2" in out
    dest = tmp_path / "table.csv"
    code, out, _ = call(capsys, "export", "--W", "2", "--P", "6", "--kind", "classic", "--out", str(dest))
    assert code == 0 and dest.read_text() == out
    assert out.splitlines()[0] == "left,right,result,coefficient"
    assert "." not in out.replace("[", "").replace("]", "")


def test_ideal_span_command(capsys):
    code, out, _ = call(capsys, "ideal-span", "--family", "vir", "--c", "1/2", "--P", "2,4")
    assert code == 0 and len(out.splitlines()) == 2


@pytest.mark.parametrize("suite,extra", [
    ("skew", ["--W", "2"]),
    ("residue", ["--family", "heis", "--g", "neg1", "--T", "2", "--n", "1/2", "--W", "2"]),
    ("bullet-forms", ["--family", "heis", "--g", "neg1", "--T", "2", "--n", "1", "--W", "3"]),
    ("surjection", ["--family", "vir", "--c", "1/2", "--T", "2", "--n", "3/2", "--W", "2"]),
    ("classic-bracket", ["--family", "vir", "--c", "1/2", "--W", "2"]),
    ("bracket-iso", ["--W", "2", "--n", "1"]),
    ("conformal-independence", ["--W", "2"]),
    ("central-omega", ["--W", "3"]),
])
def test_suites_pass(capsys, suite, extra):
    code, out, _ = call(capsys, "verify", suite, *extra)
    assert code == 0, out
    assert "fail=0" in out


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "vazhu.cli", "verify", "identities", "--max-s", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.endswith("exit 0\n")
