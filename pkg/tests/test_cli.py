import io
import subprocess
import sys

import pytest

from hypershift import complete, serialize, star_extremal
from hypershift.cli import main


@pytest.fixture
def write(tmp_path):
    def _write(H_or_text, name="h.txt"):
        path = tmp_path / name
        path.write_text(H_or_text if isinstance(H_or_text, str) else serialize(H_or_text))
        return str(path)
    return _write


def run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_count_triangle(capsys, write):
    path = write("3 2\n1 2\n1 3\n2 3\n")
    assert run(capsys, ["count", path, "--kernel", "1", "--petals", "2"])[:2] == (0, "3\n")


def test_count_empty_body(capsys, write):
    path = write("6 3\n# nothing here\n")
    assert run(capsys, ["count", path, "--kernel", "2", "--petals", "2"])[:2] == (0, "0\n")


def test_count_star(capsys, write):
    path = write(star_extremal(5, 2, 2))
    assert run(capsys, ["count", path, "--kernel", "1", "--petals", "2"])[1] == "6\n"


def test_count_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("3 2\n1 2\n1 3\n"))
    assert run(capsys, ["count", "-", "--kernel", "1", "--petals", "2"])[1] == "1\n"


def test_norm(capsys, write):
    path = write(star_extremal(6, 2, 2))  # K_{1,5}
    assert run(capsys, ["norm", path, "--kernel", "1", "--power", "2"])[1] == "30\n"
    assert run(capsys, ["norm", path, "--power", "1"])[1] == "10\n"


def test_matching(capsys, write):
    code, out, _ = run(capsys, ["matching", write(complete(6, 3))])
    lines = out.splitlines()
    assert code == 0 and lines[0] == "2" and len(lines) == 3
    assert all(line.startswith("# ") for line in lines[1:])


def test_shift(capsys, write):
    code, out, _ = run(capsys, ["shift", write("3 2\n2 3\n"), "--pair", "1", "2"])
    assert code == 0 and out == "3 2\n1 3\n"


def test_stabilize(capsys, write):
    code, out, _ = run(capsys, ["stabilize", write(star_extremal(5, 2, 2))])
    assert code == 0 and out.splitlines()[0] == "# steps: 0"
    code, out, _ = run(capsys, ["stabilize", write("4 2\n3 4\n")])
    lines = out.splitlines()
    assert lines[0] == "# steps: 2"
    assert lines[-2:] == ["4 2", "1 2"]


@pytest.mark.parametrize("suite", ["identity11", "lemma24"])
def test_verify_passes(capsys, suite):
    code, out, _ = run(capsys, ["verify", suite, "--seed", "7", "--trials", "1000"])
    assert code == 0
    assert out.startswith(f"PASS {suite}: 1000 passed, 0 failed (seed 7)")


def test_verify_csv(capsys):
    code, out, _ = run(capsys, ["verify", "formulas", "--trials", "50", "--format", "csv"])
    assert code == 0 and out.splitlines() == ["suite,seed,trials,passed,failed", "formulas,7,50,50,0"]


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "lemma99"])
    assert exc.value.code == 2


def test_search(capsys):
    code, out, _ = run(capsys, ["search", "sunflower-count", "--vertices", "6", "--uniformity", "2",
                                "--forbid-matching", "2", "--petals", "2"])
    assert code == 0
    assert "max value      10" in out and "witnesses      1" in out


def test_search_formats_and_jobs(capsys):
    base = ["search", "norm", "--vertices", "5", "--uniformity", "2", "--forbid-matching", "2",
            "--petals", "2"]
    _, text1, _ = run(capsys, base + ["--format", "text"])
    _, text2, _ = run(capsys, base + ["--format", "text", "--jobs", "2"])
    assert text1 == text2 and text1.startswith("objective: norm")
    _, csv, _ = run(capsys, base + ["--format", "csv"])
    assert csv.splitlines()[1].startswith("norm,5,2,2,2,")


def test_search_guard(capsys):
    code, _, err = run(capsys, ["search", "edge-count", "--vertices", "9", "--uniformity", "2",
                                "--forbid-matching", "2"])
    assert code == 3 and err.startswith("refused:")


def test_bad_input(capsys, write):
    code, _, err = run(capsys, ["count", write("3 2\n1 4\n"), "--kernel", "1", "--petals", "2"])
    assert code == 2 and err.startswith("error:")
    code, _, _ = run(capsys, ["count", "/nonexistent/file", "--kernel", "1", "--petals", "2"])
    assert code == 2
    code, _, _ = run(capsys, ["norm", write("3 2\n1 2\n"), "--kernel", "2", "--power", "2"])
    assert code == 2


def test_counterexample(capsys):
    argv = ["counterexample", "sunflower:1,2", "--uniformity", "3", "--max-vertices", "7"]
    code, out, _ = run(capsys, argv)
    assert code == 0 and out.startswith("property: S_{1,2}^3-decrease")
    assert run(capsys, argv)[1] == out


def test_counterexample_not_found(capsys):
    code, out, _ = run(capsys, ["counterexample", "sunflower:2,2", "--uniformity", "3",
                                "--max-vertices", "5", "--trials", "20"])
    assert code == 1 and out.startswith("not found")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hypershift", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip().endswith("0.1.0")
