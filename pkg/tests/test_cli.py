import subprocess
import sys

import pytest

from intcpx.cli import run

from test_covering import GOLDEN_FILE


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cpx_and_defect(capsys):
    assert call(capsys, "cpx", "11") == (0, "8\n", "")
    code, out, _ = call(capsys, "defect", "28", "--digits", "10")
    assert code == 0 and out == "10 - 3*log3(28)\t0.9006902311\n"
    assert call(capsys, "defect", "9")[1] == "6 - 3*log3(9)\t0.000000\n"


def test_table_file_flow(capsys, tmp_path):
    path = str(tmp_path / "t.icx")
    assert call(capsys, "table", "build", "--limit", "1000", "--out", path)[0] == 0
    assert call(capsys, "cpx", "997", "--table", path)[0] == 0
    code, _, err = call(capsys, "cpx", "1001", "--table", path)
    assert code == 3 and "exceeds" in err
    assert call(capsys, "cpx", "5", "--table", str(tmp_path / "missing.icx"))[0] == 2


def test_leaders(capsys):
    code, out, _ = call(capsys, "leaders", "--below", "0.5", "--limit", "1000", "--digits", "3")
    assert code == 0
    assert out.splitlines() == ["2\t2\t0.107", "3\t3\t0.000", "4\t4\t0.214", "8\t6\t0.322", "16\t8\t0.429"]
    closed = call(capsys, "leaders", "--below", "0", "--closed", "--limit", "100")[1]
    assert closed.splitlines()[0].startswith("3\t3\t")


def test_parse_and_canon(capsys):
    code, out, _ = call(capsys, "parse", "2((73(3x1+1)x2+6)(2x3+1)x4+1)")
    assert code == 0
    assert "expression: 2((73(3x1+1)x2+6)(2x3+1)x4+1)" in out
    assert "polynomial: 876x1x2x3x4+" in out
    a = call(capsys, "canon", "(2x1+1)(3x2+1)")[1]
    b = call(capsys, "canon", "(3x1+1)(2x2+1)")[1]
    assert a == b


def test_polycpx(capsys):
    assert call(capsys, "polycpx", "4x1+2") == (0, "5\n", "")


@pytest.mark.parametrize(
    "argv, code",
    [
        (["parse", "x1+x2"], 2),
        (["parse", "(2"], 2),
        (["cpx", "0"], 2),
        (["cpx", "abc"], 2),
        (["leaders", "--below", "0.1e1", "--limit", "10"], 2),
        (["frobnicate"], 2),
        (["cpx", str(2**40)], 3),
    ],
)
def test_error_exit_codes(capsys, argv, code):
    assert call(capsys, *argv)[0] == code


def test_truncate_expand_verify(capsys, tmp_path):
    src = tmp_path / "src.cover"
    src.write_text("(cover (provenance \"golden\") (pair (C 4) (tree (node 1 (edge 1 (node 1 (edge 1 (node 2))))))))\n")
    code, out, _ = call(capsys, "truncate", "--cover", str(src), "--threshold", "1.92")
    assert code == 0 and out == GOLDEN_FILE
    dst = tmp_path / "out.cover"
    code, out, _ = call(capsys, "truncate", "--cover", str(src), "--threshold", "48/25", "--out", str(dst))
    assert code == 0 and dst.read_text() == GOLDEN_FILE
    assert out.splitlines()[2].startswith("(2,0)\t20\tC=10")
    code, out, _ = call(capsys, "expand", "--cover", str(dst), "--limit", "30")
    assert [int(line.split()[0]) for line in out.splitlines()] == [4, 8, 10, 12, 20, 22, 24, 28, 30]
    code, out, _ = call(capsys, "verify", "--cover", str(dst), "--threshold", "1.92", "--limit", "200", "--efficient")
    assert code == 1 and "inefficient" in out
    bad = tmp_path / "bad.cover"
    bad.write_text("(cover\n (pair (C 1) (tree (node 11))))")
    code, _, err = call(capsys, "expand", "--cover", str(bad), "--limit", "30")
    assert code == 2 and "line 2" in err


def test_verify_base_cover_passes(capsys, tmp_path):
    cover = tmp_path / "half.cover"
    cover.write_text(
        "(cover (threshold \"1/2\") (mode strict)"
        " (pair (C 2) (tree (node 2))) (pair (C 3) (tree (node 3))) (pair (C 4) (tree (node 4)))"
        " (pair (C 6) (tree (node 8))) (pair (C 8) (tree (node 16))))"
    )
    for extra in ([], ["--efficient"]):
        code, out, _ = call(capsys, "verify", "--cover", str(cover), "--threshold", "1/2", "--limit", "5000", *extra)
        assert code == 0 and "PASS" in out


def test_output_is_deterministic(capsys):
    first = call(capsys, "leaders", "--below", "0.9", "--limit", "3000")
    second = call(capsys, "leaders", "--below", "0.9", "--limit", "3000")
    assert first == second


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "intcpx", "cpx", "11"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "8\n"
