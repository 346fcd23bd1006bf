import json
import subprocess
import sys

import pytest

from gckit import worked
from gckit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_pack_passes(capsys):
    code, out, _ = run(capsys, "verify", "pack:all", "--suite", "axioms")
    assert code == 0
    assert out.splitlines()[-1].startswith("suite axioms:")


def test_corrupt_pack_fails_with_witness(capsys):
    code, out, _ = run(capsys, "verify", "pack:corrupt", "--suite", "axioms")
    assert code == 1
    line = next(l for l in out.splitlines() if "nonassoc" in l)
    assert line.startswith("[FAIL") and "witness=(0, 1, 2)" in line


@pytest.mark.parametrize("argv", [["verify", "pack:all", "--suite", "bogus"],
                                  ["verify", "/no/such/file.json"],
                                  ["examples", "run", "nope"],
                                  ["examples", "run"],
                                  ["table", "pack:all", "missing"],
                                  ["pierce", "pack:all", "I2"]])
def test_input_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "pack:all", "--suite", "factor_through", "--json")
    assert code == 0
    doc = json.loads(out)
    pair = [c for c in doc["checks"] if c["subject"].startswith("pair2/Z2 ")]
    assert pair and all(json.loads(c["detail"])["sizes"] == {"lhs": 16, "rhs": 16} for c in pair)


@pytest.mark.parametrize("oid,n", [("Z2[Z2]", 4), ("trivial", 1), ("I2", 7), ("chain_on_Z2xZ2", 4),
                                   ("free2", 4), ("pair2/Z2", 16)])
def test_table_shapes(capsys, oid, n):
    code, out, _ = run(capsys, "table", "pack:all", oid)
    assert code == 0
    assert len(out.splitlines()) == n + 1


def test_table_over_limit_is_error(capsys, monkeypatch):
    monkeypatch.setenv("GCKIT_SIZE_LIMIT", "8")
    assert run(capsys, "table", "pack:all", "pair2/Z2")[0] == 2


def test_examples(capsys):
    code, out, _ = run(capsys, "examples", "list")
    assert code == 0 and len(out.splitlines()) == len(worked.names()) >= 20
    code, out, _ = run(capsys, "examples", "run", "chain_semilattice_skew")
    assert code == 0 and "|N|: 2" in out
    code, out, _ = run(capsys, "examples", "run", "swap_main_theorem")
    assert code == 0 and '"theorem": "main"' in out


def test_pierce(capsys):
    code, out, _ = run(capsys, "pierce", "pack:all", "Z6")
    assert code == 0
    assert out.splitlines()[0] == "B = {0, 1, 3, 4}"
    assert "Psi:" in out and len(out.splitlines()) == 4 + 1 + 6


def test_output_is_deterministic(capsys):
    first = run(capsys, "verify", "pack:all", "--suite", "center")[1]
    second = run(capsys, "verify", "pack:all", "--suite", "center")[1]
    assert first == second


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "gckit.cli", "examples", "run", "i2_counts"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "|I_2|: 7" in out.stdout
