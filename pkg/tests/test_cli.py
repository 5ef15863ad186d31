import json
import os
import subprocess
import sys

import pytest

from hologroups.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_analyze_alternating(capsys):
    code, data = run_json(capsys, "analyze", "alt:5")
    assert code == 0
    assert data == {"spec": "alt:5", "order": 60, "is_perfect": True, "center_order": 1, "aut_order": 120,
                    "hol_order": 7200, "inn_krs_n": 1}


def test_analyze_cyclic(capsys):
    code, data = run_json(capsys, "analyze", "cyclic:4")
    assert code == 0 and data["order"] == 4 and data["aut_order"] == 2 and data["hol_order"] == 8
    assert "inn_krs_n" not in data


def test_analyze_product(capsys):
    code, data = run_json(capsys, "analyze", "direct(alt:5,psl:2,7)")
    assert code == 0 and data["order"] == 10080 and data["inn_krs_n"] == 2


def test_enumerate_normal_regular(capsys):
    code, data = run_json(capsys, "enumerate-normal-regular", "alt:5")
    assert code == 0
    assert data["summary"]["count"] == 2 and data["summary"]["t_group_type"] == "C2"
    assert len(data["records"]) == 2 and all(r["in_H"] for r in data["records"])
    code, data = run_json(capsys, "enumerate-normal-regular", "sl:2,5", "--summary")
    assert code == 0 and data["summary"]["count"] == 2 and "records" not in data


def test_enumerate_normal_regular_rejects_non_perfect(capsys):
    code, out, err = run(capsys, "enumerate-normal-regular", "cyclic:4")
    assert code == 4 and out == "" and "not perfect" in err


def test_enumerate_regular_oracle(capsys):
    code, data = run_json(capsys, "enumerate-regular", "cyclic:4", "--oracle", "--summary")
    assert code == 0
    assert (data["count"], data["J_count"], data["I_count"], data["H_count"]) == (2, 2, 1, 1)
    assert data["oracle"] is True and data["budget_used"]["max_group_order"] == 24
    code, _, _ = run(capsys, "enumerate-regular", "cyclic:4")
    assert code == 4


def test_enumerate_regular_budget(capsys):
    code, _, err = run(capsys, "enumerate-regular", "cyclic:12", "--oracle", "--oracle-max-order", "8")
    assert code == 3 and "budget" in err


def test_t_group(capsys):
    code, data = run_json(capsys, "t-group", "alt:5")
    assert code == 0 and data["t_group"] == "C2" and data["source"] == "perfect"
    code, data = run_json(capsys, "t-group", "dihedral:8")
    assert code == 0 and data["source"] == "oracle" and data["regular_action"]
    assert data["t_order"] == data["H_count"]


def test_pairing(capsys):
    code, data = run_json(capsys, "pairing", "sl:2,5", "--subset", "0")
    assert code == 0 and data["ok"] and data["centralizer_order"] == 120
    code, _, _ = run(capsys, "pairing", "sl:2,5", "--subset", "3")
    assert code == 2
    code, _, _ = run(capsys, "pairing", "sl:2,5", "--subset", "a")
    assert code == 2


def test_opposite_replace(capsys):
    code, data = run_json(capsys, "opposite-replace", "sl:2,5", "--factor", "0")
    assert code == 0 and data["isomorphic_to_base"] and not data["unchanged"]
    code, data = run_json(capsys, "opposite-replace", "central(sl:2,5,sl:2,5)", "--factor", "0",
                          "--construction")
    assert code == 0
    assert data["isomorphic_to_base"] is True and data["factor_characteristic"] is False
    assert data["order"] == 7200


def test_exit_codes(capsys, monkeypatch):
    monkeypatch.delenv("HOLO_MAX_ORDER", raising=False)
    assert run(capsys, "analyze", "nonsense:3")[0] == 2
    assert run(capsys, "analyze", "cyclic:30")[0] == 0
    assert run(capsys, "analyze", "cyclic:30", "--max-order", "10")[0] == 3
    assert "HOLO_MAX_ORDER" not in os.environ
    assert run(capsys, "pairing", "sym:4")[0] == 4


def test_text_format(capsys):
    code, out, _ = run(capsys, "analyze", "cyclic:4", "--format", "text")
    assert code == 0
    assert "hol_order: 8" in out.splitlines()


def test_verify_single_case(capsys):
    code, data = run_json(capsys, "verify-paper", "--case", "cyclic-four-chain")
    assert code == 0 and data["all_ok"] and data["cases"][0]["name"] == "cyclic-four-chain"


def test_console_script_is_byte_deterministic():
    cmd = [sys.executable, "-m", "hologroups.cli", "enumerate-normal-regular", "sl:2,5"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.endswith(b"\n")
    json.loads(a)


@pytest.mark.parametrize("argv", [["analyze"], ["bogus", "alt:5"]])
def test_argparse_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
