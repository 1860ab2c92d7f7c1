import io
import json
import os
import subprocess
import sys

import pytest

from numclaims import __version__
from numclaims.cli import main
from numclaims.report import ReportDocument, strip_timing


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--format", "json")
    return code, json.loads(text)


def test_claims_full_run():
    code, doc = run_json("claims")
    assert code == 0
    assert len(doc["outcomes"]) == 27
    assert set(doc) == {"version", "command", "outcomes", "summary", "timing"}
    assert doc["version"] == __version__
    assert doc["summary"] == {"agree": 25, "disagree": 2, "error": 0}
    for o in doc["outcomes"]:
        assert list(o) == ["id", "verdict", "agrees", "witness", "elapsed_ms"]


def test_claims_only_c01():
    code, doc = run_json("claims", "--only", "C01")
    assert code == 0
    (o,) = doc["outcomes"]
    assert (o["id"], o["verdict"], o["agrees"]) == ("C01", "holds", True)
    assert o["witness"]["factor"] == 641


def test_claims_text_shows_checks():
    code, text = run("claims", "--only", "C15")
    assert code == 0
    assert "check: 2^37 mod 223 = 1" in text


def test_claims_unknown_id():
    code, _ = run("claims", "--only", "C99")
    assert code == 2


def test_claims_expected_disagreement_exits_zero():
    code, doc = run_json("claims", "--only", "C04")
    assert code == 0
    assert doc["outcomes"][0]["agrees"] is False


def test_claims_json_is_deterministic():
    a = run_json("claims")[1]
    b = run_json("claims", "--workers", "3")[1]
    assert strip_timing(a)["outcomes"] == strip_timing(b)["outcomes"]
    assert strip_timing(a)["summary"] == strip_timing(b)["summary"]


def test_report_round_trip():
    _, text = run("claims", "--only", "C19", "--format", "json")
    doc = ReportDocument.from_json(text)
    assert json.loads(doc.to_json()) == json.loads(text)


def test_fermat_factor():
    code, text = run("fermat", "factor", "--m", "5", "--bound", "10000")
    assert code == 0 and "641" in text
    code, doc = run_json("fermat", "factor", "--m", "5", "--bound", "10000")
    assert doc["outcomes"][0]["witness"]["factor"] == 641
    code, text = run("fermat", "factor", "--m", "4", "--bound", "1000000")
    assert code == 0 and "none" in text
    code, doc = run_json("fermat", "factor", "--m", "6", "--bound", "10000000", "--strategy", "special_form")
    assert doc["outcomes"][0]["witness"]["factor"] == 274177


def test_fermat_check():
    code, text = run("fermat", "check", "--a", "6", "--m", "3", "--d", "17")
    assert code == 0 and "divides" in text and "6^8+1" in text
    code, doc = run_json("fermat", "check", "--a", "6", "--m", "3", "--d", "19")
    assert doc["outcomes"][0]["verdict"] != "divides"


def test_fermat_value():
    code, text = run("fermat", "value", "--m", "5")
    assert code == 0 and "4294967297" in text
    assert run("fermat", "value", "--m", "6")[0] == 2


def test_mersenne_commands():
    code, text = run("mersenne", "exclusions", "--limit", "239")
    assert code == 0 and "[11, 23, 83, 131, 179, 191, 239]" in text
    code, text = run("mersenne", "factor", "--p", "37", "--k-max", "10")
    assert code == 0 and "223" in text
    code, text = run("mersenne", "screen", "--max-p", "63", "--k-max", "100000")
    assert code == 0 and "perfect exponents: [2, 3, 5, 7, 13, 17, 19, 31, 61]" in text
    assert "2^41 mod 13367 = 1" in text


def test_mersenne_screen_json():
    _, doc = run_json("mersenne", "screen", "--max-p", "47", "--k-max", "100000")
    by_p = {o["witness"]["p"]: o["witness"] for o in doc["outcomes"]}
    assert by_p[41]["factor"] == 13367 and by_p[31]["factor"] is None
    assert by_p[11]["excluded"] is True


def test_mersenne_composite_exponent_is_usage_error():
    assert run("mersenne", "factor", "--p", "9", "--k-max", "10")[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ("theorem", "4", "--q-bound", "1000000"),
        ("theorem", "main", "--q-bound", "500", "--ab-bound", "100"),
        ("theorem", "1", "--n-bound", "2000", "--a-bound", "2000"),
        ("theorem", "2"),
        ("theorem", "3"),
        ("theorem", "5", "--q-bound", "100000"),
        ("theorem", "6", "--q-bound", "100000"),
        ("theorem", "two-power", "--q-bound", "100000"),
        ("theorem", "square-split", "--q-bound", "100000"),
    ],
)
def test_theorem_scans_pass(argv):
    code, doc = run_json(*argv)
    assert code == 0
    assert all(not o["witness"]["counterexamples"] for o in doc["outcomes"])


def test_theorem1_prints_witness_table():
    code, text = run("theorem", "1", "--n-bound", "2000", "--a-bound", "2000")
    assert "composite witnesses" in text and "counterexamples: 0" in text


def test_theorem3_explicit_primes():
    code, doc = run_json("theorem", "3", "--primes", "3,5,7", "--a-bound", "500")
    assert code == 0


@pytest.mark.parametrize(
    "argv",
    [("theorem", "7"), ("bogus",), (), ("fermat", "factor", "--m", "x"), ("claims", "--format", "xml")],
)
def test_usage_errors(argv):
    code, _ = run(*argv)
    assert code == 2


def test_module_entry_point_and_numpy_fallback():
    env = dict(os.environ, NUMCLAIMS_DISABLE_JIT="1")
    cmd = [sys.executable, "-m", "numclaims", "claims", "--format", "json"]
    slow = subprocess.run(cmd, env=env, capture_output=True, text=True, timeout=300)
    assert slow.returncode == 0, slow.stderr
    fast = run_json("claims")[1]
    a, b = strip_timing(json.loads(slow.stdout)), strip_timing(fast)
    a["command"] = b["command"]
    assert a == b
