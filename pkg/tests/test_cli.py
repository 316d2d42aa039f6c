import json
import subprocess
import sys
from pathlib import Path

import pytest

from seqcomp import reproduce
from seqcomp.cli import main
from seqcomp.document import load_document

from oracle import set_accf_complex

TABLE1_ARGS = [
    "generate", "theorem2", "--q", "3", "--m", "3", "--v", "1", "--alpha", "2", "--beta", "1",
    "--pi", "1,2", "--c1", "1,2,1", "--c2", "0,1,2", "--c0", "0",
]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def table1_doc(tmp_path, capsys):
    path = tmp_path / "t1.json"
    code, _, err = run(capsys, *TABLE1_ARGS, "-o", str(path))
    assert code == 0, err
    return path


def test_generate_table1_matches_printed(table1_doc):
    doc = load_document(table1_doc)
    assert doc.sets == reproduce.golden()["table1"]["sets"]
    assert doc.role == "zccs"
    assert doc.claimed_params == {"M": 9, "N": 3, "L": 27, "Z": 9}


def test_generate_is_byte_stable(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, *TABLE1_ARGS, "-o", str(a))
    run(capsys, *TABLE1_ARGS, "-o", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_verify_table1_claims(table1_doc, capsys):
    code, out, _ = run(capsys, "verify", str(table1_doc))
    res = json.loads(out)
    assert code == 0 and res["verified"]
    assert res["report"]["zcz_width"] == 9 and res["bound"]["feng_optimal"]

    code, out, _ = run(capsys, "verify", str(table1_doc), "--claim", "zccs", "--params", "9,3,27,10")
    res = json.loads(out)
    assert code == 1 and not res["verified"]
    assert (res["violation"]["i"], res["violation"]["j"], res["violation"]["tau"]) == (0, 0, 9)


def brute_first_violation(sets, q, z):
    for tau in range(z):
        for i in range(len(sets)):
            for j in range(len(sets)):
                if tau == 0 and i == j:
                    continue
                if abs(set_accf_complex(sets[i], sets[j], tau, q)) > 1e-9:
                    return i, j, tau
    return None


def test_corrupted_document_is_refuted_at_oracle_location(table1_doc, tmp_path, capsys):
    raw = json.loads(table1_doc.read_text())
    raw["sets"][0][0][0] = (raw["sets"][0][0][0] + 1) % 3
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(raw))
    code, out, _ = run(capsys, "verify", str(bad), "--engine", "both")
    res = json.loads(out)
    assert code == 1 and not res["verified"]
    v = res["violation"]
    assert (v["i"], v["j"], v["tau"]) == brute_first_violation(raw["sets"], 3, 9)


@pytest.mark.parametrize(
    "gen, role",
    [
        (["theorem1", "--q", "4", "--m", "2", "--alpha", "3", "--pi", "2,1", "--c1", "1,0", "--c3", "2,2"], "css"),
        (["lemma3", "--m", "2", "--alpha", "1", "--pi", "1,2", "--square", "1,2"], "css"),
        (["theorem2", "--q", "2", "--m", "3", "--v", "0", "--alpha", "1", "--beta", "1", "--pi", "3,1,2"], "ccc"),
        (["theorem3", "--c", "seeds:ccc-2x10"], "escss"),
        (["theorem4", "--a", "seeds:ccc-2x2", "--b", "seeds:ccc-2x10"], "ccc"),
        (["theorem5", "--a", "seeds:ccc-2x1", "--b", "seeds:ccc-2x10"], "mocss"),
        (["seed", "--name", "gcp-26"], "gcp"),
        (["seed", "--name", "ccc-2x4"], "ccc"),
    ],
)
def test_generate_verify_round_trip(gen, role, tmp_path, capsys):
    path = tmp_path / "f.json"
    code, _, err = run(capsys, "generate", *gen, "-o", str(path))
    assert code == 0, err
    assert load_document(path).role == role
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0 and json.loads(out)["verified"]


def test_theorem4_from_document_input(tmp_path, capsys):
    seed = tmp_path / "c.json"
    run(capsys, "generate", "seed", "--name", "ccc-2x2", "-o", str(seed))
    out = tmp_path / "p.json"
    assert run(capsys, "generate", "theorem4", "--a", str(seed), "--b", str(seed), "-o", str(out))[0] == 0
    assert load_document(out).shape == (2, 2, 8)


def test_additive_negation_is_refused(capsys):
    code, _, err = run(capsys, "generate", "theorem5", "--a", "seeds:ccc-2x1", "--b", "seeds:ccc-2x10",
                       "--negation", "additive")
    assert code == 1
    assert json.loads(err)["kind"] == "VerificationRefusedError"


def test_wrong_claim_role(tmp_path, capsys):
    path = tmp_path / "s.json"
    run(capsys, "generate", "seed", "--name", "ccc-2x10", "-o", str(path))
    assert run(capsys, "verify", str(path), "--claim", "ccc")[0] == 0
    assert run(capsys, "verify", str(path), "--claim", "ccc", "--params", "2,2,11")[0] == 1


def test_classify_output(table1_doc, capsys):
    code, out, _ = run(capsys, "classify", str(table1_doc), "--engine", "both")
    res = json.loads(out)
    assert code == 0 and res["engine"] == "both"
    assert res["report"]["role"] == "zccs"


def test_engine_environment_default(table1_doc, capsys, monkeypatch):
    monkeypatch.setenv("SEQCOMP_ENGINE", "float")
    _, out, _ = run(capsys, "classify", str(table1_doc))
    assert json.loads(out)["engine"] == "float"


def test_export_csv(table1_doc, capsys):
    code, out, _ = run(capsys, "export", str(table1_doc))
    lines = out.splitlines()
    assert code == 0 and len(lines) == 28
    assert lines[0].split(",")[:3] == ["set_index", "row_index", "s0"]


def test_generate_csv(capsys):
    code, out, _ = run(capsys, "generate", "seed", "--name", "gcp-2", "--format", "csv")
    assert code == 0 and out.splitlines()[1:] == ["0,0,0,0", "0,1,0,1"]


def test_seed_metadata_switch(capsys):
    _, on, _ = run(capsys, "generate", "seed", "--name", "gcp-1")
    _, off, _ = run(capsys, "generate", "seed", "--name", "gcp-1", "--seed-metadata", "off")
    assert "generator" in json.loads(on)["metadata"]
    assert "generator" not in json.loads(off)["metadata"]


@pytest.mark.parametrize("argv", [
    ["verify", "missing.json"],
    ["generate", "theorem2", "--q", "3", "--m", "2", "--v", "2", "--alpha", "1", "--beta", "1", "--pi", "1"],
    ["generate", "theorem1", "--q", "3"],
    ["generate", "theorem1", "--q", "3", "--m", "2", "--alpha", "1", "--pi", "1,2", "--c5", "1,1"],
    ["generate", "theorem3", "--c", "seeds:ccc-2x3"],
    ["generate", "seed", "--name", "gcp-12"],
])
def test_usage_errors_exit_2(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in json.loads(err)


def test_parse_error_exit_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{oops")
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2 and json.loads(err)["kind"] == "DocumentError"


def test_bad_params_flag(table1_doc, capsys):
    assert run(capsys, "verify", str(table1_doc), "--params", "9,3")[0] == 2


@pytest.mark.parametrize("name, code", [
    ("example1", 0), ("example2", 1), ("table1", 0), ("remark-2-4-11", 0), ("table3", 0),
])
def test_demos(name, code, capsys):
    rc, out, _ = run(capsys, "demo", name)
    assert rc == code
    assert out.strip()


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "seqcomp", "demo", "table1"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "27 rows x 27 symbols, 0 mismatches" in proc.stdout


SCRIPTS = Path(__file__).resolve().parents[1] / "scripts"


@pytest.mark.parametrize("script, args, code", [
    ("reproduce_all.py", [], 1),  # the Example 2 rows do not match
    ("theorem5_negation.py", [], 0),
    ("sweep_theorem2.py", ["--qmax", "3", "--mmax", "2", "--draws", "1"], 0),
])
def test_scripts_run(script, args, code):
    proc = subprocess.run([sys.executable, str(SCRIPTS / script), *args], capture_output=True, text=True)
    assert proc.returncode == code, proc.stderr
    assert proc.stdout.strip()
