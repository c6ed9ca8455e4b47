import json
import subprocess
import sys

import pytest

from bwbforge.cli import ParseError, format_bundle, main, parse_bundle, parse_weight
from bwbforge.homspace import parse_homspace


def run_cli(*args, expect=0):
    proc = subprocess.run(
        [sys.executable, "-m", "bwbforge.cli", *args],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == expect, proc.stderr
    return proc.stdout


def w(rank, **kw):
    v = [0] * rank
    for key, val in kw.items():
        v[int(key[1:]) - 1] = val
    return tuple(v)


# -- bundle grammar -------------------------------------------------------------


def test_parse_line_bundles():
    X = parse_homspace("E6/P1")
    B = parse_bundle(X, "O(1)^12")
    assert B.as_dict() == {w(6, i1=1): 12}


def test_parse_mixed_bundle():
    X = parse_homspace("E6/P2")
    B = parse_bundle(X, "w1^2 + O(1)^5")
    assert B.as_dict() == {w(6, i1=1): 2, w(6, i2=1): 5}


def test_parse_twists_and_brackets():
    X = parse_homspace("G2/P1")
    assert parse_bundle(X, "w2(1)").as_dict() == {(1, 1): 1}
    assert parse_bundle(X, "[3,1]^2").as_dict() == {(3, 1): 2}
    assert parse_weight(X, "O(-6)") == (-6, 0)
    X3 = parse_homspace("E6/P3")
    assert parse_bundle(X3, "w6^4 + O(1)").as_dict() == {
        w(6, i6=1): 4, w(6, i3=1): 1
    }
    # repeated digits add fundamental weights: w23 = w2 + w3 on E6/P4
    X4 = parse_homspace("E6/P4")
    assert parse_weight(X4, "w23") == w(6, i2=1, i3=1)


def test_parse_rejects_garbage():
    X = parse_homspace("G2/P1")
    with pytest.raises(ParseError):
        parse_bundle(X, "")
    with pytest.raises(ParseError):
        parse_bundle(X, "O(1) + ?")
    with pytest.raises(ParseError):
        parse_bundle(X, "[1,2,3]")  # wrong arity
    with pytest.raises(ParseError):
        parse_bundle(X, "[1,0]x")  # trailing junk
    with pytest.raises(ParseError):
        parse_bundle(X, "[1,-1]")  # not P-dominant (negative Levi coordinate)


def test_bundle_round_trip():
    cases = [
        ("E6/P1", "O(1)^12"),
        ("E6/P2", "w1^2 + O(1)^5"),
        ("E6/P3", "w6^4 + O(1)"),
        ("G2/P1", "w2(1)"),
        ("F4/P4", "w1 + O(1)^4"),
        ("A5/P2", "[3,0,0,0,0]"),
    ]
    for space, expr in cases:
        X = parse_homspace(space)
        B = parse_bundle(X, expr)
        assert parse_bundle(X, format_bundle(B)).as_dict() == B.as_dict()


# -- commands -------------------------------------------------------------------


def test_dim_command_format():
    assert run_cli("dim", "E7/P1") == "dim=33 index=17 embed=P^132\n"


def test_roots_command():
    out = run_cli("roots", "G2")
    assert "G2 root: (3,2)" in out and "count=6" in out


def test_dex_command():
    assert run_cli("dex", "F4/P4", "w3") == "rank=8 dex=12\n"


def test_bwb_command_and_json_schema():
    out = run_cli("--format", "json", "bwb", "G2/P2", "O(-6)")
    payload = json.loads(out)
    assert set(payload) == {"space", "bundle", "results", "status", "citations"}
    assert payload["status"] == "exact"
    assert payload["results"]["rows"] == [
        {"degree": 5, "weight": "[0,3]", "multiplicity": 1, "dim": 273}
    ]
    out = run_cli("bwb", "A5/P2", "[3,-6,0,0,0]")
    assert "vanishes" in out


def test_ext_command():
    out = run_cli("--format", "json", "ext", "F4/P4", "w1 + O(1)^4", "2")
    rows = json.loads(out)["results"]["rows"]
    assert {(r["weight"], r["multiplicity"]) for r in rows} == {
        ("[0,1,0,-4]", 1), ("[1,0,0,-3]", 4), ("[0,0,0,-2]", 6)
    }


def test_cohomology_restrict_command():
    out = run_cli(
        "--format", "json", "cohomology", "G2/P2", "O(3)", "--restrict", "O(-3)"
    )
    payload = json.loads(out)
    assert payload["results"]["dims"] == [0, 0, 0, 0, 272]


def test_hodge_command_json():
    out = run_cli("--format", "json", "hodge", "G2/P2", "O(3)", "--d", "4")
    res = json.loads(out)["results"]
    assert res["h13"] == 258 and res["h22"] == 1080 and res["chi"] == 1602
    assert res["hyperkaehler"] is False


def test_hodge_beauville_donagi():
    # h^{0,q} is exact and certifies the hyperkaehler verdict; the h^{1,q}
    # chase is honestly ambiguous here, so the full diamond needs
    # --allow-bounds and signals partial results through exit code 2
    out = run_cli("--allow-bounds", "--format", "json", "hodge", "A5/P2",
                  "[3,0,0,0,0]", "--d", "4", expect=2)
    res = json.loads(out)["results"]
    assert res["h02"] == 1 and res["hyperkaehler"] is True
    assert res["chi"] is None


def test_hodge_dimension_mismatch_is_an_error():
    proc = subprocess.run(
        [sys.executable, "-m", "bwbforge.cli", "hodge", "G2/P2", "O(3)", "--d", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1 and "not 3" in proc.stderr


def test_ambiguous_exit_codes():
    args = ["cohomology", "A2/P1", "O(1)", "--restrict", "[-2,2]"]
    proc = subprocess.run(
        [sys.executable, "-m", "bwbforge.cli", *args], capture_output=True, text=True
    )
    assert proc.returncode == 1
    proc = subprocess.run(
        [sys.executable, "-m", "bwbforge.cli", "--allow-bounds", "--format", "json", *args],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
    payload = json.loads(proc.stdout)
    assert payload["status"] == "ambiguous"
    assert payload["results"]["bounds"] == {"0": [0, 3], "1": [0, 3]}


def test_classify_d3_command():
    out = run_cli("--format", "json", "classify", "--d", "3")
    payload = json.loads(out)
    rows = payload["results"]["rows"]
    assert len(rows) == 6
    bundles = {(r["space"], r["bundle"]) for r in rows}
    assert ("G2/P1", "O(1) + O(4)") in bundles
    assert ("G2/P2", "w1(1)") in bundles
    assert all(r["h11"] == 1 for r in rows)
    chis = sorted(r["chi"] for r in rows)
    assert chis == [-176, -144, -120, -98, -98, -60]


def test_classify_no_exceptions_flag():
    out = run_cli("--format", "json", "classify", "--d", "3", "--no-hodge",
                  "--no-exceptions")
    payload = json.loads(out)
    assert len(payload["results"]["rows"]) == 6 + 4  # four E6/P1 numeric extras


def test_determinism_and_cache_transparency(tmp_path):
    args = ["--format", "json", "hodge", "G2/P2", "O(3)", "--d", "4"]
    cold = run_cli("--cache", str(tmp_path), *args)
    warm = run_cli("--cache", str(tmp_path), *args)
    bare = run_cli(*args)
    assert cold == warm == bare
    out = run_cli("--cache", str(tmp_path), "--format", "json", "cache", "stats")
    stats = json.loads(out)["results"]
    assert stats["disk_entries"] > 0
    run_cli("--cache", str(tmp_path), "cache", "clear")
    out = run_cli("--cache", str(tmp_path), "--format", "json", "cache", "stats")
    assert json.loads(out)["results"]["disk_entries"] == 0


def test_csv_format():
    out = run_cli("--format", "csv", "bwb", "G2/P2", "O(-6)")
    lines = out.strip().splitlines()
    assert lines[0] == "degree,dim,multiplicity,weight"
    assert lines[1] == '5,273,1,"[0,3]"'


def test_main_entrypoint_direct():
    assert main(["dim", "G2/P1"]) == 0
    assert main(["dex", "G2/P1", "[1,-1]"]) == 1  # not P-dominant


def test_classify_d4_pairs_via_cli():
    out = run_cli("--format", "json", "classify", "--d", "4", "--no-hodge")
    payload = json.loads(out)
    got = {(r["space"], r["bundle"]) for r in payload["results"]["rows"]}
    assert got == {
        ("E6/P1", "O(1)^12"),
        ("E6/P2", "w6^2 + O(1)^5"),
        ("E6/P2", "w6 + O(1)^5 + w1"),
        ("E6/P2", "O(1)^5 + w1^2"),
        ("E6/P3", "w6^4 + O(1)"),
        ("E6/P3", "w6^3 + w1^3"),
        ("E7/P1", "w7^2 + O(1)^5"),
        ("F4/P1", "w4 + O(1)^5"),
        ("F4/P4", "O(1)^11"),
        ("F4/P4", "O(1)^4 + w1"),
        ("G2/P1", "O(5)"),
        ("G2/P2", "O(3)"),
    }
    assert payload["results"]["dedup_count"] == 10
    assert len(payload["results"]["pruned"]) == 17


def test_classify_family_all_labels_classical_rows():
    out = run_cli("--format", "json", "classify", "--d", "4", "--no-hodge",
                  "--family", "all", "--max-rank", "5")
    payload = json.loads(out)
    rows = payload["results"]["rows"]
    classical = [r for r in rows if r["space"].startswith(("A", "B", "C", "D"))]
    assert classical, "rank <= 5 classical spaces admit fourfold candidates"
    assert all("not cross-validated" in r["note"] for r in classical)
    assert all(r["note"] == "" for r in rows if r["space"][0] in "EFG")
    # the hyperkaehler fourfold pair is among the classical candidates
    assert ("A5/P2", "[3,-3,0,0,0](3)") in {
        (r["space"], r["bundle"]) for r in rows
    } or ("A5/P2", "w111") in {(r["space"], r["bundle"]) for r in rows}


def test_classify_csv_format():
    out = run_cli("--format", "csv", "classify", "--d", "3", "--no-hodge")
    lines = out.strip().splitlines()
    assert lines[0].startswith("bundle,")
    assert len(lines) == 7


def test_hodge_no_h22_flag():
    out = run_cli("--format", "json", "hodge", "G2/P2", "O(3)", "--d", "4",
                  "--no-h22")
    res = json.loads(out)["results"]
    assert res["h13"] == 258 and res["h22"] is None and res["chi"] is None
