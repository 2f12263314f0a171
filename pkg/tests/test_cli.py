"""CLI surface: subcommands, formats, exit codes."""

import json

import pytest

from kedges.cli import main
from kedges.gensets import convex_polygon_set
from kedges.geom import write_points


@pytest.fixture()
def octagon_file(tmp_path):
    path = tmp_path / "oct.pts"
    write_points(path, convex_polygon_set(8))
    return str(path)


@pytest.fixture()
def collinear_file(tmp_path):
    path = tmp_path / "bad.pts"
    path.write_text("4\n0 0\n1 0\n2 0\n0 5\n")
    return str(path)


def test_analyze(octagon_file, capsys):
    assert main(["analyze", octagon_file]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["n"] == 8
    assert out["crossings"] == 70
    assert out["halving_lines"] == 4
    assert out["identity_check"] is True
    assert out["E_leq"][-1] == 28


def test_analyze_collinear_exit_2(collinear_file, capsys):
    assert main(["analyze", collinear_file]) == 2
    err = capsys.readouterr().err
    assert "collinear triples" in err and "(0, 1, 2)" in err


def test_analyze_missing_file(tmp_path, capsys):
    assert main(["analyze", str(tmp_path / "nope.pts")]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_classify_points(octagon_file, capsys):
    assert main(["classify", octagon_file, "--k", "2", "--tie-break"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["holds"] is True
    assert out["K"] == 8
    assert all(out["aux_checks"].values())
    assert len(out["records"]) == 28
    crit = [r for r in out["records"] if r["kind"] == "k-critical"]
    assert len(crit) == 8 and all(r["class"] != "non-critical" for r in crit)


def test_classify_halfperiod_file(octagon_file, tmp_path, capsys):
    from kedges.circseq import halfperiod_from_points, write_halfperiod
    from kedges.geom import read_points

    hp = tmp_path / "oct.hp"
    write_halfperiod(hp, halfperiod_from_points(read_points(octagon_file), tie_break=True))
    assert main(["classify", str(hp), "--halfperiod", "--k", "3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["holds"] is True


def test_bounds_table(capsys):
    assert main(["bounds", "--n", "27", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows[11]["best"] == 255 and rows[11]["source"] == "u_k"
    assert main(["bounds", "--n", "27", "--k", "10"]) == 0
    assert "207" in capsys.readouterr().out


def test_halving_and_cr_bound(capsys):
    assert main(["halving-bound", "--n", "24"]) == 0
    assert capsys.readouterr().out.strip() == "51"
    assert main(["cr-bound", "--n", "24", "--pipeline", "table1"]) == 0
    assert capsys.readouterr().out.strip() == "3699"
    assert main(["cr-bound", "--n", "28", "--format", "json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["value"] == 7233 and out["pipeline"] == "section5"


def test_cr_table_csv(capsys):
    assert main(["cr-table", "--from", "28", "--to", "31", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "n,cr_lower_bound"
    assert lines[1] == "28,7233" and lines[-1] == "31,11207"


def test_tables_check_all(capsys):
    for which in ("table1", "table2", "section5"):
        assert main(["tables", which, "--check"]) == 0, which
        assert "MISMATCH" not in capsys.readouterr().out


def test_tables_csv(capsys):
    assert main(["tables", "table1", "--format", "csv"]) == 0
    out = capsys.readouterr().out
    assert "14,22,324" in out and "27,96,6180" in out


def test_construct_and_verify_sr(tmp_path, capsys):
    out_file = str(tmp_path / "s3.pts")
    assert main(["construct", "sr", "--r", "3", "-o", out_file]) == 0
    capsys.readouterr()
    assert main(["analyze", out_file]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["n"] == 27 and rep["identity_check"] is True
    assert rep["E_leq"][11] == 255
    assert main(["decompose3", out_file, "--partition", "1-9/10-18/19-27"]) == 0
    capsys.readouterr()
    assert main(["verify", "sr", "--r", "3"]) == 0
    assert "verified" in capsys.readouterr().out


def test_construct_raw_has_collinear_families(tmp_path, capsys):
    out_file = str(tmp_path / "s3raw.pts")
    assert main(["construct", "sr", "--r", "3", "--raw", "-o", out_file]) == 0
    capsys.readouterr()
    assert main(["analyze", out_file]) == 2  # raw family is intentionally degenerate


def test_construct_polygon_center(tmp_path, capsys):
    out_file = str(tmp_path / "pc.pts")
    assert main(["construct", "polygon-center", "--k", "3", "--n", "9", "-o", out_file]) == 0
    capsys.readouterr()
    assert main(["analyze", out_file]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["n"] == 9 and rep["edge_vector"][2] == 7


def test_construct_cluster_polygon(tmp_path, capsys):
    out_file = str(tmp_path / "cp.pts")
    assert main(["construct", "cluster-polygon", "--t", "1", "--m", "3", "-o", out_file]) == 0
    capsys.readouterr()
    assert main(["analyze", out_file]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["n"] == 9 and sum(rep["edge_vector"][3:]) == 18


def test_decompose3_failure_exit(tmp_path, capsys):
    path = tmp_path / "rand.pts"
    import random

    from kedges.gensets import random_general_position_set

    write_points(path, random_general_position_set(9, random.Random(67)))
    code = main(["decompose3", str(path), "--partition", "1,4,7/2,5,8/3,6,9"])
    assert code == 1
    assert "no 3-decomposition" in capsys.readouterr().out


def test_decompose3_bad_partition(octagon_file, capsys):
    assert main(["decompose3", octagon_file, "--partition", "1-4/5-8"]) == 2


def test_selftest_bounds(capsys):
    assert main(["selftest", "bounds"]) == 0
    out = capsys.readouterr().out
    assert "[PASS] table1-halving" in out
    assert "6/6 checks passed" in out


def test_selftest_quick_sweeps(capsys):
    assert main(["selftest", "identities", "--trials", "12", "--nmax", "8", "--seed", "5"]) == 0
    assert main(["selftest", "central", "--trials", "8", "--nmax", "9", "--seed", "5"]) == 0
    out = capsys.readouterr().out
    assert "[PASS]" in out


def test_selftest_deterministic(capsys):
    main(["selftest", "identities", "--trials", "6", "--nmax", "8"])
    first = capsys.readouterr().out
    main(["selftest", "identities", "--trials", "6", "--nmax", "8"])
    assert capsys.readouterr().out == first
