"""CLI surface tests: exit codes, report shapes, determinism of light commands."""

import json

import pytest

from g2census import cli


def run(argv):
    return cli.main(argv)


def test_group_singular_set(capsys):
    assert run(["group", "singular-set"]) == 0
    out = capsys.readouterr().out
    assert "singular set components: 12" in out
    assert out.count("fixed tori") == 7  # one row per non-identity element
    assert out.count("0 fixed tori") == 4  # the products act freely


def test_group_relations(capsys):
    assert run(["group", "relations"]) == 0
    out = capsys.readouterr().out
    assert "alpha^2 = (0, 0, 0, 0, 0, 0, 0)" in out
    assert "[alpha,beta] = (0, 0, 0, 0, 0, -1, 0)" in out
    assert "alpha tau4 alpha^-1 = tau4^-1" in out


def test_census_run_free_json(tmp_path, capsys):
    out_path = tmp_path / "census.json"
    assert run(["census", "run", "--mode", "free", "--out", str(out_path)]) == 0
    doc = json.loads(out_path.read_text())
    assert doc["mode"] == "free"
    assert doc["total"] == "1048576"
    assert doc["irreducible_and_rigid"] == "1024128"
    assert doc["nonflat_irreducible_rigid"] == "1008126"
    assert "relations" not in doc


def test_census_run_constrained_json(tmp_path, capsys):
    out_path = tmp_path / "census.json"
    assert run(["census", "run", "--mode", "constrained", "--out", str(out_path)]) == 0
    doc = json.loads(out_path.read_text())
    assert doc["irreducible_and_rigid"] == "13440"
    assert doc["relations"]["parity_constraints"] == [[5, 7], [6], [7]]


def test_index_compute_gocho(capsys):
    assert run(["index", "compute", "--p1", "0", "--group", "zk:2", "--chi", "1", "--dim", "1"]) == 0
    assert "index = 0" in capsys.readouterr().out


def test_index_compute_nontrivial(capsys):
    assert (
        run(["index", "compute", "--p1", "0", "--group", "zk:2", "--chi", "-1", "--dim", "3"])
        == 0
    )
    assert "index = -1" in capsys.readouterr().out


def test_index_compute_adjoint_convention(capsys):
    assert (
        run(
            [
                "index", "compute", "--p1", "0", "--group", "zk:2",
                "--chi", "1", "--dim", "1", "--trace-convention", "adjoint",
            ]
        )
        == 0
    )
    assert "index = 0" in capsys.readouterr().out


def test_index_compute_rejects_unknown_group():
    with pytest.raises(SystemExit):
        run(["index", "compute", "--p1", "0", "--group", "dihedral:3", "--chi", "1", "--dim", "1"])


def test_eh_verify(capsys):
    assert run(["eh", "verify", "--samples", "25"]) == 0
    out = capsys.readouterr().out
    assert "[PASS] moment_map_circle_invariance" in out
    assert "[PASS] u2_quotient_isomorphism" in out
    assert "FAIL" not in out


def test_g2_check(capsys):
    assert run(["g2", "check", "--samples", "50"]) == 0
    out = capsys.readouterr().out
    assert "[PASS] projector_dimensions" in out
    assert "FAIL" not in out


def test_symmetry_stabilizer(capsys):
    assert run(["symmetry", "stabilizer"]) == 0
    assert "stabilizer order: 1344" in capsys.readouterr().out


def test_symmetry_aut(capsys):
    assert run(["symmetry", "aut"]) == 0
    out = capsys.readouterr().out
    assert "automorphism group order: 1024" in out
    assert "distinct linear parts: 8" in out


def test_light_commands_are_byte_stable(capsys):
    run(["eh", "verify"])
    first = capsys.readouterr().out
    run(["eh", "verify"])
    second = capsys.readouterr().out
    assert first == second
