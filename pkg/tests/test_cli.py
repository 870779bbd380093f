import json
import os
from fractions import Fraction

import pytest

from cliffinv import jsonio
from cliffinv.cli import main
from cliffinv.forms import DiagonalForm, QuadraticForm
from cliffinv.scalars import GF, QQ
from cliffinv.suites import run_suite, suite_names


def test_all_suite_names_present():
    assert suite_names() == [
        "center-law",
        "clifford-dims",
        "components-equal",
        "dedekind-layer",
        "disc-additivity",
        "e2-additivity",
        "hilbert-product",
        "hyperbolic-model",
        "metabolic-splitting",
        "milnor-residues",
        "norm-roundtrip",
        "pfaffian-roundtrip",
        "sum-isomorphism",
        "surjectivity",
    ]


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nonexistent")


def test_suite_reports_reproducible():
    r1 = run_suite("hilbert-product", seed=42)
    r2 = run_suite("hilbert-product", seed=42)
    assert r1.canonical() == r2.canonical()
    r3 = run_suite("hilbert-product", seed=43)
    assert r3.canonical() != r1.canonical() or r3.seed != r1.seed


def test_parallel_run_matches_serial():
    r1 = run_suite("disc-additivity", seed=7, parallelism=1)
    r2 = run_suite("disc-additivity", seed=7, parallelism=2)
    assert r1.canonical() == r2.canonical()


def test_cli_basic_commands(capsys):
    assert main(["qf", "witt", "--entries", "1,-1,2"]) == 0
    out = capsys.readouterr().out
    assert "witt index 1" in out
    assert main(["br", "class", "-a", "-1", "-b", "3"]) == 0
    assert "2, 3" in capsys.readouterr().out
    assert main(["inv", "e2", "--entries", "1,1,1,1", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["ramified"] == ["2", "inf"]
    assert main(["exc", "roundtrip", "--", "-1", "-1"]) == 0
    assert main(["ded", "clgrp", "-d", "-5"]) == 0
    assert "(2,1+1w)" in capsys.readouterr().out.replace("Cl/2 representatives: O, ", "(2,1+1w)")


def test_cli_reciprocity(capsys):
    assert main(["inv", "reciprocity", "--entries", "0,1;0,-1"]) == 0
    assert "holds" in capsys.readouterr().out


def test_cli_suite_exit_codes(capsys):
    assert main(["suite", "metabolic-splitting"]) == 0
    assert main(["suite", "never-heard-of-it"]) == 2


def test_cli_factor_bound_exit(capsys, monkeypatch):
    monkeypatch.setenv("QF_FACTOR_BOUND", "10")
    assert main(["br", "class", "-a", "1000003", "-b", "7"]) == 3


def test_cli_usage_error():
    assert main(["qf"]) == 2


def test_convert_round_trip(tmp_path, capsys):
    q = QuadraticForm(
        ((Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))), QQ
    )
    src = tmp_path / "form.json"
    src.write_text(jsonio.canonical_dumps(jsonio.form_to_json(q)))
    mid = tmp_path / "mid.json"
    out = tmp_path / "out.json"
    assert main(["convert", str(src), str(mid), "--to", "json"]) == 0
    assert main(["convert", str(mid), str(out), "--to", "json"]) == 0
    assert mid.read_bytes() == out.read_bytes()
    assert main(["convert", str(src), "-", "--to", "table"]) == 0
    assert "[ 0  1 ]" in capsys.readouterr().out


def test_convert_malformed(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(
        '{"kind":"form","base":{"field":"Q"},"gram":[["0","1"],["1"]],"value_label":"trivial"}'
    )
    assert main(["convert", str(bad), "-"]) == 2


def test_json_round_trips_forms_and_algebras():
    f7 = GF(7)
    q = DiagonalForm((f7.from_int(3), f7.from_int(5)), f7)
    d = jsonio.form_to_json(q)
    q2 = jsonio.form_from_json(json.loads(json.dumps(d)))
    assert q2.entries == q.entries and q2.field == q.field
    from cliffinv.algebras import quaternion

    a = quaternion(Fraction(-1), Fraction(3), QQ)
    d2 = jsonio.algebra_to_json(a)
    a2 = jsonio.algebra_from_json(json.loads(json.dumps(d2)))
    assert a2.table == a.table and a2.unit == a.unit
