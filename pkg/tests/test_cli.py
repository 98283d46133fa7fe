import dataclasses
import json

import pytest

from apodeixis import catalog, cli, search, suites
from apodeixis.dsl import decode_model
from apodeixis.model_core import bounds

from conftest import check_schema, load_report_schema


@pytest.fixture(autouse=True)
def _fixed_thread_env(monkeypatch):
    monkeypatch.delenv("APODEIXIS_THREADS", raising=False)


@pytest.fixture()
def model_file(tmp_path):
    path = tmp_path / "celarent_xn.json"
    assert cli.main(["fixtures", "--name", "celarent_xn", "--out", str(tmp_path)]) == 0
    return path


# --- eval ---------------------------------------------------------------------


def test_eval_prints_one_line_per_statement(model_file, capsys):
    code = cli.main(
        ["eval", "--model", str(model_file), "N(CaB)", "BeA", "CeA", "N(CeA)"]
    )
    capture = capsys.readouterr()
    assert code == 0
    assert capture.out.splitlines()[-4:] == [
        "N(CaB)\ttrue",
        "BeA\ttrue",
        "CeA\ttrue",
        "N(CeA)\tfalse",
    ]


def test_eval_rejects_missing_file(capsys):
    assert cli.main(["eval", "--model", "/no/such/model.json", "BaA"]) == 2
    assert "cannot read model file" in capsys.readouterr().err


def test_eval_rejects_malformed_model(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"t_count": 2}')
    assert cli.main(["eval", "--model", str(path), "BaA"]) == 2
    assert "(at $" in capsys.readouterr().err


def test_eval_rejects_foreign_concept(model_file, capsys):
    assert cli.main(["eval", "--model", str(model_file), "DaA"]) == 2
    assert "absent from the model" in capsys.readouterr().err


def test_eval_reports_parse_errors_with_a_caret(model_file, capsys):
    assert cli.main(["eval", "--model", str(model_file), "B#A"]) == 2
    err = capsys.readouterr().err
    assert "B#A" in err
    assert "^" in err


# --- check --------------------------------------------------------------------


def test_check_valid_entry_agrees(capsys):
    code = cli.main(["check", "Darapti XNN", "--bounds", "2,1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "side conditions: NonEmpty(C)" in out
    assert "outcome: NoCountermodelUpToBound" in out
    assert "verdict: ValidPerPaper (engine agrees)" in out


def test_check_invalid_entry_agrees(capsys):
    code = cli.main(["check", "Bocardo NX?", "--bounds", "2,1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "outcome: CountermodelFound" in out
    assert "countermodel (canonical rank" in out
    assert "verdict: InvalidPerPaper (engine agrees)" in out


def test_check_partial_conclusion_note(capsys):
    code = cli.main(["check", "Baroco XN", "--bounds", "2,1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "note:" in out and "(5)" in out


def test_check_counts_models_at_tiny_bounds(capsys):
    code = cli.main(["check", "Barbara NXN", "--bounds", "1,1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "models checked: 128" in out


def test_check_uncataloged_pattern_reports_outcome_only(capsys):
    code = cli.main(["check", "Barbara XXX", "--bounds", "1,1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "outcome: NoCountermodelUpToBound" in out
    assert "entry not cataloged" in out


def test_check_json_report_matches_schema(capsys):
    code = cli.main(["check", "Celarent NKX", "--bounds", "2,1", "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert payload["outcome"] == "NoCountermodelUpToBound"
    assert payload["catalog"]["verdict"] == "ValidPerPaper"
    check_schema(payload, load_report_schema())


def test_check_divergence_exits_one(monkeypatch, capsys):
    entry = catalog.find_entry(
        catalog.MOODS["Bocardo"], catalog.ModalPattern(("N", "X"), None)
    )
    flipped = dataclasses.replace(entry, engine="Valid")
    monkeypatch.setattr(catalog, "find_entry", lambda mood, pattern: flipped)
    code = cli.main(["check", "Bocardo NX", "--bounds", "2,1"])
    out = capsys.readouterr().out
    assert code == 1
    assert "engine found Invalid" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "Frisesomorum NX"],
        ["check", "Darapti KKK"],
        ["check", "Barbara NXN", "--bounds", "2,x"],
        ["check", "Barbara NXN", "--bounds", "0,2"],
        ["check", "Barbara NXN", "--bounds", "2,2", "--max-models", "10"],
        ["check", "Barbara NXN", "--bounds", "1,1", "--threads", "0"],
    ],
)
def test_check_usage_errors(argv, capsys):
    assert cli.main(argv) == 2
    assert "error:" in capsys.readouterr().err


def test_threads_env_fallback(monkeypatch, capsys):
    monkeypatch.setenv("APODEIXIS_THREADS", "3")
    assert cli.main(["check", "Barbara NXN", "--bounds", "1,1"]) == 0
    capsys.readouterr()
    monkeypatch.setenv("APODEIXIS_THREADS", "many")
    assert cli.main(["check", "Barbara NXN", "--bounds", "1,1"]) == 2
    assert "APODEIXIS_THREADS" in capsys.readouterr().err


# --- verify-catalog -------------------------------------------------------------


def test_verify_catalog_nnn_summary(capsys):
    code = cli.main(["verify-catalog", "--scope", "nnn", "--bounds", "1,1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "summary: NoCountermodelUpToBound=14, divergences=0" in out
    assert out.splitlines()[0].split() == [
        "mood",
        "pattern",
        "verdict",
        "outcome",
        "witness",
    ]


def test_verify_catalog_json_is_thread_invariant(tmp_path, monkeypatch, capsys):
    one = tmp_path / "one.json"
    many = tmp_path / "many.json"
    assert (
        cli.main(
            ["verify-catalog", "--scope", "mixed", "--bounds", "2,1",
             "--threads", "1", "--json", str(one)]
        )
        == 0
    )
    monkeypatch.setenv("APODEIXIS_THREADS", "4")
    assert (
        cli.main(
            ["verify-catalog", "--scope", "mixed", "--bounds", "2,1",
             "--json", str(many)]
        )
        == 0
    )
    capsys.readouterr()
    assert one.read_bytes() == many.read_bytes()
    payload = json.loads(one.read_text())
    check_schema(payload, load_report_schema())
    assert len(payload["entries"]) == 28


def test_verify_catalog_all_scope_json(tmp_path, capsys):
    path = tmp_path / "all.json"
    code = cli.main(
        ["verify-catalog", "--bounds", "2,1", "--json", str(path)]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "divergences=0" in out
    payload = json.loads(path.read_text())
    check_schema(payload, load_report_schema())
    assert payload["scope"] == "all"
    assert len(payload["entries"]) == 51


def test_verify_catalog_json_to_stdout(capsysbinary):
    code = cli.main(["verify-catalog", "--scope", "nnn", "--bounds", "1,1",
                     "--json", "-"])
    out = capsysbinary.readouterr().out
    assert code == 0
    assert b'"scope": "nnn"' in out
    assert out.endswith(b"}\n")


def test_verify_catalog_divergence_exits_one(monkeypatch, capsys):
    real = search.verify_up_to

    def flipping(inf, b, **kwargs):
        report = real(inf, b, **kwargs)
        if inf.label.startswith("Barbara"):
            return dataclasses.replace(report, outcome=search.COUNTERMODEL_FOUND)
        return report

    monkeypatch.setattr(search, "verify_up_to", flipping)
    code = cli.main(["verify-catalog", "--scope", "nnn", "--bounds", "1,1"])
    out = capsys.readouterr().out
    assert code == 1
    assert "divergences=1" in out
    assert "divergence: Barbara NNN" in out


def test_verify_catalog_fixture_defect_exits_three(monkeypatch, capsys):
    def broken(entry):
        raise search.SearchInvariantError("fixture does not refute the conclusion")

    monkeypatch.setattr(search, "confirm_fixture", broken)
    code = cli.main(["verify-catalog", "--scope", "mixed", "--bounds", "2,1"])
    assert code == 3
    assert "catalog defect" in capsys.readouterr().err


# --- fixtures --------------------------------------------------------------------


def test_fixtures_all_roundtrip(tmp_path, capsys):
    code = cli.main(["fixtures", "--all", "--out", str(tmp_path)])
    out = capsys.readouterr().out
    assert code == 0
    schema = load_report_schema()
    for name in catalog.FIXTURE_NAMES:
        raw = (tmp_path / f"{name}.json").read_bytes()
        assert decode_model(raw) == catalog.fixture(name).model
        payload = json.loads((tmp_path / f"{name}.report.json").read_text())
        check_schema(payload, schema)
        assert payload["fixture"] == name
        assert payload["reports"]
        for report in payload["reports"]:
            assert report["outcome"] == "FixtureConfirmed"
    assert "confirms refutation of Barbara XN" in out
    assert "confirms refutation of Cesare XN (letter map applied)" in out
    assert out.count("fixture ") == len(catalog.FIXTURE_NAMES)


def test_fixtures_prints_labels(capsys):
    assert cli.main(["fixtures", "--name", "barbara_xn"]) == 0
    out = capsys.readouterr().out
    assert "labels: t0: 0->x0; t1: 0->x1" in out


def test_fixtures_unknown_name(capsys):
    assert cli.main(["fixtures", "--name", "nope"]) == 2
    err = capsys.readouterr().err
    assert "unknown fixture" in err and "barbara_xn" in err


def test_fixtures_requires_a_selection():
    with pytest.raises(SystemExit) as exc:
        cli.main(["fixtures"])
    assert exc.value.code == 2


def test_fixtures_defect_exits_three(monkeypatch, tmp_path, capsys):
    def broken(entry):
        raise search.SearchInvariantError("stale fixture")

    monkeypatch.setattr(search, "confirm_fixture", broken)
    assert cli.main(["fixtures", "--name", "baroco_nx"]) == 3
    assert "FAILED Baroco NX" in capsys.readouterr().err


# --- properties -------------------------------------------------------------------


def test_properties_single_suite(capsys):
    code = cli.main(["properties", "--suite", "req", "--bounds", "2,1"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("suite req: pass (2048 models, 98304 checks)")


def test_properties_all_suites(capsys):
    code = cli.main(["properties", "--bounds", "2,1"])
    out = capsys.readouterr().out
    assert code == 0
    for name in suites.SUITE_NAMES:
        assert f"suite {name}: pass" in out
    assert "witness expr5_without_necessary_o:" in out
    assert "missing witness" not in out


def test_properties_violation_exits_one(monkeypatch, capsys):
    b = bounds((2, 1))

    def failing(name, bnds, max_models=None):
        return suites.SuiteResult(name, bnds, 8, 8, ("rank 5: REQ1 broken",), (), ())

    monkeypatch.setattr(suites, "run_suite", failing)
    code = cli.main(["properties", "--suite", "req", "--bounds", "2,1"])
    out = capsys.readouterr().out
    assert code == 1
    assert "suite req: FAIL" in out
    assert "violation: rank 5: REQ1 broken" in out
    assert "violating model:" in out
    json.loads(out.split("violating model: ")[1].splitlines()[0])
    del b


def test_properties_oversized_bounds(capsys):
    assert cli.main(["properties", "--bounds", "3,3"]) == 2
    assert "error:" in capsys.readouterr().err


# --- parser level ------------------------------------------------------------------


def test_missing_subcommand_is_a_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 2


def test_unknown_policy_message(capsys):
    assert cli.main(["check", "Barbara NXN", "--bounds", "2,2,SomeModels"]) == 2
    assert "unknown policy" in capsys.readouterr().err


def test_all_functions_policy_accepted(capsys):
    code = cli.main(["check", "Barbara NXN", "--bounds", "1,1,AllFunctions"])
    out = capsys.readouterr().out
    assert code == 0
    assert "policy=AllFunctions" in out
    assert "models checked: 64" in out
