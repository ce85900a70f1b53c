import copy
import io
import json

import pytest

from contact_pair_lab import (CHECK_IDS, CORPUS_NAMES, ScenarioError,
                              corpus_build, load_scenario, run_checks,
                              save_scenario, scenario_from_dict,
                              scenario_to_dict)
from contact_pair_lab.cli import main as cli_main


# -- scenario construction ----------------------------------------------

def test_corpus_names_build(tmp_path):
    for name in CORPUS_NAMES:
        scenario = corpus_build(name)
        assert scenario.name == name
        assert len(scenario.coordinates) == 2 * sum(scenario.pair_type) + 2


def test_darboux_params_range():
    corpus_build("darboux", (2, 1))
    with pytest.raises(ScenarioError):
        corpus_build("darboux", (0, 0))
    with pytest.raises(ScenarioError):
        corpus_build("darboux", (3, 0))
    with pytest.raises(ScenarioError):
        corpus_build("unknown-scenario")
    with pytest.raises(ScenarioError):
        corpus_build("heis6", (1, 1))


# -- JSON round trip -----------------------------------------------------

def test_save_load_roundtrip(tmp_path):
    for name, params in (("darboux", (1, 1)), ("heis6", None),
                         ("darboux-J-noninvariant", None)):
        scenario = corpus_build(name, params)
        path = tmp_path / f"{name}.json"
        save_scenario(scenario, str(path))
        loaded = load_scenario(str(path))
        assert loaded.name == name
        assert scenario.canonical_equal(loaded)


def test_hand_written_file_matches_builder(tmp_path):
    scenario = corpus_build("heis6")
    data = scenario_to_dict(scenario)
    # rewrite a few expressions in equivalent but different text
    data["alpha1"][0] = "-2*y/2"
    data["metric"][0][0] = "2/4"
    data["phi"][1][0] = "0 - 1"
    rebuilt = scenario_from_dict(data, "heis6")
    assert scenario.canonical_equal(rebuilt)


def test_schema_errors_are_path_addressed():
    scenario = corpus_build("heis6")
    good = scenario_to_dict(scenario)

    data = copy.deepcopy(good)
    data["frame"] = data["frame"][:5]
    with pytest.raises(ScenarioError, match="frame"):
        scenario_from_dict(data)

    data = copy.deepcopy(good)
    del data["alpha1"]
    with pytest.raises(ScenarioError, match="alpha1"):
        scenario_from_dict(data)

    data = copy.deepcopy(good)
    data["base_point"]["x"] = "one half"
    with pytest.raises(ScenarioError, match="base_point.x"):
        scenario_from_dict(data)

    data = copy.deepcopy(good)
    data["type"] = [3, 0]
    with pytest.raises(ScenarioError, match="type"):
        scenario_from_dict(data)

    data = copy.deepcopy(good)
    data["expectations"] = {"pair.valid": "maybe"}
    with pytest.raises(ScenarioError, match="expectations.pair.valid"):
        scenario_from_dict(data)

    data = copy.deepcopy(good)
    data["metric"][2][2] = "1 +"
    with pytest.raises(ScenarioError, match=r"metric\[2\]\[2\]"):
        scenario_from_dict(data)


# -- check runner ---------------------------------------------------------

def _strip_ms(report_dict):
    cleaned = copy.deepcopy(report_dict)
    for row in cleaned["checks"]:
        row.pop("ms")
    return cleaned


def test_all_corpus_scenarios_pass():
    for name in CORPUS_NAMES:
        report = run_checks(corpus_build(name))
        failed = [row.id for row in report.rows if row.verdict == "fail"]
        assert report.overall == "pass", (name, failed)


def test_expected_failures_flip_polarity():
    scenario = corpus_build("heis6-n4")
    report = run_checks(scenario)
    key = "submanifold.heis6-n4.induced-pair-is-a-contact-pair"
    row = next(r for r in report.rows if r.id == key)
    assert row.verdict == "pass"
    assert "expected failure" in row.witness

    # drop the expectation: the same raw failure now fails the report
    scenario.expectations.pop(key)
    report = run_checks(scenario)
    row = next(r for r in report.rows if r.id == key)
    assert row.verdict == "fail"
    assert report.overall == "fail"


def test_unmet_expected_failure_fails():
    scenario = corpus_build("heis6-n4")
    scenario.expectations["pair.valid"] = "fail"
    report = run_checks(scenario, selection=("pair",))
    row = next(r for r in report.rows if r.id == "pair.valid")
    assert row.verdict == "fail"
    assert "expected a failure" in row.witness


def test_selection_resolves_dependencies():
    report = run_checks(corpus_build("darboux"), selection=("normality",))
    ids = [row.id for row in report.rows]
    assert "pair.valid" in ids and "normality.N1" in ids
    assert not any(i.startswith("hermitian.") for i in ids)
    with pytest.raises(ValueError):
        run_checks(corpus_build("darboux"), selection=("bogus",))


def test_broken_pair_short_circuits_dependents():
    scenario = corpus_build("heis6")
    scenario.alpha2 = list(scenario.alpha1)  # same form twice: no volume
    scenario._cache.clear()
    report = run_checks(scenario)
    assert report.rows[0].id == "pair.valid"
    assert report.rows[0].verdict == "fail"
    assert all(row.verdict == "skipped" for row in report.rows[1:])
    assert report.overall == "fail"


def test_reports_are_deterministic_modulo_timing():
    first = run_checks(corpus_build("heis6"), seed=1)
    second = run_checks(corpus_build("heis6"), seed=1)
    assert _strip_ms(first.to_dict()) == _strip_ms(second.to_dict())


def test_check_id_registry_covers_the_theorems():
    """Every headline construction and theorem must be exercised by at
    least one corpus check id."""
    seen = set()
    for name in CORPUS_NAMES:
        for row in run_checks(corpus_build(name)).rows:
            seen.add(row.id)
    required = set(CHECK_IDS) | {
        # Sasakian leaf (span{X1,X2,X3}) and its minimality
        "submanifold.factor.induced-structure-satisfies-the-sasakian"
        "-covariant-identity",
        "submanifold.factor.mean-curvature-vanishes",
        # diagonal 3-leaf: constant angle and minimality equivalence
        "submanifold.heis6-leaf3.reeb-angle-is-constant-along-the-vertical"
        "-tangent-direction",
        "submanifold.heis6-leaf3.minimality-is-equivalent-to-angle"
        "-constancy",
        # 4-dimensional group leaf: complex shape identity, induced-pair
        # obstruction, minimality from Reeb tangency
        "submanifold.heis6-n4.complex-shape-identity-on-span-fields",
        "submanifold.heis6-n4.induced-pair-is-a-contact-pair",
        "submanifold.heis6-n4.minimality-is-equivalent-to-reeb-tangency",
        # non-invariant graph example: negative direction
        "submanifold.darboux-J-noninvariant.minimal",
        "submanifold.darboux-J-noninvariant.invariant-J",
    }
    missing = required - seen
    assert not missing, sorted(missing)


# -- CLI -------------------------------------------------------------------

def _run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli_main(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_cli_corpus_list():
    code, out, _ = _run_cli(["corpus", "list"])
    assert code == 0
    assert out.split() == list(CORPUS_NAMES)


def test_cli_corpus_run_json():
    code, out, _ = _run_cli(["corpus", "run", "darboux", "--checks",
                             "normality", "--format", "json"])
    assert code == 0
    report = json.loads(out)
    assert report["overall"] == "pass"
    assert report["seed"] == 1
    ids = [row["id"] for row in report["checks"]]
    assert "normality.N1" in ids
    verdicts = {row["id"]: row["verdict"] for row in report["checks"]}
    assert verdicts["normality.N1"] == "pass"


def test_cli_exit_codes(tmp_path):
    code, _, _ = _run_cli(["corpus", "run", "heis6"])
    assert code == 0

    broken = tmp_path / "broken.json"
    broken.write_text('{"coordinates": ["x"]}')
    code, _, err = _run_cli(["verify", "--input", str(broken)])
    assert code == 2 and err

    code, _, err = _run_cli(["corpus", "run", "darboux", "--checks", "huh"])
    assert code == 2 and "huh" in err

    scenario = corpus_build("heis6-n4")
    scenario.expectations.clear()
    path = tmp_path / "failing.json"
    save_scenario(scenario, str(path))
    code, out, _ = _run_cli(["verify", "--input", str(path)])
    assert code == 1


def test_cli_verify_and_submanifold(tmp_path):
    path = tmp_path / "heis6.json"
    save_scenario(corpus_build("heis6"), str(path))
    code, out, _ = _run_cli(["verify", "--input", str(path)])
    assert code == 0 and "overall: pass" in out

    code, out, _ = _run_cli(["submanifold", "--input", str(path),
                             "--name", "factor", "--theorems",
                             "--format", "json"])
    assert code == 0
    report = json.loads(out)
    assert report["submanifold"] == "factor"
    ids = [row["id"] for row in report["checks"]]
    assert "mean-curvature-vanishes" in ids

    code, _, err = _run_cli(["submanifold", "--input", str(path),
                             "--name", "nope"])
    assert code == 2 and "nope" in err


def test_cli_determinism(tmp_path):
    runs = []
    for _ in range(2):
        code, out, _ = _run_cli(["corpus", "run", "heis6",
                                 "--format", "json", "--seed", "1"])
        assert code == 0
        runs.append(_strip_ms(json.loads(out)))
    assert runs[0] == runs[1]
