import copy
import json

import pytest

from cobval.emitter import (
    CJMap, bundle_assertion_sets, check_bundle, dumps_bundle, emit_bundle, emit_test_scaffold,
    parse_scaffold_markers, plan_assertions, scaffold_name,
)
from cobval.errors import SchemaViolation, UnknownProfile
from cobval.mapper import Matching
from cobval.symexec import PathTrace, TestCase
from helpers import corpus_entries

CJ = CJMap.from_json({
    "records": [], "paragraphs": [{"cobol": "P", "method": "p", "class": "C"}],
    "variables": [
        {"cobol": "WS-OUT", "target": "out", "form": "field"},
        {"cobol": "WS-TMP", "target": "tmp", "form": "local"},
        {"cobol": "WS-HOST", "target": "host", "form": "local"},
        {"cobol": "WS-ARG", "target": "arg", "form": "parameter"},
    ],
})


def _tc(program_outputs, events):
    return TestCase("t01", {}, [], PathTrace([0, 1], []), program_outputs, events)


def test_plan_assertions_reasons():
    tc = _tc({"WS-OUT": "01", "WS-TMP": "A", "WS-ODD": "9", "WS-ARG": "7"}, [
        {"callId": 1, "occurrence": 1, "values": {"WS-HOST": "X", "WS-OTHER": "Y"}},
        {"callId": 2, "occurrence": 1, "values": {"WS-HOST": "Z"}},
    ])
    m = Matching([(1, 5, 1)], [2], [], {(1, "WS-HOST"): (5, 2, 1)})
    plan = plan_assertions(tc, CJ, m)
    assert plan.program == [{"var": "WS-ARG", "target": "arg", "expected": "7"},
                            {"var": "WS-OUT", "target": "out", "expected": "01"}]
    assert plan.resource == [{"callId": 1, "occurrence": 1, "var": "WS-HOST", "seqId": 5, "slot": "2:1",
                              "expected": "X"}]
    reasons = {(s["var"], s.get("callId")): s["reason"] for s in plan.skipped}
    assert reasons == {("WS-ODD", None): "UnmappedVar", ("WS-TMP", None): "LocalInTarget",
                       ("WS-OTHER", 1): "UnmappedVar", ("WS-HOST", 2): "UnmatchedCall"}
    # every output is accounted for exactly once
    assert plan.total + len(plan.skipped) == 4 + 3


@pytest.fixture(scope="module")
def bundles(corpus_run):
    out = corpus_run[0]
    return {e["program"]: json.loads((out / f"{e['program']}_{e['paragraph']}" / "bundle.json").read_text())
            for e in corpus_entries()}


def test_corpus_bundles_validate(bundles):
    for b in bundles.values():
        check_bundle(b)
        assert emit_bundle(b) == dumps_bundle(b)


def test_schema_violation_on_missing_key(bundles):
    b = copy.deepcopy(bundles["LGACDB01"])
    del b["tests"][0]["assertionPlan"]
    with pytest.raises(SchemaViolation):
        check_bundle(b)


def test_assertion_on_local_variable_rejected(bundles):
    b = copy.deepcopy(bundles["LGACDB01"])
    b["tests"][0]["assertionPlan"]["programAssertions"].append(
        {"var": "DB2-LASTNAME", "target": "db2Lastname", "expected": "X"})
    with pytest.raises(SchemaViolation, match="local variable"):
        check_bundle(b)


def test_non_monotone_pairs_rejected(bundles):
    b = copy.deepcopy(bundles["LGACDB01"])
    b["matching"]["pairs"][0], b["matching"]["pairs"][1] = b["matching"]["pairs"][1], b["matching"]["pairs"][0]
    with pytest.raises(SchemaViolation, match="increasing"):
        check_bundle(b)


def test_scaffold_markers_mirror_the_plan(bundles):
    for b in bundles.values():
        files = emit_test_scaffold(b)
        assert list(files) == [scaffold_name(b) + ".java"]
        assert parse_scaffold_markers(next(iter(files.values()))) == bundle_assertion_sets(b)


def test_scaffold_emission_is_deterministic(bundles):
    b = bundles["CHANN11"]
    assert emit_test_scaffold(b) == emit_test_scaffold(copy.deepcopy(b))


def test_unknown_profile(bundles):
    with pytest.raises(UnknownProfile):
        emit_test_scaffold(bundles["CHANN11"], "cobol-zunit")


def test_cjmap_rejects_unknown_variables():
    from cobval.pic import resolve_pic

    with pytest.raises(SchemaViolation, match="WS-OUT"):
        CJ.check_against({"WS-TMP": resolve_pic("X")}, ["WS-TMP"])
