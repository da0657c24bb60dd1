import json
import sys
import textwrap

import pytest

from cobval.errors import AdapterProtocolError, PipelineError
from cobval.harness import (
    MISSING, TABLE_HEADERS, AdapterResult, PipelineConfig, ValidationReport, compare, expand_command,
    parse_response, pipeline, render_report, run_adapter, validate, write_report,
)
from helpers import CORPUS, entry


def _bundle(corpus_run, program="ICGCUDAT"):
    e = entry(program)
    d = corpus_run[0] / f"{program}_{e['paragraph']}"
    return json.loads((d / "bundle.json").read_text(encoding="utf-8")), d / "bundle.json", CORPUS / e["source"]


def _adapter(tmp_path, name, body):
    path = tmp_path / f"{name}.py"
    path.write_text(textwrap.dedent(body), encoding="utf-8")
    return [sys.executable, str(path)]


def test_parse_response_errors():
    with pytest.raises(AdapterProtocolError, match="malformed JSON"):
        parse_response("{not json")
    with pytest.raises(AdapterProtocolError, match="empty"):
        parse_response("\n")
    with pytest.raises(AdapterProtocolError, match="status"):
        parse_response('{"programOutputs": {}}')
    with pytest.raises(AdapterProtocolError, match="seqId"):
        parse_response('{"status": "Ok", "resourceOutputEvents": [{"seqId": 1}]}')
    assert parse_response('{"status": "Ok"}').ok
    assert parse_response('{"status": "Trap(x)"}').status == "Crash(Trap(x))"


def test_adapter_statuses(tmp_path):
    req = {"testName": "t01", "programInputs": {}, "mocks": []}
    bad = _adapter(tmp_path, "bad", "print('{oops')\n")
    assert run_adapter(bad, req).status.startswith("ProtocolError(malformed JSON")
    crash = _adapter(tmp_path, "crash", "import sys\nsys.stderr.write('boom\\n')\nsys.exit(3)\n")
    assert run_adapter(crash, req).status == "Crash(boom)"
    slow = _adapter(tmp_path, "slow", "import time\ntime.sleep(10)\n")
    assert run_adapter(slow, req, timeout=0.5).status == "Timeout"
    assert run_adapter([str(tmp_path / "missing-binary")], req).status.startswith("Crash(")


def test_missing_actual_values():
    plan = {"programAssertions": [{"var": "A", "target": "a", "expected": "1"}],
            "resourceAssertions": [{"var": "H", "callId": 1, "occurrence": 2, "seqId": 1, "slot": "0:1",
                                    "expected": "X"}]}
    actual = AdapterResult("Ok", {}, [{"seqId": 1, "occurrence": 1, "slotValues": {"0:1": "X"}}])
    assert [v["verdict"] for v in compare(plan, actual)] == [MISSING, MISSING]
    actual = AdapterResult("Ok", {"a": "2"}, [{"seqId": 1, "occurrence": 1, "slotValues": {}},
                                              {"seqId": 1, "occurrence": 2, "slotValues": {"0:1": "X"}}])
    assert [v["verdict"] for v in compare(plan, actual)] == ["fail", "pass"]


def test_crash_in_one_test_stays_isolated(tmp_path, corpus_run):
    bundle, bundle_path, program = _bundle(corpus_run)
    cmd = _adapter(tmp_path, "flaky", f"""
        import io, json, sys
        line = sys.stdin.readline()
        if json.loads(line)["testName"] == "t01":
            sys.exit(3)
        sys.stdin = io.StringIO(line)
        from cobval.adapters.mirror import main
        sys.exit(main([{str(bundle_path)!r}, {str(program)!r}]))
    """)
    report = validate(bundle, cmd, timeout=30, workers=2)
    by_name = {t["name"]: t for t in report.tests}
    assert not by_name["t01"]["passed"] and by_name["t01"]["status"].startswith("Crash(")
    assert all(t["passed"] for name, t in by_name.items() if name != "t01")
    assert report.rows[0].cells(1)[-1] == f"{len(bundle['tests']) - 1}/{len(bundle['tests'])}"


def test_mirror_with_forced_output_fails(corpus_run):
    bundle, bundle_path, program = _bundle(corpus_run, "LGACDB01")
    cmd = [sys.executable, "-m", "cobval.adapters.mirror", str(bundle_path), str(program), "--set",
           "caReturnCode=00"]
    report = validate(bundle, cmd, timeout=30)
    # three tests assert the return code; the success path does not write it
    assert report.rows[0].passed == 1


def test_empty_report_is_header_only():
    empty = ValidationReport()
    md = render_report(empty, "markdown").splitlines()
    assert md == ["| " + " | ".join(TABLE_HEADERS) + " |", "|" + "|".join("---" for _ in TABLE_HEADERS) + "|"]
    assert render_report(empty, "csv").splitlines() == [",".join(TABLE_HEADERS)]
    assert json.loads(render_report(empty, "json"))["rows"] == []
    with pytest.raises(ValueError):
        render_report(empty, "xml")


def test_write_report_files_and_figures(tmp_path, corpus_run):
    report = corpus_run[1]
    written = write_report(report, tmp_path)
    names = sorted(p.relative_to(tmp_path).as_posix() for p in written)
    assert names == ["figures/assertions.png", "figures/coverage.png", "figures/tests_pass.png",
                     "report.csv", "report.json", "report.md"]
    assert (tmp_path / "figures" / "coverage.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    again = ValidationReport.from_json(json.loads((tmp_path / "report.json").read_text()))
    assert render_report(again) == render_report(report)


def test_expand_command_quotes_paths():
    cmd = expand_command("{python} run.py {bundle} {paragraph}", python="py", bundle="/a b/c.json",
                         paragraph="P-1")
    assert cmd == "py run.py '/a b/c.json' P-1"


def test_pipeline_reports_failing_stage(tmp_path):
    e = entry("ICGCUDAT")
    args = [CORPUS / e["source"], e["paragraph"], CORPUS / e["cjmap"], CORPUS / "patterns.json",
            CORPUS / e["manifest"], "{python} -c pass", tmp_path]
    bad = list(args)
    bad[0] = tmp_path / "nope.cbl"
    with pytest.raises(PipelineError) as exc:
        pipeline(*bad)
    assert exc.value.stage == "cobol_frontend"
    bad = list(args)
    bad[1] = "NO-SUCH-PARAGRAPH"
    with pytest.raises(PipelineError) as exc:
        pipeline(*bad)
    assert exc.value.stage == "ir_core"
    bad = list(args)
    bad[3] = tmp_path / "nope.json"
    with pytest.raises(PipelineError) as exc:
        pipeline(*bad)
    assert exc.value.stage == "resource_mapper"


def test_pipeline_with_silent_adapter_counts_failures(tmp_path):
    e = entry("ICGCUDAT")
    report = pipeline(CORPUS / e["source"], e["paragraph"], CORPUS / e["cjmap"], CORPUS / "patterns.json",
                      CORPUS / e["manifest"], "{python} -c pass", tmp_path, PipelineConfig(figures=False))
    assert all(t["status"].startswith("ProtocolError(empty") for t in report.tests)
    assert report.rows[0].passed == 0
    for name in ("ir.json", "ir.dot", "suite.json", "suite.filled.json", "matching.json", "bundle.json"):
        assert (tmp_path / name).is_file()
