"""Translation validation through the adapter protocol, reports and the full pipeline.

An adapter is any command that reads one JSON request line on standard
input and writes one JSON response line on standard output.  Each test runs
in its own process so a crash or hang stays confined to that test.
"""

from __future__ import annotations

import csv
import io
import json
import os
import shlex
import subprocess
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .errors import AdapterProtocolError, PipelineError

PASS, FAIL, MISSING = "pass", "fail", "MissingActual"
DEFAULT_TIMEOUT = 30.0

TABLE_HEADERS = [
    "S. No", "Program", "Paragraph/Method", "% Paths covered", "% Branches covered", "# Paths /tests",
    "# Prog. output", "# Res. output", "# Assertions", "# Prog. assertions", "# Res. Assertions", "# Tests Pass",
]


# -- adapter invocation ------------------------------------------------------------


@dataclass
class AdapterResult:
    status: str  # Ok | Crash(text) | Timeout | ProtocolError(text)
    program_outputs: dict = field(default_factory=dict)
    resource_output_events: list = field(default_factory=list)

    @property
    def ok(self):
        return self.status == "Ok"


def adapter_request(test: dict) -> dict:
    return {"testName": test["name"], "programInputs": test["targetInputs"], "mocks": test["mockPlan"]["mocks"]}


def parse_response(text: str) -> AdapterResult:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise AdapterProtocolError("empty response")
    try:
        doc = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise AdapterProtocolError(f"malformed JSON response: {exc.msg}") from None
    if not isinstance(doc, dict) or "status" not in doc:
        raise AdapterProtocolError("response lacks a status field")
    outputs = doc.get("programOutputs", {})
    events = doc.get("resourceOutputEvents", [])
    if not isinstance(outputs, dict) or not isinstance(events, list):
        raise AdapterProtocolError("programOutputs must be an object and resourceOutputEvents a list")
    for e in events:
        if not isinstance(e, dict) or not {"seqId", "occurrence", "slotValues"} <= set(e):
            raise AdapterProtocolError("resource output event lacks seqId/occurrence/slotValues")
    status = doc["status"]
    return AdapterResult("Ok" if status == "Ok" else f"Crash({status})", outputs, events)


def run_adapter(cmd, request: dict, timeout: float = DEFAULT_TIMEOUT) -> AdapterResult:
    argv = shlex.split(cmd) if isinstance(cmd, str) else list(cmd)
    try:
        proc = subprocess.run(argv, input=json.dumps(request, sort_keys=True) + "\n", capture_output=True,
                              text=True, timeout=timeout)
    except subprocess.TimeoutExpired:
        return AdapterResult("Timeout")
    except OSError as exc:
        return AdapterResult(f"Crash({exc})")
    if proc.returncode != 0:
        tail = (proc.stderr.strip().splitlines() or [f"exit code {proc.returncode}"])[-1]
        return AdapterResult(f"Crash({tail})")
    try:
        return parse_response(proc.stdout)
    except AdapterProtocolError as exc:
        return AdapterResult(f"ProtocolError({exc})")


# -- comparison ------------------------------------------------------------------------


def compare(plan: dict, actual: AdapterResult) -> list:
    """Per-assertion verdicts; resource events are consumed by position per sequence."""
    verdicts = []
    for a in plan["programAssertions"]:
        got = actual.program_outputs.get(a["target"])
        verdicts.append({
            "kind": "program", "var": a["var"], "target": a["target"], "expected": a["expected"], "actual": got,
            "verdict": MISSING if got is None else (PASS if got == a["expected"] else FAIL),
        })
    by_seq = {}
    for e in actual.resource_output_events:
        by_seq.setdefault(e["seqId"], []).append(e)
    for a in plan["resourceAssertions"]:
        events = by_seq.get(a["seqId"], [])
        idx = a["occurrence"] - 1
        got = events[idx]["slotValues"].get(a["slot"]) if idx < len(events) else None
        verdicts.append({
            "kind": "resource", "var": a["var"], "callId": a["callId"], "occurrence": a["occurrence"],
            "seqId": a["seqId"], "slot": a["slot"], "expected": a["expected"], "actual": got,
            "verdict": MISSING if got is None else (PASS if got == a["expected"] else FAIL),
        })
    return verdicts


# -- report ---------------------------------------------------------------------------------


@dataclass
class ParagraphRow:
    program: str
    paragraph: str
    method: str
    paths_pct: float
    branches_pct: float
    test_count: int
    program_output_count: int
    resource_output_count: int
    program_assertion_count: int
    resource_assertion_count: int
    passed: int
    total: int

    @property
    def assertion_count(self):
        return self.program_assertion_count + self.resource_assertion_count

    def cells(self, index):
        return [
            str(index), self.program, f"{self.paragraph}/{self.method}", _pct(self.paths_pct),
            _pct(self.branches_pct), str(self.test_count), str(self.program_output_count),
            str(self.resource_output_count), str(self.assertion_count), str(self.program_assertion_count),
            str(self.resource_assertion_count), f"{self.passed}/{self.total}",
        ]

    def to_json(self):
        return {
            "program": self.program, "paragraph": self.paragraph, "method": self.method,
            "pathsCoveredPct": self.paths_pct, "branchesCoveredPct": self.branches_pct,
            "testCount": self.test_count, "programOutputCount": self.program_output_count,
            "resourceOutputCount": self.resource_output_count, "assertionCount": self.assertion_count,
            "programAssertionCount": self.program_assertion_count,
            "resourceAssertionCount": self.resource_assertion_count, "testsPassed": f"{self.passed}/{self.total}",
        }

    @classmethod
    def from_json(cls, d):
        passed, total = (int(x) for x in d["testsPassed"].split("/"))
        return cls(d["program"], d["paragraph"], d["method"], d["pathsCoveredPct"], d["branchesCoveredPct"],
                   d["testCount"], d["programOutputCount"], d["resourceOutputCount"], d["programAssertionCount"],
                   d["resourceAssertionCount"], passed, total)


def _pct(v):
    return str(int(v)) if float(v).is_integer() else f"{v:.1f}"


@dataclass
class ValidationReport:
    rows: list = field(default_factory=list)
    tests: list = field(default_factory=list)  # per-test detail dicts

    def to_json(self):
        return {"headers": TABLE_HEADERS, "rows": [r.to_json() for r in self.rows], "tests": self.tests}

    @classmethod
    def from_json(cls, d):
        return cls([ParagraphRow.from_json(r) for r in d["rows"]], list(d.get("tests", [])))

    def merged(self, other):
        return ValidationReport(self.rows + other.rows, self.tests + other.tests)


def _run_one(test, adapter_cmd, timeout):
    if not test["status"].startswith("Completed"):
        return {"name": test["name"], "status": f"Invalid test: {test['status']}", "passed": False,
                "vacuous": False, "verdicts": []}
    result = run_adapter(adapter_cmd, adapter_request(test), timeout)
    plan = test["assertionPlan"]
    verdicts = compare(plan, result) if result.ok else []
    n = len(plan["programAssertions"]) + len(plan["resourceAssertions"])
    passed = result.ok and all(v["verdict"] == PASS for v in verdicts)
    return {"name": test["name"], "status": result.status, "passed": passed, "vacuous": n == 0,
            "verdicts": verdicts}


def validate(bundle: dict, adapter_cmd, timeout: float = DEFAULT_TIMEOUT, workers: Optional[int] = None):
    """Run every test of a bundle through the adapter and build the report row."""
    workers = workers or os.cpu_count() or 1
    tests = bundle["tests"]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda t: _run_one(t, adapter_cmd, timeout), tests))
    results.sort(key=lambda r: r["name"])
    for r in results:
        r["program"], r["paragraph"] = bundle["programId"], bundle["paragraph"]
    cov = bundle.get("coverage") or {}
    outputs = bundle.get("outputs") or {"program": [], "resource": []}
    row = ParagraphRow(
        bundle["programId"], bundle["paragraph"], bundle["target"]["method"],
        cov.get("pathPct", 0.0), cov.get("branchPct", 0.0), len(tests), len(outputs["program"]),
        len(outputs["resource"]),
        sum(len(t["assertionPlan"]["programAssertions"]) for t in tests),
        sum(len(t["assertionPlan"]["resourceAssertions"]) for t in tests),
        sum(1 for r in results if r["passed"]), len(tests),
    )
    return ValidationReport([row], results)


def render_report(report: ValidationReport, fmt: str = "markdown") -> str:
    if fmt == "json":
        return json.dumps(report.to_json(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    rows = [r.cells(i) for i, r in enumerate(report.rows, 1)]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(TABLE_HEADERS)
        w.writerows(rows)
        return buf.getvalue()
    if fmt == "markdown":
        lines = ["| " + " | ".join(TABLE_HEADERS) + " |", "|" + "|".join("---" for _ in TABLE_HEADERS) + "|"]
        lines += ["| " + " | ".join(r) + " |" for r in rows]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def write_report(report: ValidationReport, out_dir, figures=True):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for fmt, ext in (("json", "json"), ("markdown", "md"), ("csv", "csv")):
        path = out / f"report.{ext}"
        path.write_text(render_report(report, fmt), encoding="utf-8")
        written.append(path)
    if figures:
        from .plotting import render_figures

        written += render_figures(report, out / "figures")
    return written


# -- pipeline ----------------------------------------------------------------------------------


@dataclass
class PipelineConfig:
    seed: int = 0
    max_unroll: int = 3
    max_paths: int = 256
    timeout: float = DEFAULT_TIMEOUT
    workers: Optional[int] = None
    profile: str = "jvm-junit"
    figures: bool = True


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _dump(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def expand_command(cmd: str, **values) -> str:
    """Fill ``{python}``, ``{bundle}``, ``{program}``, ``{dir}`` and ``{paragraph}`` placeholders."""
    values.setdefault("python", sys.executable)
    return cmd.format(**{k: shlex.quote(str(v)) for k, v in values.items()})


def pipeline(program_path, paragraph, cjmap_path, patterns_path, manifest_path, adapter_cmd, out_dir,
             config: Optional[PipelineConfig] = None) -> ValidationReport:
    """Parse, generate, run the oracle, map, plan, validate and report; every stage persists its output."""
    from .emitter import CJMap, build_bundle, emit_bundle, emit_test_scaffold
    from .frontend import parse_program
    from .ir import cfg_to_dot, ir_to_json, lower
    from .mapper import CJResourceMap, Manifest, map_calls
    from .runner import execute_suite
    from .symexec import GenConfig, generate_tests

    config = config or PipelineConfig()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    def stage(name, fn):
        try:
            return fn()
        except PipelineError:
            raise
        except Exception as exc:  # noqa: BLE001 - every stage failure is reported with its stage name
            raise PipelineError(name, exc) from exc

    source = stage("cobol_frontend", lambda: Path(program_path).read_text(encoding="utf-8"))
    ast = stage("cobol_frontend", lambda: parse_program(source, str(Path(program_path).name)))
    ir = stage("ir_core", lambda: lower(ast))
    stage("ir_core", lambda: ir.cfg(paragraph))
    _write(out / "ir.json", _dump(ir_to_json(ir, paragraph)))
    _write(out / "ir.dot", cfg_to_dot(ir.cfg(paragraph)))

    gen = GenConfig(seed=config.seed, max_unroll=config.max_unroll, max_paths=config.max_paths)
    suite, _ = stage("symexec_testgen", lambda: generate_tests(ir, paragraph, gen))
    _write(out / "suite.json", _dump(suite.to_json()))
    filled = stage("cobol_runner", lambda: execute_suite(ir, suite))
    _write(out / "suite.filled.json", _dump(filled.to_json()))

    def do_map():
        cmap = CJResourceMap.load(patterns_path)
        manifest = Manifest.load(manifest_path)
        calls = ir.cfg(paragraph).external_calls()
        return manifest, map_calls(calls, manifest, cmap)

    manifest, matching = stage("resource_mapper", do_map)
    _write(out / "matching.json", _dump(matching.to_json()))

    def do_bundle():
        cjmap = CJMap.load(cjmap_path)
        cjmap.check_against(ir.var_table, [i.name for i in ast.all_items()])
        return build_bundle(filled, cjmap, matching, manifest, ir)

    bundle = stage("test_emitter", do_bundle)
    bundle_path = out / "bundle.json"
    stage("test_emitter", lambda: emit_bundle(bundle, bundle_path))
    files = stage("test_emitter", lambda: emit_test_scaffold(bundle, config.profile))
    for name, text in files.items():
        _write(out / "scaffold" / name, text)

    program_path = Path(program_path).resolve()
    cmd = expand_command(adapter_cmd, bundle=bundle_path.resolve(), program=program_path, dir=program_path.parent,
                         paragraph=paragraph)
    report = stage("harness_cli", lambda: validate(bundle, cmd, config.timeout, config.workers))
    stage("harness_cli", lambda: write_report(report, out, config.figures))
    return report
