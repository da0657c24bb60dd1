"""Assertion and mock planning, canonical test bundles and unit-test scaffolds."""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

import jsonschema

from . import __version__
from .errors import OccurrenceGap, SchemaViolation, UnknownProfile
from .ir import CallOp, IrProgram, io_variables
from .mapper import Manifest, Matching, slot_key
from .symexec import TestSuite

FIELD, PARAMETER, LOCAL = "field", "parameter", "local"
FORMS = (FIELD, PARAMETER, LOCAL)
LOCAL_IN_TARGET, UNMATCHED_CALL, UNMAPPED_VAR = "LocalInTarget", "UnmatchedCall", "UnmappedVar"


@dataclass
class CJMap:
    records: list  # (cobolRecord, targetClass)
    variables: dict  # cobolVar -> (targetName, form)
    paragraphs: list  # (cobolParagraph, targetMethod, targetClass)

    @classmethod
    def from_json(cls, d):
        variables = {}
        for v in d.get("variables", []):
            if v["form"] not in FORMS:
                raise SchemaViolation(f"variable {v['cobol']}: unknown form {v['form']!r}")
            variables[v["cobol"]] = (v["target"], v["form"])
        return cls([(r["cobol"], r["target"]) for r in d.get("records", [])], variables,
                   [(p["cobol"], p["method"], p["class"]) for p in d.get("paragraphs", [])])

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))

    def to_json(self):
        return {
            "records": [{"cobol": c, "target": t} for c, t in self.records],
            "variables": [{"cobol": c, "target": t, "form": f} for c, (t, f) in self.variables.items()],
            "paragraphs": [{"cobol": c, "method": m, "class": k} for c, m, k in self.paragraphs],
        }

    def check_against(self, var_table, items=()):
        known = set(var_table) | set(items)
        unknown = [v for v in self.variables if v not in known]
        if unknown:
            raise SchemaViolation(f"CJMap variables not in the data dictionary: {', '.join(sorted(unknown))}")

    def method_of(self, paragraph):
        for c, m, k in self.paragraphs:
            if c == paragraph:
                return m, k
        raise SchemaViolation(f"paragraph {paragraph} missing from CJMap")

    def target(self, var):
        return self.variables.get(var)


# -- assertion plan -------------------------------------------------------------------


@dataclass
class AssertionPlan:
    program: list = field(default_factory=list)  # {var, target, expected}
    resource: list = field(default_factory=list)  # {callId, occurrence, var, seqId, slot, expected}
    skipped: list = field(default_factory=list)  # {var, reason, [callId, occurrence]}

    @property
    def total(self):
        return len(self.program) + len(self.resource)

    def to_json(self):
        return {"programAssertions": self.program, "resourceAssertions": self.resource, "skipped": self.skipped}

    @classmethod
    def from_json(cls, d):
        return cls(list(d["programAssertions"]), list(d["resourceAssertions"]), list(d["skipped"]))


def plan_assertions(tc, cjmap: CJMap, m: Matching) -> AssertionPlan:
    """Assertions for every mapped output; everything else is skipped with a reason."""
    plan = AssertionPlan()
    for var, expected in sorted((tc.expected_program_outputs or {}).items()):
        mapped = cjmap.target(var)
        if mapped is None:
            plan.skipped.append({"var": var, "reason": UNMAPPED_VAR})
        elif mapped[1] == LOCAL:
            plan.skipped.append({"var": var, "reason": LOCAL_IN_TARGET})
        else:
            plan.program.append({"var": var, "target": mapped[0], "expected": expected})
    for event in tc.expected_resource_outputs or []:
        call_id, occ = event["callId"], event["occurrence"]
        seq_id = m.seq_of(call_id)
        for var, expected in event["values"].items():
            where = {"callId": call_id, "occurrence": occ}
            if seq_id is None:
                plan.skipped.append({"var": var, "reason": UNMATCHED_CALL, **where})
                continue
            entry = m.var_arg_map.get((call_id, var))
            if entry is None:
                plan.skipped.append({"var": var, "reason": UNMAPPED_VAR, **where})
                continue
            s, ci, slot = entry
            plan.resource.append({"callId": call_id, "occurrence": occ, "var": var, "seqId": s,
                                  "slot": slot_key(ci, slot), "expected": expected})
    return plan


# -- mock plan ---------------------------------------------------------------------------


@dataclass
class MockPlan:
    sequences: dict = field(default_factory=dict)  # seqId -> [ {slotValues} ]
    notes: list = field(default_factory=list)

    def to_wire(self):
        return [{"seqId": s, "fifo": [{"slotValues": dict(sorted(e.items()))} for e in fifo]}
                for s, fifo in sorted(self.sequences.items())]

    def to_json(self):
        return {"mocks": self.to_wire(), "notes": self.notes}

    @classmethod
    def from_json(cls, d):
        return cls({m["seqId"]: [e["slotValues"] for e in m["fifo"]] for m in d["mocks"]}, list(d.get("notes", [])))


def call_occurrences(ir: IrProgram, paragraph, path) -> Counter:
    cfg = ir.cfg(paragraph)
    counts = Counter()
    for n in path.nodes:
        op = cfg.nodes[n].op
        if isinstance(op, CallOp):
            counts[op.call.call_id] += 1
    return counts


def plan_mocks(tc, m: Matching, ir: Optional[IrProgram] = None, paragraph: Optional[str] = None) -> MockPlan:
    """Order-dependent stub values per matched target sequence."""
    if ir is not None:
        have = Counter(e["callId"] for e in tc.resource_inputs)
        need = call_occurrences(ir, paragraph, tc.path)
        for call_id, n in sorted(need.items()):
            if have[call_id] < n:
                raise OccurrenceGap(f"test {tc.name}: call {call_id} occurs {n} times, {have[call_id]} value sets")
    plan = MockPlan()
    for entry in tc.resource_inputs:
        call_id = entry["callId"]
        seq_id = m.seq_of(call_id)
        if seq_id is None:
            plan.notes.append(f"call {call_id} occurrence {entry['occurrence']} unmatched: no mock entry")
            continue
        slots = {}
        for var, value in sorted(entry["values"].items()):
            target = m.var_arg_map.get((call_id, var))
            if target is None:
                plan.notes.append(f"call {call_id} occurrence {entry['occurrence']}: {var} has no target slot")
                continue
            slots[slot_key(target[1], target[2])] = value
        plan.sequences.setdefault(seq_id, []).append(slots)
    for seq_id in m.unmatched_target:
        plan.notes.append(f"sequence {seq_id} matches no source call")
    return plan


# -- bundle ---------------------------------------------------------------------------------


def load_schema():
    text = resources.files("cobval").joinpath("schemas/bundle.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def target_inputs(tc, cjmap: CJMap):
    out = {}
    for var, value in sorted(tc.program_inputs.items()):
        mapped = cjmap.target(var)
        if mapped is not None and mapped[1] != LOCAL:
            out[mapped[0]] = value
    return out


def paragraph_outputs(ir: IrProgram, paragraph):
    """Distinct program output variables and resource output variables of a paragraph."""
    cfg = ir.cfg(paragraph)
    program = sorted(io_variables(ir, paragraph)[1])
    resource = sorted({v for c in cfg.external_calls() for v in c.resource_outputs})
    return {"program": program, "resource": resource}


def build_bundle(suite: TestSuite, cjmap: CJMap, matching: Matching, manifest: Manifest,
                 ir: Optional[IrProgram] = None, metadata: Optional[dict] = None) -> dict:
    method, cls = cjmap.method_of(suite.paragraph)
    tests = []
    for tc in suite.tests:
        plan = plan_assertions(tc, cjmap, matching)
        mocks = plan_mocks(tc, matching, ir, suite.paragraph)
        tests.append({
            "name": tc.name,
            "status": tc.status,
            "programInputs": dict(sorted(tc.program_inputs.items())),
            "targetInputs": target_inputs(tc, cjmap),
            "resourceInputs": tc.resource_inputs,
            "expectedProgramOutputs": dict(sorted((tc.expected_program_outputs or {}).items())),
            "expectedResourceOutputs": tc.expected_resource_outputs or [],
            "branchDecisions": [[n, bool(t)] for n, t in tc.path.decisions],
            "assertionPlan": plan.to_json(),
            "mockPlan": mocks.to_json(),
        })
    meta = {"seed": suite.seed, "config": suite.config, "toolVersion": __version__}
    meta.update(metadata or {})
    bundle = {
        "bundleVersion": 1,
        "programId": suite.program_id,
        "paragraph": suite.paragraph,
        "target": {"class": cls, "method": method},
        "cjmap": cjmap.to_json(),
        "manifest": manifest.to_json(),
        "matching": matching.to_json(),
        "coverage": suite.coverage.to_json() if suite.coverage else None,
        "inputs": list(suite.inputs),
        "outputs": paragraph_outputs(ir, suite.paragraph) if ir is not None else {"program": [], "resource": []},
        "tests": tests,
        "metadata": meta,
    }
    check_bundle(bundle)
    return bundle


def check_bundle(bundle: dict):
    try:
        jsonschema.validate(bundle, load_schema())
    except jsonschema.ValidationError as exc:
        raise SchemaViolation(f"bundle schema: {exc.message} at {list(exc.absolute_path)}") from None
    local = {c for c, (_, f) in ((v["cobol"], (v["target"], v["form"])) for v in bundle["cjmap"]["variables"])
             if f == LOCAL}
    for t in bundle["tests"]:
        for a in t["assertionPlan"]["programAssertions"]:
            if a["var"] in local:
                raise SchemaViolation(f"test {t['name']}: assertion on local variable {a['var']}")
    pairs = [(p["callId"], p["seqId"]) for p in bundle["matching"]["pairs"]]
    for (c1, s1), (c2, s2) in zip(pairs, pairs[1:]):
        if not (c1 < c2 and s1 < s2):
            raise SchemaViolation("matching pairs are not strictly increasing")


def dumps_bundle(bundle: dict) -> str:
    return json.dumps(bundle, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def emit_bundle(bundle: dict, path=None) -> str:
    check_bundle(bundle)
    text = dumps_bundle(bundle)
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text


# -- scaffolds ---------------------------------------------------------------------------------


def _java_ident(text):
    return re.sub(r"[^A-Za-z0-9_]", "_", text)


def _jstr(value):
    return json.dumps(value, ensure_ascii=True)


def scaffold_name(bundle):
    return f"{_java_ident(bundle['target']['class'])}_{_java_ident(bundle['paragraph'])}_Test"


def _junit(bundle) -> dict:
    cls = bundle["target"]["class"]
    method = bundle["target"]["method"]
    name = scaffold_name(bundle)
    forms = {v["target"]: v["form"] for v in bundle["cjmap"]["variables"]}
    params = [v["target"] for v in bundle["cjmap"]["variables"] if v["form"] == PARAMETER]
    lines = [
        f"// Validation tests for {bundle['programId']} paragraph {bundle['paragraph']}",
        f"// Target: {cls}.{method}",
        "// Mocks use the OrderedStubs facade: each thenReturn call queues one value set,",
        "// consumed by successive invocations of the matched call sequence.",
        "import org.junit.jupiter.api.Test;",
        "",
        "import static org.junit.jupiter.api.Assertions.assertEquals;",
        "",
        f"public class {name} {{",
    ]
    for t in bundle["tests"]:
        plan = t["assertionPlan"]
        inputs = t["targetInputs"]
        lines.append("")
        lines.append("    @Test")
        lines.append(f"    void {_java_ident(t['name'])}() {{")
        lines.append(f"        {cls} target = new {cls}();")
        lines.append("        OrderedStubs stubs = OrderedStubs.install(target);")
        lines.append("        // initialization")
        for tname, value in inputs.items():
            if forms.get(tname) == FIELD:
                lines.append(f"        target.{tname} = OrderedStubs.value({_jstr(value)});")
        lines.append("        // mocks")
        for mock in t["mockPlan"]["mocks"]:
            for entry in mock["fifo"]:
                args = ", ".join(f"{_jstr(k)}, {_jstr(v)}" for k, v in entry["slotValues"].items())
                lines.append(f"        stubs.sequence({mock['seqId']}).thenReturn({args});")
        for note in t["mockPlan"]["notes"]:
            lines.append(f"        // mock note: {note}")
        lines.append("        // invocation")
        call_args = ", ".join(f"OrderedStubs.value({_jstr(inputs[p])})" if p in inputs else "null" for p in params)
        lines.append(f"        target.{method}({call_args});")
        lines.append("        // assertions")
        for a in plan["programAssertions"]:
            lines.append(f"        // @assert program {a['var']} {a['target']} {_jstr(a['expected'])}")
            lines.append(f"        assertEquals({_jstr(a['expected'])}, OrderedStubs.text(target.{a['target']}));")
        for a in plan["resourceAssertions"]:
            lines.append(f"        // @assert resource {a['callId']} {a['occurrence']} {a['var']} "
                         f"{a['seqId']}/{a['slot']} {_jstr(a['expected'])}")
            lines.append(f"        assertEquals({_jstr(a['expected'])}, "
                         f"stubs.sequence({a['seqId']}).captured({a['occurrence']}, {_jstr(a['slot'])}));")
        for s in plan["skipped"]:
            where = f" call {s['callId']} occurrence {s['occurrence']}" if "callId" in s else ""
            lines.append(f"        // @skip {s['var']} {s['reason']}{where}")
        lines.append("    }")
    lines.append("}")
    return {f"{name}.java": "\n".join(lines) + "\n"}


PROFILES = {"jvm-junit": _junit}


def emit_test_scaffold(bundle: dict, profile: str = "jvm-junit") -> dict:
    """Render scaffold files ``{filename: text}`` for a registered profile."""
    if profile not in PROFILES:
        raise UnknownProfile(profile)
    return PROFILES[profile](bundle)


_ASSERT_PROGRAM = re.compile(r"^\s*// @assert program (\S+) (\S+) (\".*\")$")
_ASSERT_RESOURCE = re.compile(r"^\s*// @assert resource (\d+) (\d+) (\S+) (\d+)/(\S+) (\".*\")$")


def parse_scaffold_markers(text: str):
    """Re-read assertion markers: ``(programs, resources)`` as sets of tuples per test."""
    programs, resources_ = set(), set()
    test = None
    for line in text.splitlines():
        m = re.match(r"^\s*void (\w+)\(\)", line)
        if m:
            test = m.group(1)
            continue
        m = _ASSERT_PROGRAM.match(line)
        if m:
            programs.add((test, m.group(1), m.group(2), json.loads(m.group(3))))
            continue
        m = _ASSERT_RESOURCE.match(line)
        if m:
            resources_.add((test, int(m.group(1)), int(m.group(2)), m.group(3), int(m.group(4)), m.group(5),
                            json.loads(m.group(6))))
    return programs, resources_


def bundle_assertion_sets(bundle: dict):
    programs, resources_ = set(), set()
    for t in bundle["tests"]:
        name = _java_ident(t["name"])
        for a in t["assertionPlan"]["programAssertions"]:
            programs.add((name, a["var"], a["target"], a["expected"]))
        for a in t["assertionPlan"]["resourceAssertions"]:
            resources_.add((name, a["callId"], a["occurrence"], a["var"], a["seqId"], a["slot"], a["expected"]))
    return programs, resources_
