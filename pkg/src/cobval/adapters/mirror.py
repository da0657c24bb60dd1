"""Adapter that answers requests by running the COBOL paragraph itself.

Target-side names are mapped back to COBOL variables through the bundle's
CJMap and matching.  Inputs with no target name fall back to the values
recorded in the bundle for the same test.  A correct translation and this
adapter must agree on every assertion, so it serves as the positive control.

Usage: python -m cobval.adapters.mirror BUNDLE PROGRAM.cbl [--set VAR=VALUE ...]
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..frontend import parse_program
from ..ir import lower
from ..runner import MockScript, run


def _reverse(bundle):
    to_cobol = {v["target"]: v["cobol"] for v in bundle["cjmap"]["variables"] if v["form"] != "local"}
    to_target = {v["cobol"]: v["target"] for v in bundle["cjmap"]["variables"] if v["form"] != "local"}
    return to_cobol, to_target


def answer(bundle: dict, ir, request: dict, overrides=None) -> dict:
    test = next((t for t in bundle["tests"] if t["name"] == request["testName"]), None)
    if test is None:
        raise KeyError(f"unknown test {request['testName']}")
    to_cobol, to_target = _reverse(bundle)
    inputs = dict(test["programInputs"])
    for name, value in request["programInputs"].items():
        if name in to_cobol:
            inputs[to_cobol[name]] = value

    seq_to_call = {p["seqId"]: p["callId"] for p in bundle["matching"]["pairs"]}
    call_to_seq = {c: s for s, c in seq_to_call.items()}
    slot_var = {(e["callId"], e["slot"]): e["var"] for e in bundle["matching"]["varArgMap"]}
    var_slot = {(e["callId"], e["var"]): e["slot"] for e in bundle["matching"]["varArgMap"]}

    entries = []
    fifo_by_call = {}
    for m in request["mocks"]:
        call_id = seq_to_call.get(m["seqId"])
        if call_id is not None:
            fifo_by_call[call_id] = list(m["fifo"])
    for recorded in test["resourceInputs"]:
        call_id = recorded["callId"]
        values = dict(recorded["values"])
        queue = fifo_by_call.get(call_id)
        if queue:
            for slot, value in queue.pop(0)["slotValues"].items():
                var = slot_var.get((call_id, slot))
                if var is not None:
                    values[var] = value
        entries.append({"callId": call_id, "occurrence": recorded["occurrence"], "values": values})

    rec = run(ir, bundle["paragraph"], inputs, MockScript.from_resource_inputs(entries))
    outputs = {to_target[v]: val for v, val in rec.program_outputs.items() if v in to_target}
    outputs.update(overrides or {})
    events, seen = [], {}
    for e in rec.resource_output_events:
        seq_id = call_to_seq.get(e["callId"])
        if seq_id is None:
            continue
        seen[seq_id] = seen.get(seq_id, 0) + 1
        slots = {var_slot[(e["callId"], v)]: val for v, val in e["values"].items() if (e["callId"], v) in var_slot}
        events.append({"seqId": seq_id, "occurrence": seen[seq_id], "slotValues": dict(sorted(slots.items()))})
    status = "Ok" if rec.completed else rec.status
    return {"programOutputs": dict(sorted(outputs.items())), "resourceOutputEvents": events, "status": status}


def main(argv=None):
    ap = argparse.ArgumentParser(prog="cobval-mirror")
    ap.add_argument("bundle")
    ap.add_argument("program")
    ap.add_argument("--set", action="append", default=[], metavar="TARGET=VALUE",
                    help="force a program output, to simulate a faulty translation")
    args = ap.parse_args(argv)
    bundle = json.loads(Path(args.bundle).read_text(encoding="utf-8"))
    ir = lower(parse_program(Path(args.program).read_text(encoding="utf-8"), args.program))
    overrides = dict(s.split("=", 1) for s in args.set)
    for line in sys.stdin:
        if line.strip():
            sys.stdout.write(json.dumps(answer(bundle, ir, json.loads(line), overrides), sort_keys=True) + "\n")
            break
    return 0


if __name__ == "__main__":
    sys.exit(main())
