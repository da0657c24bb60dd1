"""Concrete IR interpreter used as the test oracle.

External calls never execute: at each call the values the program sends are
snapshotted as a resource output event, then the next mocked values for that
call are written into its receiving variables.
"""

from __future__ import annotations

import copy
from collections import deque
from dataclasses import dataclass, field

from .errors import InfiniteLoopTrap, MockUnderflow
from .ir import Assign, Branch, CallOp, Emit, Halt, IrProgram, Jump
from .pic import decode_value, encode_value, numeric_text
from .semantics import Trap, assign, eval_cond, eval_expr
from .symexec import PathTrace, TestSuite, _LoopCounter

DEFAULT_STEP_LIMIT = 10 ** 6


@dataclass
class MockScript:
    queues: dict = field(default_factory=dict)  # callId -> deque of {var: encoded value}

    @classmethod
    def from_resource_inputs(cls, entries):
        queues = {}
        for e in entries:
            queues.setdefault(e["callId"], deque()).append(dict(e["values"]))
        return cls(queues)

    def pop(self, call_id, occurrence):
        q = self.queues.get(call_id)
        if not q:
            raise MockUnderflow(call_id, occurrence)
        return q.popleft()


@dataclass
class ExecutionRecord:
    program_outputs: dict
    resource_output_events: list
    display_lines: list
    executed_path: PathTrace
    status: str = "Completed"

    @property
    def completed(self):
        return self.status == "Completed"


def _coerce(value, pic):
    if isinstance(value, str):
        return decode_value(value, pic)
    return value


def _display_text(value, pic):
    if pic is not None and pic.is_numeric:
        text = numeric_text(value, pic.int_digits, pic.frac_digits)
        return ("-" + text) if value < 0 else text
    return str(value)


def run(ir: IrProgram, paragraph: str, program_inputs: dict, mocks: MockScript,
        step_limit: int = DEFAULT_STEP_LIMIT) -> ExecutionRecord:
    """Execute one paragraph; inputs may be encoded strings or plain values."""
    cfg = ir.cfg(paragraph)
    vt = ir.var_table
    env = {name: pic.default() for name, pic in vt.items()}
    for name, value in program_inputs.items():
        env[name] = _coerce(value, vt[name])
    loops = _LoopCounter(cfg, k=step_limit)
    nodes, decisions, events, display = [], [], [], []
    written = set()
    occurrences = {}
    status = "Completed"
    node = cfg.entry
    steps = 0
    mocks = copy.deepcopy(mocks)
    while True:
        steps += 1
        if steps > step_limit:
            raise InfiniteLoopTrap(f"step limit {step_limit} exceeded in {paragraph}")
        nodes.append(node)
        op = cfg.nodes[node].op
        if isinstance(op, Halt):
            break
        try:
            if isinstance(op, Assign):
                assign(env, vt, op.dsts, eval_expr(op.expr, env), op.src_pic)
                written.update(op.dsts)
            elif isinstance(op, Branch):
                taken = eval_cond(op.cond, env)
                loops.take(node, taken)
                decisions.append((node, taken))
                node = cfg.target(node, taken)
                continue
            elif isinstance(op, CallOp):
                call = op.call
                occ = occurrences.get(call.call_id, 0) + 1
                occurrences[call.call_id] = occ
                events.append({
                    "callId": call.call_id, "occurrence": occ,
                    "values": {v: encode_value(env[v], vt[v]) for v in call.resource_outputs},
                })
                values = mocks.pop(call.call_id, occ)
                for v in call.resource_inputs:
                    if v in values:
                        env[v] = decode_value(values[v], vt[v])
                    else:
                        env[v] = vt[v].default()
                written.update(call.resource_inputs)
            elif isinstance(op, Emit):
                parts = []
                for a in op.args:
                    pic = vt.get(a.name) if hasattr(a, "name") else None
                    parts.append(_display_text(eval_expr(a, env), pic))
                display.append("".join(parts))
            elif isinstance(op, Jump) and op.loop_enter is not None:
                loops.enter(op.loop_enter)
        except Trap as exc:
            status = f"Trap({exc})"
            break
        node = cfg.nodes[node].succ[0]
    outputs = written - cfg.status_vars()
    program_outputs = {v: encode_value(env[v], vt[v]) for v in sorted(outputs)}
    path = PathTrace(nodes, decisions, dict(loops.maxima))
    return ExecutionRecord(program_outputs, events, display, path, status)


def replay_matches(record: ExecutionRecord, path: PathTrace) -> bool:
    return (record.executed_path.nodes == list(path.nodes)
            and [tuple(d) for d in record.executed_path.decisions] == [tuple(d) for d in path.decisions])


def execute_suite(ir: IrProgram, suite: TestSuite) -> TestSuite:
    """Fill expected outputs for every test; failures mark that test Invalid only."""
    out = copy.deepcopy(suite)
    for tc in out.tests:
        try:
            rec = run(ir, suite.paragraph, tc.program_inputs, MockScript.from_resource_inputs(tc.resource_inputs))
        except (MockUnderflow, InfiniteLoopTrap) as exc:
            tc.status = f"Invalid({type(exc).__name__})"
            continue
        if not rec.completed:
            tc.status = f"Invalid({rec.status})"
            continue
        tc.expected_program_outputs = rec.program_outputs
        tc.expected_resource_outputs = rec.resource_output_events
        tc.display_lines = rec.display_lines
        if not replay_matches(rec, tc.path):
            tc.status = "Invalid(ReplayDivergence)"
        elif tc.verdict is not None and not tc.verdict.ok:
            tc.status = f"Invalid({tc.verdict.kind})"
        else:
            tc.status = "Completed"
    return out
