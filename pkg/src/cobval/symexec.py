"""Path enumeration, symbolic execution and test data generation.

One test is generated per enumerated execution path.  Branch directions are
drawn at random with weights favouring edges that lead to uncovered
branches; each drawn path is renamed into SSA form, its path condition is
reduced to program and per-occurrence resource input symbols, and the
constraint solver turns a satisfiable condition into concrete test data.
Every accepted test is replayed with its concrete values (self-verification).
"""

from __future__ import annotations

import logging
import random
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from . import terms as T
from .errors import NonLinearUnsupported, PathBudgetExceeded, UnsupportedAtom
from .frontend import ast as A
from .ir import Assign, Branch, CallOp, Cfg, Emit, Halt, IrProgram, Jump, io_variables
from .pic import decode_value, encode_value, store
from .solver import SAT, UNSAT, ConstraintSet, solve
from .terms import Domain

log = logging.getLogger(__name__)

DEFAULT_K = 3
DEFAULT_PATH_CAP = 10_000


def resource_symbol(var, call_id, occurrence):
    return f"{var}@{call_id}.{occurrence}"


# -- traces -------------------------------------------------------------------


@dataclass
class PathTrace:
    nodes: list
    decisions: list  # (branch node id, taken)
    loop_iterations: dict = field(default_factory=dict)
    forced_exits: list = field(default_factory=list)

    @property
    def signature(self):
        return tuple((n, bool(t)) for n, t in self.decisions)

    def edges(self):
        return {(n, bool(t)) for n, t in self.decisions}

    def to_json(self):
        return {
            "nodes": list(self.nodes),
            "branchDecisions": [{"node": n, "taken": bool(t)} for n, t in self.decisions],
            "loopIterations": {str(k): v for k, v in sorted(self.loop_iterations.items())},
            "forcedExits": list(self.forced_exits),
        }

    @classmethod
    def from_json(cls, d):
        return cls(list(d["nodes"]), [(x["node"], x["taken"]) for x in d["branchDecisions"]],
                   {int(k): v for k, v in d.get("loopIterations", {}).items()}, list(d.get("forcedExits", [])))


class _LoopCounter:
    """Per-loop iteration bookkeeping shared by every path walker."""

    def __init__(self, cfg: Cfg, k: int):
        self.cfg = cfg
        self.k = k
        self.header_of = {info.header: info for info in cfg.loops.values()}
        self.counts = {}
        self.maxima = {}

    def copy(self):
        c = _LoopCounter.__new__(_LoopCounter)
        c.cfg, c.k, c.header_of = self.cfg, self.k, self.header_of
        c.counts, c.maxima = dict(self.counts), dict(self.maxima)
        return c

    def enter(self, loop_id):
        info = self.cfg.loops.get(loop_id)
        start = 0 if info is None or info.test_before else 1
        self.counts[loop_id] = start
        self.maxima[loop_id] = max(self.maxima.get(loop_id, 0), start)

    def allowed(self, node_id, taken):
        """Whether taking this edge respects the unroll bound."""
        info = self.header_of.get(node_id)
        if info is None or taken:
            return True
        return self.counts.get(info.loop_id, 0) < self.k

    def take(self, node_id, taken):
        info = self.header_of.get(node_id)
        if info is not None and not taken:
            c = self.counts.get(info.loop_id, 0) + 1
            self.counts[info.loop_id] = c
            self.maxima[info.loop_id] = max(self.maxima.get(info.loop_id, 0), c)


# -- coverage -------------------------------------------------------------------


@dataclass
class CoverageState:
    inventory: set
    covered: set = field(default_factory=set)
    weights: dict = field(default_factory=dict)

    @classmethod
    def for_cfg(cls, cfg: Cfg):
        state = cls(set(cfg.branch_edges()))
        state._reach = _edge_reachability(cfg)
        state.recompute()
        return state

    def recompute(self):
        uncovered = self.inventory - self.covered
        self.weights = {e: len(self._reach[e] & uncovered) for e in self.inventory}

    def mark(self, edges):
        before = len(self.covered)
        self.covered |= set(edges) & self.inventory
        self.recompute()
        return len(self.covered) > before

    @property
    def complete(self):
        return self.covered >= self.inventory

    def uncovered(self):
        return sorted(self.inventory - self.covered)


def _edge_reachability(cfg: Cfg):
    """Conditional edges reachable from each conditional edge's target."""
    by_node = {}
    for nid in cfg.nodes:
        seen = set()
        todo = deque([nid])
        edges = set()
        while todo:
            n = todo.popleft()
            if n in seen:
                continue
            seen.add(n)
            node = cfg.nodes[n]
            if isinstance(node.op, Branch):
                edges.add((n, True))
                edges.add((n, False))
            todo.extend(node.succ)
        by_node[nid] = edges
    return {(n, t): by_node[cfg.target(n, t)] for n, t in cfg.branch_edges()}


# -- random path enumeration ----------------------------------------------------


def enumerate_path(ir: IrProgram, paragraph: str, cov: CoverageState, rng: random.Random,
                   k: int = DEFAULT_K, cap: int = DEFAULT_PATH_CAP) -> PathTrace:
    """Walk entry to halt choosing each edge with probability ∝ 1 + weight."""
    cfg = ir.cfg(paragraph)
    loops = _LoopCounter(cfg, k)
    node = cfg.entry
    nodes, decisions, forced = [], [], []
    while True:
        nodes.append(node)
        if len(nodes) > cap:
            raise PathBudgetExceeded(f"trace longer than {cap} nodes")
        op = cfg.nodes[node].op
        if isinstance(op, Halt):
            return PathTrace(nodes, decisions, dict(loops.maxima), forced)
        if isinstance(op, Jump) and op.loop_enter is not None:
            loops.enter(op.loop_enter)
        if isinstance(op, Branch):
            options = [t for t in (True, False) if loops.allowed(node, t)]
            if len(options) == 1:
                if node in loops.header_of:
                    forced.append(node)
                taken = options[0]
            else:
                w = [1 + cov.weights.get((node, t), 0) for t in options]
                taken = options[0] if rng.random() * sum(w) < w[0] else options[1]
            loops.take(node, taken)
            decisions.append((node, taken))
            node = cfg.target(node, taken)
        else:
            node = cfg.nodes[node].succ[0]


# -- SSA ------------------------------------------------------------------------


@dataclass(frozen=True)
class SsaOp:
    node: int
    kind: str  # assign | branch | call | emit
    target: Optional[str] = None  # SSA name defined by an assign
    expr: object = None  # expression or condition with SSA-renamed refs
    taken: Optional[bool] = None
    src_pic: object = None
    resource: tuple = ()  # call: (var, ssa name, symbol) triples
    call_id: Optional[int] = None
    occurrence: Optional[int] = None


@dataclass
class SsaTrace:
    ops: list
    versions: dict  # var -> highest version
    var_table: dict
    path: PathTrace

    def resource_symbols(self):
        out = []
        for op in self.ops:
            if op.kind == "call":
                out.extend((op.call_id, op.occurrence, var, sym) for var, _, sym in op.resource)
        return out


def ssa_name(var, version):
    return f"{var}#{version}"


def split_ssa(name):
    var, _, v = name.rpartition("#")
    return var, int(v)


def _rename(e, current):
    if isinstance(e, A.Ref):
        return A.Ref(ssa_name(e.name, current.get(e.name, 0)))
    if isinstance(e, A.BinOp):
        return A.BinOp(e.op, _rename(e.left, current), _rename(e.right, current))
    if isinstance(e, A.Neg):
        return A.Neg(_rename(e.operand, current))
    if isinstance(e, A.Compare):
        return A.Compare(e.op, _rename(e.left, current), _rename(e.right, current))
    if isinstance(e, A.BoolOp):
        return A.BoolOp(e.op, _rename(e.left, current), _rename(e.right, current))
    if isinstance(e, A.NotCond):
        return A.NotCond(_rename(e.operand, current))
    return e


def ssa_rename(ir: IrProgram, paragraph: str, path: PathTrace) -> SsaTrace:
    """Linear-trace SSA: each write creates the next version of its variable."""
    cfg = ir.cfg(paragraph)
    current = {}
    occurrences = {}
    ops = []
    decisions = iter(path.decisions)
    for nid in path.nodes:
        op = cfg.nodes[nid].op
        if isinstance(op, Assign):
            expr = _rename(op.expr, current)
            for d in op.dsts:
                current[d] = current.get(d, 0) + 1
                ops.append(SsaOp(nid, "assign", ssa_name(d, current[d]), expr, src_pic=op.src_pic))
        elif isinstance(op, Branch):
            bn, taken = next(decisions)
            if bn != nid:
                raise ValueError("branch decisions do not follow the node sequence")
            ops.append(SsaOp(nid, "branch", None, _rename(op.cond, current), taken))
        elif isinstance(op, CallOp):
            call = op.call
            occ = occurrences.get(call.call_id, 0) + 1
            occurrences[call.call_id] = occ
            outs = tuple(A.Ref(ssa_name(v, current.get(v, 0))) for v in call.resource_outputs)
            triples = []
            for v in call.resource_inputs:
                current[v] = current.get(v, 0) + 1
                triples.append((v, ssa_name(v, current[v]), resource_symbol(v, call.call_id, occ)))
            ops.append(SsaOp(nid, "call", None, outs, resource=tuple(triples), call_id=call.call_id,
                             occurrence=occ))
        elif isinstance(op, Emit):
            ops.append(SsaOp(nid, "emit", None, tuple(_rename(a, current) for a in op.args)))
    return SsaTrace(ops, dict(current), ir.var_table, path)


# -- symbolic evaluation --------------------------------------------------------


def to_term(e, lookup):
    if isinstance(e, A.NumLit):
        return T.Const(e.value)
    if isinstance(e, A.StrLit):
        return T.SConst(e.text)
    if isinstance(e, A.Ref):
        return lookup(e.name)
    if isinstance(e, A.Neg):
        return T.neg(to_term(e.operand, lookup))
    if isinstance(e, A.BinOp):
        a, b = to_term(e.left, lookup), to_term(e.right, lookup)
        if e.op == "+":
            return T.add(a, b)
        if e.op == "-":
            return T.sub(a, b)
        if e.op == "*":
            return T.mul(a, b)
        return T.div(a, b)
    raise UnsupportedAtom(f"cannot translate {e!r}")


def to_formula(c, lookup):
    if isinstance(c, A.Compare):
        return T.cmp(c.op, to_term(c.left, lookup), to_term(c.right, lookup))
    if isinstance(c, A.BoolOp):
        a, b = to_formula(c.left, lookup), to_formula(c.right, lookup)
        return T.conj(a, b) if c.op == "AND" else T.disj(a, b)
    if isinstance(c, A.NotCond):
        return T.negate(to_formula(c.operand, lookup))
    raise UnsupportedAtom(f"cannot translate {c!r}")


def store_term(value, pic, src_pic=None):
    """Symbolic store-back mirroring :func:`cobval.pic.store`."""
    if pic.is_numeric:
        return T.num_store(value, pic)
    if T.is_string(value):
        return T.sfit(value, pic.length)
    if isinstance(value, T.Const):
        return T.SConst(store(value.value, pic, src_pic))
    raise NonLinearUnsupported("symbolic numeric value moved to an alphanumeric item")


def input_symbol(var, pic):
    return T.make_symbol(var, Domain.of_pic(pic))


def path_condition(trace: SsaTrace) -> ConstraintSet:
    """Conjunction of branch conditions over version-0 and resource symbols."""
    vt = trace.var_table
    values = {}
    domains = {}

    def lookup(name):
        if name in values:
            return values[name]
        var, version = split_ssa(name)
        if version != 0:
            raise KeyError(name)
        sym = input_symbol(var, vt[var])
        domains[var] = Domain.of_pic(vt[var])
        values[name] = sym
        return sym

    conjuncts = []
    for op in trace.ops:
        if op.kind == "assign":
            var, _ = split_ssa(op.target)
            values[op.target] = store_term(to_term(op.expr, lookup), vt[var], op.src_pic)
        elif op.kind == "call":
            for a in op.expr:
                to_term(a, lookup)  # resource outputs read their current versions
            for var, name, sym in op.resource:
                dom = Domain.of_pic(vt[var])
                domains[sym] = dom
                values[name] = T.make_symbol(sym, dom)
        elif op.kind == "branch":
            f = to_formula(op.expr, lookup)
            conjuncts.append(f if op.taken else T.negate(f))
    for c in conjuncts:
        bad = T.first_nonlinear(c)
        if bad is not None:
            raise NonLinearUnsupported(T.fmt_term(bad))
    return ConstraintSet([c for c in conjuncts if c != T.TRUE], domains)


# -- test cases -------------------------------------------------------------------


@dataclass
class Verdict:
    kind: str  # OK | NonConstant | PathDivergence
    node: Optional[int] = None
    detail: str = ""

    @property
    def ok(self):
        return self.kind == "OK"

    def to_json(self):
        return {"kind": self.kind, "node": self.node, "detail": self.detail}

    @classmethod
    def from_json(cls, d):
        return cls(d["kind"], d.get("node"), d.get("detail", ""))


@dataclass
class TestCase:
    name: str
    program_inputs: dict  # var -> encoded value
    resource_inputs: list  # {callId, occurrence, values}
    path: PathTrace
    expected_program_outputs: Optional[dict] = None
    expected_resource_outputs: Optional[list] = None
    display_lines: Optional[list] = None
    status: str = "Generated"
    verdict: Optional[Verdict] = None

    __test__ = False  # not a pytest class

    def to_json(self):
        d = {
            "name": self.name,
            "programInputs": dict(sorted(self.program_inputs.items())),
            "resourceInputs": self.resource_inputs,
            "path": self.path.to_json(),
            "status": self.status,
        }
        if self.verdict is not None:
            d["verdict"] = self.verdict.to_json()
        if self.expected_program_outputs is not None:
            d["expectedProgramOutputs"] = dict(sorted(self.expected_program_outputs.items()))
        if self.expected_resource_outputs is not None:
            d["expectedResourceOutputs"] = self.expected_resource_outputs
        if self.display_lines is not None:
            d["displayLines"] = self.display_lines
        return d

    @classmethod
    def from_json(cls, d):
        return cls(d["name"], dict(d["programInputs"]), list(d["resourceInputs"]), PathTrace.from_json(d["path"]),
                   d.get("expectedProgramOutputs"), d.get("expectedResourceOutputs"), d.get("displayLines"),
                   d.get("status", "Generated"), Verdict.from_json(d["verdict"]) if "verdict" in d else None)


@dataclass
class CoverageReport:
    branch_count: int
    covered_branches: int
    path_count: int
    covered_paths: int
    uncovered_edges: list
    unsat_paths: int = 0
    skipped_paths: list = field(default_factory=list)
    solver_calls: int = 0

    @property
    def branch_pct(self):
        return 100.0 if self.branch_count == 0 else 100.0 * self.covered_branches / self.branch_count

    @property
    def path_pct(self):
        return 100.0 if self.path_count == 0 else 100.0 * self.covered_paths / self.path_count

    @property
    def complete(self):
        return not self.uncovered_edges

    def to_json(self):
        return {
            "branchCount": self.branch_count, "coveredBranches": self.covered_branches,
            "pathCount": self.path_count, "coveredPaths": self.covered_paths,
            "branchPct": round(self.branch_pct, 2), "pathPct": round(self.path_pct, 2),
            "uncoveredEdges": [{"node": n, "taken": t} for n, t in self.uncovered_edges],
            "unsatPaths": self.unsat_paths, "skippedPaths": self.skipped_paths, "solverCalls": self.solver_calls,
        }

    @classmethod
    def from_json(cls, d):
        return cls(d["branchCount"], d["coveredBranches"], d["pathCount"], d["coveredPaths"],
                   [(e["node"], e["taken"]) for e in d["uncoveredEdges"]], d.get("unsatPaths", 0),
                   d.get("skippedPaths", []), d.get("solverCalls", 0))


@dataclass
class TestSuite:
    program_id: str
    paragraph: str
    seed: int
    config: dict
    inputs: list
    tests: list
    coverage: Optional[CoverageReport] = None

    __test__ = False

    def to_json(self):
        return {
            "programId": self.program_id, "paragraph": self.paragraph, "seed": self.seed,
            "config": self.config, "inputs": list(self.inputs),
            "tests": [t.to_json() for t in self.tests],
            "coverage": self.coverage.to_json() if self.coverage else None,
        }

    @classmethod
    def from_json(cls, d):
        return cls(d["programId"], d["paragraph"], d["seed"], d.get("config", {}), d.get("inputs", []),
                   [TestCase.from_json(t) for t in d["tests"]],
                   CoverageReport.from_json(d["coverage"]) if d.get("coverage") else None)


class CoverageIncomplete(Warning):
    pass


@dataclass
class GenConfig:
    seed: int = 0
    max_unroll: int = DEFAULT_K
    max_paths: int = 256
    max_solver_calls: int = 5000
    wall_clock: float = 60.0
    unsat_switch: int = 20
    target: str = "paths"  # "paths" keeps going until every feasible bounded path has a test
    path_cap: int = DEFAULT_PATH_CAP

    def to_json(self):
        return {"seed": self.seed, "maxUnroll": self.max_unroll, "maxPaths": self.max_paths,
                "maxSolverCalls": self.max_solver_calls, "unsatSwitch": self.unsat_switch, "target": self.target}


def _build_test(name, trace: SsaTrace, cs: ConstraintSet, assignment, inputs, var_table):
    program_inputs = {}
    for var in inputs:
        pic = var_table[var]
        raw = assignment.get(var)
        value = pic.default() if raw is None else cs.domains[var].value(raw)
        program_inputs[var] = encode_value(value, pic)
    resource_inputs = []
    for op in trace.ops:
        if op.kind != "call":
            continue
        values = {}
        for var, _, sym in op.resource:
            pic = var_table[var]
            raw = assignment.get(sym)
            value = pic.default() if raw is None else cs.domains[sym].value(raw)
            values[var] = encode_value(value, pic)
        resource_inputs.append({"callId": op.call_id, "occurrence": op.occurrence, "values": values})
    return TestCase(name, program_inputs, resource_inputs, trace.path)


def decode_inputs(tc: TestCase, var_table):
    env = {v: decode_value(text, var_table[v]) for v, text in tc.program_inputs.items()}
    return env


def self_verify(ir: IrProgram, paragraph: str, tc: TestCase, k: int = DEFAULT_K) -> Verdict:
    """Replay the symbolic engine with the test's concrete values."""
    cfg = ir.cfg(paragraph)
    vt = ir.var_table
    env = {}
    for var, pic in vt.items():
        text = tc.program_inputs.get(var)
        value = pic.default() if text is None else decode_value(text, pic)
        env[var] = T.SConst(value) if isinstance(value, str) else T.Const(value)
    queues = {}
    for entry in tc.resource_inputs:
        queues.setdefault(entry["callId"], deque()).append(entry["values"])
    expected = list(tc.path.decisions)
    pos = 0
    node = cfg.entry
    steps = 0
    while True:
        steps += 1
        if steps > 10 ** 6:
            return Verdict("PathDivergence", node, "step limit reached")
        op = cfg.nodes[node].op
        if isinstance(op, Halt):
            if pos != len(expected):
                return Verdict("PathDivergence", node, "halted before the recorded path ended")
            return Verdict("OK")
        if isinstance(op, Assign):
            value = to_term(op.expr, env.__getitem__)
            for d in op.dsts:
                try:
                    v = store_term(value, vt[d], op.src_pic)
                except NonLinearUnsupported as exc:
                    return Verdict("NonConstant", node, str(exc))
                if not isinstance(v, (T.Const, T.SConst)):
                    return Verdict("NonConstant", node, f"{d} := {T.fmt_term(v)}")
                env[d] = v
        elif isinstance(op, CallOp):
            q = queues.get(op.call.call_id)
            if not q:
                return Verdict("NonConstant", node, f"no resource values for call {op.call.call_id}")
            values = q.popleft()
            for var in op.call.resource_inputs:
                pic = vt[var]
                text = values.get(var)
                value = pic.default() if text is None else decode_value(text, pic)
                env[var] = T.SConst(value) if isinstance(value, str) else T.Const(value)
        elif isinstance(op, Branch):
            f = to_formula(op.cond, env.__getitem__)
            if not isinstance(f, T.BoolConst):
                return Verdict("NonConstant", node, T.fmt_term(f))
            if pos >= len(expected) or expected[pos] != (node, f.value):
                return Verdict("PathDivergence", node, f"took {'true' if f.value else 'false'} edge")
            pos += 1
            node = cfg.target(node, f.value)
            continue
        node = cfg.nodes[node].succ[0]


# -- exhaustive feasible path enumeration -------------------------------------


@dataclass
class FeasiblePath:
    path: PathTrace
    cs: ConstraintSet
    result: object


def enumerate_feasible_paths(ir: IrProgram, paragraph: str, k: int = DEFAULT_K, limit: int = 10_000,
                             cap: int = DEFAULT_PATH_CAP):
    """All bounded paths whose path condition is satisfiable, in DFS order (true edge first).

    Infeasible prefixes are pruned as soon as a branch makes the condition
    unsatisfiable.  Paths whose condition leaves the linear fragment are
    dropped.
    """
    cfg = ir.cfg(paragraph)
    vt = ir.var_table
    results = []

    class State:
        __slots__ = ("env", "domains", "conds", "nodes", "decisions", "loops", "occ", "forced")

    def lookup_in(st):
        def lookup(name):
            if name not in st.env:
                st.env[name] = input_symbol(name, vt[name])
                st.domains[name] = Domain.of_pic(vt[name])
            return st.env[name]
        return lookup

    def clone(st):
        c = State()
        c.env, c.domains, c.conds = dict(st.env), dict(st.domains), list(st.conds)
        c.nodes, c.decisions, c.forced = list(st.nodes), list(st.decisions), list(st.forced)
        c.loops, c.occ = st.loops.copy(), dict(st.occ)
        return c

    root = State()
    root.env, root.domains, root.conds = {}, {}, []
    root.nodes, root.decisions, root.forced = [], [], []
    root.loops, root.occ = _LoopCounter(cfg, k), {}
    stack = [(root, cfg.entry)]
    while stack:
        st, node = stack.pop()
        while True:
            st.nodes.append(node)
            if len(st.nodes) > cap:
                raise PathBudgetExceeded(f"trace longer than {cap} nodes")
            op = cfg.nodes[node].op
            lookup = lookup_in(st)
            if isinstance(op, Halt):
                cs = ConstraintSet([c for c in st.conds if c != T.TRUE], st.domains)
                res = solve(cs)
                if res.status != UNSAT:
                    results.append(FeasiblePath(PathTrace(st.nodes, st.decisions, dict(st.loops.maxima), st.forced),
                                                cs, res))
                    if len(results) > limit:
                        raise PathBudgetExceeded(f"more than {limit} feasible paths")
                break
            if isinstance(op, Jump) and op.loop_enter is not None:
                st.loops.enter(op.loop_enter)
            if isinstance(op, Assign):
                try:
                    value = to_term(op.expr, lookup)
                    for d in op.dsts:
                        st.env[d] = store_term(value, vt[d], op.src_pic)
                except NonLinearUnsupported as exc:
                    log.warning("path dropped at node %s: %s", node, exc)
                    break
            elif isinstance(op, CallOp):
                call = op.call
                for v in call.resource_outputs:
                    lookup(v)
                occ = st.occ.get(call.call_id, 0) + 1
                st.occ[call.call_id] = occ
                for v in call.resource_inputs:
                    sym = resource_symbol(v, call.call_id, occ)
                    dom = Domain.of_pic(vt[v])
                    st.domains[sym] = dom
                    st.env[v] = T.make_symbol(sym, dom)
            elif isinstance(op, Branch):
                f = to_formula(op.cond, lookup)
                if T.first_nonlinear(f) is not None:
                    log.warning("path dropped at node %s: nonlinear condition", node)
                    break
                options = [t for t in (True, False) if st.loops.allowed(node, t)]
                children = []
                for taken in options:
                    g = f if taken else T.negate(f)
                    if g == T.FALSE:
                        continue
                    conds = st.conds + ([g] if g != T.TRUE else [])
                    if g != T.TRUE and solve(ConstraintSet(conds, st.domains)).status == UNSAT:
                        continue
                    children.append((taken, conds))
                if len(options) == 1 and node in st.loops.header_of:
                    st.forced.append(node)
                if not children:
                    break
                # push the false edge first so the true edge is explored first
                for taken, conds in reversed(children[1:]):
                    c = clone(st)
                    c.conds = conds
                    c.loops.take(node, taken)
                    c.decisions.append((node, taken))
                    stack.append((c, cfg.target(node, taken)))
                taken, conds = children[0]
                st.conds = conds
                st.loops.take(node, taken)
                st.decisions.append((node, taken))
                node = cfg.target(node, taken)
                continue
            node = cfg.nodes[node].succ[0]
    # DFS pops the most recently pushed sibling first; restore a canonical order
    results.sort(key=lambda fp: [(n, not t) for n, t in fp.path.decisions])
    return results


# -- generation loop ----------------------------------------------------------------


def generate_tests(ir: IrProgram, paragraph: str, config: Optional[GenConfig] = None):
    """Generate a suite for one paragraph; returns ``(TestSuite, CoverageReport)``."""
    config = config or GenConfig()
    cfg = ir.cfg(paragraph)
    rng = random.Random(config.seed)
    cov = CoverageState.for_cfg(cfg)
    inputs = sorted(io_variables(ir, paragraph)[0])
    feasible = enumerate_feasible_paths(ir, paragraph, config.max_unroll)
    feasible_sigs = {fp.path.signature for fp in feasible}
    tests, seen, infeasible, skipped = [], set(), set(), []
    solver_calls = 0
    unsat_streak = 0
    started = time.monotonic()

    def done():
        if config.target == "paths":
            return feasible_sigs <= seen
        return cov.complete

    def accept(trace, cs, res):
        name = f"t{len(tests) + 1:02d}"
        tc = _build_test(name, trace, cs, res.assignment, inputs, ir.var_table)
        tc.verdict = self_verify(ir, paragraph, tc, config.max_unroll)
        tc.status = "Generated" if tc.verdict.ok else f"Invalid({tc.verdict.kind})"
        tests.append(tc)
        seen.add(trace.path.signature)
        cov.mark(trace.path.edges())

    def budget_left():
        return (len(tests) < config.max_paths and solver_calls < config.max_solver_calls
                and time.monotonic() - started < config.wall_clock)

    # random, coverage-weighted phase
    while not done() and budget_left() and unsat_streak < config.unsat_switch:
        path = enumerate_path(ir, paragraph, cov, rng, config.max_unroll, config.path_cap)
        sig = path.signature
        if sig in seen or sig in infeasible:
            unsat_streak += 1
            continue
        trace = ssa_rename(ir, paragraph, path)
        try:
            cs = path_condition(trace)
        except NonLinearUnsupported as exc:
            skipped.append({"decisions": [list(d) for d in sig], "reason": str(exc)})
            infeasible.add(sig)
            unsat_streak += 1
            continue
        solver_calls += 1
        res = solve(cs)
        if res.status == SAT:
            accept(trace, cs, res)
            unsat_streak = 0
        else:
            infeasible.add(sig)
            unsat_streak += 1

    # deterministic depth-first fallback over the remaining feasible paths
    for fp in feasible:
        if done() or not budget_left():
            break
        if fp.path.signature in seen or fp.result.status != SAT:
            continue
        trace = ssa_rename(ir, paragraph, fp.path)
        cs = path_condition(trace)
        solver_calls += 1
        res = solve(cs)
        if res.status == SAT:
            accept(trace, cs, res)

    covered_paths = len(seen & feasible_sigs)
    report = CoverageReport(len(cov.inventory), len(cov.covered), len(feasible_sigs), covered_paths,
                            cov.uncovered(), len(infeasible), skipped, solver_calls)
    if report.uncovered_edges:
        log.warning("coverage incomplete for %s: %s", paragraph, report.uncovered_edges)
    suite = TestSuite(ir.program_id, paragraph, config.seed, config.to_json(), inputs, tests, report)
    return suite, report
