"""Lowering of the COBOL AST to a primitive imperative IR with explicit CFGs.

Each paragraph becomes one CFG; performed paragraphs are inlined between a
pair of labelled jump nodes.  Loops keep TEST BEFORE/AFTER semantics as a
branch plus back edge, EVALUATE becomes a chain of branches, and every
resource statement becomes an :class:`ExternalCall` node.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import RecursivePerform, UnknownParagraph, UnsupportedConstruct
from .frontend import ast as A
from .pic import PicType, literal_digits
from .semantics import expr_is_numeric

SQL, GENERIC, FILE, CALL = "SQL", "GENERIC", "FILE", "CALL"
LIT = "⟨LIT⟩"
GENERIC_RECEIVERS = ("INTO", "SET", "RESP", "RESP2")
STATUS_OPTIONS = ("RESP",)


def hole(k):
    return f"⟨H{k}⟩"


# -- IR operations ----------------------------------------------------------


@dataclass(frozen=True)
class ExternalCall:
    call_id: int
    kind: str
    verb: str
    template: str
    resource_inputs: tuple
    resource_outputs: tuple
    status_var: Optional[str] = None
    host_vars: tuple = ()
    anchors: tuple = ()
    text: str = ""
    line: int = 0

    def to_json(self):
        return {
            "callId": self.call_id, "kind": self.kind, "verb": self.verb, "template": self.template,
            "resourceInputs": list(self.resource_inputs), "resourceOutputs": list(self.resource_outputs),
            "statusVar": self.status_var, "hostVars": list(self.host_vars), "anchors": list(self.anchors),
            "text": self.text, "line": self.line,
        }

    @classmethod
    def from_json(cls, d):
        return cls(d["callId"], d["kind"], d["verb"], d["template"], tuple(d["resourceInputs"]),
                   tuple(d["resourceOutputs"]), d.get("statusVar"), tuple(d.get("hostVars", ())),
                   tuple(d.get("anchors", ())), d.get("text", ""), d.get("line", 0))


@dataclass(frozen=True)
class Assign:
    dsts: tuple
    expr: object
    src_pic: Optional[PicType] = None  # numeric item moved into alphanumeric storage
    line: int = 0


@dataclass(frozen=True)
class Branch:
    cond: object
    loop_id: Optional[int] = None
    line: int = 0


@dataclass(frozen=True)
class Jump:
    label: str = ""
    loop_enter: Optional[int] = None


@dataclass(frozen=True)
class CallOp:
    call: ExternalCall


@dataclass(frozen=True)
class Emit:
    args: tuple
    line: int = 0


@dataclass(frozen=True)
class Halt:
    pass


@dataclass(frozen=True)
class Node:
    id: int
    op: object
    succ: tuple  # Branch: (true_target, false_target)


@dataclass(frozen=True)
class LoopInfo:
    loop_id: int
    header: int
    enter: int
    test_before: bool


@dataclass
class Cfg:
    name: str
    nodes: dict
    entry: int
    halt: int
    loops: dict
    unreachable: list = field(default_factory=list)

    def branch_edges(self):
        return [(n.id, taken) for n in self.nodes.values() if isinstance(n.op, Branch) for taken in (True, False)]

    def target(self, node_id, taken=None):
        node = self.nodes[node_id]
        if isinstance(node.op, Branch):
            return node.succ[0] if taken else node.succ[1]
        return node.succ[0]

    def external_calls(self):
        seen = {}
        for n in self.nodes.values():
            if isinstance(n.op, CallOp):
                seen[n.op.call.call_id] = n.op.call
        return [seen[k] for k in sorted(seen)]

    def status_vars(self):
        return {c.status_var for c in self.external_calls() if c.status_var}


@dataclass
class IrProgram:
    program_id: str
    cfgs: dict
    external_calls: list
    var_table: dict

    def cfg(self, paragraph):
        if paragraph not in self.cfgs:
            raise UnknownParagraph(paragraph)
        return self.cfgs[paragraph]

    @property
    def branch_inventory_edges(self):
        return [(name, nid, taken) for name, cfg in self.cfgs.items() for nid, taken in cfg.branch_edges()]

    def call(self, call_id):
        for c in self.external_calls:
            if c.call_id == call_id:
                return c
        raise KeyError(call_id)


# -- external call classification -------------------------------------------

_SQL_TOKEN = re.compile(r"\s*(?:(:[A-Za-z][A-Za-z0-9-]*)|('(?:[^']|'')*')|(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z0-9_#$@-]*)|(<>|<=|>=|[=<>(),*+/.-]))")
_TIGHT = {"=", "<", ">", "<=", ">=", "<>", ",", "(", ")"}


def _sql_tokens(text):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _SQL_TOKEN.match(text, pos)
        if not m:
            raise UnsupportedConstruct(f"SQL token near {text[pos:pos + 10]!r}", 0)
        host, string, num, word, punct = m.groups()
        if host:
            out.append(("HOST", host[1:].upper()))
        elif string:
            out.append(("LIT", string))
        elif num:
            out.append(("LIT", num))
        elif word:
            out.append(("WORD", word.upper()))
        else:
            out.append(("PUNCT", punct))
        pos = m.end()
    return out


def _norm_clause(tokens, counter):
    parts = []
    for kind, val in tokens:
        if kind == "HOST":
            counter[0] += 1
            parts.append(hole(counter[0]))
        elif kind == "LIT":
            parts.append(LIT)
        else:
            parts.append(val)
    text = ""
    for i, p in enumerate(parts):
        if i and not (p in _TIGHT or parts[i - 1] in _TIGHT):
            text += " "
        text += p
    return text


def _classify_sql(stmt, call_id):
    toks = _sql_tokens(stmt.text)
    verb = toks[0][1]
    words = [v if k == "WORD" else None for k, v in toks]

    def index_of(word, start=0):
        for i in range(start, len(toks)):
            if words[i] == word:
                return i
        return -1

    counter = [0]
    inputs, outputs = [], []
    table = ""
    clauses = []
    where = index_of("WHERE")
    where_toks = toks[where + 1:] if where >= 0 else []
    if verb == "SELECT":
        into, frm = index_of("INTO"), index_of("FROM")
        table = toks[frm + 1][1] if frm >= 0 else ""
        into_toks = toks[into + 1: frm] if into >= 0 else []
        inputs = [v for k, v in into_toks if k == "HOST"]
        if into_toks:
            clauses.append("INTO " + _norm_clause(into_toks, counter))
    elif verb == "INSERT":
        into = index_of("INTO")
        table = toks[into + 1][1]
        vals = index_of("VALUES")
        val_toks = toks[vals + 1:] if vals >= 0 else []
        clauses.append("VALUES" + _norm_clause(val_toks, counter))
        where_toks = []
    elif verb == "UPDATE":
        table = toks[1][1]
        st = index_of("SET")
        set_toks = toks[st + 1: where if where >= 0 else len(toks)]
        clauses.append("SET " + _norm_clause(set_toks, counter))
    elif verb == "DELETE":
        frm = index_of("FROM")
        table = toks[frm + 1][1]
    if where_toks:
        clauses.append("WHERE " + _norm_clause(where_toks, counter))
    hosts = [v for k, v in toks if k == "HOST"]
    outputs = [h for h in hosts if h not in inputs]
    template = " ".join(["SQL", verb, table] + clauses)
    return ExternalCall(call_id, SQL, verb, template, tuple(inputs) + ("SQLCODE",), tuple(outputs),
                        "SQLCODE", tuple(hosts), (table,) if table else (), "EXEC SQL " + stmt.text, stmt.line)


def _classify_generic(stmt, call_id):
    counter = 0
    parts = [stmt.interface, stmt.verb]
    inputs, outputs, hosts, anchors = [], [], [], []
    status = None
    for name, val in stmt.options:
        if val is None:
            parts.append(name)
            continue
        if isinstance(val, A.Ref):
            counter += 1
            hosts.append(val.name)
            parts.append(f"{name}({hole(counter)})")
            if name in GENERIC_RECEIVERS:
                inputs.append(val.name)
                if name in STATUS_OPTIONS:
                    status = val.name
            else:
                outputs.append(val.name)
        else:
            parts.append(f"{name}({LIT})")
            anchors.append(val.text.strip().upper() if isinstance(val, A.StrLit) else literal_digits(val.value))
    return ExternalCall(call_id, GENERIC, stmt.verb, " ".join(parts), tuple(inputs), tuple(outputs), status,
                        tuple(hosts), tuple(anchors), f"EXEC {stmt.interface} {stmt.verb}", stmt.line)


def classify_external_call(stmt, call_id, program: A.ProgramAst) -> ExternalCall:
    """Classify one resource statement into an :class:`ExternalCall`."""
    if isinstance(stmt, A.ExecSql):
        return _classify_sql(stmt, call_id)
    if isinstance(stmt, A.ExecGeneric):
        return _classify_generic(stmt, call_id)
    if isinstance(stmt, A.Write):
        if stmt.source:
            raise UnsupportedConstruct("WRITE FROM", stmt.line)
        fd = program.file_of_record(stmt.record)
        leaves = tuple(x.name for x in fd.record.leaves())
        holes = ",".join(hole(i + 1) for i in range(len(leaves)))
        return ExternalCall(call_id, FILE, "WRITE", f"FILE WRITE {fd.name} RECORD({holes})", (), leaves, None,
                            leaves, (fd.name,), f"WRITE {stmt.record}", stmt.line)
    if isinstance(stmt, A.Read):
        fd = next(f for f in program.files if f.name == stmt.file)
        rec = program.item(stmt.into) if stmt.into else fd.record
        leaves = tuple(x.name for x in rec.leaves())
        holes = ",".join(hole(i + 1) for i in range(len(leaves)))
        return ExternalCall(call_id, FILE, "READ", f"FILE READ {fd.name} RECORD({holes})", leaves, (), None,
                            leaves, (fd.name,), f"READ {stmt.file}", stmt.line)
    if isinstance(stmt, A.Call):
        leaves = []
        for u in stmt.using:
            leaves.extend(x.name for x in program.item(u).leaves()) if u != "SQLCODE" else leaves.append(u)
        anchors = ()
        if isinstance(stmt.program, A.StrLit):
            prog = LIT
            anchors = (stmt.program.text.strip().upper(),)
            outputs = tuple(leaves)
        else:
            prog = hole(0)
            outputs = tuple(leaves) + (stmt.program.name,)
        holes = ",".join(hole(i + 1) for i in range(len(leaves)))
        template = f"CALL {prog}" + (f" USING {holes}" if leaves else "")
        return ExternalCall(call_id, CALL, "CALL", template, tuple(leaves), outputs, None, tuple(leaves), anchors,
                            "CALL", stmt.line)
    raise TypeError(f"not a resource statement: {stmt!r}")


# -- lowering ----------------------------------------------------------------

RESOURCE_STATEMENTS = (A.ExecSql, A.ExecGeneric, A.Read, A.Write, A.Call)


def _number_calls(program):
    """Source-order call ids keyed by statement identity."""
    ids = {}
    n = 0
    for para in program.paragraphs:
        for s in A.walk_statements(para.statements):
            if isinstance(s, RESOURCE_STATEMENTS):
                n += 1
                ids[id(s)] = n
    return ids


def _check_perform_cycles(program):
    graph = {}
    for para in program.paragraphs:
        targets = []
        for s in A.walk_statements(para.statements):
            tgt = getattr(s, "target", None)
            if isinstance(s, (A.Perform, A.PerformUntil, A.PerformVarying)) and tgt:
                targets.append(tgt)
        graph[para.name] = targets
    state = {}

    def visit(name, stack):
        state[name] = 1
        stack.append(name)
        for t in graph.get(name, ()):
            if state.get(t) == 1:
                raise RecursivePerform(stack[stack.index(t):] + [t])
            if t not in state:
                visit(t, stack)
        stack.pop()
        state[name] = 2

    for name in graph:
        if name not in state:
            visit(name, [])


class _Lowerer:
    def __init__(self, program, var_table, call_ids, calls):
        self.program = program
        self.vt = var_table
        self.call_ids = call_ids
        self.calls = calls
        self.paras = {p.name: p for p in program.paragraphs}

    def build(self, paragraph):
        self.nodes = []
        self.loops = {}
        entry = self.new(Jump("entry"), 1)
        halt = self.new(Halt(), 0)
        self.halt = halt
        ends = self.block(self.paras[paragraph].statements, [(entry, 0)], [paragraph])
        self.connect(ends, halt)
        return self.finish(paragraph, entry, halt)

    def new(self, op, nsucc):
        self.nodes.append([op, [None] * nsucc])
        return len(self.nodes) - 1

    def connect(self, ends, target):
        for n, i in ends:
            self.nodes[n][1][i] = target

    def emit(self, op, ends):
        n = self.new(op, 1)
        self.connect(ends, n)
        return [(n, 0)]

    def block(self, stmts, ends, stack):
        for s in stmts:
            ends = self.statement(s, ends, stack)
        return ends

    def inline(self, target, ends, stack):
        if target in stack:
            raise RecursivePerform(stack[stack.index(target):] + [target])
        ends = self.emit(Jump(f"perform {target}"), ends)
        ends = self.block(self.paras[target].statements, ends, stack + [target])
        return self.emit(Jump(f"return {target}"), ends)

    def statement(self, s, ends, stack):
        if isinstance(s, A.Move):
            return self.move(s, ends)
        if isinstance(s, A.Compute):
            expr = self.num_expr(s.expr, s.line)
            for t in s.targets:
                self.need_numeric(t, s.line)
            return self.emit(Assign(tuple(s.targets), expr, None, s.line), ends)
        if isinstance(s, A.Arith):
            return self.arith(s, ends)
        if isinstance(s, A.If):
            b = self.new(Branch(self.cond(s.cond, s.line), None, s.line), 2)
            self.connect(ends, b)
            t_ends = self.block(s.then, [(b, 0)], stack)
            f_ends = self.block(s.orelse, [(b, 1)], stack)
            return self.emit(Jump("end-if"), t_ends + f_ends)
        if isinstance(s, A.Evaluate):
            return self.evaluate(s, ends, stack)
        if isinstance(s, A.Perform):
            return self.inline(s.target, ends, stack)
        if isinstance(s, (A.PerformUntil, A.PerformVarying)):
            return self.loop(s, ends, stack)
        if isinstance(s, RESOURCE_STATEMENTS):
            cid = self.call_ids[id(s)]
            if cid not in self.calls:
                self.calls[cid] = classify_external_call(s, cid, self.program)
            return self.emit(CallOp(self.calls[cid]), ends)
        if isinstance(s, A.Display):
            args = tuple(self.any_expr(a, s.line) for a in s.args)
            return self.emit(Emit(args, s.line), ends)
        if isinstance(s, A.Continue):
            return ends
        if isinstance(s, A.Stop):
            self.connect(ends, self.halt)
            return []
        raise TypeError(s)

    def move(self, s, ends):
        for t in s.targets:
            pic = self.vt[t]
            src = s.source
            if pic.is_numeric:
                if isinstance(src, A.Figurative):
                    if src.name != "ZERO":
                        raise UnsupportedConstruct("MOVE SPACES to numeric item", s.line)
                    src = A.NumLit(Fraction(0))
                elif not expr_is_numeric(src, self.vt):
                    raise UnsupportedConstruct("MOVE alphanumeric to numeric item", s.line)
                ends = self.emit(Assign((t,), src, None, s.line), ends)
            else:
                src_pic = None
                if isinstance(src, A.Figurative):
                    src = A.StrLit(("0" if src.name == "ZERO" else " ") * pic.length)
                elif isinstance(src, A.NumLit):
                    src = A.StrLit(literal_digits(src.value))
                elif isinstance(src, A.Ref) and self.vt[src.name].is_numeric:
                    src_pic = self.vt[src.name]
                elif not isinstance(src, (A.StrLit, A.Ref)):
                    raise UnsupportedConstruct("MOVE arithmetic expression to alphanumeric item", s.line)
                ends = self.emit(Assign((t,), src, src_pic, s.line), ends)
        return ends

    def arith(self, s, ends):
        srcs = [self.num_expr(x, s.line) for x in s.sources]
        ops = [self.num_expr(x, s.line) for x in s.operands]
        total = srcs[0]
        for x in srcs[1:]:
            total = A.BinOp("+", total, x)
        assigns = []
        v = s.verb
        if s.giving:
            if v == "ADD":
                expr = total
                for x in ops:
                    expr = A.BinOp("+", expr, x)
            elif v == "SUBTRACT":
                expr = A.BinOp("-", ops[0], total)
            elif v == "MULTIPLY":
                expr = A.BinOp("*", srcs[0], ops[0])
            elif s.keyword == "INTO":
                expr = A.BinOp("/", ops[0], srcs[0])
            else:
                expr = A.BinOp("/", srcs[0], ops[0])
            for g in s.giving:
                self.need_numeric(g, s.line)
            assigns.append(Assign(tuple(s.giving), expr, None, s.line))
        else:
            for t in ops:
                name = t.name
                self.need_numeric(name, s.line)
                if v == "ADD":
                    expr = A.BinOp("+", t, total)
                elif v == "SUBTRACT":
                    expr = A.BinOp("-", t, total)
                elif v == "MULTIPLY":
                    expr = A.BinOp("*", srcs[0], t)
                else:
                    expr = A.BinOp("/", t, srcs[0])
                assigns.append(Assign((name,), expr, None, s.line))
        for a in assigns:
            ends = self.emit(a, ends)
        return ends

    def evaluate(self, s, ends, stack):
        out = []
        for w in s.whens:
            if s.subject is None:
                cond = self.cond(w.match, s.line)
            else:
                cond = self.cond(A.Compare("=", s.subject, w.match), s.line)
            b = self.new(Branch(cond, None, s.line), 2)
            self.connect(ends, b)
            out += self.block(w.body, [(b, 0)], stack)
            ends = [(b, 1)]
        if s.other is not None:
            ends = self.block(s.other, ends, stack)
        return self.emit(Jump("end-evaluate"), out + ends)

    def loop(self, s, ends, stack):
        loop_id = len(self.loops)
        if isinstance(s, A.PerformVarying):
            self.need_numeric(s.var, s.line)
            ends = self.emit(Assign((s.var,), self.num_expr(s.start, s.line), None, s.line), ends)
            cond = self.cond(s.until, s.line)
        else:
            cond = self.cond(s.cond, s.line)
        enter = self.new(Jump("loop", loop_id), 1)
        self.connect(ends, enter)

        def body(from_ends):
            if s.target:
                b_ends = self.inline(s.target, from_ends, stack)
            else:
                b_ends = self.block(s.body, from_ends, stack)
            if isinstance(s, A.PerformVarying):
                step = A.BinOp("+", A.Ref(s.var), self.num_expr(s.step, s.line))
                b_ends = self.emit(Assign((s.var,), step, None, s.line), b_ends)
            return b_ends

        if s.test_before:
            header = self.new(Branch(cond, loop_id, s.line), 2)
            self.connect([(enter, 0)], header)
            self.connect(body([(header, 1)]), header)
        else:
            top = self.new(Jump("loop-top"), 1)
            self.connect([(enter, 0)], top)
            b_ends = body([(top, 0)])
            header = self.new(Branch(cond, loop_id, s.line), 2)
            self.connect(b_ends, header)
            self.nodes[header][1][1] = top
        self.loops[loop_id] = LoopInfo(loop_id, header, enter, s.test_before)
        return [(header, 0)]

    # -- type normalization -------------------------------------------

    def need_numeric(self, name, line):
        if not self.vt[name].is_numeric:
            raise UnsupportedConstruct(f"arithmetic on alphanumeric item {name}", line)

    def num_expr(self, e, line):
        if isinstance(e, A.Figurative):
            if e.name == "ZERO":
                return A.NumLit(Fraction(0))
            raise UnsupportedConstruct("SPACES in arithmetic", line)
        if isinstance(e, A.StrLit):
            raise UnsupportedConstruct("alphanumeric literal in arithmetic", line)
        if isinstance(e, A.Ref):
            self.need_numeric(e.name, line)
            return e
        if isinstance(e, A.BinOp):
            return A.BinOp(e.op, self.num_expr(e.left, line), self.num_expr(e.right, line))
        if isinstance(e, A.Neg):
            return A.Neg(self.num_expr(e.operand, line))
        return e

    def any_expr(self, e, line):
        if isinstance(e, A.Figurative):
            return A.NumLit(Fraction(0)) if e.name == "ZERO" else A.StrLit(" ")
        if isinstance(e, (A.BinOp, A.Neg)):
            return self.num_expr(e, line)
        return e

    def cond(self, c, line):
        if isinstance(c, A.BoolOp):
            return A.BoolOp(c.op, self.cond(c.left, line), self.cond(c.right, line))
        if isinstance(c, A.NotCond):
            return A.NotCond(self.cond(c.operand, line))
        left, right = c.left, c.right
        lf, rf = isinstance(left, A.Figurative), isinstance(right, A.Figurative)
        if lf and rf:
            raise UnsupportedConstruct("comparison of two figurative constants", line)
        if lf or rf:
            fig, other = (left, right) if lf else (right, left)
            if expr_is_numeric(other, self.vt):
                if fig.name != "ZERO":
                    raise UnsupportedConstruct("numeric compared with SPACES", line)
                repl = A.NumLit(Fraction(0))
            else:
                width = self.vt[other.name].length if isinstance(other, A.Ref) else len(other.text)
                repl = A.StrLit(("0" if fig.name == "ZERO" else " ") * max(width, 1))
            left, right = (repl, right) if lf else (left, repl)
        ln, rn = expr_is_numeric(left, self.vt), expr_is_numeric(right, self.vt)
        if ln != rn:
            raise UnsupportedConstruct("numeric compared with alphanumeric", line)
        if ln:
            left, right = self.num_expr(left, line), self.num_expr(right, line)
        return A.Compare(c.op, left, right)

    # -- finishing ------------------------------------------------------

    def finish(self, name, entry, halt):
        reach = set()
        todo = deque([entry])
        while todo:
            n = todo.popleft()
            if n in reach:
                continue
            reach.add(n)
            for t in self.nodes[n][1]:
                if t is None:
                    raise AssertionError("dangling edge in CFG")
                todo.append(t)
        nodes = {}
        unreachable = []
        for i, (op, succ) in enumerate(self.nodes):
            if i in reach:
                nodes[i] = Node(i, op, tuple(succ))
            elif isinstance(op, Branch):
                unreachable.append({"node": i, "line": op.line})
        if halt not in reach:
            raise UnsupportedConstruct(f"paragraph {name} never terminates", 0)
        loops = {k: v for k, v in self.loops.items() if v.header in reach}
        return Cfg(name, nodes, entry, halt, loops, unreachable)


def lower(ast: A.ProgramAst) -> IrProgram:
    _check_perform_cycles(ast)
    var_table = ast.data_dictionary()
    call_ids = _number_calls(ast)
    calls = {}
    low = _Lowerer(ast, var_table, call_ids, calls)
    cfgs = {p.name: low.build(p.name) for p in ast.paragraphs}
    # classify calls that only sit in unreachable code too, so ids stay dense
    for para in ast.paragraphs:
        for s in A.walk_statements(para.statements):
            if isinstance(s, RESOURCE_STATEMENTS) and call_ids[id(s)] not in calls:
                calls[call_ids[id(s)]] = classify_external_call(s, call_ids[id(s)], ast)
    return IrProgram(ast.program_id, cfgs, [calls[k] for k in sorted(calls)], var_table)


# -- analyses -----------------------------------------------------------------


def expr_vars(e, out=None):
    out = set() if out is None else out
    if isinstance(e, A.Ref):
        out.add(e.name)
    elif isinstance(e, A.BinOp):
        expr_vars(e.left, out)
        expr_vars(e.right, out)
    elif isinstance(e, A.Neg):
        expr_vars(e.operand, out)
    elif isinstance(e, A.Compare):
        expr_vars(e.left, out)
        expr_vars(e.right, out)
    elif isinstance(e, A.BoolOp):
        expr_vars(e.left, out)
        expr_vars(e.right, out)
    elif isinstance(e, A.NotCond):
        expr_vars(e.operand, out)
    return out


def uses_defs(op):
    if isinstance(op, Assign):
        return expr_vars(op.expr), set(op.dsts)
    if isinstance(op, Branch):
        return expr_vars(op.cond), set()
    if isinstance(op, CallOp):
        return set(op.call.resource_outputs), set(op.call.resource_inputs)
    if isinstance(op, Emit):
        out = set()
        for a in op.args:
            expr_vars(a, out)
        return out, set()
    return set(), set()


def io_variables(ir: IrProgram, paragraph: str):
    cfg = ir.cfg(paragraph)
    live = {n: set() for n in cfg.nodes}
    ud = {n: uses_defs(node.op) for n, node in cfg.nodes.items()}
    changed = True
    order = sorted(cfg.nodes, reverse=True)
    while changed:
        changed = False
        for n in order:
            out = set()
            for s in cfg.nodes[n].succ:
                out |= live[s]
            uses, defs = ud[n]
            new = uses | (out - defs)
            if new != live[n]:
                live[n] = new
                changed = True
    status = cfg.status_vars()
    inputs = live[cfg.entry] - status
    outputs = set()
    for uses, defs in ud.values():
        outputs |= defs
    return inputs, outputs - status


@dataclass(frozen=True)
class Inventory:
    branch_count: int
    path_count_bound: int

    def __iter__(self):
        return iter((self.branch_count, self.path_count_bound))


def syntactic_path_count(cfg: Cfg, k: int = 3) -> int:
    """Distinct entry-to-halt paths with every loop capped at ``k`` iterations."""
    loop_of_header = {info.header: info for info in cfg.loops.values()}

    @lru_cache(maxsize=None)
    def count(node, iters):
        n = cfg.nodes[node]
        op = n.op
        if isinstance(op, Halt):
            return 1
        counts = dict(iters)
        if isinstance(op, Jump) and op.loop_enter is not None:
            info = cfg.loops.get(op.loop_enter)
            counts[op.loop_enter] = 0 if (info is None or info.test_before) else 1
            return count(n.succ[0], tuple(sorted(counts.items())))
        if isinstance(op, Branch):
            total = 0
            info = loop_of_header.get(node)
            if info is not None:
                total += count(n.succ[0], tuple(sorted((k2, v) for k2, v in counts.items() if k2 != info.loop_id)))
                if counts.get(info.loop_id, 0) < k:
                    counts[info.loop_id] = counts.get(info.loop_id, 0) + 1
                    total += count(n.succ[1], tuple(sorted(counts.items())))
                return total
            return count(n.succ[0], iters) + count(n.succ[1], iters)
        return count(n.succ[0], iters)

    return count(cfg.entry, ())


def branch_inventory(ir: IrProgram, paragraph: str, k: int = 3, feasible: bool = True) -> Inventory:
    """Branch count and bounded path count for one paragraph.

    With ``feasible`` the bound counts only paths whose path condition is
    satisfiable (explored by depth-first symbolic execution); otherwise it is
    the purely syntactic count.
    """
    cfg = ir.cfg(paragraph)
    branches = len(cfg.branch_edges())
    if not feasible:
        return Inventory(branches, syntactic_path_count(cfg, k))
    from .symexec import enumerate_feasible_paths

    return Inventory(branches, len(enumerate_feasible_paths(ir, paragraph, k)))


# -- dumps ----------------------------------------------------------------------


def _fmt_op(op):
    from .frontend.printer import fmt_cond, fmt_expr

    if isinstance(op, Assign):
        return f"{', '.join(op.dsts)} := {fmt_expr(op.expr)}"
    if isinstance(op, Branch):
        text = f"branch {fmt_cond(op.cond)}"
        return text + (f" [loop {op.loop_id}]" if op.loop_id is not None else "")
    if isinstance(op, Jump):
        return "jump" + (f" {op.label}" if op.label else "")
    if isinstance(op, CallOp):
        return f"call#{op.call.call_id} {op.call.template}"
    if isinstance(op, Emit):
        return "emit " + " ".join(fmt_expr(a) for a in op.args)
    return "halt"


def cfg_to_json(cfg: Cfg):
    nodes = []
    for nid in sorted(cfg.nodes):
        n = cfg.nodes[nid]
        nodes.append({"id": nid, "kind": type(n.op).__name__, "text": _fmt_op(n.op), "succ": list(n.succ)})
    return {
        "paragraph": cfg.name, "entry": cfg.entry, "halt": cfg.halt, "nodes": nodes,
        "loops": [{"loopId": l.loop_id, "header": l.header, "enter": l.enter, "testBefore": l.test_before}
                  for l in cfg.loops.values()],
        "branchEdges": [{"node": nid, "taken": taken} for nid, taken in cfg.branch_edges()],
        "unreachable": cfg.unreachable,
    }


def ir_to_json(ir: IrProgram, paragraph=None):
    names = [paragraph] if paragraph else list(ir.cfgs)
    return {
        "programId": ir.program_id,
        "varTable": {k: v.to_json() for k, v in sorted(ir.var_table.items())},
        "externalCalls": [c.to_json() for c in ir.external_calls],
        "cfgs": [cfg_to_json(ir.cfg(n)) for n in names],
    }


def cfg_to_dot(cfg: Cfg) -> str:
    lines = [f'digraph "{cfg.name}" {{', "  node [shape=box, fontname=monospace];"]
    for nid in sorted(cfg.nodes):
        n = cfg.nodes[nid]
        label = json.dumps(f"{nid}: {_fmt_op(n.op)}", ensure_ascii=False)
        shape = ", shape=diamond" if isinstance(n.op, Branch) else ""
        lines.append(f"  n{nid} [label={label}{shape}];")
        if isinstance(n.op, Branch):
            lines.append(f'  n{nid} -> n{n.succ[0]} [label="T"];')
            lines.append(f'  n{nid} -> n{n.succ[1]} [label="F"];')
        else:
            for s in n.succ:
                lines.append(f"  n{nid} -> n{s};")
    lines.append("}")
    return "\n".join(lines) + "\n"
