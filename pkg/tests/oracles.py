"""Independent oracles used by the property tests.

Nothing here imports the package's evaluators: the random program generator
carries its own reference interpreter, the brute-force solver enumerates
assignments with numpy, and the matching oracle tries every monotone
injective matching.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

# -- random programs -----------------------------------------------------------------


@dataclass
class NumVar:
    name: str
    digits: int
    signed: bool

    def store(self, v: int) -> int:
        if not self.signed:
            v = abs(v)
        mag = abs(v) % 10 ** self.digits
        return -mag if v < 0 else mag

    def picture(self):
        return ("S" if self.signed else "") + f"9({self.digits})"


@dataclass
class RandomProgram:
    nums: list
    flag: str  # one PIC X(1) item
    body: list
    loop_vars: list = field(default_factory=list)
    source: str = ""

    @property
    def var_names(self):
        return [v.name for v in self.nums] + [self.flag] + self.loop_vars


class ProgramGenerator:
    """Small random programs over signed and unsigned numeric items plus one flag."""

    OPS = ("=", "<>", "<", "<=", ">", ">=")
    FLAG_VALUES = ("A", "B", "C")

    def __init__(self, seed):
        self.rng = random.Random(seed)
        self.loops = 0

    def generate(self) -> RandomProgram:
        r = self.rng
        nums = [NumVar(f"WS-N{i}", r.choice((2, 3)), r.random() < 0.5) for i in range(r.randint(2, 4))]
        self.nums = nums
        self.loops = 0
        prog = RandomProgram(nums, "WS-FLAG", [])
        budget = [3]  # decisions per program keep the bounded path count small
        prog.body = self.block(budget, depth=0, n=r.randint(3, 6))
        prog.loop_vars = [f"WS-I{i}" for i in range(1, self.loops + 1)]
        prog.source = render(prog)
        return prog

    def num(self):
        return self.rng.choice(self.nums)

    def operand(self):
        r = self.rng
        if r.random() < 0.6:
            return ("var", self.num().name)
        return ("const", r.randint(-9, 20))

    def cond(self, depth=0):
        r = self.rng
        roll = r.random()
        if depth < 1 and roll < 0.15:
            return (r.choice(("and", "or")), self.cond(depth + 1), self.cond(depth + 1))
        if depth < 1 and roll < 0.22:
            return ("not", self.cond(depth + 1))
        if roll < 0.35:
            return ("flag", r.choice(("=", "<>")), r.choice(self.FLAG_VALUES))
        left = ("var", self.num().name)
        right = self.operand()
        return ("cmp", r.choice(self.OPS), left, right)

    def simple(self):
        r = self.rng
        kind = r.choice(("move", "move", "add", "sub", "compute", "flag"))
        dst = self.num().name
        if kind == "move":
            return ("move", self.operand(), dst)
        if kind == "add":
            return ("add", self.operand(), dst)
        if kind == "sub":
            return ("sub", self.operand(), dst)
        if kind == "flag":
            return ("setflag", r.choice(self.FLAG_VALUES))
        terms = [(r.randint(-3, 3) or 1, self.num().name) for _ in range(r.randint(1, 2))]
        return ("compute", dst, terms, r.randint(-5, 5))

    def block(self, budget, depth, n):
        out = []
        for _ in range(n):
            roll = self.rng.random()
            if budget[0] > 0 and depth < 2 and roll < 0.25:
                budget[0] -= 1
                out.append(("if", self.cond(), self.block(budget, depth + 1, self.rng.randint(1, 2)),
                            self.block(budget, depth + 1, self.rng.randint(0, 2))))
            elif budget[0] > 1 and depth < 2 and roll < 0.35:
                budget[0] -= 2
                whens = [(self.cond(), self.block(budget, depth + 1, 1)) for _ in range(2)]
                out.append(("evaluate", whens, self.block(budget, depth + 1, 1)))
            elif depth == 0 and self.loops < 1 and roll < 0.45:
                self.loops += 1
                out.append(("loop", f"WS-I{self.loops}", self.rng.randint(1, 2), [self.simple(), self.simple()]))
            else:
                out.append(self.simple())
        return out


def _fmt_operand(o):
    return o[1] if o[0] == "var" else str(o[1])


def _fmt_cond(c):
    if c[0] == "cmp":
        return f"{_fmt_operand(c[2])} {c[1]} {_fmt_operand(c[3])}"
    if c[0] == "flag":
        return f"WS-FLAG {c[1]} '{c[2]}'"
    if c[0] == "not":
        return f"NOT ( {_fmt_cond(c[1])} )"
    return f"( {_fmt_cond(c[1])} ) {c[0].upper()} ( {_fmt_cond(c[2])} )"


def _fmt_stmt(s, ind, lines):
    pad = " " * ind
    k = s[0]
    if k == "move":
        lines.append(f"{pad}MOVE {_fmt_operand(s[1])} TO {s[2]}")
    elif k == "add":
        lines.append(f"{pad}ADD {_fmt_operand(s[1])} TO {s[2]}")
    elif k == "sub":
        lines.append(f"{pad}SUBTRACT {_fmt_operand(s[1])} FROM {s[2]}")
    elif k == "setflag":
        lines.append(f"{pad}MOVE '{s[1]}' TO WS-FLAG")
    elif k == "compute":
        expr = " + ".join(f"{c} * {v}" for c, v in s[2])
        lines.append(f"{pad}COMPUTE {s[1]} = {expr} + {s[3]}")
    elif k == "if":
        lines.append(f"{pad}IF {_fmt_cond(s[1])}")
        for t in s[2]:
            _fmt_stmt(t, ind + 4, lines)
        if s[3]:
            lines.append(f"{pad}ELSE")
            for t in s[3]:
                _fmt_stmt(t, ind + 4, lines)
        lines.append(f"{pad}END-IF")
    elif k == "evaluate":
        lines.append(f"{pad}EVALUATE TRUE")
        for cond, body in s[1]:
            lines.append(f"{pad}    WHEN {_fmt_cond(cond)}")
            for t in body:
                _fmt_stmt(t, ind + 8, lines)
        lines.append(f"{pad}    WHEN OTHER")
        for t in s[2]:
            _fmt_stmt(t, ind + 8, lines)
        lines.append(f"{pad}END-EVALUATE")
    elif k == "loop":
        lines.append(f"{pad}PERFORM VARYING {s[1]} FROM 1 BY 1 UNTIL {s[1]} > {s[2]}")
        for t in s[3]:
            _fmt_stmt(t, ind + 4, lines)
        lines.append(f"{pad}END-PERFORM")


def render(prog: RandomProgram) -> str:
    lines = ["IDENTIFICATION DIVISION.", "PROGRAM-ID. RANDPROG.", "DATA DIVISION.", "WORKING-STORAGE SECTION."]
    for v in prog.nums:
        lines.append(f"01 {v.name} PIC {v.picture()}.")
    lines.append("01 WS-FLAG PIC X(1).")
    for name in prog.loop_vars:
        lines.append(f"01 {name} PIC 9(2).")
    lines += ["PROCEDURE DIVISION.", "MAIN-PARA."]
    body = []
    for s in prog.body:
        _fmt_stmt(s, 4, body)
    if not body:
        body = ["    CONTINUE"]
    body[-1] += "."
    return "\n".join(lines + body) + "\n"


class ReferenceEvaluator:
    """Direct interpreter of the generator's statement tuples."""

    def __init__(self, prog: RandomProgram):
        self.prog = prog
        self.pics = {v.name: v for v in prog.nums}
        for name in prog.loop_vars:
            self.pics[name] = NumVar(name, 2, False)

    def run(self, inputs: dict):
        env = {name: 0 for name in self.pics}
        env["WS-FLAG"] = " "
        env.update(inputs)
        self.written = set()
        self.decisions = []
        self._block(self.prog.body, env)
        return env

    def _val(self, o, env):
        return env[o[1]] if o[0] == "var" else o[1]

    def _cond(self, c, env):
        if c[0] == "cmp":
            a, b = self._val(c[2], env), self._val(c[3], env)
            return {"=": a == b, "<>": a != b, "<": a < b, "<=": a <= b, ">": a > b, ">=": a >= b}[c[1]]
        if c[0] == "flag":
            return (env["WS-FLAG"] == c[2]) == (c[1] == "=")
        if c[0] == "not":
            return not self._cond(c[1], env)
        if c[0] == "and":
            return self._cond(c[1], env) and self._cond(c[2], env)
        return self._cond(c[1], env) or self._cond(c[2], env)

    def _set(self, env, name, v):
        env[name] = self.pics[name].store(v)
        self.written.add(name)

    def _block(self, stmts, env):
        for s in stmts:
            k = s[0]
            if k == "move":
                self._set(env, s[2], self._val(s[1], env))
            elif k == "add":
                self._set(env, s[2], env[s[2]] + self._val(s[1], env))
            elif k == "sub":
                self._set(env, s[2], env[s[2]] - self._val(s[1], env))
            elif k == "setflag":
                env["WS-FLAG"] = s[1]
                self.written.add("WS-FLAG")
            elif k == "compute":
                self._set(env, s[1], sum(c * env[v] for c, v in s[2]) + s[3])
            elif k == "if":
                self._block(s[2] if self._cond(s[1], env) else s[3], env)
            elif k == "evaluate":
                for cond, body in s[1]:
                    if self._cond(cond, env):
                        self._block(body, env)
                        break
                else:
                    self._block(s[2], env)
            elif k == "loop":
                self._set(env, s[1], 1)
                while not env[s[1]] > s[2]:
                    self._block(s[3], env)
                    self._set(env, s[1], env[s[1]] + 1)


# -- brute-force solver ------------------------------------------------------------------


@dataclass
class LinAtom:
    """``sum(coeffs[i] * x_i) op rhs`` over integer symbols."""

    coeffs: dict
    op: str
    rhs: int


def brute_force_sat(domains: dict, clauses: list) -> bool:
    """``clauses`` is a conjunction of disjunctions of LinAtoms; numpy enumerates the box."""
    names = sorted(domains)
    if not names:
        return all(any(_const_atom(a) for a in clause) for clause in clauses)
    axes = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in (domains[n] for n in names)]
    grids = np.meshgrid(*axes, indexing="ij")
    cols = {n: g.ravel() for n, g in zip(names, grids)}
    ok = np.ones(grids[0].size, dtype=bool)
    for clause in clauses:
        any_ok = np.zeros_like(ok)
        for atom in clause:
            lhs = np.zeros_like(ok, dtype=np.int64)
            for name, c in atom.coeffs.items():
                lhs = lhs + c * cols[name]
            any_ok |= _np_cmp(atom.op, lhs, atom.rhs)
        ok &= any_ok
    return bool(ok.any())


def _const_atom(a):
    return _np_cmp(a.op, np.int64(0), a.rhs)


def _np_cmp(op, lhs, rhs):
    return {"=": lhs == rhs, "<>": lhs != rhs, "<": lhs < rhs, "<=": lhs <= rhs,
            ">": lhs > rhs, ">=": lhs >= rhs}[op]


def atom_holds(atom: LinAtom, assignment: dict) -> bool:
    lhs = sum(Fraction(c) * assignment[n] for n, c in atom.coeffs.items())
    return bool(_np_cmp(atom.op, lhs, atom.rhs))


# -- brute-force matching -------------------------------------------------------------------


def brute_force_matching(weights, theta):
    """Maximum total weight over all monotone injective matchings using weights >= theta."""
    n = len(weights)
    m = len(weights[0]) if n else 0
    best = Fraction(0)
    for k in range(1, min(n, m) + 1):
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.combinations(range(m), k):
                ws = [Fraction(weights[i][j]) for i, j in zip(rows, cols)]
                if all(w > 0 and w >= theta for w in ws):
                    best = max(best, sum(ws))
    return best
