"""Canonical pretty-printer; its output re-parses to an equal AST."""

from __future__ import annotations

from fractions import Fraction

from . import ast as A


def fmt_number(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    frac = 0
    while (value * 10 ** frac).denominator != 1:
        frac += 1
        if frac > 30:
            raise ValueError(f"{value} has no finite decimal form")
    scaled = abs(int(value * 10 ** frac))
    digits = str(scaled).zfill(frac + 1)
    text = digits[:-frac] + "." + digits[-frac:]
    return ("-" if value < 0 else "") + text


def fmt_expr(e) -> str:
    if isinstance(e, A.NumLit):
        return fmt_number(e.value)
    if isinstance(e, A.StrLit):
        return "'" + e.text.replace("'", "''") + "'"
    if isinstance(e, A.Figurative):
        return e.name + "S" if e.name == "SPACE" else "ZEROS"
    if isinstance(e, A.Ref):
        return e.name
    if isinstance(e, A.BinOp):
        return f"({fmt_expr(e.left)} {e.op} {fmt_expr(e.right)})"
    if isinstance(e, A.Neg):
        return f"-({fmt_expr(e.operand)})"
    raise TypeError(e)


def fmt_cond(c) -> str:
    if isinstance(c, A.Compare):
        return f"{fmt_expr(c.left)} {c.op} {fmt_expr(c.right)}"
    if isinstance(c, A.BoolOp):
        return f"({fmt_cond(c.left)}) {c.op} ({fmt_cond(c.right)})"
    if isinstance(c, A.NotCond):
        return f"NOT ({fmt_cond(c.operand)})"
    raise TypeError(c)


class _Out:
    def __init__(self):
        self.lines = []

    def emit(self, depth, text):
        self.lines.append("    " * depth + text)


def _stmts(out, stmts, depth):
    for s in stmts:
        _stmt(out, s, depth)


def _stmt(out, s, d):
    if isinstance(s, A.Move):
        out.emit(d, f"MOVE {fmt_expr(s.source)} TO {' '.join(s.targets)}")
    elif isinstance(s, A.Compute):
        out.emit(d, f"COMPUTE {' '.join(s.targets)} = {fmt_expr(s.expr)}")
    elif isinstance(s, A.Arith):
        parts = [s.verb] + [fmt_expr(x) for x in s.sources]
        if s.keyword != "GIVING":
            parts.append(s.keyword)
            parts += [fmt_expr(x) for x in s.operands]
        if s.giving:
            parts.append("GIVING")
            parts += list(s.giving)
        out.emit(d, " ".join(parts))
    elif isinstance(s, A.If):
        out.emit(d, f"IF {fmt_cond(s.cond)}")
        _stmts(out, s.then, d + 1)
        if s.orelse:
            out.emit(d, "ELSE")
            _stmts(out, s.orelse, d + 1)
        out.emit(d, "END-IF")
    elif isinstance(s, A.Evaluate):
        out.emit(d, "EVALUATE " + ("TRUE" if s.subject is None else fmt_expr(s.subject)))
        for w in s.whens:
            m = fmt_cond(w.match) if s.subject is None else fmt_expr(w.match)
            out.emit(d + 1, f"WHEN {m}")
            _stmts(out, w.body, d + 2)
        if s.other is not None:
            out.emit(d + 1, "WHEN OTHER")
            _stmts(out, s.other, d + 2)
        out.emit(d, "END-EVALUATE")
    elif isinstance(s, A.Perform):
        out.emit(d, f"PERFORM {s.target}")
    elif isinstance(s, (A.PerformUntil, A.PerformVarying)):
        head = "PERFORM"
        if s.target:
            head += " " + s.target
        if not s.test_before:
            head += " WITH TEST AFTER"
        if isinstance(s, A.PerformUntil):
            head += f" UNTIL {fmt_cond(s.cond)}"
        else:
            head += (f" VARYING {s.var} FROM {fmt_expr(s.start)} BY {fmt_expr(s.step)}"
                     f" UNTIL {fmt_cond(s.until)}")
        out.emit(d, head)
        if not s.target:
            _stmts(out, s.body, d + 1)
            out.emit(d, "END-PERFORM")
    elif isinstance(s, A.ExecSql):
        out.emit(d, f"EXEC SQL {s.text} END-EXEC")
    elif isinstance(s, A.ExecGeneric):
        opts = []
        for name, val in s.options:
            opts.append(name if val is None else f"{name}({fmt_expr(val)})")
        out.emit(d, " ".join([f"EXEC {s.interface} {s.verb}"] + opts + ["END-EXEC"]))
    elif isinstance(s, A.Call):
        text = f"CALL {fmt_expr(s.program)}"
        if s.using:
            text += " USING " + " ".join(s.using)
        out.emit(d, text)
    elif isinstance(s, A.Read):
        out.emit(d, f"READ {s.file}" + (f" INTO {s.into}" if s.into else ""))
    elif isinstance(s, A.Write):
        out.emit(d, f"WRITE {s.record}" + (f" FROM {s.source}" if s.source else ""))
    elif isinstance(s, A.Display):
        out.emit(d, "DISPLAY " + " ".join(fmt_expr(a) for a in s.args))
    elif isinstance(s, A.Continue):
        out.emit(d, "CONTINUE")
    elif isinstance(s, A.Stop):
        out.emit(d, s.kind)
    else:
        raise TypeError(s)


def _item(out, item, depth):
    text = f"{item.level:02d} {item.name}"
    if item.pic is not None:
        text += f" PIC {item.pic.picture()}"
    out.emit(depth, text + ".")
    for child in item.children:
        _item(out, child, depth + 1)


def pretty_print(prog: A.ProgramAst) -> str:
    out = _Out()
    out.emit(0, "IDENTIFICATION DIVISION.")
    out.emit(0, f"PROGRAM-ID. {prog.program_id}.")
    if prog.working_storage or prog.linkage or prog.files or prog.sqlca:
        out.emit(0, "DATA DIVISION.")
        if prog.files:
            out.emit(0, "FILE SECTION.")
            for f in prog.files:
                out.emit(0, f"FD {f.name}.")
                _item(out, f.record, 0)
        if prog.working_storage or prog.sqlca:
            out.emit(0, "WORKING-STORAGE SECTION.")
            if prog.sqlca:
                out.emit(0, "EXEC SQL INCLUDE SQLCA END-EXEC.")
            for it in prog.working_storage:
                _item(out, it, 0)
        if prog.linkage:
            out.emit(0, "LINKAGE SECTION.")
            for it in prog.linkage:
                _item(out, it, 0)
    head = "PROCEDURE DIVISION"
    if prog.using:
        head += " USING " + " ".join(prog.using)
    out.emit(0, head + ".")
    for para in prog.paragraphs:
        out.emit(0, f"{para.name}.")
        _stmts(out, para.statements, 1)
        out.emit(1, ".")
    return "\n".join(out.lines) + "\n"
