"""Concrete evaluation of IR expressions and conditions.

The oracle interpreter, the self-verification replay and the reference AST
evaluator in the tests all go through these routines, so stored values are
truncated identically everywhere.
"""

from __future__ import annotations

from fractions import Fraction

from .frontend import ast as A
from .pic import compare_alnum, store


class Trap(Exception):
    """Runtime fault inside the interpreted program (e.g. divide by zero)."""


def expr_is_numeric(e, var_table) -> bool:
    if isinstance(e, A.NumLit):
        return True
    if isinstance(e, A.StrLit):
        return False
    if isinstance(e, A.Figurative):
        return e.name == "ZERO"
    if isinstance(e, A.Ref):
        return var_table[e.name].is_numeric
    if isinstance(e, (A.BinOp, A.Neg)):
        return True
    raise TypeError(e)


def eval_expr(e, env):
    if isinstance(e, A.NumLit):
        return e.value
    if isinstance(e, A.StrLit):
        return e.text
    if isinstance(e, A.Ref):
        return env[e.name]
    if isinstance(e, A.Neg):
        return -eval_expr(e.operand, env)
    if isinstance(e, A.BinOp):
        left = eval_expr(e.left, env)
        right = eval_expr(e.right, env)
        if e.op == "+":
            return left + right
        if e.op == "-":
            return left - right
        if e.op == "*":
            return left * right
        if right == 0:
            raise Trap("divide by zero")
        return Fraction(left) / right
    raise TypeError(e)


def compare_values(op, left, right) -> bool:
    if isinstance(left, str) or isinstance(right, str):
        c = compare_alnum(str(left), str(right))
    else:
        c = (left > right) - (left < right)
    return {
        "=": c == 0, "<>": c != 0, ">": c > 0, "<": c < 0, ">=": c >= 0, "<=": c <= 0,
    }[op]


def eval_cond(c, env) -> bool:
    if isinstance(c, A.Compare):
        return compare_values(c.op, eval_expr(c.left, env), eval_expr(c.right, env))
    if isinstance(c, A.BoolOp):
        if c.op == "AND":
            return eval_cond(c.left, env) and eval_cond(c.right, env)
        return eval_cond(c.left, env) or eval_cond(c.right, env)
    if isinstance(c, A.NotCond):
        return not eval_cond(c.operand, env)
    raise TypeError(c)


def assign(env, var_table, dsts, value, src_pic=None):
    for d in dsts:
        env[d] = store(value, var_table[d], src_pic)
