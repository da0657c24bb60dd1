"""Symbolic terms and formulas over PIC-typed inputs.

Numeric terms denote exact rationals; a numeric symbol ranges over the
scaled integers of its PIC domain divided by ``10**scale``.  Alphanumeric
terms denote fixed-length strings encoded as order-preserving base-95
integers (space is digit 0, so right-padding is multiplication by a power of
95).  Store-back truncation is kept as a term of its own, which keeps every
atom expressed over version-0 symbols without auxiliary variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import NonLinearUnsupported, UnsupportedAtom
from .pic import RADIX, PicType, code_string, store_numeric, string_code

CMP_OPS = ("=", "<>", "<", "<=", ">", ">=")
NEGATE = {"=": "<>", "<>": "=", "<": ">=", "<=": ">", ">": "<=", ">=": "<"}
MIRROR = {"=": "=", "<>": "<>", "<": ">", "<=": ">=", ">": "<", ">=": "<="}


@dataclass(frozen=True)
class Domain:
    """Value space of one symbol: scaled integers ``[lo, hi]`` or strings of ``length``."""

    kind: str  # "num" | "str"
    lo: int
    hi: int
    scale: int = 0
    length: int = 0

    @classmethod
    def of_pic(cls, pic: PicType):
        if pic.is_numeric:
            lo, hi = pic.scaled_bounds()
            return cls("num", lo, hi, pic.frac_digits)
        return cls("str", 0, RADIX ** pic.length - 1, 0, pic.length)

    @property
    def size(self):
        return self.hi - self.lo + 1

    def to_json(self):
        if self.kind == "str":
            return {"kind": "str", "length": self.length}
        return {"kind": "num", "lo": self.lo, "hi": self.hi, "scale": self.scale}

    @classmethod
    def from_json(cls, d):
        if d["kind"] == "str":
            return cls("str", 0, RADIX ** d["length"] - 1, 0, d["length"])
        return cls("num", int(d["lo"]), int(d["hi"]), int(d.get("scale", 0)))

    def value(self, raw):
        """Concrete program value of a raw witness (scaled int or string)."""
        if self.kind == "str":
            return raw
        return Fraction(raw, 10 ** self.scale)

    def raw(self, value):
        if self.kind == "str":
            return value
        return int(Fraction(value) * 10 ** self.scale)


# -- numeric terms ----------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class Sym:
    name: str
    scale: int = 0
    lo: int = 0
    hi: int = 0


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Div:
    left: object
    right: object


@dataclass(frozen=True)
class NumStore:
    """Store-back of a numeric value into a PIC item (truncate, wrap, drop sign)."""

    operand: object
    int_digits: int
    frac_digits: int
    signed: bool

    @property
    def pic(self):
        return PicType("numeric", self.signed, self.int_digits, self.frac_digits)


# -- string terms -------------------------------------------------------------


@dataclass(frozen=True)
class SConst:
    text: str

    @property
    def length(self):
        return len(self.text)


@dataclass(frozen=True)
class SSym:
    name: str
    length: int


@dataclass(frozen=True)
class SFit:
    """Right-pad with spaces or truncate a string term to ``length``."""

    operand: object
    length: int


# -- formulas ---------------------------------------------------------------


@dataclass(frozen=True)
class BoolConst:
    value: bool


@dataclass(frozen=True)
class Cmp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class And:
    items: tuple


@dataclass(frozen=True)
class Or:
    items: tuple


@dataclass(frozen=True)
class Not:
    operand: object


TRUE, FALSE = BoolConst(True), BoolConst(False)
STRING_TERMS = (SConst, SSym, SFit)


def is_string(t) -> bool:
    return isinstance(t, STRING_TERMS)


def str_length(t) -> int:
    return t.length


def make_symbol(name, dom: Domain):
    if dom.kind == "str":
        return SSym(name, dom.length)
    return Sym(name, dom.scale, dom.lo, dom.hi)


# -- smart constructors (constant folding) -----------------------------------


def const(v):
    return Const(Fraction(v))


def add(a, b):
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    if isinstance(a, Const) and a.value == 0:
        return b
    if isinstance(b, Const) and b.value == 0:
        return a
    return Add(a, b)


def neg(a):
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.operand
    return Neg(a)


def sub(a, b):
    return add(a, neg(b))


def mul(a, b):
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    if isinstance(b, Const):
        a, b = b, a
    if isinstance(a, Const):
        if a.value == 0:
            return Const(Fraction(0))
        if a.value == 1:
            return b
    return Mul(a, b)


def div(a, b):
    if isinstance(b, Const):
        if b.value == 0:
            raise NonLinearUnsupported("division by constant zero")
        if isinstance(a, Const):
            return Const(a.value / b.value)
        return mul(Const(1 / b.value), a)
    return Div(a, b)


def num_store(a, pic: PicType):
    if isinstance(a, Const):
        return Const(store_numeric(a.value, pic))
    if isinstance(a, NumStore) and a.pic == pic:
        return a
    if isinstance(a, Sym):
        # a symbol already lives in a PIC domain; storing it into a wider one is exact
        return a if _sym_fits(a, pic) else NumStore(a, pic.int_digits, pic.frac_digits, pic.signed)
    return NumStore(a, pic.int_digits, pic.frac_digits, pic.signed)


def _sym_fits(s: Sym, pic: PicType) -> bool:
    if s.scale > pic.frac_digits or (s.lo < 0 and not pic.signed):
        return False
    return max(abs(s.lo), abs(s.hi)) < 10 ** (pic.int_digits + s.scale)


def sfit(a, length):
    if a.length == length:
        return a
    if isinstance(a, SConst):
        return SConst(a.text[:length].ljust(length))
    if isinstance(a, SFit):
        if length >= a.length:
            return SFit(a, length) if a.operand.length > a.length else SFit(a.operand, length)
        return sfit(a.operand, length)
    return SFit(a, length)


def cmp(op, a, b):
    if op not in CMP_OPS:
        raise UnsupportedAtom(f"comparison operator {op}")
    if is_string(a) != is_string(b):
        raise UnsupportedAtom("comparison between numeric and alphanumeric terms")
    if isinstance(a, (Const, SConst)) and isinstance(b, (Const, SConst)):
        return BoolConst(_compare(op, _const_value(a, b), _const_value(b, a)))
    if a == b:
        return BoolConst(op in ("=", "<=", ">="))
    return Cmp(op, a, b)


def _const_value(t, other):
    if isinstance(t, SConst):
        width = max(t.length, other.length)
        return string_code(t.text.ljust(width))
    return t.value


def _compare(op, x, y) -> bool:
    return {"=": x == y, "<>": x != y, "<": x < y, "<=": x <= y, ">": x > y, ">=": x >= y}[op]


def conj(*items):
    out = []
    for f in items:
        if isinstance(f, BoolConst):
            if not f.value:
                return FALSE
            continue
        if isinstance(f, And):
            out.extend(f.items)
        else:
            out.append(f)
    if not out:
        return TRUE
    return out[0] if len(out) == 1 else And(tuple(out))


def disj(*items):
    out = []
    for f in items:
        if isinstance(f, BoolConst):
            if f.value:
                return TRUE
            continue
        if isinstance(f, Or):
            out.extend(f.items)
        else:
            out.append(f)
    if not out:
        return FALSE
    return out[0] if len(out) == 1 else Or(tuple(out))


def negate(f):
    if isinstance(f, BoolConst):
        return BoolConst(not f.value)
    if isinstance(f, Cmp):
        return Cmp(NEGATE[f.op], f.left, f.right)
    if isinstance(f, And):
        return disj(*(negate(x) for x in f.items))
    if isinstance(f, Or):
        return conj(*(negate(x) for x in f.items))
    if isinstance(f, Not):
        return f.operand
    raise UnsupportedAtom(f"not a formula: {f!r}")


def nnf(f):
    """Negation normal form: only Cmp, And, Or, BoolConst remain."""
    if isinstance(f, Not):
        return nnf(negate(nnf(f.operand)))
    if isinstance(f, And):
        return conj(*(nnf(x) for x in f.items))
    if isinstance(f, Or):
        return disj(*(nnf(x) for x in f.items))
    if isinstance(f, (Cmp, BoolConst)):
        return f
    raise UnsupportedAtom(f"not a formula: {f!r}")


# -- traversal and evaluation -------------------------------------------------


def symbols(t, out=None):
    out = set() if out is None else out
    if isinstance(t, (Sym, SSym)):
        out.add(t.name)
    elif isinstance(t, (Add, Mul, Div, Cmp)):
        symbols(t.left, out)
        symbols(t.right, out)
    elif isinstance(t, (Neg, NumStore, SFit, Not)):
        symbols(t.operand, out)
    elif isinstance(t, (And, Or)):
        for x in t.items:
            symbols(x, out)
    return out


def is_linear(t) -> bool:
    """True when the term has no product or quotient of two symbolic terms."""
    if isinstance(t, Mul):
        if not (isinstance(t.left, Const) or isinstance(t.right, Const)):
            return bool(not symbols(t.left) or not symbols(t.right)) and is_linear(t.left) and is_linear(t.right)
        return is_linear(t.left) and is_linear(t.right)
    if isinstance(t, Div):
        return not symbols(t.right) and is_linear(t.left) and is_linear(t.right)
    if isinstance(t, (Add, Cmp)):
        return is_linear(t.left) and is_linear(t.right)
    if isinstance(t, (Neg, NumStore, SFit, Not)):
        return is_linear(t.operand)
    if isinstance(t, (And, Or)):
        return all(is_linear(x) for x in t.items)
    return True


def eval_term(t, env):
    """Exact value of a term; ``env`` maps symbol names to raw witnesses.

    Numeric terms yield Fractions, string terms yield base-95 codes.
    """
    if isinstance(t, Const):
        return t.value
    if isinstance(t, Sym):
        return Fraction(env[t.name], 10 ** t.scale)
    if isinstance(t, Add):
        return eval_term(t.left, env) + eval_term(t.right, env)
    if isinstance(t, Neg):
        return -eval_term(t.operand, env)
    if isinstance(t, Mul):
        return eval_term(t.left, env) * eval_term(t.right, env)
    if isinstance(t, Div):
        d = eval_term(t.right, env)
        if d == 0:
            raise ZeroDivisionError("symbolic division by zero")
        return eval_term(t.left, env) / d
    if isinstance(t, NumStore):
        return store_numeric(eval_term(t.operand, env), t.pic)
    if isinstance(t, SConst):
        return string_code(t.text)
    if isinstance(t, SSym):
        v = env[t.name]
        return string_code(v) if isinstance(v, str) else int(v)
    if isinstance(t, SFit):
        return fit_code(eval_term(t.operand, env), t.operand.length, t.length)
    raise UnsupportedAtom(f"unknown term {t!r}")


def fit_code(code, src_len, dst_len):
    if dst_len >= src_len:
        return code * RADIX ** (dst_len - src_len)
    return code // RADIX ** (src_len - dst_len)


def eval_formula(f, env) -> bool:
    if isinstance(f, BoolConst):
        return f.value
    if isinstance(f, Cmp):
        a, b = eval_term(f.left, env), eval_term(f.right, env)
        if is_string(f.left):
            la, lb = f.left.length, f.right.length
            width = max(la, lb)
            a, b = fit_code(a, la, width), fit_code(b, lb, width)
        return _compare(f.op, a, b)
    if isinstance(f, And):
        return all(eval_formula(x, env) for x in f.items)
    if isinstance(f, Or):
        return any(eval_formula(x, env) for x in f.items)
    if isinstance(f, Not):
        return not eval_formula(f.operand, env)
    raise UnsupportedAtom(f"unknown formula {f!r}")


def string_value(t, env) -> str:
    return code_string(eval_term(t, env), t.length)


# -- JSON s-expressions -----------------------------------------------------


def term_to_json(t):
    if isinstance(t, Const):
        return ["const", _num_text(t.value)]
    if isinstance(t, Sym):
        return ["sym", t.name]
    if isinstance(t, SSym):
        return ["sym", t.name]
    if isinstance(t, SConst):
        return ["str", t.text]
    if isinstance(t, Add):
        return ["+", term_to_json(t.left), term_to_json(t.right)]
    if isinstance(t, Mul):
        return ["*", term_to_json(t.left), term_to_json(t.right)]
    if isinstance(t, Div):
        return ["/", term_to_json(t.left), term_to_json(t.right)]
    if isinstance(t, Neg):
        return ["neg", term_to_json(t.operand)]
    if isinstance(t, NumStore):
        return ["store", term_to_json(t.operand),
                {"int": t.int_digits, "frac": t.frac_digits, "signed": t.signed}]
    if isinstance(t, SFit):
        return ["fit", term_to_json(t.operand), t.length]
    if isinstance(t, BoolConst):
        return ["true"] if t.value else ["false"]
    if isinstance(t, Cmp):
        return [t.op, term_to_json(t.left), term_to_json(t.right)]
    if isinstance(t, And):
        return ["and"] + [term_to_json(x) for x in t.items]
    if isinstance(t, Or):
        return ["or"] + [term_to_json(x) for x in t.items]
    if isinstance(t, Not):
        return ["not", term_to_json(t.operand)]
    raise UnsupportedAtom(f"unknown term {t!r}")


def _num_text(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def term_from_json(d, domains):
    if not isinstance(d, list) or not d:
        raise UnsupportedAtom(f"malformed term {d!r}")
    head = d[0]
    if head == "const":
        return Const(Fraction(d[1]))
    if head == "str":
        return SConst(d[1])
    if head == "sym":
        dom = domains.get(d[1])
        if dom is None:
            raise UnsupportedAtom(f"symbol {d[1]} has no domain")
        return make_symbol(d[1], dom)
    if head in ("+", "*", "/"):
        a, b = term_from_json(d[1], domains), term_from_json(d[2], domains)
        return {"+": Add, "*": Mul, "/": Div}[head](a, b)
    if head == "neg":
        return Neg(term_from_json(d[1], domains))
    if head == "store":
        o = d[2]
        return NumStore(term_from_json(d[1], domains), o["int"], o["frac"], o["signed"])
    if head == "fit":
        return SFit(term_from_json(d[1], domains), d[2])
    if head == "true":
        return TRUE
    if head == "false":
        return FALSE
    if head in CMP_OPS:
        a, b = term_from_json(d[1], domains), term_from_json(d[2], domains)
        if is_string(a) != is_string(b):
            raise UnsupportedAtom("comparison between numeric and alphanumeric terms")
        return Cmp(head, a, b)
    if head == "and":
        return And(tuple(term_from_json(x, domains) for x in d[1:]))
    if head == "or":
        return Or(tuple(term_from_json(x, domains) for x in d[1:]))
    if head == "not":
        return Not(term_from_json(d[1], domains))
    raise UnsupportedAtom(f"unknown operator {head!r}")


def fmt_term(t) -> str:
    """Compact human-readable rendering used in reports and warnings."""
    if isinstance(t, Const):
        return _num_text(t.value)
    if isinstance(t, (Sym, SSym)):
        return t.name
    if isinstance(t, SConst):
        return repr(t.text)
    if isinstance(t, Add):
        return f"({fmt_term(t.left)} + {fmt_term(t.right)})"
    if isinstance(t, Mul):
        return f"({fmt_term(t.left)} * {fmt_term(t.right)})"
    if isinstance(t, Div):
        return f"({fmt_term(t.left)} / {fmt_term(t.right)})"
    if isinstance(t, Neg):
        return f"-{fmt_term(t.operand)}"
    if isinstance(t, NumStore):
        return f"store[{t.pic.picture()}]({fmt_term(t.operand)})"
    if isinstance(t, SFit):
        return f"fit[{t.length}]({fmt_term(t.operand)})"
    if isinstance(t, BoolConst):
        return "true" if t.value else "false"
    if isinstance(t, Cmp):
        return f"{fmt_term(t.left)} {t.op} {fmt_term(t.right)}"
    if isinstance(t, And):
        return " AND ".join(f"({fmt_term(x)})" for x in t.items)
    if isinstance(t, Or):
        return " OR ".join(f"({fmt_term(x)})" for x in t.items)
    if isinstance(t, Not):
        return f"NOT ({fmt_term(t.operand)})"
    return repr(t)


def first_nonlinear(f) -> Optional[object]:
    """The first atom that leaves the linear fragment, or None."""
    if isinstance(f, (And, Or)):
        for x in f.items:
            bad = first_nonlinear(x)
            if bad is not None:
                return bad
        return None
    if isinstance(f, Not):
        return first_nonlinear(f.operand)
    if isinstance(f, Cmp) and not is_linear(f):
        return f
    return None
