"""Typed AST for the supported COBOL subset.

Every node carries its source line; line numbers are excluded from equality so
that a pretty-printed and re-parsed program compares equal to the original.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from ..pic import PicType

# -- expressions ------------------------------------------------------------


@dataclass(frozen=True)
class NumLit:
    value: Fraction


@dataclass(frozen=True)
class StrLit:
    text: str


@dataclass(frozen=True)
class Figurative:
    name: str  # ZERO | SPACE


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


Expr = Union[NumLit, StrLit, Figurative, Ref, BinOp, Neg]

# -- conditions -------------------------------------------------------------


@dataclass(frozen=True)
class Compare:
    op: str  # = <> > < >= <=
    left: Expr
    right: Expr


@dataclass(frozen=True)
class BoolOp:
    op: str  # AND | OR
    left: "Cond"
    right: "Cond"


@dataclass(frozen=True)
class NotCond:
    operand: "Cond"


Cond = Union[Compare, BoolOp, NotCond]

# -- statements -------------------------------------------------------------


@dataclass(frozen=True)
class Move:
    source: Expr
    targets: tuple
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Compute:
    targets: tuple
    expr: Expr
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Arith:
    """ADD/SUBTRACT/MULTIPLY/DIVIDE.

    ``keyword`` is TO, FROM, BY or INTO; ``operands`` are the items after it.
    Without GIVING those operands are the receiving items.
    """

    verb: str
    sources: tuple
    keyword: str
    operands: tuple
    giving: tuple = ()
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class If:
    cond: Cond
    then: tuple
    orelse: tuple = ()
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class When:
    match: Union[Expr, Cond]
    body: tuple


@dataclass(frozen=True)
class Evaluate:
    subject: Optional[Expr]  # None means EVALUATE TRUE
    whens: tuple
    other: Optional[tuple] = None
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Perform:
    target: str
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class PerformUntil:
    cond: Cond
    body: tuple = ()
    target: Optional[str] = None
    test_before: bool = True
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class PerformVarying:
    var: str
    start: Expr
    step: Expr
    until: Cond
    body: tuple = ()
    target: Optional[str] = None
    test_before: bool = True
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ExecSql:
    text: str
    host_vars: tuple
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ExecGeneric:
    interface: str
    verb: str
    options: tuple  # ((name, Expr | None), ...)
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Call:
    program: Expr
    using: tuple
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Read:
    file: str
    into: Optional[str] = None
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Write:
    record: str
    source: Optional[str] = None
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Display:
    args: tuple
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Continue:
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Stop:
    kind: str  # STOP RUN | GOBACK
    line: int = field(default=0, compare=False)


Statement = Union[Move, Compute, Arith, If, Evaluate, Perform, PerformUntil, PerformVarying,
                  ExecSql, ExecGeneric, Call, Read, Write, Display, Continue, Stop]

# -- data and program -------------------------------------------------------


@dataclass(frozen=True)
class DataItem:
    name: str
    level: int
    pic: Optional[PicType] = None
    children: tuple = ()
    line: int = field(default=0, compare=False)

    @property
    def is_leaf(self):
        return self.pic is not None

    def leaves(self):
        if self.is_leaf:
            return [self]
        out = []
        for child in self.children:
            out.extend(child.leaves())
        return out

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass(frozen=True)
class FileDesc:
    name: str
    record: DataItem
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Paragraph:
    name: str
    statements: tuple
    line: int = field(default=0, compare=False)


SQLCODE_PIC = PicType("numeric", True, 9, 0)


@dataclass(frozen=True)
class ProgramAst:
    program_id: str
    working_storage: tuple
    paragraphs: tuple
    linkage: tuple = ()
    files: tuple = ()
    sqlca: bool = False
    using: tuple = ()

    def all_items(self):
        for top in self.working_storage + self.linkage + tuple(f.record for f in self.files):
            yield from top.walk()

    def item(self, name):
        for it in self.all_items():
            if it.name == name:
                return it
        raise KeyError(name)

    def data_dictionary(self):
        """Leaf name -> PicType, including SQLCODE when SQLCA is included."""
        table = {}
        if self.sqlca:
            table["SQLCODE"] = SQLCODE_PIC
        for it in self.all_items():
            if it.is_leaf:
                table[it.name] = it.pic
        return table

    def paragraph(self, name):
        for p in self.paragraphs:
            if p.name == name:
                return p
        raise KeyError(name)

    def file_of_record(self, record):
        for f in self.files:
            if f.record.name == record:
                return f
        return None


def walk_statements(stmts):
    """Yield every statement, depth first, including nested bodies."""
    for s in stmts:
        yield s
        if isinstance(s, If):
            yield from walk_statements(s.then)
            yield from walk_statements(s.orelse)
        elif isinstance(s, Evaluate):
            for w in s.whens:
                yield from walk_statements(w.body)
            if s.other:
                yield from walk_statements(s.other)
        elif isinstance(s, (PerformUntil, PerformVarying)):
            yield from walk_statements(s.body)
