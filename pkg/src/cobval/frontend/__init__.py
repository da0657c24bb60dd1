"""COBOL subset front end: parsing, PIC typing and paragraph I/O analysis."""

from ..pic import PicType, resolve_pic
from .ast import DataItem, ProgramAst
from .parser import parse_program
from .printer import pretty_print


def list_io_variables(ast: ProgramAst, paragraph: str):
    """Return ``(inputs, outputs)`` for one paragraph.

    Inputs are read before any write along some path of the lowered CFG;
    outputs are written along some path.  Resource status variables are
    excluded from both.
    """
    from ..ir import io_variables, lower

    return io_variables(lower(ast), paragraph)


__all__ = ["DataItem", "PicType", "ProgramAst", "list_io_variables", "parse_program",
           "pretty_print", "resolve_pic"]
