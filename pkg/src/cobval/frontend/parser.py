"""Recursive-descent parser for the free-format COBOL subset (grammar in docs/grammar.md)."""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import CobolSyntaxError, MalformedPicture, UnknownIdentifier, UnsupportedConstruct
from ..pic import resolve_pic
from . import ast as A
from .lexer import EOF, EXEC, NUM, PERIOD, PICSTR, PUNCT, STR, WORD, tokenize

STATEMENT_VERBS = {
    "MOVE", "COMPUTE", "ADD", "SUBTRACT", "MULTIPLY", "DIVIDE", "IF", "EVALUATE", "PERFORM",
    "CALL", "READ", "WRITE", "DISPLAY", "CONTINUE", "STOP", "GOBACK",
}
UNSUPPORTED_VERBS = {
    "GO", "GOTO", "INITIALIZE", "STRING", "UNSTRING", "INSPECT", "SET", "ACCEPT", "OPEN",
    "CLOSE", "EXIT", "SEARCH", "SORT", "MERGE", "ALTER", "REWRITE", "DELETE", "START",
    "ENTRY", "NEXT", "RETURN", "RELEASE", "CANCEL", "COPY", "REPLACE",
}
UNSUPPORTED_CLAUSES = {
    "VALUE", "VALUES", "REDEFINES", "OCCURS", "USAGE", "COMP", "COMP-3", "COMPUTATIONAL",
    "COMPUTATIONAL-3", "BINARY", "PACKED-DECIMAL", "JUSTIFIED", "JUST", "BLANK", "SIGN",
    "SYNC", "SYNCHRONIZED", "INDEXED", "RENAMES", "EXTERNAL", "GLOBAL", "FILLER",
}
FIGURATIVES = {"ZERO": "ZERO", "ZEROS": "ZERO", "ZEROES": "ZERO", "SPACE": "SPACE", "SPACES": "SPACE"}
UNSUPPORTED_FIGURATIVES = {"HIGH-VALUE", "HIGH-VALUES", "LOW-VALUE", "LOW-VALUES", "QUOTE", "QUOTES", "ALL", "NULL", "NULLS"}
SCOPE_ENDERS = {"END-IF", "END-EVALUATE", "END-PERFORM", "ELSE", "WHEN", "END-READ", "END-WRITE", "END-CALL"}
GENERIC_INTERFACES = {"CICS"}
HOST_VAR = re.compile(r":([A-Za-z][A-Za-z0-9-]*)")
SQL_VERBS_SUPPORTED = {"SELECT", "INSERT", "UPDATE", "DELETE"}


class Parser:
    def __init__(self, source, filename="<source>"):
        self.filename = filename
        self.data_names = set()  # a declared data name followed by '.' ends a statement, never opens a paragraph
        self.toks = tokenize(source, filename)
        self.pos = 0

    # -- token helpers --------------------------------------------------

    @property
    def tok(self):
        return self.toks[self.pos]

    def peek(self, k=1):
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def advance(self):
        t = self.toks[self.pos]
        if t.kind != EOF:
            self.pos += 1
        return t

    def error(self, expected, tok=None):
        tok = tok or self.tok
        return CobolSyntaxError(tok.line, tok.col, expected, tok.value or tok.kind, self.filename)

    def unsupported(self, keyword, tok=None):
        tok = tok or self.tok
        return UnsupportedConstruct(keyword, tok.line, tok.col, self.filename)

    def expect_word(self, *words):
        if not self.tok.is_word(*words):
            raise self.error(" or ".join(words) if words else "identifier")
        return self.advance()

    def accept_word(self, *words):
        if self.tok.is_word(*words):
            return self.advance()
        return None

    def expect_punct(self, p):
        if not (self.tok.kind == PUNCT and self.tok.value == p):
            raise self.error(repr(p))
        return self.advance()

    def accept_punct(self, p):
        if self.tok.kind == PUNCT and self.tok.value == p:
            return self.advance()
        return None

    def expect_period(self):
        if self.tok.kind != PERIOD:
            raise self.error("'.'")
        return self.advance()

    def identifier(self):
        t = self.tok
        if t.kind != WORD:
            raise self.error("identifier")
        return self.advance().value

    # -- program --------------------------------------------------------

    def parse(self):
        self.expect_word("IDENTIFICATION", "ID")
        self.expect_word("DIVISION")
        self.expect_period()
        self.expect_word("PROGRAM-ID")
        self.expect_period()
        if self.tok.kind == STR:
            program_id = self.advance().value.upper()
        else:
            program_id = self.identifier()
        self.expect_period()
        while self.tok.kind == WORD and self.tok.value in ("AUTHOR", "INSTALLATION", "DATE-WRITTEN"):
            raise self.unsupported(self.tok.value)
        if self.accept_word("ENVIRONMENT"):
            self.expect_word("DIVISION")
            self.expect_period()
            if not self.tok.is_word("DATA", "PROCEDURE"):
                raise self.unsupported(self.tok.value or "ENVIRONMENT entry")
        working, linkage, files, sqlca = [], [], [], False
        if self.accept_word("DATA"):
            self.expect_word("DIVISION")
            self.expect_period()
            while self.tok.is_word("FILE", "WORKING-STORAGE", "LINKAGE"):
                section = self.advance().value
                self.expect_word("SECTION")
                self.expect_period()
                if section == "FILE":
                    files.extend(self.file_section())
                else:
                    items, inc = self.data_entries()
                    sqlca = sqlca or inc
                    (working if section == "WORKING-STORAGE" else linkage).extend(items)
        for top in working + linkage + [f.record for f in files]:
            self.data_names.update(it.name for it in top.walk())
        self.expect_word("PROCEDURE")
        self.expect_word("DIVISION")
        using = []
        if self.accept_word("USING"):
            while self.tok.kind == WORD:
                using.append(self.identifier())
        self.expect_period()
        paragraphs = self.paragraphs()
        if self.tok.kind != EOF:
            raise self.error("end of program")
        prog = A.ProgramAst(program_id, tuple(working), tuple(paragraphs), tuple(linkage),
                            tuple(files), sqlca, tuple(using))
        Resolver(prog, self.filename).check()
        return prog

    # -- data division --------------------------------------------------

    def file_section(self):
        files = []
        while self.tok.is_word("FD", "SD"):
            fd = self.advance()
            if fd.value == "SD":
                raise self.unsupported("SD", fd)
            name = self.identifier()
            self.expect_period()
            items, inc = self.data_entries()
            if inc or len(items) != 1:
                raise self.error("exactly one 01 record under FD", fd)
            files.append(A.FileDesc(name, items[0], fd.line))
        return files

    def data_entries(self):
        """Parse level-numbered entries until the next section/division keyword."""
        flat = []
        sqlca = False
        while True:
            t = self.tok
            if t.kind == EXEC:
                words = t.value.upper().split()
                if words[:3] == ["SQL", "INCLUDE", "SQLCA"] and len(words) == 3:
                    self.advance()
                    self.accept_period()
                    sqlca = True
                    continue
                raise self.unsupported("EXEC " + " ".join(words[:2]))
            if t.kind != NUM:
                break
            level = int(self.advance().value)
            if level == 88:
                raise self.unsupported("88-level", t)
            if level == 66:
                raise self.unsupported("66-level", t)
            if not (1 <= level <= 49 or level == 77):
                raise self.error("level number 01-49 or 77", t)
            if self.tok.is_word("FILLER"):
                raise self.unsupported("FILLER")
            name_tok = self.tok
            name = self.identifier()
            pic = None
            while self.tok.kind != PERIOD:
                if self.tok.is_word("PIC", "PICTURE"):
                    self.advance()
                    ptok = self.tok
                    if ptok.kind != PICSTR:
                        raise self.error("picture string")
                    self.advance()
                    try:
                        pic = resolve_pic(ptok.value)
                    except MalformedPicture as exc:
                        raise CobolSyntaxError(ptok.line, ptok.col, "well-formed picture", ptok.value,
                                               self.filename) from exc
                    if self.tok.is_word("COMP", "COMP-3", "COMPUTATIONAL", "COMPUTATIONAL-3", "BINARY"):
                        raise self.unsupported(self.tok.value)
                elif self.tok.kind == WORD and self.tok.value in UNSUPPORTED_CLAUSES:
                    raise self.unsupported(self.tok.value)
                else:
                    raise self.error("PIC clause or '.'")
            self.expect_period()
            flat.append((level, name, pic, name_tok.line))
        return build_items(flat, self), sqlca

    def accept_period(self):
        if self.tok.kind == PERIOD:
            return self.advance()
        return None

    # -- procedure division ---------------------------------------------

    def paragraphs(self):
        paras = []
        while self.tok.kind != EOF:
            t = self.tok
            if t.kind != WORD:
                raise self.error("paragraph name")
            if self.peek().is_word("SECTION"):
                raise self.unsupported("SECTION", self.peek())
            if t.value in STATEMENT_VERBS or t.value in UNSUPPORTED_VERBS or self.peek().kind != PERIOD:
                raise self.error("paragraph name")
            self.advance()
            self.expect_period()
            stmts = []
            while not self.at_paragraph_header():
                block = self.statements(set())
                stmts.extend(block)
                if self.tok.kind == PERIOD:
                    self.advance()
                elif not self.at_paragraph_header():
                    raise self.error("statement")
            paras.append(A.Paragraph(t.value, tuple(stmts), t.line))
        return paras

    def at_paragraph_header(self):
        t = self.tok
        if t.kind == EOF:
            return True
        return (t.kind == WORD and t.value not in STATEMENT_VERBS and t.value not in UNSUPPORTED_VERBS
                and t.value not in self.data_names and self.peek().kind == PERIOD)

    def statements(self, stops):
        """Statements up to a scope word in ``stops``, a period, or a paragraph header."""
        out = []
        while True:
            t = self.tok
            if t.kind in (PERIOD, EOF):
                return out
            if t.kind == WORD and (t.value in stops or t.value in SCOPE_ENDERS):
                return out
            if self.at_paragraph_header():
                return out
            out.append(self.statement())

    def statement(self):
        t = self.tok
        if t.kind == EXEC:
            return self.exec_statement()
        if t.kind != WORD:
            raise self.error("statement")
        v = t.value
        if v in UNSUPPORTED_VERBS:
            raise self.unsupported(v)
        handler = getattr(self, "stmt_" + v.replace("-", "_").lower(), None)
        if handler is None:
            raise self.error("statement")
        self.advance()
        return handler(t.line)

    def stmt_move(self, line):
        src = self.operand()
        self.expect_word("TO")
        targets = self.receivers()
        return A.Move(src, targets, line)

    def stmt_compute(self, line):
        targets = self.receivers(stop_punct="=")
        if self.tok.is_word("ROUNDED"):
            raise self.unsupported("ROUNDED")
        if not self.accept_punct("="):
            self.expect_word("EQUAL")
        expr = self.expr()
        self.no_size_error()
        self.accept_word("END-COMPUTE")
        return A.Compute(targets, expr, line)

    def no_size_error(self):
        if self.tok.is_word("ON", "SIZE", "NOT"):
            if self.tok.value != "NOT" or self.peek().is_word("ON", "SIZE"):
                raise self.unsupported("ON SIZE ERROR")

    def _arith(self, verb, keywords, line):
        sources = [self.operand()]
        while not self.tok.is_word(*keywords):
            if self.tok.kind in (PERIOD, EOF):
                raise self.error(" or ".join(keywords))
            self.accept_punct(",")
            sources.append(self.operand())
        keyword = self.advance().value
        operands = [self.operand()]
        while self.tok.kind in (WORD, NUM, STR) and not self.tok.is_word("GIVING") and self._starts_operand():
            operands.append(self.operand())
        giving = ()
        if self.accept_word("GIVING"):
            giving = self.receivers()
        if self.tok.is_word("ROUNDED", "REMAINDER"):
            raise self.unsupported(self.tok.value)
        self.no_size_error()
        self.accept_word("END-" + verb)
        if not giving:
            for op in operands:
                if not isinstance(op, A.Ref):
                    raise self.error("receiving identifier")
        return A.Arith(verb, tuple(sources), keyword, tuple(operands), tuple(giving), line)

    def _starts_operand(self):
        t = self.tok
        if t.kind in (NUM, STR):
            return True
        return (t.kind == WORD and t.value not in STATEMENT_VERBS and t.value not in SCOPE_ENDERS
                and t.value not in UNSUPPORTED_VERBS and t.value not in ("GIVING", "ON", "NOT", "ROUNDED")
                and not t.value.startswith("END-") and not self.at_paragraph_header())

    def stmt_add(self, line):
        return self._arith("ADD", ("TO", "GIVING"), line) if not self._bare_giving() else self._add_giving(line)

    def _bare_giving(self):
        # ADD a b GIVING c (no TO)
        k = self.pos
        while self.toks[k].kind in (WORD, NUM, STR, PUNCT) and not self.toks[k].is_word("TO", "GIVING"):
            if self.toks[k].kind == PUNCT and self.toks[k].value not in (",", "-", "+"):
                break
            k += 1
        return self.toks[k].is_word("GIVING")

    def _add_giving(self, line):
        sources = [self.operand()]
        while not self.tok.is_word("GIVING"):
            self.accept_punct(",")
            sources.append(self.operand())
        self.advance()
        giving = self.receivers()
        self.no_size_error()
        self.accept_word("END-ADD")
        return A.Arith("ADD", tuple(sources), "GIVING", (), tuple(giving), line)

    def stmt_subtract(self, line):
        return self._arith("SUBTRACT", ("FROM",), line)

    def stmt_multiply(self, line):
        return self._arith("MULTIPLY", ("BY",), line)

    def stmt_divide(self, line):
        node = self._arith("DIVIDE", ("INTO", "BY"), line)
        if node.keyword == "BY" and not node.giving:
            raise self.error("GIVING after DIVIDE ... BY")
        return node

    def receivers(self, stop_punct=None):
        names = [self.identifier()]
        while self.tok.kind == WORD and self._starts_operand() and not self.tok.is_word("ROUNDED"):
            names.append(self.identifier())
            self.accept_punct(",")
        return tuple(names)

    def stmt_if(self, line):
        cond = self.condition()
        self.accept_word("THEN")
        then = self.statements({"ELSE", "END-IF"})
        orelse = ()
        if self.accept_word("ELSE"):
            orelse = tuple(self.statements({"END-IF"}))
        self.accept_word("END-IF")
        return A.If(cond, tuple(then), tuple(orelse), line)

    def stmt_evaluate(self, line):
        subject = None
        if not self.accept_word("TRUE"):
            subject = self.expr()
        whens = []
        other = None
        while self.accept_word("WHEN"):
            if self.accept_word("OTHER"):
                other = tuple(self.statements({"WHEN", "END-EVALUATE"}))
                break
            match = self.condition() if subject is None else self.expr()
            if self.tok.is_word("THRU", "THROUGH", "ALSO"):
                raise self.unsupported(self.tok.value)
            if self.tok.is_word("WHEN"):
                raise self.unsupported("stacked WHEN")
            body = self.statements({"WHEN", "END-EVALUATE"})
            whens.append(A.When(match, tuple(body)))
        if not whens:
            raise self.error("WHEN")
        self.accept_word("END-EVALUATE")
        return A.Evaluate(subject, tuple(whens), other, line)

    def stmt_perform(self, line):
        target = None
        if self.tok.kind == WORD and self.tok.value not in ("UNTIL", "VARYING", "WITH", "TEST") \
                and not self.tok.is_word("TIMES"):
            target = self.identifier()
            if self.tok.is_word("THRU", "THROUGH"):
                raise self.unsupported("PERFORM THRU")
        test_before = True
        if self.accept_word("WITH"):
            self.expect_word("TEST")
            test_before = self.expect_word("BEFORE", "AFTER").value == "BEFORE"
        elif self.accept_word("TEST"):
            test_before = self.expect_word("BEFORE", "AFTER").value == "BEFORE"
        if self.peek().is_word("TIMES") or self.tok.is_word("FOREVER"):
            raise self.unsupported("PERFORM " + self.peek().value)
        if self.accept_word("UNTIL"):
            cond = self.condition()
            body = self._perform_body(target)
            return A.PerformUntil(cond, body, target, test_before, line)
        if self.accept_word("VARYING"):
            var = self.identifier()
            self.expect_word("FROM")
            start = self.operand()
            self.expect_word("BY")
            step = self.operand()
            self.expect_word("UNTIL")
            cond = self.condition()
            if self.tok.is_word("AFTER"):
                raise self.unsupported("PERFORM VARYING AFTER")
            body = self._perform_body(target)
            return A.PerformVarying(var, start, step, cond, body, target, test_before, line)
        if target is None:
            raise self.unsupported("inline PERFORM without UNTIL")
        if not test_before:
            raise self.error("UNTIL")
        return A.Perform(target, line)

    def _perform_body(self, target):
        if target is not None:
            return ()
        body = self.statements({"END-PERFORM"})
        self.expect_word("END-PERFORM")
        return tuple(body)

    def stmt_call(self, line):
        if self.tok.kind == STR:
            prog = A.StrLit(self.advance().value)
        else:
            prog = A.Ref(self.identifier())
        using = []
        if self.accept_word("USING"):
            while self.tok.kind == WORD and self._starts_operand():
                if self.tok.is_word("BY"):
                    raise self.unsupported("BY CONTENT/VALUE")
                using.append(self.identifier())
                self.accept_punct(",")
        if self.tok.is_word("RETURNING", "ON", "EXCEPTION", "OVERFLOW"):
            raise self.unsupported(self.tok.value)
        self.accept_word("END-CALL")
        return A.Call(prog, tuple(using), line)

    def stmt_read(self, line):
        file = self.identifier()
        self.accept_word("RECORD")
        into = None
        if self.accept_word("INTO"):
            into = self.identifier()
        if self.tok.is_word("AT", "END", "INVALID", "KEY"):
            raise self.unsupported("READ " + self.tok.value)
        self.accept_word("END-READ")
        return A.Read(file, into, line)

    def stmt_write(self, line):
        record = self.identifier()
        source = None
        if self.accept_word("FROM"):
            source = self.identifier()
        if self.tok.is_word("AFTER", "BEFORE", "INVALID", "AT"):
            raise self.unsupported("WRITE " + self.tok.value)
        self.accept_word("END-WRITE")
        return A.Write(record, source, line)

    def stmt_display(self, line):
        args = [self.operand()]
        while self._starts_operand() and not self.tok.is_word("UPON", "WITH"):
            args.append(self.operand())
        if self.tok.is_word("UPON", "WITH"):
            raise self.unsupported("DISPLAY " + self.tok.value)
        return A.Display(tuple(args), line)

    def stmt_continue(self, line):
        return A.Continue(line)

    def stmt_stop(self, line):
        self.expect_word("RUN")
        return A.Stop("STOP RUN", line)

    def stmt_goback(self, line):
        return A.Stop("GOBACK", line)

    # -- EXEC blocks ----------------------------------------------------

    def exec_statement(self):
        t = self.advance()
        words = t.value.split(None, 1)
        if not words:
            raise self.error("EXEC interface", t)
        interface = words[0].upper()
        body = words[1] if len(words) > 1 else ""
        if interface == "SQL":
            verb = body.split(None, 1)[0].upper() if body else ""
            if verb not in SQL_VERBS_SUPPORTED:
                raise self.unsupported("EXEC SQL " + verb, t)
            hosts = tuple(m.group(1).upper() for m in HOST_VAR.finditer(body))
            return A.ExecSql(body, hosts, t.line)
        if interface in GENERIC_INTERFACES:
            verb, options = self.generic_options(body, t)
            return A.ExecGeneric(interface, verb, options, t.line)
        raise self.unsupported("EXEC " + interface, t)

    def generic_options(self, body, t):
        sub = tokenize(body, self.filename)
        i = 0
        verb_words = []
        options = []
        while sub[i].kind != EOF:
            tok = sub[i]
            if tok.kind != WORD:
                raise CobolSyntaxError(t.line, t.col, "option name", tok.value, self.filename)
            has_value = sub[i + 1].kind == PUNCT and sub[i + 1].value == "("
            if not has_value:
                if options:
                    options.append((tok.value, None))
                else:
                    verb_words.append(tok.value)
                i += 1
                continue
            val = sub[i + 2]
            if not (sub[i + 3].kind == PUNCT and sub[i + 3].value == ")"):
                raise CobolSyntaxError(t.line, t.col, "')'", sub[i + 3].value, self.filename)
            if val.kind == STR:
                expr = A.StrLit(val.value)
            elif val.kind == NUM:
                expr = A.NumLit(Fraction(val.value))
            elif val.kind == WORD:
                expr = A.Ref(val.value)
            else:
                raise CobolSyntaxError(t.line, t.col, "option value", val.value, self.filename)
            options.append((tok.value, expr))
            i += 4
        if not verb_words:
            raise CobolSyntaxError(t.line, t.col, "command verb", body, self.filename)
        return " ".join(verb_words), tuple(options)

    # -- conditions and expressions -------------------------------------

    def condition(self):
        left = self.and_cond()
        while self.tok.is_word("OR"):
            self.advance()
            left = A.BoolOp("OR", left, self.and_cond())
        return left

    def and_cond(self):
        left = self.not_cond()
        while self.tok.is_word("AND"):
            self.advance()
            left = A.BoolOp("AND", left, self.not_cond())
        return left

    def not_cond(self):
        if self.tok.is_word("NOT"):
            self.advance()
            return A.NotCond(self.not_cond())
        if self.tok.kind == PUNCT and self.tok.value == "(":
            save = self.pos
            self.advance()
            try:
                inner = self.condition()
                self.expect_punct(")")
                if not self._at_relop() and not (self.tok.kind == PUNCT and self.tok.value in "+-*/"):
                    return inner
            except CobolSyntaxError:
                pass
            self.pos = save
        return self.comparison()

    def _at_relop(self):
        t = self.tok
        if t.kind == PUNCT and t.value in ("=", "<>", "<", ">", "<=", ">="):
            return True
        return t.is_word("IS", "EQUAL", "GREATER", "LESS") or (
            t.is_word("NOT") and (self.peek().kind == PUNCT or self.peek().is_word("EQUAL", "GREATER", "LESS")))

    def comparison(self):
        left = self.expr()
        op = self.relop()
        right = self.expr()
        if self.tok.is_word("OR", "AND") and self._abbreviated():
            raise self.unsupported("abbreviated combined condition")
        return A.Compare(op, left, right)

    def _abbreviated(self):
        nxt = self.peek()
        if nxt.kind in (NUM, STR):
            after = self.peek(2)
            return not (after.kind == PUNCT and after.value in ("=", "<>", "<", ">", "<=", ">=", "+", "-", "*", "/")) \
                and not after.is_word("IS", "EQUAL", "GREATER", "LESS", "NOT")
        return False

    def relop(self):
        self.accept_word("IS")
        negate = bool(self.accept_word("NOT"))
        t = self.tok
        if t.kind == PUNCT and t.value in ("=", "<>", "<", ">", "<=", ">="):
            op = self.advance().value
        elif self.accept_word("EQUAL"):
            self.accept_word("TO")
            op = "="
        elif self.accept_word("GREATER"):
            self.accept_word("THAN")
            op = ">"
            if self.tok.is_word("OR") and self.peek().is_word("EQUAL"):
                self.advance(), self.advance()
                self.accept_word("TO")
                op = ">="
        elif self.accept_word("LESS"):
            self.accept_word("THAN")
            op = "<"
            if self.tok.is_word("OR") and self.peek().is_word("EQUAL"):
                self.advance(), self.advance()
                self.accept_word("TO")
                op = "<="
        else:
            raise self.error("relational operator")
        if negate:
            op = NEGATED[op]
        return op

    def expr(self):
        left = self.term()
        while self.tok.kind == PUNCT and self.tok.value in ("+", "-"):
            op = self.advance().value
            left = A.BinOp(op, left, self.term())
        return left

    def term(self):
        left = self.factor()
        while self.tok.kind == PUNCT and self.tok.value in ("*", "/"):
            op = self.advance().value
            left = A.BinOp(op, left, self.factor())
        return left

    def factor(self):
        t = self.tok
        if t.kind == PUNCT and t.value == "-":
            self.advance()
            inner = self.factor()
            if isinstance(inner, A.NumLit):
                return A.NumLit(-inner.value)
            return A.Neg(inner)
        if t.kind == PUNCT and t.value == "+":
            self.advance()
            return self.factor()
        if t.kind == PUNCT and t.value == "(":
            self.advance()
            e = self.expr()
            self.expect_punct(")")
            return e
        return self.operand()

    def operand(self):
        t = self.tok
        if t.kind == NUM:
            self.advance()
            return A.NumLit(Fraction(t.value))
        if t.kind == PUNCT and t.value in ("-", "+") and self.peek().kind == NUM:
            self.advance()
            v = Fraction(self.advance().value)
            return A.NumLit(-v if t.value == "-" else v)
        if t.kind == STR:
            self.advance()
            return A.StrLit(t.value)
        if t.kind == WORD:
            if t.value in FIGURATIVES:
                self.advance()
                return A.Figurative(FIGURATIVES[t.value])
            if t.value in UNSUPPORTED_FIGURATIVES:
                raise self.unsupported(t.value)
            if self.peek().kind == PUNCT and self.peek().value == "(":
                raise self.unsupported("subscript or reference modification", self.peek())
            if self.peek().is_word("OF", "IN"):
                raise self.unsupported("qualified name", self.peek())
            self.advance()
            return A.Ref(t.value)
        raise self.error("operand")


NEGATED = {"=": "<>", "<>": "=", ">": "<=", "<": ">=", ">=": "<", "<=": ">"}


def build_items(flat, parser):
    """Turn (level, name, pic, line) rows into a DataItem forest."""
    roots = []
    # stack of (level, name, pic, line, children-list)
    stack = []

    def close(entry):
        level, name, pic, line, kids = entry
        if pic is None and not kids:
            raise CobolSyntaxError(line, 1, f"PIC clause or subordinate items for {name}",
                                   filename=parser.filename)
        if pic is not None and kids:
            raise CobolSyntaxError(line, 1, f"no subordinate items under elementary {name}",
                                   filename=parser.filename)
        return A.DataItem(name, level, pic, tuple(kids), line)

    for level, name, pic, line in flat:
        if level in (1, 77):
            while stack:
                done = close(stack.pop())
                (stack[-1][4] if stack else roots).append(done)
            stack.append((level, name, pic, line, []))
            continue
        if not stack:
            raise CobolSyntaxError(line, 1, "01 or 77 before subordinate level", filename=parser.filename)
        while stack and stack[-1][0] >= level:
            done = close(stack.pop())
            (stack[-1][4] if stack else roots).append(done)
        if not stack or stack[-1][0] == 77:
            raise CobolSyntaxError(line, 1, "enclosing group item", filename=parser.filename)
        stack.append((level, name, pic, line, []))
    while stack:
        done = close(stack.pop())
        (stack[-1][4] if stack else roots).append(done)
    return roots


class Resolver:
    """Post-parse checks: declared names, paragraph targets, record usage."""

    def __init__(self, prog, filename):
        self.prog = prog
        self.filename = filename
        self.items = {}
        for it in prog.all_items():
            if it.name in self.items:
                raise CobolSyntaxError(it.line, 1, f"unique data name (duplicate {it.name})",
                                       filename=filename)
            self.items[it.name] = it
        self.leaves = prog.data_dictionary()
        self.paragraphs = {}
        for p in prog.paragraphs:
            if p.name in self.paragraphs:
                raise CobolSyntaxError(p.line, 1, f"unique paragraph name (duplicate {p.name})",
                                       filename=filename)
            if p.name in self.items:
                raise CobolSyntaxError(p.line, 1, f"paragraph name distinct from data names ({p.name})",
                                       filename=filename)
            self.paragraphs[p.name] = p
        self.files = {f.name: f for f in prog.files}

    def check(self):
        for name in self.prog.using:
            if name not in self.items:
                raise UnknownIdentifier(name, 0, 0, self.filename)
        for para in self.prog.paragraphs:
            for s in A.walk_statements(para.statements):
                self.statement(s)

    def leaf(self, name, line):
        if name not in self.leaves:
            if name in self.items:
                raise UnsupportedConstruct(f"group item reference {name}", line, 0, self.filename)
            raise UnknownIdentifier(name, line, 0, self.filename)

    def item(self, name, line):
        if name not in self.items and name not in self.leaves:
            raise UnknownIdentifier(name, line, 0, self.filename)

    def expr(self, e, line):
        if isinstance(e, A.Ref):
            self.leaf(e.name, line)
        elif isinstance(e, A.BinOp):
            self.expr(e.left, line)
            self.expr(e.right, line)
        elif isinstance(e, A.Neg):
            self.expr(e.operand, line)

    def cond(self, c, line):
        if isinstance(c, A.Compare):
            self.expr(c.left, line)
            self.expr(c.right, line)
        elif isinstance(c, A.BoolOp):
            self.cond(c.left, line)
            self.cond(c.right, line)
        elif isinstance(c, A.NotCond):
            self.cond(c.operand, line)

    def paragraph_target(self, name, line):
        if name not in self.paragraphs:
            raise UnknownIdentifier(name, line, 0, self.filename)

    def statement(self, s):
        line = s.line
        if isinstance(s, A.Move):
            self.expr(s.source, line)
            for t in s.targets:
                self.leaf(t, line)
        elif isinstance(s, A.Compute):
            self.expr(s.expr, line)
            for t in s.targets:
                self.leaf(t, line)
        elif isinstance(s, A.Arith):
            for e in s.sources + s.operands:
                self.expr(e, line)
            for t in s.giving:
                self.leaf(t, line)
        elif isinstance(s, A.If):
            self.cond(s.cond, line)
        elif isinstance(s, A.Evaluate):
            if s.subject is not None:
                self.expr(s.subject, line)
            for w in s.whens:
                if s.subject is None:
                    self.cond(w.match, line)
                else:
                    self.expr(w.match, line)
        elif isinstance(s, A.Perform):
            self.paragraph_target(s.target, line)
        elif isinstance(s, A.PerformUntil):
            self.cond(s.cond, line)
            if s.target:
                self.paragraph_target(s.target, line)
        elif isinstance(s, A.PerformVarying):
            self.leaf(s.var, line)
            self.expr(s.start, line)
            self.expr(s.step, line)
            self.cond(s.until, line)
            if s.target:
                self.paragraph_target(s.target, line)
        elif isinstance(s, A.ExecSql):
            for h in s.host_vars:
                self.leaf(h, line)
            if not self.prog.sqlca:
                self.leaf("SQLCODE", line)
        elif isinstance(s, A.ExecGeneric):
            for _, val in s.options:
                if val is not None:
                    self.expr(val, line)
        elif isinstance(s, A.Call):
            self.expr(s.program, line)
            for u in s.using:
                self.item(u, line)
        elif isinstance(s, A.Read):
            if s.file not in self.files:
                raise UnknownIdentifier(s.file, line, 0, self.filename)
            if s.into:
                self.item(s.into, line)
        elif isinstance(s, A.Write):
            if self.prog.file_of_record(s.record) is None:
                raise UnknownIdentifier(s.record, line, 0, self.filename)
            if s.source:
                self.item(s.source, line)
        elif isinstance(s, A.Display):
            for a in s.args:
                self.expr(a, line)


def parse_program(source: str, filename="<source>") -> A.ProgramAst:
    return Parser(source, filename).parse()
