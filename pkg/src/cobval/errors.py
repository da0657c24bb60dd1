"""Exception hierarchy shared by every pipeline stage."""


class CobvalError(Exception):
    """Base class for all toolkit errors."""


class Diagnostic(CobvalError):
    """A located front-end error, printable as ``file:line:col: message``."""

    def __init__(self, message, line=0, col=0, filename="<source>"):
        super().__init__(message)
        self.message = message
        self.line = line
        self.col = col
        self.filename = filename

    def __str__(self):
        return f"{self.filename}:{self.line}:{self.col}: {self.message}"


class CobolSyntaxError(Diagnostic):
    def __init__(self, line, col, expected, found=None, filename="<source>"):
        msg = f"expected {expected}"
        if found is not None:
            msg += f", found {found!r}"
        super().__init__(msg, line, col, filename)
        self.expected = expected
        self.found = found


class UnknownIdentifier(Diagnostic):
    def __init__(self, name, line, col=0, filename="<source>"):
        super().__init__(f"unknown identifier {name}", line, col, filename)
        self.name = name


class UnsupportedConstruct(Diagnostic):
    def __init__(self, keyword, line, col=0, filename="<source>"):
        super().__init__(f"unsupported construct {keyword}", line, col, filename)
        self.keyword = keyword


class MalformedPicture(CobvalError):
    pass


class UnknownParagraph(CobvalError):
    pass


class RecursivePerform(CobvalError):
    def __init__(self, cycle):
        super().__init__("recursive PERFORM: " + " -> ".join(cycle))
        self.cycle = list(cycle)


class PathBudgetExceeded(CobvalError):
    pass


class NonLinearUnsupported(CobvalError):
    pass


class UnsupportedAtom(CobvalError):
    pass


class MissingSymbol(CobvalError):
    pass


class MockUnderflow(CobvalError):
    def __init__(self, call_id, occurrence):
        super().__init__(f"mock queue empty for call {call_id} occurrence {occurrence}")
        self.call_id = call_id
        self.occurrence = occurrence


class InfiniteLoopTrap(CobvalError):
    pass


class NoAnchor(CobvalError):
    pass


class SlotArityMismatch(CobvalError):
    pass


class OccurrenceGap(CobvalError):
    pass


class SchemaViolation(CobvalError):
    pass


class UnknownProfile(CobvalError):
    pass


class AdapterProtocolError(CobvalError):
    pass


class PipelineError(CobvalError):
    def __init__(self, stage, cause):
        super().__init__(f"stage {stage} failed: {cause}")
        self.stage = stage
        self.cause = cause
