"""Exception hierarchy shared by the parsers, the normalizer and the verifier."""


class TruconcError(Exception):
    """Base class for every error raised by this package."""


class ParseError(TruconcError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class ContextError(TruconcError):
    """Ill-formed race / communication declarations."""


class UndefinedConstant(TruconcError):
    def __init__(self, name, pos=None):
        self.name = name
        self.pos = pos
        where = f" at {pos[0]}:{pos[1]}" if pos else ""
        super().__init__(f"undefined process constant {name!r}{where}")


class RecursionUnsupported(TruconcError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("recursive process definition: " + " -> ".join(self.cycle))


class MissingInvariant(TruconcError):
    def __init__(self, loop_text):
        self.loop_text = loop_text
        super().__init__(f"while loop has no invariant annotation: {loop_text}")


class UnsupportedConstruct(TruconcError):
    pass


class DenotationError(TruconcError):
    """The denotation could not be computed on a finite set of states."""
