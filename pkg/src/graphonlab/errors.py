"""Exception hierarchy.

Every error carries an ``exit_code`` so the CLI can map it without a lookup
table: 2 for parse/parameter problems, 3 for violated preconditions, 4 for
exceeded size caps.
"""


class GraphonLabError(Exception):
    exit_code = 2


class OutOfRange(GraphonLabError, ValueError):
    pass


class SelfLoop(GraphonLabError, ValueError):
    pass


class DegenerateGraph(GraphonLabError, ValueError):
    exit_code = 3


class NullGraph(DegenerateGraph):
    pass


class TooLarge(GraphonLabError, ValueError):
    exit_code = 4


class InfeasibleRegular(GraphonLabError, ValueError):
    pass


class BadProbability(GraphonLabError, ValueError):
    pass


class PatternTooLarge(TooLarge):
    pass


class TooManyBlocks(TooLarge):
    pass


class BadValue(GraphonLabError, ValueError):
    pass


class BadLengths(GraphonLabError, ValueError):
    pass


class UnequalBlocks(GraphonLabError, ValueError):
    exit_code = 3


class PreconditionViolated(GraphonLabError, ValueError):
    exit_code = 3


class EmptyInput(GraphonLabError, ValueError):
    exit_code = 3


class UnknownFamily(GraphonLabError, ValueError):
    pass


class CapExceeded(GraphonLabError, ValueError):
    exit_code = 4


class ParseError(GraphonLabError, ValueError):
    def __init__(self, message, line=None, path=None):
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + message)
        self.line = line
        self.path = path
