class DblcatError(Exception):
    pass


class DuplicateLabel(DblcatError):
    pass


class BoundaryMismatch(DblcatError):
    pass


class UnresolvableUniverse(DblcatError):
    pass


class EnumerationUnsupported(DblcatError):
    pass


class MismatchedTight(DblcatError):
    pass


class NotInvertible(DblcatError):
    pass


class MissingStructure(DblcatError):
    pass


class MissingCompanion(DblcatError):
    pass


class LevelUnavailable(DblcatError):
    pass


class NotLooselyStrong(DblcatError):
    pass


class NotCommutative(DblcatError):
    pass


class InvalidCategory(DblcatError):
    pass


class MissingCoequalizers(DblcatError):
    pass


class BoundaryError(DblcatError):
    """A cell expression failed to boundary-check; ``path`` locates the node."""

    def __init__(self, message, path=()):
        self.path = tuple(path)
        where = "/".join(str(p) for p in self.path) or "<root>"
        super().__init__(f"{message} at {where}")


class ParseError(DblcatError):
    def __init__(self, message, line=0, column=0):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


class SemanticError(DblcatError):
    pass


class ConfigError(DblcatError):
    pass
