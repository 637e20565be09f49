"""Exception hierarchy shared by every module."""


class LcscError(Exception):
    """Base class for library errors."""


class NotComposable(LcscError):
    pass


class BeyondHorizon(LcscError):
    """A product exists in the ambient category but falls outside the truncation."""


class DomainError(LcscError):
    pass


class NoJoin(LcscError):
    pass


class ValidationError(LcscError):
    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class NoFactorization(LcscError):
    pass


class TooLarge(LcscError):
    pass


class PreconditionUnverified(LcscError):
    pass


class ParseError(LcscError):
    def __init__(self, message, line=None, column=None, path=None):
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"col {column}")
        prefix = (":".join(where) + ": ") if where else ""
        super().__init__(prefix + message)
        self.line = line
        self.column = column
        self.path = path


class HorizonError(LcscError):
    pass


class UnknownProperty(LcscError):
    pass


class BadParams(LcscError):
    pass
