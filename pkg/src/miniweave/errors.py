"""Exception hierarchy shared by every stage of the pipeline."""


class MiniweaveError(Exception):
    """Base class; carries an optional file name and line number."""

    def __init__(self, message, filename=None, line=None):
        super().__init__(message)
        self.message = message
        self.filename = filename
        self.line = line

    def __str__(self):
        where = ""
        if self.filename is not None:
            where = str(self.filename)
            if self.line is not None:
                where += f":{self.line}"
            where += ": "
        elif self.line is not None:
            where = f"line {self.line}: "
        return where + self.message


class ParseError(MiniweaveError):
    pass


class UnterminatedDirective(ParseError):
    pass


class MalformedDirective(ParseError):
    pass


class UnterminatedString(ParseError):
    pass


class UnterminatedComment(ParseError):
    pass


class MissingInclude(MiniweaveError):
    pass


class IncludeCycle(MiniweaveError):
    pass


class WindowExceeded(MiniweaveError):
    pass


class RefFormatError(ParseError):
    pass


class EntryBeforeSpread(RefFormatError):
    pass


class NonMonotoneSpreadNumbers(RefFormatError):
    pass


class UnparseableEntry(RefFormatError):
    pass


class MalformedMarkup(MiniweaveError):
    pass


class SrefMismatch(MiniweaveError):
    pass


class TooLarge(MiniweaveError):
    pass
