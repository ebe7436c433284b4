"""Exception hierarchy shared by every layer of the package."""


class SgdopsError(Exception):
    """Base class for all errors raised by sgdops."""


class NotFullDimensional(SgdopsError):
    """The columns of the matrix do not span a full-dimensional cone."""


class NotPointed(SgdopsError):
    """The cone spanned by the columns contains a line."""


class LatticeNotFull(SgdopsError):
    """The columns generate a proper sublattice of Z^k."""


class WindowTooSmall(SgdopsError):
    """A caller-supplied window does not contain a certified region."""


class FullConeFace(SgdopsError):
    """The whole cone was used where a proper face is required."""


class MembershipBoundError(SgdopsError):
    """No conductor-style bound could be certified for a non-normal semigroup."""


class UnstableStratification(SgdopsError):
    """Doubling the window changed the set of strata found."""


class ContainmentViolation(SgdopsError):
    """An expected ideal containment failed; this indicates an internal bug."""


class ConfigError(SgdopsError):
    """A ring configuration file could not be parsed."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class ParseError(SgdopsError):
    """A polynomial expression could not be parsed."""
