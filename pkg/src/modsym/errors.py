"""Exception hierarchy shared by all modsym modules.

MathPreconditionError covers violated mathematical preconditions (the CLI
maps these to exit code 2); plain usage problems stay ValueError/OSError.
InternalSearchError marks situations the theory says cannot happen, so a
raise means a bug, never bad input.
"""


class MathPreconditionError(ValueError):
    """A documented mathematical precondition does not hold."""


class DimensionError(MathPreconditionError):
    """Operands have incompatible or unsupported dimensions."""


class DegenerateInputError(MathPreconditionError):
    """Zero vector / zero determinant where a nondegenerate object is required."""


class RankError(MathPreconditionError):
    """Linearly dependent input where independence is required."""


class IsotropyError(MathPreconditionError):
    """Columns violate the symplectic zero/nonzero pairing pattern."""

    def __init__(self, i, j, value):
        self.pair = (i, j)
        self.value = value
        super().__init__(
            "isotropy pattern violated at column pair (%d, %d): pairing = %s"
            % (i, j, value))


class GenericityError(MathPreconditionError):
    """The expansion point pairs to zero with some column."""


class CycleError(MathPreconditionError):
    """A sharbly chain fails the cycle check mod Gamma."""

    def __init__(self, unmatched):
        self.unmatched = list(unmatched)
        super().__init__(
            "chain is not a cycle mod Gamma; unmatched boundary faces: %s"
            % (self.unmatched,))


class InternalSearchError(RuntimeError):
    """A search the underlying theorems guarantee to succeed came up empty."""
