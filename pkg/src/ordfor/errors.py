"""Exception hierarchy shared by every module of the package."""


class OrdForError(Exception):
    """Base class for all errors raised by ordfor."""


class MalformedInput(OrdForError, ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)


# forest axioms

class ForestError(OrdForError, ValueError):
    pass


class RankOutOfBounds(ForestError):
    pass


class CoverOrderViolation(ForestError):
    def __init__(self, cover):
        self.cover = tuple(cover)
        super().__init__(f"cover {self.cover} does not respect the total order")


class RedundantCover(ForestError):
    def __init__(self, cover):
        self.cover = tuple(cover)
        super().__init__(f"cover {self.cover} is implied by the other covers")


class IntervalViolation(ForestError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"lower set of element {witness} is not an interval")


# morphisms and rewriting

class BoundaryMismatch(OrdForError, ValueError):
    pass


class NotACocone(OrdForError, ValueError):
    pass


class NotUnary(OrdForError, ValueError):
    pass


class IntervalViolationAfterContraction(ForestError):
    def __init__(self, vertex, cause):
        self.vertex = vertex
        self.cause = cause
        super().__init__(f"contracting {vertex} broke the forest axioms: {cause}")


# linear shadow

class IndexMismatch(OrdForError, ValueError):
    pass


class InvalidSurjection(OrdForError, ValueError):
    pass


# linear algebra

class DimensionMismatch(OrdForError, ValueError):
    pass


class NotAComplex(OrdForError, ValueError):
    pass


class NotChainMap(OrdForError, ValueError):
    pass


# semisimplicial / presheaf data

class SimplicialIdentityViolation(OrdForError, ValueError):
    def __init__(self, n, i, j):
        self.n, self.i, self.j = n, i, j
        super().__init__(f"d_{i} d_{j} != d_{j - 1} d_{i} on degree {n}")


class FunctorLawViolation(OrdForError, ValueError):
    pass


class NotNatural(OrdForError, ValueError):
    pass


class NotACone(OrdForError, RuntimeError):
    pass


class UnknownCommand(OrdForError):
    pass
