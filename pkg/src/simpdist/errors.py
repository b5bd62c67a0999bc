"""Exception hierarchy shared across the package."""

from __future__ import annotations


class SimpDistError(Exception):
    """Base class for every error raised by this package."""


class ComplexError(SimpDistError):
    pass


class DuplicateVertexInSimplex(ComplexError):
    def __init__(self, simplex):
        self.simplex = tuple(simplex)
        super().__init__(f"duplicate vertex in simplex {list(self.simplex)}")


class RedundantMaximalSimplex(ComplexError):
    def __init__(self, simplex, container):
        self.simplex = tuple(simplex)
        self.container = tuple(container)
        super().__init__(
            f"simplex {list(self.simplex)} is a face of {list(self.container)}"
        )


class OrphanVertex(ComplexError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} lies in no simplex")


class EmptySimplex(ComplexError):
    pass


class NotASimplexOfAmbient(ComplexError):
    def __init__(self, simplex):
        self.simplex = tuple(simplex)
        super().__init__(f"{list(self.simplex)} is not a simplex of the ambient complex")


class EmptyGenerators(ComplexError):
    pass


class NotAProductComplex(ComplexError):
    pass


class NotASubcomplex(ComplexError):
    pass


class MapError(SimpDistError):
    pass


class NotSimplicial(MapError):
    def __init__(self, simplex, image):
        self.simplex = tuple(simplex)
        self.image = tuple(image)
        super().__init__(
            f"simplex {list(self.simplex)} maps to {list(self.image)}, not a simplex"
        )


class UnmappedVertex(MapError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} has no image (or its image is not a codomain vertex)")


class DomainMismatch(MapError):
    pass


class CodomainMismatch(MapError):
    pass


class CompositionMismatch(MapError):
    pass


class SubdivisionError(SimpDistError):
    pass


class LevelZero(SubdivisionError):
    pass


class InvalidRange(SubdivisionError):
    pass


class BudgetExceeded(SimpDistError):
    """A configured resource cap stopped a computation before it was decided."""


class SubdivisionBudgetExceeded(BudgetExceeded):
    def __init__(self, projected, cap):
        self.projected = projected
        self.cap = cap
        super().__init__(f"subdivision would have {projected} maximal simplices (cap {cap})")


class SearchBudgetExceeded(BudgetExceeded):
    def __init__(self, frontier, cap, what="search"):
        self.frontier = frontier
        self.cap = cap
        super().__init__(f"{what} exceeded {cap} states (frontier {frontier})")


class OracleCapExceeded(SimpDistError):
    pass


class ParseError(SimpDistError):
    def __init__(self, message, line=None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class CertificateError(SimpDistError):
    """Raised by the certificate verifier when a check fails."""
