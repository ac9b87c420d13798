"""Exception hierarchy shared by all gonlab modules."""


class GonlabError(Exception):
    """Base class for every error raised by gonlab."""


class MalformedSpec(GonlabError):
    pass


class DimensionError(GonlabError):
    pass


class ZeroDivisor(GonlabError):
    pass


class EmptyInput(GonlabError):
    pass


class HomRangeError(GonlabError):
    pass


class MonoidModeError(GonlabError):
    pass


class InvalidGraph(GonlabError):
    """Raised by checked constructors; carries the failing ValidationReport."""

    def __init__(self, report):
        super().__init__(f"{report.axiom}: {report.detail}")
        self.report = report


class NotPiecewiseLinear(GonlabError):
    def __init__(self, edge_id, detail=""):
        super().__init__(f"not piecewise linear on edge {edge_id!r} {detail}".rstrip())
        self.edge_id = edge_id


class UnknownVertex(GonlabError):
    pass


class NotHarmonic(GonlabError):
    pass


class SingleVertexTarget(GonlabError):
    """Degree of a morphism onto a graph without half-edges is undefined."""


class SizeLimit(GonlabError):
    pass


class ParseError(GonlabError):
    def __init__(self, pointer, message):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer
        self.message = message
