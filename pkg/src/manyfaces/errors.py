"""Exception types shared across the package."""


class ManyFacesError(Exception):
    """Base class for all package errors."""


class EmptyInput(ManyFacesError):
    pass


class PointOnLine(ManyFacesError):
    def __init__(self, point_index, line_index):
        self.point_index = point_index
        self.line_index = line_index
        super().__init__(
            f"point {point_index} lies on line {line_index}"
        )


class DuplicateX(ManyFacesError):
    pass


class EmptyChain(ManyFacesError):
    pass


class PreconditionViolated(ManyFacesError):
    pass


class SegmentsCross(ManyFacesError):
    pass


class OnBoundary(ManyFacesError):
    pass


class DegenerateInput(ManyFacesError):
    pass


class ParseError(ManyFacesError):
    def __init__(self, message, line_number=None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class CountMismatch(ParseError):
    pass
