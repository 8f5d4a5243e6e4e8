"""Exception hierarchy shared by the whole package."""


class SegoptError(Exception):
    """Base class for all errors raised by segopt."""


class ParseError(SegoptError, ValueError):
    """A segment, independent-set or report file could not be parsed."""


class DegenerateSegmentError(SegoptError, ValueError):
    """A segment with zero length (lo >= hi) was supplied."""


class DuplicateIdError(SegoptError, ValueError):
    pass


class UnknownIdError(SegoptError, KeyError):
    pass


class OverlapError(SegoptError, ValueError):
    """Two parallel segments share more than one point."""


class GeneralPositionError(SegoptError, ValueError):
    """Three or more segments pass through a common point."""

    def __init__(self, point, ids):
        self.point = point
        self.ids = tuple(ids)
        x, y = point
        super().__init__(f"segments {', '.join(map(str, self.ids))} share the point ({x}, {y})")


class ExtensionBlockedError(SegoptError, RuntimeError):
    """Extending a segment would have created a new incidence (internal bug)."""


class NotFavorableError(SegoptError, ValueError):
    pass


class NotTriangleFreeError(SegoptError, ValueError):
    pass


class NotBipartiteError(SegoptError, RuntimeError):
    """Raised by the line technique if its chosen family is not bipartite."""


class BudgetExceeded(SegoptError, RuntimeError):
    """The exact independent-set search ran out of its node budget."""


class InvalidK(SegoptError, ValueError):
    pass
