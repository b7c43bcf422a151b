"""Domain exceptions."""


class DomainError(Exception):
    """Base exception for domain layer."""

    pass


class EmptyInputError(DomainError):
    """Raised when an operation receives no points, frames or poses to work on."""

    pass


class DegeneratePointSetError(DomainError):
    """Degenerate point set error (e.g. all points identical when fitting a line)."""

    def __init__(self, message: str = "degenerate point set", point_count: int | None = None) -> None:
        """
        Initialize degenerate point set error.

        Args:
            message: Error message
            point_count: Number of points in the offending set
        """
        super().__init__(message)
        self.point_count = point_count


class EmptyPoseLogError(EmptyInputError):
    """Pose log is empty."""

    pass


class NonMonotonicFrameError(DomainError):
    """Frame timestamp does not advance past the tracks' last timestamps."""

    def __init__(self, message: str = "non-monotonic frame", t: float | None = None, last_t: float | None = None) -> None:
        """
        Initialize non-monotonic frame error.

        Args:
            message: Error message
            t: Offending frame timestamp
            last_t: Latest timestamp already held by an active track
        """
        super().__init__(message)
        self.t = t
        self.last_t = last_t


class NeedleSiteError(DomainError):
    """No cranial point exists for a bifurcation."""

    def __init__(self, message: str = "bifurcation at scan start", bifurcation_t: float | None = None) -> None:
        """
        Initialize needle site error.

        Args:
            message: Error message
            bifurcation_t: Timestamp of the bifurcation
        """
        super().__init__(message)
        self.bifurcation_t = bifurcation_t


class NonMonotonicPoseLogError(DomainError):
    """Pose log timestamps repeat or go backwards."""

    def __init__(self, message: str = "pose log timestamps must strictly increase", t: float | None = None) -> None:
        """
        Initialize non-monotonic pose log error.

        Args:
            message: Error message
            t: First timestamp not later than its predecessor
        """
        super().__init__(message)
        self.t = t
