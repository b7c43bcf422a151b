"""Application exceptions."""


class PipelineError(Exception):
    """A pipeline stage failed."""

    def __init__(self, message: str, stage: str | None = None) -> None:
        """
        Initialize pipeline error.

        Args:
            message: Error message
            stage: Name of the failing stage
        """
        super().__init__(message)
        self.stage = stage
