"""Dataset port (interface) for scan storage."""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Optional

from vessel_bifurcation.domain.entities.bifurcation import GroundTruth
from vessel_bifurcation.domain.entities.dataset import ScanDataset
from vessel_bifurcation.infrastructure.config import RunConfig


class DatasetPort(ABC):
    """
    Dataset port interface.

    Defines the contract for reading and writing scan datasets.
    """

    @abstractmethod
    def load(self, path: Path) -> ScanDataset:
        """
        Load a dataset.

        Args:
            path: Dataset location

        Returns:
            ScanDataset with frames ordered by index

        Raises:
            DatasetError: If a required part is missing
            InvalidDataError: If a file is malformed
        """
        pass

    @abstractmethod
    def load_config(self, path: Path) -> RunConfig:
        """Load the dataset's run configuration (defaults when absent)."""
        pass

    @abstractmethod
    def load_truth(self, path: Path) -> Optional[GroundTruth]:
        """Load the dataset's ground truth, None when absent."""
        pass

    @abstractmethod
    def save(
        self,
        dataset: ScanDataset,
        path: Path,
        config: Optional[RunConfig] = None,
        truth: Optional[GroundTruth] = None,
    ) -> Path:
        """
        Save a dataset.

        Args:
            dataset: Dataset to write
            path: Target location
            config: Run configuration stored with it
            truth: Ground truth stored with it

        Returns:
            Location written
        """
        pass
