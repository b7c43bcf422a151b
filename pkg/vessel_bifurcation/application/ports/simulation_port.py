"""Simulation port (interface) for synthetic scans."""

from abc import ABC, abstractmethod

from vessel_bifurcation.domain.entities.scan import ScanParams
from vessel_bifurcation.infrastructure.simulation.phantom import PhantomSpec
from vessel_bifurcation.infrastructure.simulation.scan_simulator import SimulatedScan


class SimulationPort(ABC):
    """
    Simulation port interface.

    Defines the contract for producing synthetic scans with ground truth.
    """

    @abstractmethod
    def simulate(self, spec: PhantomSpec, scan: ScanParams, seed: int = 0) -> SimulatedScan:
        """
        Simulate a scan.

        Args:
            spec: Phantom specification
            scan: Acquisition parameters
            seed: Random seed

        Returns:
            SimulatedScan

        Raises:
            SimulationError: If the sweep never images a vessel
        """
        pass
