"""Simulation adapter implementing SimulationPort."""

from vessel_bifurcation.application.ports.simulation_port import SimulationPort
from vessel_bifurcation.domain.entities.scan import ScanParams
from vessel_bifurcation.infrastructure.simulation.phantom import PhantomSpec
from vessel_bifurcation.infrastructure.simulation.scan_simulator import ScanSimulator, SimulatedScan


class SimulationAdapter(SimulationPort):
    """
    Simulation adapter.

    Implements SimulationPort using ScanSimulator.
    """

    def simulate(self, spec: PhantomSpec, scan: ScanParams, seed: int = 0) -> SimulatedScan:
        """Simulate a scan."""
        return ScanSimulator(scan).run(spec, seed=seed)
