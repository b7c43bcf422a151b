"""Synthetic scan simulation."""

from vessel_bifurcation.infrastructure.simulation.phantom import (
    Branch,
    NoiseModel,
    PhantomSpec,
    carina,
    parallel_phantom,
    straight_phantom,
    y_phantom,
)
from vessel_bifurcation.infrastructure.simulation.scan_simulator import ScanSimulator, SimulatedScan

__all__ = [
    "Branch",
    "NoiseModel",
    "PhantomSpec",
    "carina",
    "y_phantom",
    "parallel_phantom",
    "straight_phantom",
    "ScanSimulator",
    "SimulatedScan",
]
