"""Quantum walks, topological invariants and geometric phases."""

__version__ = "0.1.0"
