"""Geometric phases of pure and mixed states."""
