"""Geometric phase CLI commands."""
