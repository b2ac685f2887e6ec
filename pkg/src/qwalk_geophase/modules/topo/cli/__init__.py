"""Topology CLI commands."""
