"""Cavity CLI commands."""
