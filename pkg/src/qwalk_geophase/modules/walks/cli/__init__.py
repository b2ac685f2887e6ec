"""Walks CLI commands."""
