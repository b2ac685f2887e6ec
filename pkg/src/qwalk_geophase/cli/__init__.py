"""Command-line interface for qwalk-geophase."""
