"""Star geometry CLI commands."""
