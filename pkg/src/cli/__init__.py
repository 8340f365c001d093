"""Command-line entry points for wordca."""
