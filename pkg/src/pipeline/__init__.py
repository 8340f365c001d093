"""Analyzers, suite runner and output storage."""
