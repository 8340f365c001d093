"""Sliding-block rules: catalogue, application and action on factor languages."""
