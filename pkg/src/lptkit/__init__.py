"""Constructive longest-path and longest-cycle transversals with certified bounds."""

__version__ = "0.1.0"
