"""Representation graphs of weighted graphs and the modules they define."""

__version__ = "0.1.0"
