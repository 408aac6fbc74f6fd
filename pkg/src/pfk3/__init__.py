"""Exact verification toolkit for Pfaffian cubic fourfolds and their K3 surfaces."""

__version__ = "0.1.0"
