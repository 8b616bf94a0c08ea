"""Exact generalized Macdonald functions and the quantum toroidal identities they satisfy."""

__version__ = "0.1.0"
