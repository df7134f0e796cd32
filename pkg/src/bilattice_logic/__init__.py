"""Finite bilattices and the logics LB and LB with implication."""

__version__ = "0.1.0"
