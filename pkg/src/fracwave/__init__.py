"""Solver and analysis toolkit for the fractional diffusion-wave equation."""

__version__ = "0.1.0"
