"""Colored d-complete posets, minuscule Weyl orbits and Dynkin folding."""

__version__ = "0.1.0"
